#include "fraccap/corrections.hpp"

namespace fraccap {

double closed_form_w11(double sigma, double alpha, double dt) {
    if (!(sigma > 0.0)) throw std::invalid_argument("closed_form_w11: sigma must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("closed_form_w11: alpha must lie in (0,1)");
    const double d11 = std::pow(dt, -alpha) / specfun::gamma(2.0 - alpha);
    return specfun::gamma(1.0 + sigma) / specfun::gamma(1.0 + sigma - alpha) * std::pow(dt, -alpha) - d11;
}

std::vector<ConditionRow> condition_study(SigmaRule rule, double alpha, int max_m,
                                          const std::vector<double>& custom) {
    if (max_m < 1 || max_m > 12) throw std::invalid_argument("condition_study: max_m must lie in 1..12");
    std::string name;
    auto exponent = [&](int k) -> double {
        switch (rule) {
            case SigmaRule::alpha_k: return alpha * k;
            case SigmaRule::tenth_k: return 0.1 * k;
            case SigmaRule::custom:
                if (k > static_cast<int>(custom.size()))
                    throw std::invalid_argument("condition_study: custom list shorter than max_m");
                return custom[k - 1];
        }
        throw std::invalid_argument("condition_study: unknown rule");
    };
    switch (rule) {
        case SigmaRule::alpha_k: name = "alpha_k"; break;
        case SigmaRule::tenth_k: name = "tenth_k"; break;
        case SigmaRule::custom: name = "custom"; break;
    }

    std::vector<ConditionRow> rows;
    rows.reserve(max_m);
    for (int m = 1; m <= max_m; ++m) {
        Eigen::MatrixXd v(m, m);
        for (int k = 1; k <= m; ++k)
            for (int j = 1; j <= m; ++j)
                v(k - 1, j - 1) = std::pow(static_cast<double>(j), exponent(k));
        rows.push_back({m, name, detail::inf_norm_condition(v)});
    }
    return rows;
}

}  // namespace fraccap

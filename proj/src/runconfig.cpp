#include "fraccap/runconfig.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fraccap {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw std::invalid_argument("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw std::invalid_argument("config: key '" + key + "' expects an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("config: key '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw std::invalid_argument("config: key '" + key + "' expects a list of numbers");
    return out;
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value) {
    if (key == "orders") orders = parse_list(key, value);
    else if (key == "u0") u0 = parse_double(key, value);
    else if (key == "solution") solution = value;
    else if (key == "sigma_star") sigma_star = parse_list(key, value);
    else if (key == "omega") omega = parse_double(key, value);
    else if (key == "data") data_file = value;
    else if (key == "n_tilde") n_tilde = static_cast<int>(parse_int(key, value));
    else if (key == "dt_tilde") dt_tilde = parse_double(key, value);
    else if (key == "n_steps") n_steps = static_cast<int>(parse_int(key, value));
    else if (key == "dt") dt = parse_double(key, value);
    else if (key == "sigma") sigma = parse_list(key, value);
    else if (key == "tol_error") capture.tol_error = parse_double(key, value);
    else if (key == "tol_gradient") capture.tol_gradient = parse_double(key, value);
    else if (key == "cs_perturbation") capture.cs_perturbation = parse_double(key, value);
    else if (key == "initial_step") capture.initial_step = parse_double(key, value);
    else if (key == "max_iterations") capture.max_iterations = static_cast<int>(parse_int(key, value));
    else if (key == "max_terms") capture.max_terms = static_cast<int>(parse_int(key, value));
    else if (key == "m2_guess_high") capture.m2_guess_high = parse_bool(key, value);
    else if (key == "sigma_min") capture.sigma_min = parse_double(key, value);
    else if (key == "sigma_max") capture.sigma_max = parse_double(key, value);
    else if (key == "conv_n_base") conv_n_base = static_cast<int>(parse_int(key, value));
    else if (key == "conv_halvings") conv_halvings = static_cast<int>(parse_int(key, value));
    else if (key == "baseline_sigma") baseline_sigma = parse_list(key, value);
    else if (key == "sigma_rule") sigma_rule = value;
    else if (key == "max_m") max_m = static_cast<int>(parse_int(key, value));
    else if (key == "study") study = value;
    else if (key == "out") out_dir = value;
    else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void RunConfig::validate() const {
    static const std::vector<std::string> modes{"capture", "solve", "pipeline",
                                                "convergence", "weights", "repro"};
    if (std::find(modes.begin(), modes.end(), mode) == modes.end())
        throw std::invalid_argument("config: unknown mode '" + mode + "'");
    if (mode == "capture" || mode == "pipeline" || mode == "convergence") {
        const bool manufactured = !solution.empty();
        const bool from_file = !data_file.empty();
        if (manufactured == from_file)
            throw std::invalid_argument(
                "config: provide exactly one of a manufactured solution and a data file");
    }
    if (mode == "repro" && study.empty())
        throw std::invalid_argument("config: repro mode needs a study id");
    for (double a : orders)
        if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("config: orders must lie in (0,1)");
    if (capture.tol_error <= 0.0 || capture.tol_gradient <= 0.0 || capture.cs_perturbation <= 0.0 ||
        capture.initial_step <= 0.0)
        throw std::invalid_argument("config: capture tolerances and steps must be > 0");
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not of the form key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

RunConfig parse_command_line(int argc, const char* const* argv) {
    if (argc < 2) throw std::invalid_argument("usage: fraccap <mode> [--config path] [--key value]...");
    RunConfig cfg;
    cfg.mode = argv[1];

    // collect flags first so --config is read before overrides apply
    std::vector<std::pair<std::string, std::string>> flags;
    std::string config_path;
    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--", 0) != 0)
            throw std::invalid_argument("config: unexpected argument '" + arg + "'");
        arg = arg.substr(2);
        std::string value;
        const auto eq = arg.find('=');
        if (eq != std::string::npos) {
            value = arg.substr(eq + 1);
            arg = arg.substr(0, eq);
        } else {
            if (i + 1 >= argc)
                throw std::invalid_argument("config: flag '--" + arg + "' needs a value");
            value = argv[++i];
        }
        if (arg == "config") config_path = value;
        else flags.emplace_back(arg, value);
    }

    if (!config_path.empty())
        for (const auto& [k, v] : read_config_file(config_path)) cfg.apply(k, v);
    for (const auto& [k, v] : flags) cfg.apply(k, v);
    cfg.validate();
    return cfg;
}

}  // namespace fraccap

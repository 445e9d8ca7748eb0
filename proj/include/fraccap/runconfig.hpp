#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fraccap/capture.hpp"

namespace fraccap {

/// Declarative run description shared by the config file and command-line
/// flags. The file holds flat `key = value` lines (comma-separated lists,
/// `#` comments); every key is also accepted as `--key value` or
/// `--key=value`, with flags overriding the file.
struct RunConfig {
    std::string mode;  // capture | solve | pipeline | convergence | weights | repro

    std::vector<double> orders{0.5};
    double u0 = 0.0;

    // exactly one of (solution spec, data file) drives capture inputs
    std::string solution;  // power_sum | singular_oscillatory
    std::vector<double> sigma_star;
    double omega = 0.0;
    std::string data_file;  // CSV columns (n, t, u_data, f_data)

    int n_tilde = 100;       // Stage-I steps
    double dt_tilde = 0.01;  // Stage-I step size

    int n_steps = 100;  // Stage-II steps
    double dt = 0.01;   // Stage-II step size
    std::vector<double> sigma;  // explicit correction exponents for solve mode

    CaptureConfig capture;

    int conv_n_base = 32;
    int conv_halvings = 5;
    std::vector<double> baseline_sigma;

    std::string sigma_rule = "tenth_k";  // weights mode: tenth_k | alpha_k | custom
    int max_m = 9;

    std::string study;  // repro mode

    std::string out_dir = "out";
    std::uint64_t seed = 1;

    /// Apply one key/value pair; throws std::invalid_argument on unknown
    /// keys or malformed values.
    void apply(const std::string& key, const std::string& value);

    void validate() const;
};

/// Parse a flat key=value config file.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Build the config from argv: `fraccap <mode> [--config path] [--key value]...`
RunConfig parse_command_line(int argc, const char* const* argv);

}  // namespace fraccap

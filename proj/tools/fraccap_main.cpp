#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>

#include "fraccap/corrections.hpp"
#include "fraccap/runconfig.hpp"
#include "fraccap/studies.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;
constexpr int kExitCheckFailed = 4;

void print_usage() {
    std::cout <<
        "usage: fraccap <mode> [--config <path>] [--out <dir>] [--seed <int>] [--key value]...\n"
        "\n"
        "modes:\n"
        "  capture      Stage-I singularity capture from data or a manufactured solution\n"
        "  solve        Stage-II implicit integration with given correction exponents\n"
        "  pipeline     capture on the short grid, then integrate on the long grid\n"
        "  convergence  L2 error under dt halvings, with fitted order\n"
        "  weights      Vandermonde condition study and correction-weight export\n"
        "  repro        regenerate a named experiment (see --study list)\n"
        "\n"
        "Config files hold flat `key = value` lines; every key doubles as a\n"
        "command-line flag and flags override the file. See README.md for keys.\n";
}

int run(const fraccap::RunConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    std::filesystem::create_directories(cfg.out_dir);

    int code = kExitOk;
    if (cfg.mode == "capture") fraccap::studies::run_capture(cfg);
    else if (cfg.mode == "solve") fraccap::studies::run_solve(cfg);
    else if (cfg.mode == "pipeline") fraccap::studies::run_pipeline(cfg);
    else if (cfg.mode == "convergence") fraccap::studies::run_convergence(cfg);
    else if (cfg.mode == "weights") fraccap::studies::run_weights(cfg);
    else if (cfg.mode == "repro") {
        if (cfg.study == "list") {
            for (const auto& id : fraccap::studies::known_studies()) std::cout << id << "\n";
            return kExitOk;
        }
        auto outcome = fraccap::studies::run_study(cfg.study, cfg.out_dir);
        if (outcome.checked) {
            std::cout << "study " << outcome.id << ": " << (outcome.passed ? "PASS" : "FAIL");
            if (!outcome.detail.empty()) std::cout << " (" << outcome.detail << ")";
            std::cout << "\n";
            if (!outcome.passed) code = kExitCheckFailed;
        } else {
            std::cout << "study " << outcome.id << ": artifacts written (no numeric threshold)\n";
        }
    }

    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    std::fprintf(stdout, "%s finished in %.3f s, artifacts in %s\n", cfg.mode.c_str(), secs,
                 cfg.out_dir.c_str());
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc >= 2 && (std::string(argv[1]) == "--help" || std::string(argv[1]) == "-h")) {
        print_usage();
        return kExitOk;
    }
    try {
        const auto cfg = fraccap::parse_command_line(argc, argv);
        return run(cfg);
    } catch (const fraccap::NumericalError& e) {
        std::cerr << "error: numerical: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalError;
    }
}

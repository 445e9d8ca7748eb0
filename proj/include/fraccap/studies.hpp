#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fraccap/runconfig.hpp"

namespace fraccap::studies {

struct StudyOutcome {
    std::string id;
    bool checked = false;  // id has numeric pass thresholds
    bool passed = true;
    std::string detail;
};

std::vector<std::string> known_studies();

/// Regenerate one named experiment into out_dir and evaluate its thresholds.
StudyOutcome run_study(const std::string& id, const std::filesystem::path& out_dir);

void run_capture(const RunConfig& cfg);
void run_solve(const RunConfig& cfg);
void run_pipeline(const RunConfig& cfg);
void run_convergence(const RunConfig& cfg);
void run_weights(const RunConfig& cfg);

}  // namespace fraccap::studies

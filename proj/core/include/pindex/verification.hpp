#pragma once

#include "pindex/report.hpp"

namespace pindex {

// Tolerances and knobs for the acceptance matrix. Defaults are the
// committed values; overriding them (e.g. eps_path) makes the affected
// rows fail loudly rather than silently adapt.
struct SuiteConfig {
    unsigned long long seed = 20240808;
    int workers = 4;
    double eps_path = 1e-9;
    int finder_m = 1024;
    int finder_restarts = 6;
    int random_paths = 20;
    int galerkin_start_m = 64;
    int galerkin_max_m = 256;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // one-line summary of what was measured
    double seconds = 0;
    Json integers;  // integer outputs for reproducibility comparison
};

struct SuiteReport {
    std::vector<CriterionResult> rows;
    bool all_pass = false;
    Json integers;  // merged per-criterion integer outputs
};

// The individual acceptance criteria (1-12). Criteria 10 and 11 reuse the
// finder records produced by criterion 9, so the suite runs in order.
SuiteReport run_acceptance_suite(const SuiteConfig& cfg);

// One criterion by id (1..12); criteria depending on finder output run
// criterion 9 internally when invoked standalone.
CriterionResult run_acceptance_criterion(int id, const SuiteConfig& cfg);

}  // namespace pindex

#pragma once

#include <functional>
#include <vector>

#include "pindex/path.hpp"

namespace pindex {

struct CrossingScanConfig {
    int grid_points = 512;
    double eps_cross = 1e-7;      // relative singular-value threshold at a crossing
    double bracket_rel = 1e-10;   // refine until |interval| <= bracket_rel * s
    double gap_floor_rel = 1e-6;  // closer crossings are flagged degenerate
    double edge_margin_rel = 1e-7;  // minima inside this margin count as endpoint
    int densify = 8;              // refinement factor around candidate dips
    bool strict_degenerate = false;  // throw instead of flagging
};

struct Crossing {
    double sigma = 0;       // location in (0, s)
    int nullity = 0;        // kernel dimension at sigma
    double width = 0;       // final bracket width
    double residual = 0;    // smallest singular value at sigma
    bool degenerate = false;  // closer than gap floor to a neighbor
};

struct CrossingScanResult {
    std::vector<Crossing> interior;
    int endpoint_nullity = 0;     // kernel count exactly at s (eps_ker based)
    double endpoint_residual = 0;
    int near_miss = 0;  // dips that refined above eps_cross but below 100x
};

// Evaluates sigma -> singular values of F(sigma) (descending order).
using SingularValuesFn = std::function<Vec(double)>;

// Locates the zeros of sigma -> sigma_min(F(sigma)) on (0, s): scans a
// uniform grid, densifies around local minima, refines each dip by golden
// section, and counts singular values under eps_cross * max(smax, 1) at the
// refined location. Minima within the edge margin of s are excluded from
// the interior set (open-interval convention); the endpoint kernel is
// evaluated separately at eps_ker.
CrossingScanResult scan_kernel_crossings(const SingularValuesFn& f, double s,
                                         const CrossingScanConfig& cfg,
                                         double eps_ker = 1e-8);

// Singular value functions for the two index theories.
SingularValuesFn real_kernel_evaluator(const SymplecticPath& gamma, const Mat& target);
SingularValuesFn complex_kernel_evaluator(const SymplecticPath& gamma, const CMat& target);

}  // namespace pindex

#pragma once

#include "pindex/dual_action.hpp"
#include "pindex/maslov.hpp"

namespace pindex {

struct FinderConfig {
    MinimizeConfig minimize;
    long k = 4;              // extension periods, usually the order of P
    int steps_per_cell = 4;  // integrator steps per control cell
    double eps_path = 1e-9;
    double residual_tol = 1e-5;   // sup-cell trajectory residual, relative
    double h_drift_tol = 1e-6;    // relative energy drift along the trajectory
    double monodromy_tol = 1e-6;  // gamma(k) vs (P^{-1} gamma(1))^k, direct route
    // Circle tolerance for Floquet classification. A monodromy computed to
    // error eta resolves unit eigenvalues only to O(sqrt(eta)) at Jordan
    // blocks, so this is far looser than eps_u and fixed in advance.
    double floquet_circle_tol = 2e-2;
};

struct CharacteristicRecord {
    // dual minimizer
    double psi = 0;
    double grad_norm = 0;
    int m = 0;
    std::vector<RestartRecord> restarts;

    // recovered trajectory on [0, 1] extended to [0, k]
    double residual_rel = 0;       // sup-cell |u_i - J H'(x(mid_i))| / sup |u|
    double h_drift_rel = 0;        // (max - min)/mean of H over nodes and mids
    double off_plane_fraction = 0;  // 1 - dominant plane share of the amplitude
    double closure_residual = 0;   // ||x(k) - x(0)||
    std::vector<double> sample_times;
    std::vector<Vec> samples;      // trajectory nodes on [0, k]

    // linearized flow
    Mat period_map;                    // gamma(1)
    Mat monodromy;                     // gamma(k) via the symmetry recursion
    double monodromy_identity_residual = 0;   // direct integration vs (P^{-1}gamma(1))^k
    double path_defect = 0;
    double control_norm = 0;           // L2 norm of the minimizing control
    std::vector<Complex> multipliers;  // Floquet multipliers of gamma(k)
    int e_height = 0;
    std::string classification;  // "elliptic" | "hyperbolic" | "non-hyperbolic-partial"

    // index certificates at the minimizer
    int i_pe = 0;  // Ekeland index of A = H''(x) on [0,1]
    int i_1p = 0;  // Maslov index at omega = 1
    int nu_endpoint = 0;

    long k = 0;
};

// Rebuilds the trajectory from a converged dual control, extends it by the
// P-recursion, integrates the linearized flow and classifies ellipticity.
CharacteristicRecord recover_and_extend(const PiecewiseControl& u,
                                        const EllipsoidSurface& surface,
                                        const SymmetryDescriptor& p, const FinderConfig& cfg,
                                        const MinimizeResult* min_result = nullptr);

// minimize_dual_action + recover_and_extend.
CharacteristicRecord find_characteristic(const EllipsoidSurface& surface,
                                         const SymmetryDescriptor& p, const FinderConfig& cfg);

// The coefficient path A(t) = H''(x(t)) of the recovered trajectory on [0,1].
CoefficientPath linearized_coefficients(const PiecewiseControl& u,
                                        const EllipsoidSurface& surface,
                                        const SymmetryDescriptor& p);

}  // namespace pindex

#pragma once

#include "pindex/ellipsoid.hpp"
#include "pindex/piecewise.hpp"

namespace pindex {

// The dual functional on piecewise-constant controls over [0, 1]:
//   psi(u) = int_0^1 [ 1/2 (Ju, Pi_1 u) + H*(-Ju) ] dt.
// The Pi term is exact (Pi_1 u is affine per cell); the H* term is exact
// per cell because -Ju is constant there.
double dual_action(const HamiltonianHook& h, const SymmetryDescriptor& p,
                   const PiecewiseControl& u);

// L2 gradient per cell: g_i = J (dH*(-J u_i) - x(mid_i)).
std::vector<Vec> dual_action_gradient(const HamiltonianHook& h, const SymmetryDescriptor& p,
                                      const PiecewiseControl& u);

struct MinimizeConfig {
    int m = 1024;
    int restarts = 6;
    unsigned long long seed = 12345;
    double grad_tol = 1e-8;       // on ||g||_L2 / max(1, ||u||_L2)
    long max_iters = 200000;
    double armijo_c1 = 1e-4;
    double backtrack = 0.5;
    double noise_level = 0.05;    // relative seed noise after the pure modes
    int windings = 2;             // circle-mode windings tried per plane
};

struct RestartRecord {
    int restart = 0;
    double psi = 0;
    double grad_norm = 0;
    long iterations = 0;
    bool converged = false;
};

struct MinimizeResult {
    PiecewiseControl best;
    double psi = 0;
    double grad_norm = 0;
    long iterations = 0;  // of the winning restart
    bool converged = false;
    std::vector<RestartRecord> restarts;
};

// Descent with Barzilai-Borwein trial steps and Armijo backtracking, from
// per-plane circle-mode seeds plus noisy restarts. Restarts run
// concurrently; each owns its state and the records are assembled in
// restart order, so results are deterministic for a fixed seed.
MinimizeResult minimize_dual_action(const EllipsoidSurface& surface,
                                    const SymmetryDescriptor& p, const MinimizeConfig& cfg);

// Generic-hook variant (no circle-mode seeds, random starts only).
MinimizeResult minimize_dual_action(const HamiltonianHook& hook, const SymmetryDescriptor& p,
                                    const MinimizeConfig& cfg);

}  // namespace pindex

#pragma once

#include <vector>

#include "pindex/symplectic.hpp"

namespace pindex {

// A vector-valued piecewise-constant function on [0, s] over m uniform cells.
struct PiecewiseControl {
    double s = 1.0;
    std::vector<Vec> u;  // one value per cell

    int cells() const { return static_cast<int>(u.size()); }
    double cell_width() const { return s / static_cast<double>(u.size()); }
    int dim() const { return u.empty() ? 0 : static_cast<int>(u.front().size()); }
    double l2_norm() const;

    static PiecewiseControl zero(int dim, int m, double s = 1.0);
    static PiecewiseControl random(int dim, int m, unsigned long long seed, double s = 1.0);
};

// x = Pi_s u: x(t) = int_0^t u + (P - I)^{-1} int_0^s u. The boundary
// x(s) = P x(0) holds by construction. All integrals of piecewise
// constants are closed-form; nothing here is quadrature.
struct PiApplied {
    Vec x0;                  // x(0)
    std::vector<Vec> nodes;  // x at cell boundaries, m + 1 entries
    Vec at_mid(const PiecewiseControl& u, int cell) const;
};

PiApplied apply_pi(const PiecewiseControl& u, const SymmetryDescriptor& p);

// |<Pi_s u, v> + <u, Pi_s v>| via exact cell integrals.
double antisymmetry_residual(const PiecewiseControl& u, const PiecewiseControl& v,
                             const SymmetryDescriptor& p);

// ||x(s) - P x(0)|| for x = Pi_s u.
double boundary_residual(const PiecewiseControl& u, const SymmetryDescriptor& p);

// <Pi_s u, v> (exact).
double pi_inner(const PiecewiseControl& u, const PiecewiseControl& v,
                const SymmetryDescriptor& p);

}  // namespace pindex

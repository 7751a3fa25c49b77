#pragma once

#include <string>

#include "pindex/crossing.hpp"
#include "pindex/piecewise.hpp"

namespace pindex {

struct GalerkinOptions {
    double eps_gal = 1e-3;     // near-zero band, relative to the largest |eigenvalue|
    double cond_limit = 1e12;  // reject (P - I) beyond this condition number
    int max_m = 1024;          // stabilization cap for doubling
};

struct EkelandIndexReport {
    int index = 0;    // i_P^E
    int nullity = 0;  // nu_P^E at the horizon
    std::vector<Crossing> crossings;
    std::string method;  // "crossing" or "galerkin"
    double horizon = 0;

    // crossing method
    int near_miss = 0;
    double endpoint_residual = 0;
    int steps = 0;

    // galerkin method
    int m = 0;
    int negative_count = 0;
    int zero_count = 0;
    bool stabilized = false;
    std::vector<std::pair<int, int>> stabilization_trace;  // (m, negative count)
};

// nu_P^E(A_s) = dim ker(gamma_A(s) - P).
int nullity_at(const CoefficientPath& a, const SymmetryDescriptor& p, double s,
               const IntegrateOptions& iopts = {}, const SymplecticTolerances& tol = {});

// i_P^E(A) as the sum of interior crossing nullities of
// sigma -> dim ker(gamma(sigma) - P) over (0, s).
EkelandIndexReport index_by_crossings(const CoefficientPath& a, const SymmetryDescriptor& p,
                                      double s, const CrossingScanConfig& scan = {},
                                      const IntegrateOptions& iopts = {},
                                      const SymplecticTolerances& tol = {});
// Same, reusing an integrated path on [0, s].
EkelandIndexReport index_by_crossings(const SymplecticPath& gamma, const SymmetryDescriptor& p,
                                      const CrossingScanConfig& scan = {},
                                      const SymplecticTolerances& tol = {});

// The matrix of q_s on vector-valued piecewise constants over m cells
// (2n*m basis functions); Pi term exact, B term by per-cell Gauss quadrature.
Mat galerkin_form_matrix(const CoefficientPath& a, const SymmetryDescriptor& p, double s, int m,
                         const GalerkinOptions& opts = {});

// Index/nullity from the spectrum of the Galerkin matrix at fixed m.
EkelandIndexReport index_by_galerkin(const CoefficientPath& a, const SymmetryDescriptor& p,
                                     double s, int m, const GalerkinOptions& opts = {});

// Doubles m until the negative count repeats (E^- is finite-dimensional,
// so the count stabilizes); reports the trace.
EkelandIndexReport index_by_galerkin_stabilized(const CoefficientPath& a,
                                                const SymmetryDescriptor& p, double s,
                                                int m_start = 64,
                                                const GalerkinOptions& opts = {});

}  // namespace pindex

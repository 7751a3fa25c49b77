#pragma once

#include <memory>
#include <vector>

#include "pindex/coefficient_path.hpp"

namespace pindex {

struct IntegrateOptions {
    int steps = 512;        // initial step count, >= 16
    double eps_path = 1e-9;  // max admissible symplectic defect over the grid
    int max_doublings = 6;
};

// Grid-sampled fundamental solution of Gamma' = J A(t) Gamma, Gamma(0) = I.
// Values between nodes come from one RK4 step off the nearest lower node,
// which preserves the scheme's order and symplectic defect; entries are
// never interpolated linearly.
class SymplecticPath {
  public:
    double tau() const { return tau_; }
    int dim() const { return dim_; }
    const std::vector<double>& times() const { return t_; }
    const std::vector<Mat>& values() const { return g_; }
    double max_defect() const { return max_defect_; }
    const std::shared_ptr<const CoefficientPath>& coefficients() const { return a_; }

    const Mat& endpoint() const { return g_.back(); }
    Mat at(double t) const;

    // Restriction to [0, s]; endpoint obtained by one integration step.
    SymplecticPath restrict(double s) const;

    friend SymplecticPath integrate_fundamental(const CoefficientPath&, int,
                                                const IntegrateOptions&);
    friend SymplecticPath extend_path_by_symmetry(const SymplecticPath&,
                                                  const SymmetryDescriptor&, long,
                                                  const CoefficientPath*, double);

  private:
    double tau_ = 0;
    int dim_ = 0;
    std::vector<double> t_;
    std::vector<Mat> g_;
    double max_defect_ = 0;
    std::shared_ptr<const CoefficientPath> a_;

    // Set when the path was produced by the symmetry recursion; at() then
    // uses gamma(i + u) = P^i gamma_1(u) (P^{-1} gamma_1(tau))^i.
    struct Extension {
        std::shared_ptr<const SymplecticPath> base;
        std::vector<Mat> p_pow;       // P^0 .. P^{k-1}
        std::vector<Mat> c_pow;       // (P^{-1} gamma_1(tau))^0 .. ^k
        long k = 0;
    };
    std::shared_ptr<const Extension> ext_;

    Mat step_from(double t0, const Mat& g0, double h) const;
};

SymplecticPath integrate_fundamental(const CoefficientPath& a, int steps,
                                     const IntegrateOptions& opts = {});

// Path on [0, k*tau] built by gamma(t + tau) = P gamma(t) P^{-1} gamma(tau).
// When a_full (the coefficient path on [0, k*tau]) is supplied, the symmetry
// precondition A(t + tau) P = P A(t) is checked on samples and a violation
// names the offending t.
SymplecticPath extend_path_by_symmetry(const SymplecticPath& gamma1,
                                       const SymmetryDescriptor& p, long k,
                                       const CoefficientPath* a_full = nullptr,
                                       double sym_tol = 1e-8);

}  // namespace pindex

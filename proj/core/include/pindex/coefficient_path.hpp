#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "pindex/symplectic.hpp"

namespace pindex {

// The symmetric positive definite path t -> A(t) on [0, tau] that generates
// a fundamental solution. Validation samples a uniform grid: symmetry to
// 1e-10 max-abs and a strictly positive smallest eigenvalue.
class CoefficientPath {
  public:
    using Eval = std::function<Mat(double)>;

    static constexpr double kSymmetryTol = 1e-10;

    // Validates on `samples` uniform grid points (plus midpoints).
    static CoefficientPath from_callback(int dim, double tau, Eval eval, int samples = 257);
    // Grid data with linear interpolation between nodes. Times must be
    // strictly increasing from 0 to tau.
    static CoefficientPath from_grid(std::vector<double> times, std::vector<Mat> values);

    // Named families.
    static CoefficientPath isotropic(int n, double a, double tau = 1.0);
    static CoefficientPath block_isotropic(const std::vector<double>& speeds, double tau = 1.0);
    // Trig-polynomial draw, shifted to keep the smallest eigenvalue >= margin.
    static CoefficientPath random_smooth(int n, unsigned long long seed, double amplitude,
                                         double margin, int harmonics, double tau = 1.0);

    int dim() const { return dim_; }
    double tau() const { return tau_; }
    double positivity_margin() const { return margin_; }
    Mat operator()(double t) const { return eval_(t); }

    // A restricted to [0, s].
    CoefficientPath restrict(double s) const;
    // A shifted to start at t0: t -> A(t0 + t) on [0, tau - t0].
    CoefficientPath shifted(double t0) const;
    // A extended to [0, k*tau] by A(t + tau) = P A(t) P^{-1}.
    CoefficientPath extend_by_symmetry(const SymmetryDescriptor& p, long k) const;

  private:
    CoefficientPath() = default;
    void validate(int samples);

    int dim_ = 0;
    double tau_ = 0;
    double margin_ = 0;
    Eval eval_;
};

}  // namespace pindex

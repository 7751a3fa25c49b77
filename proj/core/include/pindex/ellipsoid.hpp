#pragma once

#include <functional>

#include "pindex/linalg.hpp"

namespace pindex {

struct HamiltonianEval {
    double value = 0;
    Vec grad;
    Mat hess;  // filled only when requested
};

struct LegendreEval {
    double value = 0;
    Vec grad;
};

// User-supplied Hamiltonian hook: the finder only needs these five maps.
// The ellipsoid family below provides them in closed form; anything else
// can be plugged in here (no conformance guarantees outside the family).
struct HamiltonianHook {
    int dim = 0;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> grad;
    std::function<Mat(const Vec&)> hess;
    std::function<double(const Vec&)> dual_value;
    std::function<Vec(const Vec&)> dual_grad;
};

// The rotation-invariant ellipsoid family: gauge
//   j(x) = (sum_j (x_j^2 + x_{n+j}^2) / r_j^2)^{1/2},  H = j^alpha.
// Every plane term is rotation invariant, so H(Px) = H(x) for any
// rotation-block P and the Legendre dual is closed-form.
class EllipsoidSurface {
  public:
    EllipsoidSurface(std::vector<double> radii, double alpha);

    int n() const { return static_cast<int>(radii_.size()); }
    int dim() const { return 2 * n(); }
    double alpha() const { return alpha_; }
    double beta() const { return alpha_ / (alpha_ - 1.0); }
    const std::vector<double>& radii() const { return radii_; }

    double gauge(const Vec& x) const;       // j(x)
    double dual_gauge(const Vec& y) const;  // j*(y) = (sum r_j^2 (y_j^2+y_{n+j}^2))^{1/2}

    // H, H', and optionally H''. H'' requires x bounded away from 0.
    HamiltonianEval hamiltonian(const Vec& x, bool need_hess = false) const;

    // H*(y) = (alpha-1) alpha^{-beta} j*(y)^beta and its gradient.
    LegendreEval legendre_dual(const Vec& y) const;

    HamiltonianHook hook() const;

  private:
    std::vector<double> radii_;
    std::vector<double> rho_;  // 1 / r_j^2
    double alpha_;
    double dual_coeff_;  // (alpha - 1) alpha^{-beta}
};

}  // namespace pindex

#include "pindex/ellipsoid.hpp"

#include <cmath>

namespace pindex {

EllipsoidSurface::EllipsoidSurface(std::vector<double> radii, double alpha)
    : radii_(std::move(radii)), alpha_(alpha) {
    if (radii_.empty()) throw ValidationError("EllipsoidSurface: need at least one radius");
    for (double r : radii_)
        if (!(r > 0)) throw ValidationError("EllipsoidSurface: radii must be positive");
    if (!(alpha_ > 1.0 && alpha_ < 2.0))
        throw ValidationError("EllipsoidSurface: alpha must lie in (1, 2)");
    rho_.reserve(radii_.size());
    for (double r : radii_) rho_.push_back(1.0 / (r * r));
    dual_coeff_ = (alpha_ - 1.0) * std::pow(alpha_, -beta());
}

double EllipsoidSurface::gauge(const Vec& x) const {
    const int nn = n();
    double q = 0;
    for (int j = 0; j < nn; ++j)
        q += rho_[static_cast<size_t>(j)] * (x(j) * x(j) + x(nn + j) * x(nn + j));
    return std::sqrt(q);
}

double EllipsoidSurface::dual_gauge(const Vec& y) const {
    const int nn = n();
    double q = 0;
    for (int j = 0; j < nn; ++j) {
        const double r2 = radii_[static_cast<size_t>(j)] * radii_[static_cast<size_t>(j)];
        q += r2 * (y(j) * y(j) + y(nn + j) * y(nn + j));
    }
    return std::sqrt(q);
}

HamiltonianEval EllipsoidSurface::hamiltonian(const Vec& x, bool need_hess) const {
    const int nn = n();
    if (x.size() != dim()) throw ValidationError("hamiltonian: wrong dimension");
    HamiltonianEval out;
    const double j = gauge(x);
    out.value = std::pow(j, alpha_);
    Vec qx(dim());
    for (int i = 0; i < nn; ++i) {
        qx(i) = rho_[static_cast<size_t>(i)] * x(i);
        qx(nn + i) = rho_[static_cast<size_t>(i)] * x(nn + i);
    }
    if (j == 0.0) {
        out.grad = Vec::Zero(dim());  // H is C^1 with H'(0) = 0 for alpha > 1
    } else {
        out.grad = alpha_ * std::pow(j, alpha_ - 2.0) * qx;
    }
    if (need_hess) {
        if (j < 1e-8)
            throw ValidationError("hamiltonian: H'' is singular near x = 0");
        Mat q = Mat::Zero(dim(), dim());
        for (int i = 0; i < nn; ++i) {
            q(i, i) = rho_[static_cast<size_t>(i)];
            q(nn + i, nn + i) = rho_[static_cast<size_t>(i)];
        }
        out.hess = alpha_ * std::pow(j, alpha_ - 2.0) * q +
                   alpha_ * (alpha_ - 2.0) * std::pow(j, alpha_ - 4.0) * (qx * qx.transpose());
    }
    return out;
}

LegendreEval EllipsoidSurface::legendre_dual(const Vec& y) const {
    if (y.size() != dim()) throw ValidationError("legendre_dual: wrong dimension");
    const int nn = n();
    LegendreEval out;
    const double js = dual_gauge(y);
    const double b = beta();
    out.value = dual_coeff_ * std::pow(js, b);
    out.grad = Vec::Zero(dim());
    if (js > 0.0) {
        const double f = dual_coeff_ * b * std::pow(js, b - 2.0);
        for (int i = 0; i < nn; ++i) {
            const double r2 = radii_[static_cast<size_t>(i)] * radii_[static_cast<size_t>(i)];
            out.grad(i) = f * r2 * y(i);
            out.grad(nn + i) = f * r2 * y(nn + i);
        }
    }
    return out;
}

HamiltonianHook EllipsoidSurface::hook() const {
    HamiltonianHook h;
    h.dim = dim();
    const EllipsoidSurface self = *this;
    h.value = [self](const Vec& x) { return self.hamiltonian(x).value; };
    h.grad = [self](const Vec& x) { return self.hamiltonian(x).grad; };
    h.hess = [self](const Vec& x) { return self.hamiltonian(x, true).hess; };
    h.dual_value = [self](const Vec& y) { return self.legendre_dual(y).value; };
    h.dual_grad = [self](const Vec& y) { return self.legendre_dual(y).grad; };
    return h;
}

}  // namespace pindex

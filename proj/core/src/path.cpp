#include "pindex/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pindex {

namespace {

Mat rk4_step(const CoefficientPath& a, const Mat& j, double t, const Mat& g, double h) {
    const Mat k1 = j * a(t) * g;
    const Mat a_mid = a(t + 0.5 * h);
    const Mat k2 = j * a_mid * (g + 0.5 * h * k1);
    const Mat k3 = j * a_mid * (g + 0.5 * h * k2);
    const Mat k4 = j * a(t + h) * (g + h * k3);
    return g + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Mat SymplecticPath::step_from(double t0, const Mat& g0, double h) const {
    const Mat j = standard_J(dim_ / 2);
    return rk4_step(*a_, j, t0, g0, h);
}

Mat SymplecticPath::at(double t) const {
    if (t < -1e-12 || t > tau_ + 1e-12 * std::max(1.0, tau_))
        throw ValidationError("SymplecticPath::at: t outside [0, tau]");
    t = std::clamp(t, 0.0, tau_);

    if (ext_) {
        const double tau1 = ext_->base->tau();
        long i = static_cast<long>(std::floor(t / tau1));
        if (i > ext_->k) i = ext_->k;
        double u = t - static_cast<double>(i) * tau1;
        if (i == ext_->k) {  // t == k*tau1 up to rounding
            i = ext_->k - 1;
            u = tau1;
        }
        const Mat g1 = ext_->base->at(u);
        return ext_->p_pow[static_cast<size_t>(i)] * g1 * ext_->c_pow[static_cast<size_t>(i)];
    }

    // Nearest lower node by search; restrict() may leave a shortened last cell.
    const size_t m = t_.size() - 1;
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    size_t i = (it == t_.begin()) ? 0 : static_cast<size_t>(it - t_.begin()) - 1;
    // Snap to a node when within rounding distance.
    const double snap = 1e-13 * std::max(1.0, tau_);
    if (std::abs(t - t_[i]) <= snap) return g_[i];
    if (i < m && std::abs(t - t_[i + 1]) <= snap) return g_[i + 1];
    if (i >= m) return g_[m];
    if (!a_) throw NumericError("SymplecticPath::at: off-grid evaluation needs coefficients");
    return step_from(t_[i], g_[i], t - t_[i]);
}

SymplecticPath SymplecticPath::restrict(double s) const {
    if (!(s > 0.0) || s > tau_ + 1e-12 * std::max(1.0, tau_))
        throw ValidationError("SymplecticPath::restrict: s outside (0, tau]");
    s = std::min(s, tau_);
    SymplecticPath out;
    out.dim_ = dim_;
    out.tau_ = s;
    out.a_ = a_;
    out.ext_ = ext_;
    for (size_t i = 0; i < t_.size() && t_[i] <= s + 1e-13 * std::max(1.0, tau_); ++i) {
        out.t_.push_back(t_[i]);
        out.g_.push_back(g_[i]);
    }
    if (out.t_.empty() || out.t_.back() < s - 1e-13 * std::max(1.0, tau_)) {
        out.g_.push_back(at(s));
        out.t_.push_back(s);
    } else {
        out.t_.back() = s;
    }
    const Mat j = standard_J(dim_ / 2);
    double defect = 0;
    for (const Mat& g : out.g_) defect = std::max(defect, max_abs(g.transpose() * j * g - j));
    out.max_defect_ = defect;
    return out;
}

SymplecticPath integrate_fundamental(const CoefficientPath& a, int steps,
                                     const IntegrateOptions& opts) {
    const int dim = a.dim();
    const Mat j = standard_J(dim / 2);
    SymplecticPath path;
    path.dim_ = dim;
    path.tau_ = a.tau();
    path.a_ = std::make_shared<const CoefficientPath>(a);

    if (a.tau() == 0.0) {
        path.t_ = {0.0};
        path.g_ = {Mat::Identity(dim, dim)};
        path.max_defect_ = 0.0;
        return path;
    }

    int n = std::max(steps, 16);
    double achieved = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt <= opts.max_doublings; ++attempt) {
        const double h = a.tau() / static_cast<double>(n);
        std::vector<double> t(static_cast<size_t>(n) + 1);
        std::vector<Mat> g(static_cast<size_t>(n) + 1);
        t[0] = 0.0;
        g[0] = Mat::Identity(dim, dim);
        double defect = 0.0;
        for (int i = 0; i < n; ++i) {
            t[static_cast<size_t>(i) + 1] = (i + 1 == n) ? a.tau() : h * (i + 1);
            g[static_cast<size_t>(i) + 1] = rk4_step(a, j, h * i, g[static_cast<size_t>(i)], h);
        }
        for (const Mat& gi : g) defect = std::max(defect, max_abs(gi.transpose() * j * gi - j));
        achieved = defect;
        if (defect <= opts.eps_path) {
            path.t_ = std::move(t);
            path.g_ = std::move(g);
            path.max_defect_ = defect;
            return path;
        }
        n *= 2;
    }
    throw NumericError("integrate_fundamental: defect target " + std::to_string(opts.eps_path) +
                       " unreachable after " + std::to_string(opts.max_doublings) +
                       " doublings (achieved " + std::to_string(achieved) + ")");
}

SymplecticPath extend_path_by_symmetry(const SymplecticPath& gamma1,
                                       const SymmetryDescriptor& p, long k,
                                       const CoefficientPath* a_full, double sym_tol) {
    if (gamma1.dim() != 2 * p.n())
        throw ValidationError("extend_path_by_symmetry: dimension mismatch");
    if (k < 1) throw ValidationError("extend_path_by_symmetry: k must be >= 1");
    const double tau1 = gamma1.tau();

    if (a_full != nullptr && gamma1.coefficients()) {
        const CoefficientPath& base = *gamma1.coefficients();
        const int probes = 64;
        for (long i = 1; i < k; ++i) {
            const Mat pi = p.power(i);
            for (int q = 0; q <= probes; ++q) {
                const double u = tau1 * q / probes;
                const Mat lhs = (*a_full)(static_cast<double>(i) * tau1 + u);
                const Mat rhs = pi * base(u) * pi.transpose();
                const double scale = std::max(1.0, max_abs(rhs));
                if (max_abs(lhs - rhs) > sym_tol * scale)
                    throw ValidationError(
                        "extend_path_by_symmetry: symmetry A(t+tau)P = PA(t) violated at t = " +
                        std::to_string(static_cast<double>(i) * tau1 + u));
            }
        }
    }

    auto ext = std::make_shared<SymplecticPath::Extension>();
    ext->base = std::make_shared<const SymplecticPath>(gamma1);
    ext->k = k;
    const Mat c = p.inverse() * gamma1.endpoint();
    Mat cp = Mat::Identity(gamma1.dim(), gamma1.dim());
    for (long i = 0; i <= k; ++i) {
        ext->p_pow.push_back(p.power(i));
        ext->c_pow.push_back(cp);
        cp = cp * c;
    }
    ext->p_pow.resize(static_cast<size_t>(k));  // only P^0..P^{k-1} are used

    SymplecticPath out;
    out.dim_ = gamma1.dim();
    out.tau_ = tau1 * static_cast<double>(k);
    out.ext_ = ext;
    if (a_full) out.a_ = std::make_shared<const CoefficientPath>(*a_full);

    // Materialized grid mirrors the base grid across all segments.
    const Mat j = standard_J(gamma1.dim() / 2);
    double defect = 0.0;
    for (long i = 0; i < k; ++i) {
        const Mat& pi = ext->p_pow[static_cast<size_t>(i)];
        const Mat& ci = ext->c_pow[static_cast<size_t>(i)];
        for (size_t q = (i == 0 ? 0 : 1); q < gamma1.times().size(); ++q) {
            out.t_.push_back(static_cast<double>(i) * tau1 + gamma1.times()[q]);
            out.g_.push_back(pi * gamma1.values()[q] * ci);
        }
    }
    for (const Mat& g : out.g_) defect = std::max(defect, max_abs(g.transpose() * j * g - j));
    out.max_defect_ = defect;
    return out;
}

}  // namespace pindex

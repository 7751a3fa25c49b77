#include "pindex/coefficient_path.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace pindex {

void CoefficientPath::validate(int samples) {
    if (dim_ <= 0 || dim_ % 2 != 0)
        throw ValidationError("CoefficientPath: dimension must be 2n");
    if (tau_ < 0) throw ValidationError("CoefficientPath: tau must be >= 0");
    if (tau_ == 0) {
        margin_ = 1.0;
        return;
    }
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        const double t = tau_ * static_cast<double>(i) / static_cast<double>(samples);
        const Mat a = eval_(t);
        if (a.rows() != dim_ || a.cols() != dim_)
            throw ValidationError("CoefficientPath: A(t) has wrong dimensions");
        if (!is_symmetric(a, kSymmetryTol))
            throw ValidationError("CoefficientPath: A(t) not symmetric at t = " +
                                  std::to_string(t));
        Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
        margin = std::min(margin, es.eigenvalues().minCoeff());
    }
    if (!(margin > 0))
        throw ValidationError("CoefficientPath: A(t) not positive definite (min eig " +
                              std::to_string(margin) + ")");
    margin_ = margin;
}

CoefficientPath CoefficientPath::from_callback(int dim, double tau, Eval eval, int samples) {
    CoefficientPath p;
    p.dim_ = dim;
    p.tau_ = tau;
    p.eval_ = std::move(eval);
    p.validate(samples);
    return p;
}

CoefficientPath CoefficientPath::from_grid(std::vector<double> times, std::vector<Mat> values) {
    if (times.size() != values.size() || times.size() < 2)
        throw ValidationError("CoefficientPath::from_grid: need matching times/values, >= 2");
    if (times.front() != 0.0)
        throw ValidationError("CoefficientPath::from_grid: grid must start at 0");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw ValidationError("CoefficientPath::from_grid: times must increase strictly");
    const double tau = times.back();
    auto data = std::make_shared<std::pair<std::vector<double>, std::vector<Mat>>>(
        std::move(times), std::move(values));
    const int dim = static_cast<int>(data->second.front().rows());
    auto eval = [data](double t) -> Mat {
        const auto& ts = data->first;
        const auto& vs = data->second;
        if (t <= ts.front()) return vs.front();
        if (t >= ts.back()) return vs.back();
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const size_t hi = static_cast<size_t>(it - ts.begin());
        const size_t lo = hi - 1;
        const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
        return (1.0 - w) * vs[lo] + w * vs[hi];
    };
    return from_callback(dim, tau, eval, static_cast<int>(4 * data->first.size()));
}

CoefficientPath CoefficientPath::isotropic(int n, double a, double tau) {
    if (a <= 0) throw ValidationError("isotropic: a must be positive");
    const int dim = 2 * n;
    return from_callback(dim, tau, [dim, a](double) { return a * Mat::Identity(dim, dim); }, 4);
}

CoefficientPath CoefficientPath::block_isotropic(const std::vector<double>& speeds, double tau) {
    const int n = static_cast<int>(speeds.size());
    Vec diag(2 * n);
    for (int i = 0; i < n; ++i) {
        if (speeds[i] <= 0) throw ValidationError("block_isotropic: speeds must be positive");
        diag(i) = speeds[i];
        diag(n + i) = speeds[i];
    }
    Mat a = diag.asDiagonal();
    return from_callback(2 * n, tau, [a](double) { return a; }, 4);
}

CoefficientPath CoefficientPath::random_smooth(int n, unsigned long long seed, double amplitude,
                                               double margin, int harmonics, double tau) {
    if (margin <= 0) throw ValidationError("random_smooth: margin must be positive");
    const int dim = 2 * n;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
    auto sym_draw = [&]() {
        Mat m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) m(i, j) = m(j, i) = u(rng);
        return m;
    };
    auto coeffs = std::make_shared<std::vector<std::array<Mat, 2>>>();
    coeffs->push_back({sym_draw(), Mat::Zero(dim, dim)});  // constant term
    for (int h = 1; h <= harmonics; ++h) coeffs->push_back({sym_draw(), sym_draw()});

    auto raw = [coeffs, tau](double t) {
        Mat a = (*coeffs)[0][0];
        for (size_t h = 1; h < coeffs->size(); ++h) {
            const double w = kTwoPi * static_cast<double>(h) * t / tau;
            a += (*coeffs)[h][0] * std::cos(w) + (*coeffs)[h][1] * std::sin(w);
        }
        return a;
    };
    // Shift by the sampled minimum eigenvalue so the path is uniformly
    // positive definite with the requested margin.
    double min_eig = std::numeric_limits<double>::infinity();
    const int probe = 512;
    for (int i = 0; i <= probe; ++i) {
        Eigen::SelfAdjointEigenSolver<Mat> es(raw(tau * i / probe), Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    const double shift = margin - min_eig;
    return from_callback(
        dim, tau,
        [raw, shift, dim](double t) { return Mat(raw(t) + shift * Mat::Identity(dim, dim)); });
}

CoefficientPath CoefficientPath::restrict(double s) const {
    if (!(s > 0.0) || s > tau_ + 1e-12 * std::max(1.0, tau_))
        throw ValidationError("CoefficientPath::restrict: s outside (0, tau]");
    CoefficientPath p;
    p.dim_ = dim_;
    p.tau_ = std::min(s, tau_);
    p.margin_ = margin_;
    p.eval_ = eval_;
    return p;
}

CoefficientPath CoefficientPath::shifted(double t0) const {
    if (t0 < 0 || t0 >= tau_) throw ValidationError("CoefficientPath::shifted: t0 out of range");
    CoefficientPath p;
    p.dim_ = dim_;
    p.tau_ = tau_ - t0;
    p.margin_ = margin_;
    auto base = eval_;
    p.eval_ = [base, t0](double t) { return base(t0 + t); };
    return p;
}

CoefficientPath CoefficientPath::extend_by_symmetry(const SymmetryDescriptor& p, long k) const {
    if (2 * p.n() != dim_)
        throw ValidationError("extend_by_symmetry: dimension mismatch with P");
    if (k < 1) throw ValidationError("extend_by_symmetry: k must be >= 1");
    auto powers = std::make_shared<std::vector<Mat>>();
    for (long i = 0; i < k; ++i) powers->push_back(p.power(i));
    auto base = eval_;
    const double tau = tau_;
    CoefficientPath out;
    out.dim_ = dim_;
    out.tau_ = tau_ * static_cast<double>(k);
    out.margin_ = margin_;  // conjugation by orthogonal P preserves eigenvalues
    out.eval_ = [base, powers, tau, k](double t) -> Mat {
        long i = static_cast<long>(std::floor(t / tau));
        if (i >= k) i = k - 1;
        if (i < 0) i = 0;
        const Mat& pi = (*powers)[static_cast<size_t>(i)];
        return pi * base(t - static_cast<double>(i) * tau) * pi.transpose();
    };
    return out;
}

}  // namespace pindex

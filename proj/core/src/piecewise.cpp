#include "pindex/piecewise.hpp"

#include <cmath>
#include <random>

namespace pindex {

double PiecewiseControl::l2_norm() const {
    double acc = 0;
    for (const Vec& ui : u) acc += ui.squaredNorm();
    return std::sqrt(acc * cell_width());
}

PiecewiseControl PiecewiseControl::zero(int dim, int m, double s) {
    PiecewiseControl c;
    c.s = s;
    c.u.assign(static_cast<size_t>(m), Vec::Zero(dim));
    return c;
}

PiecewiseControl PiecewiseControl::random(int dim, int m, unsigned long long seed, double s) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    PiecewiseControl c;
    c.s = s;
    c.u.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        Vec v(dim);
        for (int d = 0; d < dim; ++d) v(d) = g(rng);
        c.u.push_back(v);
    }
    return c;
}

Vec PiApplied::at_mid(const PiecewiseControl& u, int cell) const {
    return nodes[static_cast<size_t>(cell)] + 0.5 * u.cell_width() * u.u[static_cast<size_t>(cell)];
}

PiApplied apply_pi(const PiecewiseControl& u, const SymmetryDescriptor& p) {
    const int dim = u.dim();
    if (dim != 2 * p.n()) throw ValidationError("apply_pi: dimension mismatch");
    const double h = u.cell_width();
    Vec total = Vec::Zero(dim);
    for (const Vec& ui : u.u) total += ui;
    total *= h;

    const Mat pmi = p.matrix() - Mat::Identity(dim, dim);
    PiApplied out;
    out.x0 = pmi.partialPivLu().solve(total);
    out.nodes.resize(u.u.size() + 1);
    out.nodes[0] = out.x0;
    for (size_t i = 0; i < u.u.size(); ++i) out.nodes[i + 1] = out.nodes[i] + h * u.u[i];
    return out;
}

double pi_inner(const PiecewiseControl& u, const PiecewiseControl& v,
                const SymmetryDescriptor& p) {
    if (u.cells() != v.cells() || u.dim() != v.dim() || u.s != v.s)
        throw ValidationError("pi_inner: controls must share the grid");
    const PiApplied x = apply_pi(u, p);
    const double h = u.cell_width();
    double acc = 0;
    // int_{cell i} Pi u dt = h * x(midpoint), exact since x is affine per cell.
    for (int i = 0; i < u.cells(); ++i)
        acc += h * x.at_mid(u, i).dot(v.u[static_cast<size_t>(i)]);
    return acc;
}

double antisymmetry_residual(const PiecewiseControl& u, const PiecewiseControl& v,
                             const SymmetryDescriptor& p) {
    return std::abs(pi_inner(u, v, p) + pi_inner(v, u, p));
}

double boundary_residual(const PiecewiseControl& u, const SymmetryDescriptor& p) {
    const PiApplied x = apply_pi(u, p);
    return (x.nodes.back() - p.matrix() * x.x0).norm();
}

}  // namespace pindex

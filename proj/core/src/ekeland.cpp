#include "pindex/ekeland.hpp"

#include <cmath>

namespace pindex {

int nullity_at(const CoefficientPath& a, const SymmetryDescriptor& p, double s,
               const IntegrateOptions& iopts, const SymplecticTolerances& tol) {
    if (!(s > 0) || s > a.tau() + 1e-12)
        throw ValidationError("nullity_at: s outside (0, tau]");
    const SymplecticPath gamma = integrate_fundamental(a.restrict(s), iopts.steps, iopts);
    return kernel_count(Mat(gamma.endpoint() - p.matrix()), tol.eps_ker);
}

EkelandIndexReport index_by_crossings(const SymplecticPath& gamma, const SymmetryDescriptor& p,
                                      const CrossingScanConfig& scan,
                                      const SymplecticTolerances& tol) {
    if (gamma.dim() != 2 * p.n())
        throw ValidationError("index_by_crossings: dimension mismatch");
    const auto f = real_kernel_evaluator(gamma, p.matrix());
    const CrossingScanResult res = scan_kernel_crossings(f, gamma.tau(), scan, tol.eps_ker);
    EkelandIndexReport rep;
    rep.method = "crossing";
    rep.horizon = gamma.tau();
    rep.crossings = res.interior;
    rep.near_miss = res.near_miss;
    rep.nullity = res.endpoint_nullity;
    rep.endpoint_residual = res.endpoint_residual;
    rep.steps = static_cast<int>(gamma.times().size()) - 1;
    for (const Crossing& c : rep.crossings) rep.index += c.nullity;
    return rep;
}

EkelandIndexReport index_by_crossings(const CoefficientPath& a, const SymmetryDescriptor& p,
                                      double s, const CrossingScanConfig& scan,
                                      const IntegrateOptions& iopts,
                                      const SymplecticTolerances& tol) {
    if (!(s > 0) || s > a.tau() + 1e-12)
        throw ValidationError("index_by_crossings: s outside (0, tau]");
    const SymplecticPath gamma = integrate_fundamental(a.restrict(s), iopts.steps, iopts);
    return index_by_crossings(gamma, p, scan, tol);
}

Mat galerkin_form_matrix(const CoefficientPath& a, const SymmetryDescriptor& p, double s, int m,
                         const GalerkinOptions& opts) {
    if (m < 8) throw ValidationError("galerkin_form_matrix: m must be >= 8");
    if (!(s > 0) || s > a.tau() + 1e-12)
        throw ValidationError("galerkin_form_matrix: s outside (0, tau]");
    const int dim = a.dim();
    if (dim != 2 * p.n()) throw ValidationError("galerkin_form_matrix: dimension mismatch");
    if (p.inv_p_minus_i_cond() > opts.cond_limit)
        throw NumericError("galerkin_form_matrix: (P - I) condition " +
                           std::to_string(p.inv_p_minus_i_cond()) + " beyond limit");

    const double h = s / static_cast<double>(m);
    const Mat j = standard_J(dim / 2);
    const Mat pmi_inv =
        (p.matrix() - Mat::Identity(dim, dim)).partialPivLu().solve(Mat::Identity(dim, dim));
    const Mat j_pmi_inv = j * pmi_inv;

    // Gauss-Legendre 3-point nodes on [0, 1].
    static const double gx[3] = {0.5 - std::sqrt(15.0) / 10.0, 0.5,
                                 0.5 + std::sqrt(15.0) / 10.0};
    static const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

    const int sz = dim * m;
    Mat q = Mat::Zero(sz, sz);

    // Compact term: block(i, j) = -1/2 (g_ij J + h^2 J (P-I)^{-1}),
    // g_ij = h^2 [i > j] + h^2/2 [i == j]. Symmetry of the assembled matrix
    // relies on JP = PJ, which holds because P is symplectic orthogonal.
    for (int bi = 0; bi < m; ++bi)
        for (int bj = 0; bj < m; ++bj) {
            double g = 0;
            if (bi > bj) g = h * h;
            if (bi == bj) g = 0.5 * h * h;
            q.block(bi * dim, bj * dim, dim, dim) = -0.5 * (g * j + h * h * j_pmi_inv);
        }

    // B term: block-diagonal (h/2) J^T Bbar_i J with Bbar_i the cell average
    // of A(t)^{-1} by Gauss-3 quadrature.
    for (int bi = 0; bi < m; ++bi) {
        Mat bbar = Mat::Zero(dim, dim);
        for (int qn = 0; qn < 3; ++qn) {
            const double t = h * (static_cast<double>(bi) + gx[qn]);
            const Mat at = a(t);
            bbar += gw[qn] * at.partialPivLu().solve(Mat::Identity(dim, dim));
        }
        q.block(bi * dim, bi * dim, dim, dim) += 0.5 * h * (j.transpose() * bbar * j);
    }

    // The assembly is symmetric in exact arithmetic; fold in roundoff.
    const double asym = max_abs(q - q.transpose());
    if (asym > 1e-10 * std::max(1.0, max_abs(q)))
        throw NumericError("galerkin_form_matrix: assembly asymmetry " + std::to_string(asym));
    q = 0.5 * (q + q.transpose());
    return q;
}

EkelandIndexReport index_by_galerkin(const CoefficientPath& a, const SymmetryDescriptor& p,
                                     double s, int m, const GalerkinOptions& opts) {
    const Mat q = galerkin_form_matrix(a, p, s, m, opts);
    Eigen::SelfAdjointEigenSolver<Mat> es(q, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericError("index_by_galerkin: eigensolver failed");
    const Vec ev = es.eigenvalues();
    const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    const double band = opts.eps_gal * scale;
    EkelandIndexReport rep;
    rep.method = "galerkin";
    rep.horizon = s;
    rep.m = m;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -band)
            ++rep.negative_count;
        else if (ev(i) <= band)
            ++rep.zero_count;
    }
    rep.index = rep.negative_count;
    rep.nullity = rep.zero_count;
    rep.stabilization_trace = {{m, rep.negative_count}};
    return rep;
}

EkelandIndexReport index_by_galerkin_stabilized(const CoefficientPath& a,
                                                const SymmetryDescriptor& p, double s,
                                                int m_start, const GalerkinOptions& opts) {
    std::vector<std::pair<int, int>> trace;
    EkelandIndexReport last;
    for (int m = std::max(m_start, 8); m <= opts.max_m; m *= 2) {
        EkelandIndexReport rep = index_by_galerkin(a, p, s, m, opts);
        trace.emplace_back(m, rep.negative_count);
        if (!trace.empty() && trace.size() >= 2 &&
            trace[trace.size() - 2].second == rep.negative_count) {
            rep.stabilized = true;
            rep.stabilization_trace = trace;
            return rep;
        }
        last = rep;
    }
    last.stabilization_trace = trace;
    throw NumericError("index_by_galerkin_stabilized: negative count did not stabilize by m = " +
                       std::to_string(opts.max_m));
}

}  // namespace pindex

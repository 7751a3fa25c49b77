#include "pindex/finder.hpp"

#include <cmath>

namespace pindex {

namespace {

Vec apply_j(const Vec& v) {
    const int nn = static_cast<int>(v.size()) / 2;
    Vec out(v.size());
    out.head(nn) = -v.tail(nn);
    out.tail(nn) = v.head(nn);
    return out;
}

}  // namespace

CoefficientPath linearized_coefficients(const PiecewiseControl& u,
                                        const EllipsoidSurface& surface,
                                        const SymmetryDescriptor& p) {
    const PiApplied x = apply_pi(u, p);
    const double h = u.cell_width();
    const int m = u.cells();
    auto nodes = std::make_shared<std::vector<Vec>>(x.nodes);
    auto ctrl = std::make_shared<std::vector<Vec>>(u.u);
    const EllipsoidSurface surf = surface;
    auto eval = [nodes, ctrl, surf, h, m](double t) -> Mat {
        int i = static_cast<int>(std::floor(t / h));
        i = std::clamp(i, 0, m - 1);
        const Vec xt = (*nodes)[static_cast<size_t>(i)] +
                       (t - static_cast<double>(i) * h) * (*ctrl)[static_cast<size_t>(i)];
        return surf.hamiltonian(xt, /*need_hess=*/true).hess;
    };
    return CoefficientPath::from_callback(surface.dim(), u.s, eval, 4 * m);
}

CharacteristicRecord recover_and_extend(const PiecewiseControl& u,
                                        const EllipsoidSurface& surface,
                                        const SymmetryDescriptor& p, const FinderConfig& cfg,
                                        const MinimizeResult* min_result) {
    if (u.dim() != surface.dim() || u.dim() != 2 * p.n())
        throw ValidationError("recover_and_extend: dimension mismatch");
    const int m = u.cells();
    const int nn = surface.n();
    const double h = u.cell_width();
    const HamiltonianHook hook = surface.hook();

    CharacteristicRecord rec;
    rec.m = m;
    rec.k = cfg.k;
    if (min_result) {
        rec.psi = min_result->psi;
        rec.grad_norm = min_result->grad_norm;
        rec.restarts = min_result->restarts;
    } else {
        rec.psi = dual_action(hook, p, u);
    }

    const PiApplied x = apply_pi(u, p);

    // Trajectory residual: the control against J H' at cell midpoints.
    double u_sup = 0, res_sup = 0;
    for (int i = 0; i < m; ++i) {
        const Vec& ui = u.u[static_cast<size_t>(i)];
        u_sup = std::max(u_sup, ui.norm());
        const Vec xm = x.at_mid(u, i);
        res_sup = std::max(res_sup, (ui - apply_j(surface.hamiltonian(xm).grad)).norm());
    }
    if (u_sup == 0) throw NumericError("recover_and_extend: zero control");
    rec.residual_rel = res_sup / u_sup;
    if (rec.residual_rel > cfg.residual_tol)
        throw NumericError("recover_and_extend: trajectory residual " +
                           std::to_string(rec.residual_rel) + " above threshold");

    // Energy drift over nodes and midpoints, and the near-zero guard for H''.
    double hmin = std::numeric_limits<double>::infinity(), hmax = 0, hsum = 0;
    double xmin = std::numeric_limits<double>::infinity();
    int samples = 0;
    auto acc = [&](const Vec& pt) {
        const double hv = surface.hamiltonian(pt).value;
        hmin = std::min(hmin, hv);
        hmax = std::max(hmax, hv);
        hsum += hv;
        xmin = std::min(xmin, pt.norm());
        ++samples;
    };
    for (int i = 0; i < m; ++i) {
        acc(x.nodes[static_cast<size_t>(i)]);
        acc(x.at_mid(u, i));
    }
    acc(x.nodes[static_cast<size_t>(m)]);
    if (xmin < 1e-8)
        throw NumericError("recover_and_extend: trajectory passes near the origin");
    rec.h_drift_rel = (hmax - hmin) / (hsum / samples);

    // Dominant-plane share of the squared amplitude.
    Vec plane_energy = Vec::Zero(nn);
    for (int i = 0; i <= m; ++i) {
        const Vec& pt = x.nodes[static_cast<size_t>(i)];
        for (int j = 0; j < nn; ++j)
            plane_energy(j) += pt(j) * pt(j) + pt(nn + j) * pt(nn + j);
    }
    rec.off_plane_fraction = 1.0 - plane_energy.maxCoeff() / plane_energy.sum();

    // Trajectory samples on [0, k] via x(t + i) = P^i x(t).
    for (long seg = 0; seg < cfg.k; ++seg) {
        const Mat pi = p.power(seg);
        for (int i = (seg == 0 ? 0 : 1); i <= m; ++i) {
            rec.sample_times.push_back(static_cast<double>(seg) + h * i);
            rec.samples.push_back(pi * x.nodes[static_cast<size_t>(i)]);
        }
    }
    rec.closure_residual = (rec.samples.back() - rec.samples.front()).norm();

    // Linearized flow: integrate on [0,1], extend by the recursion, and
    // cross-check gamma(k) against direct integration of the extended
    // coefficients (the power identity as a two-route residual).
    const CoefficientPath a1 = linearized_coefficients(u, surface, p);
    IntegrateOptions iopts;
    iopts.steps = cfg.steps_per_cell * m;
    iopts.eps_path = cfg.eps_path;
    const SymplecticPath gamma1 = integrate_fundamental(a1, iopts.steps, iopts);
    const CoefficientPath a_ext = a1.extend_by_symmetry(p, cfg.k);
    const SymplecticPath gamma_ext = extend_path_by_symmetry(gamma1, p, cfg.k, &a_ext);
    rec.path_defect = std::max(gamma1.max_defect(), gamma_ext.max_defect());
    rec.period_map = gamma1.endpoint();
    rec.monodromy = gamma_ext.endpoint();
    rec.control_norm = u.l2_norm();

    {
        // Different step density than the recursion route, so the two sides
        // of the identity are integrated independently.
        IntegrateOptions dopts = iopts;
        dopts.steps = static_cast<int>(cfg.k) * (cfg.steps_per_cell + 2) * m;
        const SymplecticPath gamma_direct = integrate_fundamental(a_ext, dopts.steps, dopts);
        const Mat c = p.inverse() * gamma1.endpoint();
        Mat ck = Mat::Identity(c.rows(), c.cols());
        for (long i = 0; i < cfg.k; ++i) ck = ck * c;
        rec.monodromy_identity_residual = max_abs(Mat(gamma_direct.endpoint() - ck));
    }
    if (rec.monodromy_identity_residual > cfg.monodromy_tol)
        throw NumericError("recover_and_extend: monodromy identity residual " +
                           std::to_string(rec.monodromy_identity_residual) + " above threshold");

    // Floquet data and classification.
    {
        Eigen::EigenSolver<Mat> es(rec.monodromy, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success)
            throw NumericError("recover_and_extend: monodromy eigensolve failed");
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            rec.multipliers.push_back(es.eigenvalues()(i));
    }
    SymplecticTolerances floq_tol;
    floq_tol.eps_u = cfg.floquet_circle_tol;
    floq_tol.cluster_tol = std::max(floq_tol.cluster_tol, cfg.floquet_circle_tol * 1e-2);
    rec.e_height = elliptic_height(rec.monodromy, floq_tol);
    if (rec.e_height == 2 * nn)
        rec.classification = "elliptic";
    else if (rec.e_height == 2)
        rec.classification = "hyperbolic";
    else
        rec.classification = "non-hyperbolic-partial";

    // Index certificates at the minimizer. The discretized coefficients
    // shift the endpoint kernel inward by ~0.15/m^2 (measured to scale as
    // h^2 across m), so the certificate scan widens its endpoint margin to
    // that resolution; kernel points closer to s than the discretization
    // can resolve belong to the endpoint nullity.
    CrossingScanConfig cert_scan;
    cert_scan.edge_margin_rel =
        std::max(cert_scan.edge_margin_rel, 4.0 / (static_cast<double>(m) * m));
    rec.i_pe = index_by_crossings(gamma1, p, cert_scan).index;
    rec.i_1p = i_P_omega(gamma1, p, Omega::one(), cert_scan).index;
    rec.nu_endpoint = nu_P_omega(gamma1.endpoint(), p, Omega::one());
    return rec;
}

CharacteristicRecord find_characteristic(const EllipsoidSurface& surface,
                                         const SymmetryDescriptor& p, const FinderConfig& cfg) {
    const MinimizeResult res = minimize_dual_action(surface, p, cfg.minimize);
    return recover_and_extend(res.best, surface, p, cfg, &res);
}

}  // namespace pindex

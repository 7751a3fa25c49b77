#include "pindex/dual_action.hpp"

#include <cmath>
#include <future>
#include <random>

namespace pindex {

namespace {

Vec apply_j(const Vec& v) {
    const int nn = static_cast<int>(v.size()) / 2;
    Vec out(v.size());
    out.head(nn) = -v.tail(nn);
    out.tail(nn) = v.head(nn);
    return out;
}

double l2_inner(const std::vector<Vec>& a, const std::vector<Vec>& b, double h) {
    double acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i].dot(b[i]);
    return acc * h;
}

struct Evaluation {
    double psi = 0;
    std::vector<Vec> grad;
    double grad_norm = 0;
};

double psi_value(const HamiltonianHook& hook, const SymmetryDescriptor& p,
                 const PiecewiseControl& u) {
    const PiApplied x = apply_pi(u, p);
    const double h = u.cell_width();
    double psi = 0;
    for (int i = 0; i < u.cells(); ++i) {
        const Vec ju = apply_j(u.u[static_cast<size_t>(i)]);
        psi += h * (0.5 * ju.dot(x.at_mid(u, i)) + hook.dual_value(-ju));
    }
    return psi;
}

Evaluation evaluate(const HamiltonianHook& hook, const SymmetryDescriptor& p,
                    const PiecewiseControl& u) {
    const PiApplied x = apply_pi(u, p);
    const double h = u.cell_width();
    Evaluation out;
    out.grad.resize(u.u.size());
    for (int i = 0; i < u.cells(); ++i) {
        const Vec ju = apply_j(u.u[static_cast<size_t>(i)]);
        const Vec xm = x.at_mid(u, i);
        out.psi += h * (0.5 * ju.dot(xm) + hook.dual_value(-ju));
        out.grad[static_cast<size_t>(i)] = apply_j(Vec(hook.dual_grad(-ju) - xm));
    }
    out.grad_norm = std::sqrt(l2_inner(out.grad, out.grad, h));
    return out;
}

RestartRecord descend(const HamiltonianHook& hook, const SymmetryDescriptor& p,
                      PiecewiseControl& u, const MinimizeConfig& cfg, int restart_id) {
    const double h = u.cell_width();
    RestartRecord rec;
    rec.restart = restart_id;
    Evaluation ev = evaluate(hook, p, u);
    double step = 1.0;
    long iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        const double scale = std::max(1.0, u.l2_norm());
        if (ev.grad_norm <= cfg.grad_tol * scale) {
            rec.converged = true;
            break;
        }
        // Backtracking line search along -grad.
        const double slope = ev.grad_norm * ev.grad_norm;
        double sigma = std::clamp(step, 1e-8, 1e6);
        bool accepted = false;
        PiecewiseControl cand = u;
        for (int bt = 0; bt < 60; ++bt) {
            for (size_t i = 0; i < u.u.size(); ++i)
                cand.u[i] = u.u[i] - sigma * ev.grad[i];
            const double psi_c = psi_value(hook, p, cand);
            if (psi_c <= ev.psi - cfg.armijo_c1 * sigma * slope) {
                accepted = true;
                break;
            }
            sigma *= cfg.backtrack;
        }
        if (!accepted) break;  // stalled at rounding level

        Evaluation ev_new = evaluate(hook, p, cand);
        // Barzilai-Borwein trial step for the next iteration.
        std::vector<Vec> dg(ev.grad.size());
        for (size_t i = 0; i < dg.size(); ++i) dg[i] = ev_new.grad[i] - ev.grad[i];
        const double dg2 = l2_inner(dg, dg, h);
        if (dg2 > 0) {
            double du_dg = 0;
            for (size_t i = 0; i < dg.size(); ++i) du_dg += (-sigma) * ev.grad[i].dot(dg[i]);
            du_dg *= h;
            step = std::clamp(std::abs(du_dg) / dg2, 1e-8, 1e6);
        }
        u = std::move(cand);
        ev = std::move(ev_new);
    }
    rec.psi = ev.psi;
    rec.grad_norm = ev.grad_norm;
    rec.iterations = iter;
    return rec;
}

}  // namespace

double dual_action(const HamiltonianHook& h, const SymmetryDescriptor& p,
                   const PiecewiseControl& u) {
    if (u.dim() != h.dim || u.dim() != 2 * p.n())
        throw ValidationError("dual_action: dimension mismatch");
    return psi_value(h, p, u);
}

std::vector<Vec> dual_action_gradient(const HamiltonianHook& h, const SymmetryDescriptor& p,
                                      const PiecewiseControl& u) {
    if (u.dim() != h.dim || u.dim() != 2 * p.n())
        throw ValidationError("dual_action_gradient: dimension mismatch");
    return evaluate(h, p, u).grad;
}

namespace {

MinimizeResult run_restarts(const HamiltonianHook& hook, const SymmetryDescriptor& p,
                            const MinimizeConfig& cfg,
                            const std::function<PiecewiseControl(int)>& seed_control) {
    std::vector<std::future<std::pair<PiecewiseControl, RestartRecord>>> jobs;
    for (int r = 0; r < cfg.restarts; ++r) {
        jobs.push_back(std::async(std::launch::async, [&, r]() {
            PiecewiseControl u = seed_control(r);
            RestartRecord rec = descend(hook, p, u, cfg, r);
            return std::make_pair(std::move(u), rec);
        }));
    }
    MinimizeResult out;
    bool have_best = false;
    for (auto& j : jobs) {
        auto [u, rec] = j.get();
        out.restarts.push_back(rec);
        if (!have_best || rec.psi < out.psi) {
            have_best = true;
            out.best = std::move(u);
            out.psi = rec.psi;
            out.grad_norm = rec.grad_norm;
            out.iterations = rec.iterations;
            out.converged = rec.converged;
        }
    }
    if (!out.converged)
        throw NumericError("minimize_dual_action: best restart did not reach the gradient "
                           "tolerance (grad " + std::to_string(out.grad_norm) + ")");
    return out;
}

}  // namespace

MinimizeResult minimize_dual_action(const EllipsoidSurface& surface,
                                    const SymmetryDescriptor& p, const MinimizeConfig& cfg) {
    if (surface.dim() != 2 * p.n())
        throw ValidationError("minimize_dual_action: surface/symmetry dimension mismatch");
    const HamiltonianHook hook = surface.hook();
    const int nn = surface.n();
    const int dim = surface.dim();
    const std::vector<double> thetas = p.angles();
    const double alpha = surface.alpha();

    auto seed_control = [&, cfg](int r) {
        std::mt19937_64 rng(cfg.seed + 1000003ull * static_cast<unsigned long long>(r));
        std::uniform_real_distribution<double> uphase(0.0, kTwoPi);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int plane = r % nn;
        const int winding = (r / nn) % std::max(cfg.windings, 1);
        const double omega0 = thetas[static_cast<size_t>(plane)] + kTwoPi * winding;
        const double rj = surface.radii()[static_cast<size_t>(plane)];
        // Circle amplitude solving the boundary condition in plane `plane`.
        const double a0 = rj * std::pow(omega0 * rj * rj / alpha, 1.0 / (alpha - 2.0));
        const double phase = uphase(rng);
        const bool pure = r < nn * std::max(cfg.windings, 1);
        PiecewiseControl u = PiecewiseControl::zero(dim, cfg.m);
        const double h = u.cell_width();
        for (int i = 0; i < cfg.m; ++i) {
            const double t = (static_cast<double>(i) + 0.5) * h;
            Vec& ui = u.u[static_cast<size_t>(i)];
            ui(plane) = -a0 * omega0 * std::sin(omega0 * t + phase);
            ui(nn + plane) = a0 * omega0 * std::cos(omega0 * t + phase);
            if (!pure)
                for (int d = 0; d < dim; ++d)
                    ui(d) += cfg.noise_level * a0 * omega0 * gauss(rng);
        }
        return u;
    };
    return run_restarts(hook, p, cfg, seed_control);
}

MinimizeResult minimize_dual_action(const HamiltonianHook& hook, const SymmetryDescriptor& p,
                                    const MinimizeConfig& cfg) {
    if (hook.dim != 2 * p.n())
        throw ValidationError("minimize_dual_action: hook/symmetry dimension mismatch");
    auto seed_control = [&, cfg](int r) {
        PiecewiseControl u =
            PiecewiseControl::random(hook.dim, cfg.m,
                                     cfg.seed + 1000003ull * static_cast<unsigned long long>(r));
        return u;
    };
    return run_restarts(hook, p, cfg, seed_control);
}

}  // namespace pindex

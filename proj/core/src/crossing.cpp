#include "pindex/crossing.hpp"

#include <algorithm>
#include <cmath>

namespace pindex {

namespace {

struct Dip {
    double sigma;
    double smin;
};

// Golden-section minimization of smin over [a, b]; the dip of a transversal
// crossing is V-shaped, hence unimodal near the zero.
Dip golden_refine(const SingularValuesFn& f, double a, double b, double width_target) {
    constexpr double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1)(Eigen::last);
    double f2 = f(x2)(Eigen::last);
    while (b - a > width_target) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1)(Eigen::last);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2)(Eigen::last);
        }
    }
    const double mid = 0.5 * (a + b);
    return {mid, f(mid)(Eigen::last)};
}

int count_kernel(const Vec& svals, double eps_rel) {
    const double scale = std::max(svals(0), 1.0);
    int c = 0;
    for (Eigen::Index i = 0; i < svals.size(); ++i)
        if (svals(i) < eps_rel * scale) ++c;
    return c;
}

}  // namespace

CrossingScanResult scan_kernel_crossings(const SingularValuesFn& f, double s,
                                         const CrossingScanConfig& cfg, double eps_ker) {
    if (!(s > 0)) throw ValidationError("scan_kernel_crossings: s must be positive");
    const int n = std::max(cfg.grid_points, 16);
    std::vector<double> sig(static_cast<size_t>(n) + 1), val(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        sig[static_cast<size_t>(i)] = s * static_cast<double>(i) / static_cast<double>(n);
        val[static_cast<size_t>(i)] = f(sig[static_cast<size_t>(i)])(Eigen::last);
    }

    // Candidate cells: grid local minima, boundary cells, and any cell whose
    // smaller endpoint value is below the local slope times the cell width.
    // The slope test matters because a V-dip can hide between two nodes whose
    // sampled values are monotone (shadowed by a deeper dip one cell over),
    // producing no grid local minimum at all.
    std::vector<bool> suspicious(static_cast<size_t>(n), false);
    suspicious[0] = suspicious[static_cast<size_t>(n) - 1] = true;
    std::vector<double> diff(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        diff[static_cast<size_t>(i)] =
            std::abs(val[static_cast<size_t>(i) + 1] - val[static_cast<size_t>(i)]);
    for (int i = 0; i < n; ++i) {
        const size_t q = static_cast<size_t>(i);
        double slope = diff[q];
        if (i > 0) slope = std::max(slope, diff[q - 1]);
        if (i + 1 < n) slope = std::max(slope, diff[q + 1]);
        if (std::min(val[q], val[q + 1]) <= 2.0 * slope) suspicious[q] = true;
        if (i > 0 && val[q] <= val[q - 1] && val[q] <= val[q + 1]) {
            suspicious[q] = true;
            suspicious[q - 1] = true;
        }
    }
    std::vector<std::pair<double, double>> intervals;
    int run_start = -1;
    for (int i = 0; i <= n; ++i) {
        const bool on = i < n && suspicious[static_cast<size_t>(i)];
        if (on && run_start < 0) run_start = i;
        if (!on && run_start >= 0) {
            intervals.emplace_back(sig[static_cast<size_t>(std::max(run_start - 1, 0))],
                                   sig[static_cast<size_t>(std::min(i + 1, n))]);
            run_start = -1;
        }
    }

    // Densify: resample each candidate run at cfg.densify times the base
    // grid resolution and keep subintervals around local minima.
    std::vector<std::pair<double, double>> refined_intervals;
    const double h_base = s / static_cast<double>(n);
    for (auto [a, b] : intervals) {
        const int d = std::clamp(
            static_cast<int>(std::ceil((b - a) / h_base)) * std::max(cfg.densify, 2), 4, 4096);
        std::vector<double> xs(static_cast<size_t>(d) + 1), vs(static_cast<size_t>(d) + 1);
        for (int i = 0; i <= d; ++i) {
            xs[static_cast<size_t>(i)] = a + (b - a) * static_cast<double>(i) / d;
            vs[static_cast<size_t>(i)] = f(xs[static_cast<size_t>(i)])(Eigen::last);
        }
        for (int i = 0; i <= d; ++i) {
            const size_t q = static_cast<size_t>(i);
            const bool left_ok = (i == 0) || vs[q] <= vs[q - 1];
            const bool right_ok = (i == d) || vs[q] <= vs[q + 1];
            if (left_ok && right_ok)
                refined_intervals.emplace_back(xs[q > 0 ? q - 1 : 0],
                                               xs[static_cast<size_t>(std::min(i + 1, d))]);
        }
    }

    CrossingScanResult out;
    std::vector<Crossing> found;
    const double width_target = cfg.bracket_rel * s;
    // Work queue with flank re-scans: a resolved dip spawns its two flank
    // intervals so that a second zero hiding in the same candidate interval
    // (closer than the grid, farther than the bracket) is still found.
    struct Job {
        double a, b;
        int depth;
    };
    std::vector<Job> jobs;
    for (auto [a, b] : refined_intervals) jobs.push_back({a, b, 0});
    while (!jobs.empty()) {
        const Job job = jobs.back();
        jobs.pop_back();
        if (job.b - job.a <= 4 * width_target) continue;
        Dip dip = golden_refine(f, job.a, job.b, width_target);
        const Vec svals = f(dip.sigma);
        const double scale = std::max(svals(0), 1.0);
        if (dip.smin >= cfg.eps_cross * scale) {
            if (dip.smin < 100 * cfg.eps_cross * scale) ++out.near_miss;
            continue;
        }
        if (job.depth < 3) {
            const double w = 2 * width_target;
            jobs.push_back({job.a, dip.sigma - w, job.depth + 1});
            jobs.push_back({dip.sigma + w, job.b, job.depth + 1});
        }
        // Open-interval convention: dips at the ends are not interior.
        if (dip.sigma >= s * (1.0 - cfg.edge_margin_rel)) continue;
        if (dip.sigma <= s * cfg.edge_margin_rel) continue;
        Crossing c;
        c.sigma = dip.sigma;
        c.nullity = count_kernel(svals, cfg.eps_cross);
        c.width = width_target;
        c.residual = dip.smin;
        found.push_back(c);
    }

    std::sort(found.begin(), found.end(),
              [](const Crossing& x, const Crossing& y) { return x.sigma < y.sigma; });
    // Duplicates: the same dip refined from overlapping candidate intervals.
    const double dup_tol = std::max(10 * cfg.bracket_rel, 1e-13) * s;
    for (const Crossing& c : found) {
        if (!out.interior.empty() && c.sigma - out.interior.back().sigma <= dup_tol) {
            if (c.residual < out.interior.back().residual) out.interior.back() = c;
            continue;
        }
        out.interior.push_back(c);
    }
    for (size_t i = 1; i < out.interior.size(); ++i) {
        if (out.interior[i].sigma - out.interior[i - 1].sigma < cfg.gap_floor_rel * s) {
            out.interior[i].degenerate = true;
            out.interior[i - 1].degenerate = true;
        }
    }
    if (cfg.strict_degenerate)
        for (const Crossing& c : out.interior)
            if (c.degenerate)
                throw NumericError("scan_kernel_crossings: degenerate crossings near sigma = " +
                                   std::to_string(c.sigma));

    const Vec end_svals = f(s);
    out.endpoint_nullity = count_kernel(end_svals, eps_ker);
    out.endpoint_residual = end_svals(end_svals.size() - 1);
    return out;
}

SingularValuesFn real_kernel_evaluator(const SymplecticPath& gamma, const Mat& target) {
    return [&gamma, target](double sigma) -> Vec {
        const Mat m = gamma.at(sigma) - target;
        Eigen::JacobiSVD<Mat> svd(m);
        return svd.singularValues();
    };
}

SingularValuesFn complex_kernel_evaluator(const SymplecticPath& gamma, const CMat& target) {
    return [&gamma, target](double sigma) -> Vec {
        const CMat m = gamma.at(sigma).cast<Complex>() - target;
        Eigen::JacobiSVD<CMat> svd(m);
        return svd.singularValues();
    };
}

}  // namespace pindex

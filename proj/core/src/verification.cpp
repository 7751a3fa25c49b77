#include "pindex/verification.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

namespace pindex {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Shared instance families

struct RotationConfig {
    std::vector<long> nums;
    long k;
    long q_num, q_den;  // isotropic speed a = 2 pi q
    int n() const { return static_cast<int>(nums.size()); }
    double a() const {
        return kTwoPi * static_cast<double>(q_num) / static_cast<double>(q_den);
    }
};

// i_P^E for A = a I on [0,1]: sum_i 2 #{m >= 0 : theta_i + 2 pi m < a},
// evaluated in integer arithmetic (the strict inequality excludes endpoint
// crossings, matching the open-interval convention).
long rotation_closed_form(const RotationConfig& c) {
    long total = 0;
    for (long num : c.nums) {
        const long long vn = c.q_num * c.k - num * c.q_den;  // V = vn / vd
        const long long vd = c.q_den * c.k;
        if (vn <= 0) continue;
        const long long q = vn / vd;
        total += 2 * static_cast<long>(vn % vd == 0 ? q : q + 1);
    }
    return total;
}

std::vector<RotationConfig> criterion1_grid() {
    const std::vector<std::pair<std::vector<long>, long>> symmetries = {
        {{1}, 4},       {{1}, 3},       {{2}, 5},        {{1}, 6},      {{3}, 8},
        {{1, 1}, 4},    {{1, 3}, 4},    {{1, 2}, 3},     {{2, 3}, 8},   {{1, 5}, 6},
        {{2, 2}, 5},    {{1, 1, 2}, 5}, {{1, 2, 3}, 6},  {{3, 4, 6}, 12},
        {{1, 1, 1}, 4}, {{2, 3, 7}, 8},
    };
    const std::vector<std::pair<long, long>> speeds = {{7, 8}, {5, 4}, {2, 1}, {23, 8}, {7, 2}};
    std::vector<RotationConfig> grid;
    for (const auto& [nums, k] : symmetries)
        for (const auto& [qn, qd] : speeds) grid.push_back({nums, k, qn, qd});
    // Endpoint-boundary instances: a = theta + 2 pi m exactly; the strict
    // inequality of the closed form excludes the crossing at sigma = 1.
    grid.push_back({{1}, 4, 1, 4});
    grid.push_back({{1}, 4, 5, 4});
    grid.push_back({{1, 1}, 4, 5, 4});
    return grid;
}

struct RandomInstance {
    unsigned long long seed;
    std::vector<long> nums;
    long k;
    CoefficientPath path;
};

// Deterministic draws, skipping paths whose horizon endpoint is within
// numerical reach of the kernel set (those are legitimate inputs but not
// resolvable by a fixed-tolerance cross-method comparison; the draw filter
// is input-based and reported).
std::vector<RandomInstance> criterion2_random_paths(const SuiteConfig& cfg, int count,
                                                    int* skipped) {
    const std::vector<std::pair<std::vector<long>, long>> ps = {
        {{1, 1}, 4}, {{1, 2}, 4}, {{1, 2}, 6}, {{2, 3}, 8}};
    std::vector<RandomInstance> out;
    int attempt = 0;
    while (static_cast<int>(out.size()) < count && attempt < 8 * count) {
        const unsigned long long seed = cfg.seed + 7919ull * static_cast<unsigned>(attempt);
        const auto& [nums, k] = ps[static_cast<size_t>(attempt) % ps.size()];
        ++attempt;
        CoefficientPath a = CoefficientPath::random_smooth(2, seed, 0.9, 0.5, 3, 1.0);
        const SymmetryDescriptor p = build_symmetry(nums, k);
        const SymplecticPath g = integrate_fundamental(a, 512, {512, cfg.eps_path, 6});
        auto [smin, smax] = singular_range(Mat(g.endpoint() - p.matrix()));
        if (smin < 1e-3 * std::max(smax, 1.0)) {
            if (skipped) ++(*skipped);
            continue;
        }
        out.push_back(RandomInstance{seed, nums, k, std::move(a)});
    }
    return out;
}

// Direct linearized-flow oracle: plain fixed-step RK4 over the full
// horizon, independent of the production path machinery.
Mat rk4_monodromy_oracle(const CoefficientPath& a, int steps) {
    const int dim = a.dim();
    const Mat j = standard_J(dim / 2);
    Mat g = Mat::Identity(dim, dim);
    const double h = a.tau() / static_cast<double>(steps);
    for (int i = 0; i < steps; ++i) {
        const double t = h * i;
        const Mat k1 = j * a(t) * g;
        const Mat amid = a(t + 0.5 * h);
        const Mat k2 = j * amid * (g + 0.5 * h * k1);
        const Mat k3 = j * amid * (g + 0.5 * h * k2);
        const Mat k4 = j * a(t + h) * (g + h * k3);
        g = g + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return g;
}

double match_multiplier_sets(std::vector<Complex> a, std::vector<Complex> b) {
    double worst = 0;
    while (!a.empty()) {
        size_t bi = 0, bj = 0;
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                if (std::abs(a[i] - b[j]) < best) {
                    best = std::abs(a[i] - b[j]);
                    bi = i;
                    bj = j;
                }
        worst = std::max(worst, best);
        a.erase(a.begin() + static_cast<long>(bi));
        b.erase(b.begin() + static_cast<long>(bj));
    }
    return worst;
}

struct FinderOutcome {
    std::vector<double> radii;
    std::vector<long> nums;
    long k_order;
    CharacteristicRecord rec;
    double floquet_oracle_gap = 0;
};

FinderOutcome run_find_instance(const std::vector<double>& radii,
                                const std::vector<long>& nums, long k_order, long periods,
                                const SuiteConfig& cfg) {
    const EllipsoidSurface surf(radii, 1.5);
    const SymmetryDescriptor p = build_symmetry(nums, k_order);
    FinderConfig fc;
    fc.minimize.m = cfg.finder_m;
    fc.minimize.restarts = cfg.finder_restarts;
    fc.minimize.seed = cfg.seed;
    fc.k = periods;
    fc.eps_path = cfg.eps_path;
    const MinimizeResult min_res = minimize_dual_action(surf, p, fc.minimize);
    FinderOutcome out{radii, nums, k_order, recover_and_extend(min_res.best, surf, p, fc,
                                                               &min_res)};

    const CoefficientPath a1 = linearized_coefficients(min_res.best, surf, p);
    const CoefficientPath a_ext = a1.extend_by_symmetry(p, periods);
    const Mat oracle = rk4_monodromy_oracle(a_ext, static_cast<int>(periods) * 6 * cfg.finder_m);
    Eigen::EigenSolver<Mat> es(oracle, false);
    std::vector<Complex> oracle_mults;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        oracle_mults.push_back(es.eigenvalues()(i));
    out.floquet_oracle_gap = match_multiplier_sets(out.rec.multipliers, oracle_mults);
    return out;
}

struct Check {
    bool pass = true;
    int total = 0, failed = 0;
    std::ostringstream detail;
    void expect(bool ok, const std::string& what) {
        ++total;
        if (!ok) {
            ++failed;
            pass = false;
            if (failed <= 6) detail << "; FAIL " << what;
        }
    }
};

CriterionResult finish(int id, std::string name, Check& c, Clock::time_point t0,
                       Json integers = Json::object()) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.pass = c.pass;
    std::ostringstream os;
    os << c.total - c.failed << "/" << c.total << " checks" << c.detail.str();
    r.detail = os.str();
    r.seconds = seconds_since(t0);
    r.integers = std::move(integers);
    return r;
}

// ---------------------------------------------------------------------------
// Criteria

CriterionResult criterion1(const SuiteConfig& cfg) {
    const auto t0 = Clock::now();
    Check c;
    Json indices = Json::array();
    for (const RotationConfig& rc : criterion1_grid()) {
        const SymmetryDescriptor p = build_symmetry(rc.nums, rc.k);
        const CoefficientPath a = CoefficientPath::isotropic(rc.n(), rc.a(), 1.0);
        const EkelandIndexReport rep =
            index_by_crossings(a, p, 1.0, {}, {512, cfg.eps_path, 6});
        const long expected = rotation_closed_form(rc);
        std::ostringstream what;
        what << "n=" << rc.n() << " k=" << rc.k << " a=" << rc.a() << ": " << rep.index
             << " != " << expected;
        c.expect(rep.index == expected, what.str());
        indices.push_back(rep.index);
    }
    return finish(1, "rotation-family closed form (crossing method)", c, t0,
                  Json{{"indices", indices}});
}

CriterionResult criterion2(const SuiteConfig& cfg) {
    const auto t0 = Clock::now();
    Check c;
    GalerkinOptions gopts;
    gopts.max_m = cfg.galerkin_max_m;

    Json cross_idx = Json::array(), gal_idx = Json::array(), nullities = Json::array();
    // Rotation subfamily, n = 2.
    std::vector<std::pair<CoefficientPath, SymmetryDescriptor>> instances;
    for (const RotationConfig& rc : criterion1_grid()) {
        if (rc.n() != 2 || rc.q_num * 1.0 / rc.q_den > 2.0) continue;
        instances.emplace_back(CoefficientPath::isotropic(2, rc.a(), 1.0),
                               build_symmetry(rc.nums, rc.k));
    }
    int skipped = 0;
    for (RandomInstance& ri : criterion2_random_paths(cfg, cfg.random_paths, &skipped))
        instances.emplace_back(std::move(ri.path), build_symmetry(ri.nums, ri.k));

    // Bounded concurrency over instances; results land by index.
    std::vector<std::pair<EkelandIndexReport, EkelandIndexReport>> results(instances.size());
    const size_t workers = static_cast<size_t>(std::max(cfg.workers, 1));
    for (size_t base = 0; base < instances.size(); base += workers) {
        std::vector<std::future<void>> batch;
        for (size_t i = base; i < std::min(base + workers, instances.size()); ++i) {
            batch.push_back(std::async(std::launch::async, [&, i] {
                const auto& [a, p] = instances[i];
                results[i].first =
                    index_by_crossings(a, p, 1.0, {}, {512, cfg.eps_path, 6});
                results[i].second =
                    index_by_galerkin_stabilized(a, p, 1.0, cfg.galerkin_start_m, gopts);
            }));
        }
        for (auto& f : batch) f.get();
    }
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& [cr, gal] = results[i];
        std::ostringstream what;
        what << "instance " << i << ": crossing " << cr.index << "/" << cr.nullity
             << " vs galerkin " << gal.index << "/" << gal.nullity;
        c.expect(cr.index == gal.index, what.str());
        c.expect(cr.nullity == gal.nullity, what.str());
        c.expect(gal.stabilized && gal.m <= cfg.galerkin_max_m, "stabilization by m <= 256");
        cross_idx.push_back(cr.index);
        gal_idx.push_back(gal.index);
        nullities.push_back(cr.nullity);
    }
    c.detail << "; instances=" << instances.size() << " redrawn=" << skipped;
    return finish(2, "cross-method agreement (crossings vs galerkin)", c, t0,
                  Json{{"crossing", cross_idx}, {"galerkin", gal_idx}, {"nullity", nullities}});
}

CriterionResult criterion3(const SuiteConfig& cfg) {
    const auto t0 = Clock::now();
    Check c;
    Json lhs = Json::array(), rhs = Json::array();
    for (const RotationConfig& rc : criterion1_grid()) {
        const SymmetryDescriptor p = build_symmetry(rc.nums, rc.k);
        const CoefficientPath a = CoefficientPath::isotropic(rc.n(), rc.a(), 1.0);
        const Theorem36Result r = theorem36_check(a, p, 1.0, false, {}, {512, cfg.eps_path, 6});
        c.expect(r.pass, "index bridge, rotation instance");
        lhs.push_back(r.lhs.index);
        rhs.push_back(r.nu1_pinv + r.rhs.index);
    }
    int skipped = 0;
    for (RandomInstance& ri : criterion2_random_paths(cfg, cfg.random_paths, &skipped)) {
        const SymmetryDescriptor p = build_symmetry(ri.nums, ri.k);
        const Theorem36Result r =
            theorem36_check(ri.path, p, 1.0, false, {}, {512, cfg.eps_path, 6});
        c.expect(r.pass, "index bridge, random instance");
        lhs.push_back(r.lhs.index);
        rhs.push_back(r.nu1_pinv + r.rhs.index);
    }
    return finish(3, "index bridge: i_1^P = nu_1(P^{-1}) + i_P^E", c, t0,
                  Json{{"lhs", lhs}, {"rhs", rhs}});
}

CriterionResult criterion4(const SuiteConfig& cfg) {
    const auto t0 = Clock::now();
    Check c;
    std::vector<std::pair<CoefficientPath, SymmetryDescriptor>> instances;
    for (const RotationConfig& rc : criterion1_grid()) {
        if (rc.n() != 2 || rc.q_den != 4) continue;  // a small deterministic subset
        instances.emplace_back(CoefficientPath::isotropic(2, rc.a(), 1.0),
                               build_symmetry(rc.nums, rc.k));
    }
    int skipped = 0;
    for (RandomInstance& ri : criterion2_random_paths(cfg, 6, &skipped))
        instances.emplace_back(std::move(ri.path), build_symmetry(ri.nums, ri.k));

    for (const auto& [a, p] : instances) {
        const SymplecticPath g = integrate_fundamental(a, 512, {512, cfg.eps_path, 6});
        const EkelandIndexReport full = index_by_crossings(g, p);
        auto index_at = [&](double s) { return index_by_crossings(g.restrict(s), p).index; };
        auto nullity_at_s = [&](double s) {
            return kernel_count(Mat(g.at(s) - p.matrix()), SymplecticTolerances{}.eps_ker);
        };
        // Monotone ladder with the strengthened step.
        int prev_total = 0, prev_i = 0;
        for (double s : {0.18, 0.37, 0.56, 0.77, 0.94}) {
            const int i = index_at(s);
            c.expect(i >= prev_i, "index monotonicity");
            c.expect(i >= prev_total, "index + nullity monotonicity");
            prev_i = i;
            prev_total = i + nullity_at_s(s);
        }
        // Left continuity and the jump formula at each interior crossing.
        for (size_t ci = 0; ci < full.crossings.size(); ++ci) {
            const double sigma = full.crossings[ci].sigma;
            double gap = std::min(sigma, 1.0 - sigma);
            if (ci > 0) gap = std::min(gap, sigma - full.crossings[ci - 1].sigma);
            if (ci + 1 < full.crossings.size())
                gap = std::min(gap, full.crossings[ci + 1].sigma - sigma);
            const double delta = std::min(0.25 * gap, 0.02);
            if (delta < 1e-6) continue;
            const int at = index_at(sigma);
            c.expect(index_at(sigma - delta) == at, "left continuity");
            c.expect(index_at(sigma + delta) == at + nullity_at_s(sigma),
                     "jump formula");
        }
    }
    return finish(4, "crossing-index structure (monotone, left-continuous, jumps)", c, t0);
}

CriterionResult criterion5(const SuiteConfig& cfg) {
    const auto t0 = Clock::now();
    Check c;
    std::mt19937_64 rng(cfg.seed ^ 0x5u);
    for (int trial = 0; trial < 100; ++trial) {
        const long k = 2 + static_cast<long>(rng() % 7);
        std::vector<long> nums;
        const int n = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) nums.push_back(1 + static_cast<long>(rng() % (k - 1)));
        const SymmetryDescriptor p = build_symmetry(nums, k);
        const double s = 0.5 + static_cast<double>(rng() % 4) * 0.5;
        const PiecewiseControl u = PiecewiseControl::random(2 * n, 32, rng(), s);
        const PiecewiseControl v = PiecewiseControl::random(2 * n, 32, rng(), s);
        c.expect(antisymmetry_residual(u, v, p) <= 1e-10 * u.l2_norm() * v.l2_norm(),
                 "antisymmetry bound");
        c.expect(boundary_residual(u, p) <= 1e-12 * u.l2_norm(), "boundary x(s) = P x(0)");
    }
    return finish(5, "averaging operator antisymmetry and boundary condition", c, t0);
}

CriterionResult criterion6(const SuiteConfig& cfg) {
    const auto t0 = Clock::now();
    Check c;
    // Catalog entries as printed.
    for (int b : {-1, 0, 1}) {
        const SplittingReport s =
            splitting_table({NormalFormFactor::make_N1(1, b)}, Omega::one());
        c.expect(s.plus == (b >= 0 ? 1 : 0) && s.minus == s.plus, "N1(1,b) at 1");
        const SplittingReport sm =
            splitting_table({NormalFormFactor::make_N1(-1, b)}, Omega::from_frac(1, 2));
        c.expect(sm.plus == (b <= 0 ? 1 : 0) && sm.minus == sm.plus, "N1(-1,b) at -1");
    }
    for (long num : {1L, 2L, 4L, 5L, 7L, 9L, 11L}) {
        const AngleFrac th{num, 12};
        const SplittingReport s =
            splitting_table({NormalFormFactor::make_R(th)}, Omega::from_frac(num, 12));
        c.expect(s.plus == 0 && s.minus == 1, "R(theta) at e^{i theta}");
        const SplittingReport sc =
            splitting_table({NormalFormFactor::make_R(th)}, Omega::from_frac(12 - num, 12));
        c.expect(sc.plus == 1 && sc.minus == 0, "R(theta) at e^{-i theta}");
    }
    for (double lam : {2.0, -2.0})
        for (long num : {0L, 3L, 6L}) {
            const SplittingReport s =
                splitting_table({NormalFormFactor::make_D(lam)}, Omega::from_frac(num, 12));
            c.expect(s.plus == 0 && s.minus == 0, "S = 0 off the spectrum");
        }
    // Additivity over diamond products.
    {
        const std::vector<NormalFormFactor> prod = {NormalFormFactor::make_R(AngleFrac{1, 6}),
                                                    NormalFormFactor::make_N1(1, 1),
                                                    NormalFormFactor::make_D(2)};
        const SplittingReport s = splitting_table(prod, Omega::one());
        c.expect(s.plus == 1 && s.minus == 1, "additivity at 1");
    }

    // Limit route vs the catalog difference on rotation instances.
    struct Instance {
        std::vector<long> nums;
        long k;
        std::vector<double> speeds_turns;
    };
    const std::vector<Instance> instances = {
        {{1, 1}, 4, {1.25, 1.25}},       {{1, 1}, 4, {1.25, 0.875}},
        {{1, 3}, 4, {1.125, 0.75}},      {{1, 2}, 3, {4.0 / 3, 0.5}},
        {{2, 3}, 8, {1.5, 1.125}},       {{1, 2}, 6, {7.0 / 6, 5.0 / 6}},
        {{1, 1, 2}, 5, {1.2, 0.8, 0.6}}, {{1, 2, 3}, 6, {7.0 / 6, 5.0 / 6, 0.5}},
        {{3, 2}, 8, {1.0, 0.625}},       {{1, 1}, 2, {0.75, 0.625}},
    };
    Json limit_values = Json::array();
    int agree_count = 0;
    for (const Instance& inst : instances) {
        const SymmetryDescriptor p = build_symmetry(inst.nums, inst.k);
        std::vector<double> rad;
        for (double s : inst.speeds_turns) rad.push_back(kTwoPi * s);
        const CoefficientPath a = CoefficientPath::block_isotropic(rad, 1.0);
        const SymplecticPath g = integrate_fundamental(a, 512, {512, cfg.eps_path, 6});
        const auto pinv_m = rotation_family_pinv_m_factors(p, rad, 1.0);
        const auto pinv = inverse_symmetry_factors(p);
        // Probe each spectrum angle plus one generic point.
        std::vector<Omega> probes;
        for (long num : inst.nums) probes.push_back(Omega::from_frac(num, inst.k));
        for (const NormalFormFactor& f : pinv_m)
            if (f.kind == NormalFormFactor::Kind::R)
                probes.push_back(Omega::from_value(std::polar(1.0, f.theta)));
            else
                probes.push_back(Omega::from_frac(f.lambda > 0 ? 0 : 1, f.lambda > 0 ? 1 : 2));
        probes.push_back(Omega::from_frac(1, 40));
        for (const Omega& w : probes) {
            const SplittingReport lim = splitting_limit(g, p, w);
            const SplittingReport tm = splitting_table(pinv_m, w);
            const SplittingReport tp = splitting_table(pinv, w);
            const bool ok = lim.plus == tm.plus - tp.plus && lim.minus == tm.minus - tp.minus;
            c.expect(ok, "limit vs catalog difference");
            if (ok) ++agree_count;
            limit_values.push_back(Json::array({lim.plus, lim.minus}));
        }
    }
    c.detail << "; limit/table agreements=" << agree_count;
    return finish(6, "splitting-number catalog and limit agreement", c, t0,
                  Json{{"limits", limit_values}});
}

CriterionResult criterion7(const SuiteConfig& cfg) {
    const auto t0 = Clock::now();
    Check c;
    // (ii) conjugation, (iv) block additivity, (v) vanishing off spectra.
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 3}, 8);
    const SymmetryDescriptor p1 = build_symmetry(std::vector<long>{1}, 8);
    const SymmetryDescriptor p2 = build_symmetry(std::vector<long>{3}, 8);
    const std::vector<double> s1{kTwoPi * 9 / 8}, s2{kTwoPi * 5 / 8};
    const CoefficientPath a = CoefficientPath::block_isotropic({s1[0], s2[0]}, 1.0);
    const CoefficientPath a1 = CoefficientPath::block_isotropic(s1, 1.0);
    const CoefficientPath a2 = CoefficientPath::block_isotropic(s2, 1.0);
    const SymplecticPath g = integrate_fundamental(a, 512, {512, cfg.eps_path, 6});
    const SymplecticPath g1 = integrate_fundamental(a1, 512, {512, cfg.eps_path, 6});
    const SymplecticPath g2 = integrate_fundamental(a2, 512, {512, cfg.eps_path, 6});
    for (long num = 0; num < 16; ++num) {
        const Omega w = Omega::from_frac(num, 16);
        const SplittingReport s = splitting_limit(g, p, w);
        const SplittingReport sa = splitting_limit(g1, p1, w);
        const SplittingReport sb = splitting_limit(g2, p2, w);
        c.expect(s.plus == sa.plus + sb.plus && s.minus == sa.minus + sb.minus,
                 "block additivity of P-splitting");
        const SplittingReport sc = splitting_limit(g, p, w.conj());
        c.expect(s.plus == sc.minus && s.minus == sc.plus, "conjugation symmetry");
        if (s.nu_omega_m == 0 && s.nu_omega_pinv == 0)
            c.expect(s.plus == 0 && s.minus == 0, "vanishing off both spectra");
    }
    // Catalog-side conjugation on random factored matrices.
    std::mt19937_64 rng(cfg.seed ^ 0x7u);
    const std::vector<long> ok_angles{1, 2, 3, 4, 5, 7, 8, 9, 10, 11};
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<NormalFormFactor> factors{
            NormalFormFactor::make_R(AngleFrac{ok_angles[rng() % ok_angles.size()], 12}),
            NormalFormFactor::make_N1(rng() % 2 ? 1 : -1, static_cast<int>(rng() % 3) - 1)};
        const Omega w = Omega::from_frac(static_cast<long>(rng() % 24), 24);
        const SplittingReport sw = splitting_table(factors, w);
        const SplittingReport swc = splitting_table(factors, w.conj());
        c.expect(sw.plus == swc.minus && sw.minus == swc.plus, "catalog conjugation");
    }
    return finish(7, "P-splitting properties (conjugation, additivity, vanishing)", c, t0);
}

CriterionResult criterion8(const SuiteConfig& cfg) {
    const auto t0 = Clock::now();
    Check c;
    // Order check on exp(tJ): halving the step cuts the endpoint error by
    // at least 8x across three halvings.
    const CoefficientPath a = CoefficientPath::isotropic(2, 1.0, 2.0);
    const Mat exact = diamond(rotation2(2.0), rotation2(2.0));
    IntegrateOptions fixed;
    fixed.eps_path = 1.0;  // no internal refinement during the order study
    double prev = -1;
    for (int steps : {16, 32, 64, 128}) {
        const double err = max_abs(integrate_fundamental(a, steps, fixed).endpoint() - exact);
        if (prev > 0) {
            std::ostringstream what;
            what << "ratio at " << steps << " steps = " << prev / err;
            c.expect(prev / err >= 8.0, what.str());
        }
        prev = err;
    }
    // Defect at the accepted resolution obeys the committed 1e-9 budget.
    // The instance needs refinement from its starting resolution, so a
    // loosened eps_path makes this row fail instead of silently passing.
    IntegrateOptions prod;
    prod.eps_path = cfg.eps_path;
    const CoefficientPath stiff = CoefficientPath::isotropic(2, 8.0, 1.0);
    const SymplecticPath g = integrate_fundamental(stiff, 64, prod);
    std::ostringstream what;
    what << "symplectic defect " << g.max_defect() << " <= 1e-9 at accepted resolution ("
         << g.times().size() - 1 << " steps)";
    c.expect(g.max_defect() <= 1e-9, what.str());
    return finish(8, "integrator order and defect control", c, t0);
}

std::vector<FinderOutcome> criterion9_run(const SuiteConfig& cfg) {
    std::vector<FinderOutcome> out;
    out.push_back(run_find_instance({1.0, 1.3}, {1, 1}, 4, 4, cfg));
    out.push_back(run_find_instance({1.0, 1.2, 1.5}, {1, 1, 2}, 4, 4, cfg));
    return out;
}

CriterionResult criterion9(const std::vector<FinderOutcome>& finds) {
    const auto t0 = Clock::now();
    Check c;
    Json integers = Json::object();
    const std::vector<std::string> names = {"n2", "n3"};
    for (size_t i = 0; i < finds.size(); ++i) {
        const FinderOutcome& f = finds[i];
        const int two_n = 2 * static_cast<int>(f.radii.size());
        const std::string tag = names[i];
        c.expect(f.rec.grad_norm <= 1e-8 * std::max(1.0, f.rec.control_norm),
                 tag + ": gradient tolerance");
        c.expect(f.rec.residual_rel <= 1e-5, tag + ": trajectory residual");
        c.expect(f.rec.h_drift_rel <= 1e-6, tag + ": H conservation");
        c.expect(f.rec.monodromy_identity_residual <= 1e-6, tag + ": monodromy power identity");
        c.expect(f.rec.i_pe == 0, tag + ": i_P^E = 0 at the minimizer");
        c.expect(f.rec.i_1p == 0, tag + ": i_1^P = 0 at the minimizer");
        c.expect(f.rec.e_height == two_n, tag + ": elliptic height = 2n");
        c.expect(f.rec.classification == "elliptic", tag + ": classification");
        c.expect(f.floquet_oracle_gap <= 1e-5, tag + ": floquet multipliers vs direct oracle");
        integers[tag] = Json{{"i_pe", f.rec.i_pe},
                             {"i_1p", f.rec.i_1p},
                             {"e_height", f.rec.e_height},
                             {"m", f.rec.m},
                             {"k", f.rec.k}};
    }
    return finish(9, "end-to-end elliptic characteristics (n = 2, 3)", c, t0, integers);
}

CriterionResult criterion10(const SuiteConfig& cfg, const std::vector<FinderOutcome>& finds) {
    const auto t0 = Clock::now();
    Check c;
    (void)cfg;
    // Synthetic hyperbolic monodromy: contradiction detected with margin.
    {
        const SymmetryDescriptor p = build_symmetry(std::vector<long>{3, 4}, 12);
        const Mat gamma1 = p.matrix() * diamond(normal_form_N1(1, 1), normal_form_D(2));
        const Theorem12Audit audit = audit_theorem12_chain(gamma1, p);
        c.expect(audit.hypothesis_met, "synthetic: hypothesis recognized");
        c.expect(audit.contradiction && audit.margin >= 1,
                 "synthetic: chain-count vs nullity-bound contradiction detected");
    }
    // Elliptic finder outputs: the hypothesis must be reported as not met.
    for (const FinderOutcome& f : finds) {
        const SymmetryDescriptor p = build_symmetry(f.nums, f.k_order);
        SymplecticTolerances floq;
        floq.eps_u = 2e-2;  // monodromy-resolution circle tolerance
        const Theorem12Audit audit = audit_theorem12_chain(f.rec.period_map, p, floq);
        c.expect(!audit.hypothesis_met, "finder output: hypothesis not met");
        c.expect(audit.transcript.find("hypothesis not met") != std::string::npos,
                 "finder output: transcript states it");
    }
    return finish(10, "hyperbolicity audit (synthetic contradiction, elliptic pass-through)", c,
                  t0);
}

CriterionResult criterion11(const SuiteConfig& cfg, const std::vector<FinderOutcome>& finds) {
    const auto t0 = Clock::now();
    Check c;
    for (const FinderOutcome& f : finds) {
        const EllipsoidSurface surf(f.radii, 1.5);
        const SymmetryDescriptor p = build_symmetry(f.nums, f.k_order);
        std::mt19937_64 rng(cfg.seed ^ 0xbu);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst_grad = 0, worst_hess = 0;
        for (int t = 0; t < 1000; ++t) {
            Vec x(surf.dim());
            for (int d = 0; d < surf.dim(); ++d) x(d) = gauss(rng);
            if (x.norm() < 1e-3) continue;
            const Vec px = p.matrix() * x;
            const HamiltonianEval hx = surf.hamiltonian(x, true);
            const HamiltonianEval hpx = surf.hamiltonian(px, true);
            worst_grad = std::max(worst_grad, (p.matrix() * hx.grad - hpx.grad).norm());
            worst_hess =
                std::max(worst_hess, max_abs(hpx.hess * p.matrix() - p.matrix() * hx.hess));
        }
        c.expect(worst_grad <= 1e-10, "P H'(x) = H'(Px) residual");
        c.expect(worst_hess <= 1e-10, "H''(Px) P = P H''(x) residual");
    }
    return finish(11, "hamiltonian symmetry identities on random points", c, t0);
}

// Deterministic integer extraction used twice by criterion 12.
Json reproducibility_pass(const SuiteConfig& cfg) {
    Json out = Json::object();
    Json rot = Json::array();
    for (const RotationConfig& rc : criterion1_grid()) {
        const SymmetryDescriptor p = build_symmetry(rc.nums, rc.k);
        const CoefficientPath a = CoefficientPath::isotropic(rc.n(), rc.a(), 1.0);
        rot.push_back(index_by_crossings(a, p, 1.0, {}, {512, cfg.eps_path, 6}).index);
    }
    out["rotation_indices"] = std::move(rot);

    Json rnd = Json::array();
    int skipped = 0;
    for (RandomInstance& ri : criterion2_random_paths(cfg, 5, &skipped)) {
        const SymmetryDescriptor p = build_symmetry(ri.nums, ri.k);
        const EkelandIndexReport r = index_by_crossings(ri.path, p, 1.0, {}, {512, cfg.eps_path, 6});
        rnd.push_back(Json::array({r.index, r.nullity}));
    }
    out["random_indices"] = std::move(rnd);

    {
        const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 1}, 4);
        const CoefficientPath a =
            CoefficientPath::block_isotropic({kTwoPi * 1.25, kTwoPi * 0.875}, 1.0);
        Json sp = Json::array();
        for (long num : {0L, 1L, 2L, 3L}) {
            const SplittingReport s = splitting_limit(a, p, Omega::from_frac(num, 8), {}, {},
                                                      {512, cfg.eps_path, 6});
            sp.push_back(Json::array({s.plus, s.minus}));
        }
        out["splitting"] = std::move(sp);
    }
    {
        SuiteConfig small = cfg;
        small.finder_m = 256;
        small.finder_restarts = 4;
        const FinderOutcome f = run_find_instance({1.0, 1.3}, {1, 1}, 4, 4, small);
        out["find"] = Json{{"i_pe", f.rec.i_pe},
                           {"i_1p", f.rec.i_1p},
                           {"e_height", f.rec.e_height},
                           {"classification", f.rec.classification}};
    }
    return out;
}

CriterionResult criterion12(const SuiteConfig& cfg) {
    const auto t0 = Clock::now();
    Check c;
    const std::string first = reproducibility_pass(cfg).dump();
    const std::string second = reproducibility_pass(cfg).dump();
    c.expect(first == second, "byte-identical integer fields across two seeded runs");
    return finish(12, "reproducibility of integer report fields", c, t0,
                  Json{{"digest_length", static_cast<long>(first.size())}});
}

}  // namespace

SuiteReport run_acceptance_suite(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.rows.push_back(criterion1(cfg));
    rep.rows.push_back(criterion2(cfg));
    rep.rows.push_back(criterion3(cfg));
    rep.rows.push_back(criterion4(cfg));
    rep.rows.push_back(criterion5(cfg));
    rep.rows.push_back(criterion6(cfg));
    rep.rows.push_back(criterion7(cfg));
    rep.rows.push_back(criterion8(cfg));
    std::vector<FinderOutcome> finds;
    try {
        const auto t9 = Clock::now();
        finds = criterion9_run(cfg);
        CriterionResult r9 = criterion9(finds);
        r9.seconds += seconds_since(t9);
        rep.rows.push_back(r9);
    } catch (const std::exception& e) {
        CriterionResult r;
        r.id = 9;
        r.name = "end-to-end elliptic characteristics (n = 2, 3)";
        r.pass = false;
        r.detail = std::string("finder failed: ") + e.what();
        rep.rows.push_back(r);
    }
    if (!finds.empty()) {
        rep.rows.push_back(criterion10(cfg, finds));
        rep.rows.push_back(criterion11(cfg, finds));
    } else {
        for (int id : {10, 11}) {
            CriterionResult r;
            r.id = id;
            r.pass = false;
            r.name = id == 10 ? "hyperbolicity audit" : "hamiltonian symmetry identities";
            r.detail = "skipped: criterion 9 produced no records";
            rep.rows.push_back(r);
        }
    }
    rep.rows.push_back(criterion12(cfg));

    rep.all_pass = true;
    rep.integers = Json::object();
    for (const CriterionResult& r : rep.rows) {
        rep.all_pass = rep.all_pass && r.pass;
        rep.integers["criterion_" + std::to_string(r.id)] = r.integers;
    }
    return rep;
}

CriterionResult run_acceptance_criterion(int id, const SuiteConfig& cfg) {
    switch (id) {
        case 1: return criterion1(cfg);
        case 2: return criterion2(cfg);
        case 3: return criterion3(cfg);
        case 4: return criterion4(cfg);
        case 5: return criterion5(cfg);
        case 6: return criterion6(cfg);
        case 7: return criterion7(cfg);
        case 8: return criterion8(cfg);
        case 9: return criterion9(criterion9_run(cfg));
        case 10: return criterion10(cfg, criterion9_run(cfg));
        case 11: return criterion11(cfg, criterion9_run(cfg));
        case 12: return criterion12(cfg);
        default: throw ValidationError("run_acceptance_criterion: id must be 1..12");
    }
}

}  // namespace pindex

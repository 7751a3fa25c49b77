#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pindex/maslov.hpp"

using namespace pindex;

namespace {

const SymmetryDescriptor& quarter_turns() {
    static const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 1}, 4);
    return p;
}

oracle::RotationFamily family_of(const std::vector<long>& nums, long k,
                                 const std::vector<oracle::Frac>& speeds) {
    oracle::RotationFamily fam;
    for (long num : nums) fam.thetas.push_back(oracle::Frac::of(num, k));
    fam.speeds = speeds;
    return fam;
}

CoefficientPath speeds_path(const std::vector<oracle::Frac>& speeds) {
    std::vector<double> rad;
    for (const auto& s : speeds) rad.push_back(kTwoPi * s.value());
    return CoefficientPath::block_isotropic(rad, 1.0);
}

}  // namespace

TEST_CASE("nu_P_omega closed forms") {
    const SymmetryDescriptor& p = quarter_turns();

    // gamma(tau) = P at omega = 1: the zero matrix has full kernel.
    CHECK(nu_P_omega(p.matrix(), p, Omega::one()) == 4);
    // gamma(tau) = I: ker(I - P) = 0.
    CHECK(nu_P_omega(Mat::Identity(4, 4), p, Omega::one()) == 0);
    // gamma(tau) = R(pi)<>R(pi), omega = e^{-i pi/2}: per block
    // det(R(pi) - e^{-i pi/2} R(pi/2)) = (e^{i pi} - e^{-i pi/2} e^{i pi/2})
    //   (e^{-i pi} - e^{-i pi/2} e^{-i pi/2}) = (-2)(0): one kernel direction
    // per block, two in total.
    const Mat m = diamond(rotation2(kPi), rotation2(kPi));
    CHECK(nu_P_omega(m, p, Omega::from_frac(-1, 4)) == 2);
}

TEST_CASE("maslov index on the isotropic family at omega = 1") {
    const SymmetryDescriptor& p = quarter_turns();
    const MaslovReport rep =
        i_P_omega(CoefficientPath::isotropic(2, kTwoPi, 1.0), p, Omega::one());
    CHECK(rep.nu_base == 0);
    CHECK(rep.index == 4);
    CHECK(rep.nu_endpoint == 0);
}

TEST_CASE("maslov base term and interior crossings at omega = i") {
    const SymmetryDescriptor& p = quarter_turns();
    const Omega w = Omega::from_frac(1, 4);  // e^{i pi/2}
    // Base: both angles equal pi/2, so nu_omega(P^{-1}) = 2. Interior
    // crossings of R(2 pi sigma) - i R(pi/2) per block: 2 pi sigma = pi at
    // sigma = 1/2 (one branch each block).
    const MaslovReport rep = i_P_omega(CoefficientPath::isotropic(2, kTwoPi, 1.0), p, w);
    CHECK(rep.nu_base == 2);
    CHECK(rep.index == 4);
    REQUIRE(rep.crossings.size() == 1);
    CHECK(rep.crossings[0].sigma == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(rep.crossings[0].nullity == 2);

    // Horizon before any crossing with an omega away from the base angles.
    const MaslovReport none =
        i_P_omega(CoefficientPath::isotropic(2, 0.5, 1.0), p, Omega::from_frac(1, 3));
    CHECK(none.nu_base == 0);
    CHECK(none.index == 0);
}

TEST_CASE("maslov index against the exact oracle across omega") {
    using oracle::Frac;
    const std::vector<long> nums{1, 3};
    const long k = 8;
    const std::vector<Frac> speeds{Frac{5, 4}, Frac{7, 8}};
    const SymmetryDescriptor p = build_symmetry(nums, k);
    const oracle::RotationFamily fam = family_of(nums, k, speeds);
    const CoefficientPath a = speeds_path(speeds);
    const SymplecticPath g = integrate_fundamental(a, 512);

    for (long num = 0; num < 2 * k; ++num) {
        const Omega w = Omega::from_frac(num, 2 * k);
        const long expected = oracle::maslov_index(fam, Frac::of(num, 2 * k), Frac{1, 1});
        CAPTURE(num);
        const MaslovReport rep = i_P_omega(g, p, w);
        CHECK(rep.index == expected);
        CHECK(rep.index >= rep.nu_base);  // the base term is a lower bound
    }
}

TEST_CASE("index bridge on rotation and random families") {
    const SymmetryDescriptor& p = quarter_turns();
    for (double a : {1.0, 2.0, kPi, 5.0, kTwoPi, 7.5, 3 * kPi}) {
        const Theorem36Result r =
            theorem36_check(CoefficientPath::isotropic(2, a, 1.0), p, 1.0);
        CAPTURE(a);
        CHECK(r.pass);
        CHECK(r.nu1_pinv == 0);
    }
    // Random smooth coefficients, including the Galerkin route.
    for (unsigned long long seed : {11ull, 12ull, 13ull}) {
        const CoefficientPath a = CoefficientPath::random_smooth(2, seed, 1.0, 0.5, 3, 1.0);
        const Theorem36Result r = theorem36_check(a, p, 1.0, /*with_galerkin=*/true);
        CAPTURE(seed);
        CHECK(r.pass);
    }
}

TEST_CASE("splitting table reproduces the catalog") {
    // R(theta) at its own eigenvalues.
    const auto r3 = NormalFormFactor::make_R(AngleFrac{1, 6});  // theta = pi/3
    SplittingReport s = splitting_table({r3}, Omega::from_frac(1, 6));
    CHECK(s.plus == 0);
    CHECK(s.minus == 1);
    s = splitting_table({r3}, Omega::from_frac(-1, 6));
    CHECK(s.plus == 1);
    CHECK(s.minus == 0);
    s = splitting_table({r3}, Omega::one());  // off the spectrum
    CHECK(s.plus == 0);
    CHECK(s.minus == 0);

    // N1(1, a) at 1: S^+ = [a >= 0], and S^- matches by conjugation at 1.
    for (int b : {-1, 0, 1}) {
        s = splitting_table({NormalFormFactor::make_N1(1, b)}, Omega::one());
        CHECK(s.plus == (b >= 0 ? 1 : 0));
        CHECK(s.minus == s.plus);
    }
    // N1(-1, a) at -1: S^+ = [a <= 0].
    for (int b : {-1, 0, 1}) {
        s = splitting_table({NormalFormFactor::make_N1(-1, b)}, Omega::from_frac(1, 2));
        CHECK(s.plus == (b <= 0 ? 1 : 0));
        CHECK(s.minus == s.plus);
    }
    // D(+-2): no unit-circle spectrum.
    for (double lam : {2.0, -2.0}) {
        s = splitting_table({NormalFormFactor::make_D(lam)}, Omega::one());
        CHECK(s.plus == 0);
        CHECK(s.minus == 0);
    }
    // Additivity over the diamond product.
    const std::vector<NormalFormFactor> prod = {r3, NormalFormFactor::make_N1(1, 1),
                                                NormalFormFactor::make_D(2)};
    s = splitting_table(prod, Omega::one());
    CHECK(s.plus == 1);
    CHECK(s.minus == 1);
    s = splitting_table(prod, Omega::from_frac(1, 6));
    CHECK(s.plus == 0);
    CHECK(s.minus == 1);
}

TEST_CASE("table conjugation symmetry S^+(omega) = S^-(conj omega)") {
    std::mt19937_64 rng(77);
    const std::vector<long> allowed{1, 2, 3, 4, 5, 7, 8, 9, 10, 11};  // skip theta = pi
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<NormalFormFactor> factors;
        factors.push_back(NormalFormFactor::make_R(AngleFrac{allowed[rng() % allowed.size()], 12}));
        factors.push_back(NormalFormFactor::make_N1(rng() % 2 ? 1 : -1,
                                                    static_cast<int>(rng() % 3) - 1));
        const Omega w = Omega::from_frac(static_cast<long>(rng() % 12), 12);
        const SplittingReport sw = splitting_table(factors, w);
        const SplittingReport swc = splitting_table(factors, w.conj());
        CHECK(sw.plus == swc.minus);
        CHECK(sw.minus == swc.plus);
    }
}

TEST_CASE("splitting limit vanishes off both spectra") {
    const SymmetryDescriptor& p = quarter_turns();
    const std::vector<oracle::Frac> speeds{{5, 4}, {7, 8}};
    const CoefficientPath a = speeds_path(speeds);
    // omega = e^{2 pi i 5/16} is in neither sigma(P^{-1}M) nor sigma(P^{-1}).
    const SplittingReport s = splitting_limit(a, p, Omega::from_frac(5, 16));
    CHECK(s.plus == 0);
    CHECK(s.minus == 0);
    CHECK(s.stabilized);
}

TEST_CASE("splitting limit against the exact oracle and the catalog") {
    using oracle::Frac;
    struct Instance {
        std::vector<long> nums;
        long k;
        std::vector<Frac> speeds;
    };
    const std::vector<Instance> instances = {
        {{1, 1}, 4, {Frac{5, 4}, Frac{5, 4}}},   {{1, 1}, 4, {Frac{5, 4}, Frac{7, 8}}},
        {{1, 3}, 4, {Frac{9, 8}, Frac{3, 4}}},   {{1, 2}, 3, {Frac{4, 3}, Frac{1, 2}}},
        {{2, 3}, 8, {Frac{3, 2}, Frac{9, 8}}},   {{1, 2}, 6, {Frac{7, 6}, Frac{5, 6}}},
        {{1, 1, 2}, 5, {Frac{6, 5}, Frac{4, 5}, Frac{3, 5}}},
        {{1, 2, 3}, 6, {Frac{7, 6}, Frac{5, 6}, Frac{1, 2}}},
        {{3, 2}, 8, {Frac{1, 1}, Frac{5, 8}}},   {{1, 1}, 2, {Frac{3, 4}, Frac{5, 8}}},
    };
    int checked = 0;
    for (const Instance& inst : instances) {
        const SymmetryDescriptor p = build_symmetry(inst.nums, inst.k);
        const oracle::RotationFamily fam = family_of(inst.nums, inst.k, inst.speeds);
        const CoefficientPath a = speeds_path(inst.speeds);
        const SymplecticPath g = integrate_fundamental(a, 512);
        const std::vector<NormalFormFactor> pinv_m_factors = [&] {
            std::vector<double> rad;
            for (const auto& s : inst.speeds) rad.push_back(kTwoPi * s.value());
            return rotation_family_pinv_m_factors(p, rad, 1.0);
        }();

        // Probe the spectrum angles of P^{-1} and P^{-1}M plus one generic point.
        std::vector<Frac> probes;
        for (long num : inst.nums) probes.push_back(Frac::of(num, inst.k));
        for (size_t j = 0; j < inst.speeds.size(); ++j)
            probes.push_back((inst.speeds[j] - Frac::of(inst.nums[j], inst.k)).mod1());
        probes.push_back(Frac{1, 40});
        for (const Frac& w : probes) {
            const Omega omega = Omega::from_frac(w.num, w.den);
            const auto [op, om] = oracle::splitting(fam, w.mod1(), Frac{1, 1});
            const SplittingReport lim = splitting_limit(g, p, omega);
            CAPTURE(w.num);
            CAPTURE(w.den);
            CHECK(lim.plus == op);
            CHECK(lim.minus == om);

            // Catalog route: _PS = S_{P^{-1}M} - S_{P^{-1}}.
            const SplittingReport t_m = splitting_table(pinv_m_factors, omega);
            const SplittingReport t_p = splitting_table(inverse_symmetry_factors(p), omega);
            CHECK(lim.plus == t_m.plus - t_p.plus);
            CHECK(lim.minus == t_m.minus - t_p.minus);
            ++checked;
        }
    }
    CHECK(checked >= 10);
}

TEST_CASE("conjugation flips the P-splitting pair") {
    const SymmetryDescriptor& p = quarter_turns();
    const std::vector<oracle::Frac> speeds{{5, 4}, {7, 8}};
    const CoefficientPath a = speeds_path(speeds);
    const SymplecticPath g = integrate_fundamental(a, 512);
    for (long num : {1L, 3L, 5L, 2L}) {
        const Omega w = Omega::from_frac(num, 8);
        const SplittingReport sw = splitting_limit(g, p, w);
        const SplittingReport swc = splitting_limit(g, p, w.conj());
        CAPTURE(num);
        CHECK(sw.plus == swc.minus);
        CHECK(sw.minus == swc.plus);
    }
}

TEST_CASE("P-splitting additivity over block splits") {
    using oracle::Frac;
    // P = P1 <> P2 and M = M1 <> M2 with per-block rotation data.
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 3}, 8);
    const SymmetryDescriptor p1 = build_symmetry(std::vector<long>{1}, 8);
    const SymmetryDescriptor p2 = build_symmetry(std::vector<long>{3}, 8);
    const std::vector<Frac> speeds{{9, 8}, {5, 8}};
    const CoefficientPath a = speeds_path(speeds);
    const CoefficientPath a1 = speeds_path({speeds[0]});
    const CoefficientPath a2 = speeds_path({speeds[1]});
    for (long num = 0; num < 16; ++num) {
        const Omega w = Omega::from_frac(num, 16);
        const SplittingReport s = splitting_limit(a, p, w);
        const SplittingReport s1 = splitting_limit(a1, p1, w);
        const SplittingReport s2 = splitting_limit(a2, p2, w);
        CAPTURE(num);
        CHECK(s.plus == s1.plus + s2.plus);
        CHECK(s.minus == s1.minus + s2.minus);
    }
}

TEST_CASE("lemma34i_check wraps the comparison") {
    const SymmetryDescriptor& p = quarter_turns();
    const std::vector<oracle::Frac> speeds{{5, 4}, {7, 8}};
    std::vector<double> rad;
    for (const auto& s : speeds) rad.push_back(kTwoPi * s.value());
    const CoefficientPath a = speeds_path(speeds);
    const auto factors = rotation_family_pinv_m_factors(p, rad, 1.0);
    const Lemma34iResult r = lemma34i_check(a, p, factors, Omega::one());
    CHECK(r.pass);
}

TEST_CASE("unsupported factors are rejected by the table") {
    CHECK_THROWS_AS(NormalFormFactor::make_R(0.0), ValidationError);
    CHECK_THROWS_AS(NormalFormFactor::make_R(kPi), ValidationError);
    CHECK_THROWS_AS(NormalFormFactor::make_D(1.0), ValidationError);
    // N2 blocks have no catalog entries.
    Mat d2(2, 2);
    d2 << 1, 0, 0, 2;
    const Mat b = rotation2(kPi / 3) * d2;
    CHECK_THROWS_AS(NormalFormFactor::make_N2(kPi / 3, b), ValidationError);
}

TEST_CASE("splitting bound 0 <= S <= nu on the catalog") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<NormalFormFactor> factors;
        Mat m = Mat::Zero(0, 0);
        const int nf = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < nf; ++i) {
            switch (rng() % 3) {
                case 0: {
                    const std::vector<long> ok{1, 2, 3, 4, 5, 7, 8, 9, 10, 11};
                    factors.push_back(NormalFormFactor::make_R(AngleFrac{ok[rng() % ok.size()], 12}));
                    break;
                }
                case 1:
                    factors.push_back(NormalFormFactor::make_D(rng() % 2 ? 2.0 : -2.0));
                    break;
                default:
                    factors.push_back(NormalFormFactor::make_N1(rng() % 2 ? 1 : -1,
                                                                static_cast<int>(rng() % 3) - 1));
            }
            m = diamond(m, factors.back().matrix());
        }
        const Omega w = Omega::from_frac(static_cast<long>(rng() % 24), 24);
        const SplittingReport s = splitting_table(factors, w);
        const int nu = nu_omega(m, w);
        CHECK(s.plus >= 0);
        CHECK(s.minus >= 0);
        CHECK(s.plus <= nu);
        CHECK(s.minus <= nu);
    }
}

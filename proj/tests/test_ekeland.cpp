#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pindex/ekeland.hpp"

using namespace pindex;

namespace {

const SymmetryDescriptor& quarter_turns() {
    static const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 1}, 4);
    return p;
}

}  // namespace

TEST_CASE("nullity_at closed forms") {
    const SymmetryDescriptor& p = quarter_turns();

    // gamma(1) = R(2pi)^{<>2} = I and ker(I - P) = 0.
    CHECK(nullity_at(CoefficientPath::isotropic(2, kTwoPi, 1.0), p, 1.0) == 0);
    // gamma(1) = R(pi/2)^{<>2} = P: full kernel.
    CHECK(nullity_at(CoefficientPath::isotropic(2, kPi / 2, 1.0), p, 1.0) == 4);
    // s -> 0+: ker(I - P) = 0 always.
    CHECK(nullity_at(CoefficientPath::isotropic(2, kTwoPi, 1.0), p, 1e-4) == 0);
    CHECK_THROWS_AS(nullity_at(CoefficientPath::isotropic(2, 1.0, 1.0), p, 0.0),
                    ValidationError);
}

TEST_CASE("crossing index on the isotropic family") {
    const SymmetryDescriptor& p = quarter_turns();

    // a = 2pi: one interior crossing where 2 pi sigma = pi/2, both planes at
    // once, nullity 4; endpoint gamma(1) = I is off the kernel set.
    const EkelandIndexReport rep =
        index_by_crossings(CoefficientPath::isotropic(2, kTwoPi, 1.0), p, 1.0);
    CHECK(rep.index == 4);
    CHECK(rep.nullity == 0);
    REQUIRE(rep.crossings.size() == 1);
    CHECK(rep.crossings[0].sigma == doctest::Approx(0.25).epsilon(1e-7));
    CHECK(rep.crossings[0].nullity == 4);
    CHECK(rep.crossings[0].residual < 1e-7);

    // a = pi/2: the only kernel point is the endpoint; open interval leaves
    // index 0 and reports the nullity separately.
    const EkelandIndexReport end =
        index_by_crossings(CoefficientPath::isotropic(2, kPi / 2, 1.0), p, 1.0);
    CHECK(end.index == 0);
    CHECK(end.nullity == 4);
    CHECK(end.crossings.empty());

    // Horizon strictly before the first crossing.
    const EkelandIndexReport small =
        index_by_crossings(CoefficientPath::isotropic(2, kTwoPi, 1.0), p, 0.2);
    CHECK(small.index == 0);
    CHECK(small.nullity == 0);
}

TEST_CASE("crossing index against the exact oracle on a grid") {
    using oracle::Frac;
    // Angles theta = 2 pi p/k; speeds rational turns; exact counting oracle.
    struct Config {
        std::vector<long> nums;
        long k;
        Frac speed;  // turns per unit, same in every plane
    };
    const std::vector<Config> grid = {
        {{1}, 4, Frac{1, 1}},      {{1}, 4, Frac{7, 8}},     {{1, 1}, 4, Frac{5, 4}},
        {{1, 3}, 4, Frac{9, 8}},   {{1, 2}, 3, Frac{4, 3}},  {{2, 3}, 8, Frac{3, 2}},
        {{1, 2, 3}, 6, Frac{7, 6}}, {{1, 1, 2}, 5, Frac{2, 1}},
    };
    for (const Config& c : grid) {
        const SymmetryDescriptor p = build_symmetry(c.nums, c.k);
        oracle::RotationFamily fam;
        for (long num : c.nums) fam.thetas.push_back(Frac::of(num, c.k));
        for (size_t j = 0; j < c.nums.size(); ++j) fam.speeds.push_back(c.speed);
        const long expected = oracle::ekeland_index(fam, Frac{1, 1});

        const double a = kTwoPi * c.speed.value();
        const EkelandIndexReport rep = index_by_crossings(
            CoefficientPath::isotropic(static_cast<int>(c.nums.size()), a, 1.0), p, 1.0);
        CAPTURE(c.k);
        CAPTURE(a);
        CHECK(rep.index == expected);
    }
}

TEST_CASE("degenerate crossings are flagged and still summed") {
    const SymmetryDescriptor& p = quarter_turns();
    // Two planes crossing 4e-7 apart in sigma: below the gap floor.
    const double a1 = kPi / 2 / 0.5;
    const double a2 = a1 * (1.0 + 8e-7);
    const CoefficientPath a = CoefficientPath::block_isotropic({a1, a2}, 1.0);
    const EkelandIndexReport rep = index_by_crossings(a, p, 1.0);
    CHECK(rep.index == 4);
    bool any_degenerate = false;
    for (const Crossing& c : rep.crossings) any_degenerate |= c.degenerate;
    CHECK(any_degenerate);
}

TEST_CASE("antisymmetry and boundary identities of Pi") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const long k = 2 + static_cast<long>(rng() % 7);
        std::vector<long> nums;
        const int n = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) nums.push_back(1 + static_cast<long>(rng() % (k - 1)));
        const SymmetryDescriptor p = build_symmetry(nums, k);
        const double s = 0.25 + 0.5 * static_cast<double>(rng() % 8);
        const PiecewiseControl u = PiecewiseControl::random(2 * n, 32, rng(), s);
        const PiecewiseControl v = PiecewiseControl::random(2 * n, 32, rng(), s);
        const double bound = 1e-10 * u.l2_norm() * v.l2_norm();
        CHECK(antisymmetry_residual(u, v, p) <= bound);
        CHECK(boundary_residual(u, p) <= 1e-12 * u.l2_norm());
    }
    // u = 0 edge case.
    const PiecewiseControl z = PiecewiseControl::zero(4, 16);
    CHECK(antisymmetry_residual(z, z, quarter_turns()) == 0.0);
}

TEST_CASE("galerkin form matches the crossing index on the isotropic family") {
    const SymmetryDescriptor& p = quarter_turns();
    const CoefficientPath a = CoefficientPath::isotropic(2, kTwoPi, 1.0);
    const EkelandIndexReport rep = index_by_galerkin(a, p, 1.0, 64);
    CHECK(rep.index == 4);
    CHECK(rep.nullity == 0);

    // Below the first crossing the form is positive definite at any m.
    const CoefficientPath small = CoefficientPath::isotropic(2, 1.0, 1.0);
    const EkelandIndexReport pos = index_by_galerkin(small, p, 1.0, 32);
    CHECK(pos.index == 0);
    CHECK(pos.nullity == 0);

    // Endpoint-degenerate instance: nullity 4 must be visible in the
    // near-zero band at moderate m.
    const CoefficientPath endp = CoefficientPath::isotropic(2, kPi / 2, 1.0);
    const EkelandIndexReport nul = index_by_galerkin(endp, p, 1.0, 64);
    CHECK(nul.index == 0);
    CHECK(nul.nullity == 4);
}

TEST_CASE("galerkin stabilization is monotone and converges") {
    const SymmetryDescriptor& p = quarter_turns();
    const CoefficientPath a = CoefficientPath::isotropic(2, kTwoPi, 1.0);
    const EkelandIndexReport r64 = index_by_galerkin(a, p, 1.0, 64);
    const EkelandIndexReport r128 = index_by_galerkin(a, p, 1.0, 128);
    CHECK(r128.negative_count >= r64.negative_count);  // nested subspaces
    const EkelandIndexReport st = index_by_galerkin_stabilized(a, p, 1.0, 64);
    CHECK(st.stabilized);
    CHECK(st.index == 4);
}

TEST_CASE("galerkin rejects an ill-conditioned boundary operator") {
    // theta = 2pi/k with huge k: ||(P - I)^{-1}|| ~ k/(2 pi) > 1e12. Such a
    // P fails default validation, so loosen the kernel tolerance to build it.
    SymplecticTolerances loose;
    loose.eps_ker = 1e-16;
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1}, 10000000000000L, loose);
    const CoefficientPath a = CoefficientPath::isotropic(1, 1.0, 1.0);
    CHECK_THROWS_AS(index_by_galerkin(a, p, 1.0, 16), NumericError);
}

TEST_CASE("scaling invariance: index computed on [0,s] and on the rescaled [0,1]") {
    const SymmetryDescriptor& p = quarter_turns();
    const double s = 1.7;
    const CoefficientPath a = CoefficientPath::random_smooth(2, 31, 0.9, 0.5, 3, s);
    // Rescaled coefficients: A1(t) = s A(st) on [0, 1].
    const CoefficientPath a1 = CoefficientPath::from_callback(
        4, 1.0, [&a, s](double t) { return Mat(s * a(s * t)); });
    const EkelandIndexReport lhs = index_by_crossings(a, p, s);
    const EkelandIndexReport rhs = index_by_crossings(a1, p, 1.0);
    CHECK(lhs.index == rhs.index);
    CHECK(lhs.nullity == rhs.nullity);

    // The same invariance through the quadratic form itself.
    const EkelandIndexReport gal_s = index_by_galerkin(a, p, s, 96);
    const EkelandIndexReport gal_1 = index_by_galerkin(a1, p, 1.0, 96);
    CHECK(gal_s.index == gal_1.index);
    CHECK(gal_s.index == lhs.index);
}

TEST_CASE("monotonicity, left continuity and the jump formula along sigma") {
    const SymmetryDescriptor& p = quarter_turns();
    const CoefficientPath a = CoefficientPath::isotropic(2, 3 * kPi, 1.0);
    // Crossings of the a = 3pi family sit where 3 pi sigma = pi/2 + 2 pi m:
    // sigma in {1/6, 5/6}, both planes at once (nullity 4 each).
    const SymplecticPath g = integrate_fundamental(a.restrict(1.0), 512);

    auto index_at = [&](double s) { return index_by_crossings(g.restrict(s), p).index; };
    auto nullity_of = [&](double s) {
        return kernel_count(Mat(g.at(s) - p.matrix()), SymplecticTolerances{}.eps_ker);
    };

    const std::vector<double> ladder = {0.05, 0.1, 0.3, 0.45, 0.62, 0.7, 0.95};
    int prev_i = 0, prev_total = 0;
    for (double s : ladder) {
        const int i = index_at(s);
        CHECK(i >= prev_i);
        CHECK(i >= prev_total);  // i(s1) + nu(s1) <= i(s2)
        prev_i = i;
        prev_total = i + nullity_of(s);
    }

    const double sigma_star = 1.0 / 6.0;
    const double delta = 0.02;
    const int before = index_at(sigma_star - delta);
    const int at = index_at(sigma_star);
    const int after = index_at(sigma_star + delta);
    CHECK(before == at);                          // left continuity
    CHECK(after == at + nullity_of(sigma_star));  // jump formula
    CHECK(nullity_of(sigma_star) == 4);
}

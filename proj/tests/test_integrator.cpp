#include <doctest.h>

#include "pindex/path.hpp"

using namespace pindex;

namespace {

// exp(tJ) = R(t)^{<>n}: the closed-form fundamental solution of A = I.
Mat rotation_diamond(const std::vector<double>& angles) {
    std::vector<Mat> blocks;
    for (double a : angles) blocks.push_back(rotation2(a));
    return diamond(blocks);
}

}  // namespace

TEST_CASE("isotropic coefficients integrate to the rotation family") {
    const CoefficientPath a = CoefficientPath::isotropic(2, 1.0, kPi / 2);
    const SymplecticPath g = integrate_fundamental(a, 64);
    CHECK(max_abs(g.endpoint() - rotation_diamond({kPi / 2, kPi / 2})) < 1e-8);
    CHECK(g.max_defect() <= 1e-9);
}

TEST_CASE("block isotropic coefficients decouple per plane") {
    const std::vector<double> speeds{0.7, 1.9, 3.1};
    const CoefficientPath a = CoefficientPath::block_isotropic(speeds, 1.0);
    const SymplecticPath g = integrate_fundamental(a, 256);
    for (double t : {0.25, 0.5, 1.0}) {
        std::vector<double> angles;
        for (double s : speeds) angles.push_back(s * t);
        CHECK(max_abs(g.at(t) - rotation_diamond(angles)) < 1e-9);
    }
}

TEST_CASE("zero horizon gives the identity path") {
    const CoefficientPath a = CoefficientPath::isotropic(1, 1.0, 0.0);
    const SymplecticPath g = integrate_fundamental(a, 64);
    CHECK(g.times().size() == 1);
    CHECK(max_abs(g.endpoint() - Mat::Identity(2, 2)) == 0.0);
}

TEST_CASE("fourth order convergence on the rotation family") {
    const CoefficientPath a = CoefficientPath::isotropic(1, 1.0, 2.0);
    const Mat exact = rotation2(2.0);
    IntegrateOptions opts;
    opts.eps_path = 1.0;  // disable defect-driven refinement for this check
    double prev = -1;
    for (int steps : {16, 32, 64, 128}) {
        const double err = max_abs(integrate_fundamental(a, steps, opts).endpoint() - exact);
        if (prev > 0) CHECK(prev / err >= 8.0);
        prev = err;
    }
}

TEST_CASE("defect target unreachable raises a diagnostic") {
    const CoefficientPath a = CoefficientPath::isotropic(1, 2000.0, 1.0);
    IntegrateOptions opts;
    opts.steps = 16;
    opts.max_doublings = 1;
    opts.eps_path = 1e-14;
    CHECK_THROWS_AS(integrate_fundamental(a, opts.steps, opts), NumericError);
}

TEST_CASE("restrict endpoints") {
    const CoefficientPath a = CoefficientPath::isotropic(2, 1.0, 4.0);
    const SymplecticPath g = integrate_fundamental(a, 512);

    const SymplecticPath full = g.restrict(4.0);
    CHECK(max_abs(full.endpoint() - g.endpoint()) == 0.0);

    const SymplecticPath half = g.restrict(kPi);
    CHECK(max_abs(half.endpoint() + Mat::Identity(4, 4)) < 1e-8);

    // Off-grid restriction agrees with one-step re-integration.
    const double s = 4.0 * (137.5 / 512.0);
    const SymplecticPath mid = g.restrict(s);
    const SymplecticPath re = integrate_fundamental(a.restrict(s), 512);
    CHECK(max_abs(mid.endpoint() - re.endpoint()) < 1e-8);
    CHECK_THROWS_AS(g.restrict(0.0), ValidationError);
    CHECK_THROWS_AS(g.restrict(4.5), ValidationError);
}

TEST_CASE("cocycle property on a random smooth path") {
    const CoefficientPath a = CoefficientPath::random_smooth(1, 99, 0.8, 0.4, 3, 1.0);
    const SymplecticPath g = integrate_fundamental(a, 512);
    const double s = 0.25, t = 0.75;
    const Mat prop = g.at(t) * g.at(s).inverse();
    const SymplecticPath shifted = integrate_fundamental(a.shifted(s).restrict(t - s), 512);
    CHECK(max_abs(prop - shifted.endpoint()) < 10 * 1e-7);
}

TEST_CASE("symmetry extension closes the rotation family") {
    // gamma(1) = R(pi/2)^{<>2} = P, so gamma(4) = (P^{-1}gamma(1))^4 = I.
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 1}, 4);
    const CoefficientPath a = CoefficientPath::isotropic(2, kPi / 2, 1.0);
    const SymplecticPath g1 = integrate_fundamental(a, 256);
    const CoefficientPath a4 = a.extend_by_symmetry(p, 4);
    const SymplecticPath g4 = extend_path_by_symmetry(g1, p, 4, &a4);
    CHECK(g4.tau() == doctest::Approx(4.0));
    CHECK(max_abs(g4.endpoint() - Mat::Identity(4, 4)) < 1e-8);

    // Two-route check: direct integration over the extended coefficients.
    const SymplecticPath direct = integrate_fundamental(a4, 1024);
    CHECK(max_abs(direct.endpoint() - g4.endpoint()) < 1e-8);
    for (double t : {0.5, 1.5, 2.25, 3.75})
        CHECK(max_abs(direct.at(t) - g4.at(t)) < 1e-8);
}

TEST_CASE("extension with P = -I squares the period map") {
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 1}, 2);  // -I4
    const CoefficientPath a = CoefficientPath::random_smooth(2, 7, 0.6, 0.5, 2, 1.0);
    const SymplecticPath g1 = integrate_fundamental(a, 512);
    // A is 1-periodic by construction of the trig draw; P = -I commutes.
    const CoefficientPath a2 = a.extend_by_symmetry(p, 2);
    const SymplecticPath g2 = extend_path_by_symmetry(g1, p, 2, &a2);
    CHECK(max_abs(g2.endpoint() - g1.endpoint() * g1.endpoint()) < 1e-9);
    const SymplecticPath direct = integrate_fundamental(a2, 1024);
    CHECK(max_abs(direct.endpoint() - g2.endpoint()) < 1e-7);
}

TEST_CASE("symmetry precondition violations are reported with a location") {
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1}, 4);
    // A(t) = R-invariant only at t = 0; conjugation symmetry fails.
    auto eval = [](double t) {
        Mat m(2, 2);
        m << 2.0 + t, 0.3 * t, 0.3 * t, 1.0;
        return m;
    };
    const CoefficientPath a = CoefficientPath::from_callback(2, 1.0, eval);
    const SymplecticPath g1 = integrate_fundamental(a, 128);
    // Claimed full-path coefficients that ignore the conjugation rule.
    const CoefficientPath a_bad =
        CoefficientPath::from_callback(2, 4.0, [eval](double t) { return eval(t / 4.0); });
    CHECK_THROWS_WITH_AS(extend_path_by_symmetry(g1, p, 4, &a_bad),
                         doctest::Contains("violated at t ="), ValidationError);
}

TEST_CASE("identity path extends to the identity") {
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 3}, 6);
    // gamma == I on a synthetic grid (no coefficients attached).
    const CoefficientPath tiny = CoefficientPath::isotropic(2, 1e-8, 1.0);
    const SymplecticPath g1 = integrate_fundamental(tiny, 16);
    const SymplecticPath g = extend_path_by_symmetry(g1, p, 6);
    CHECK(max_abs(g.endpoint() - Mat::Identity(4, 4)) < 1e-6);
    for (double t : {1.5, 3.0, 5.5}) CHECK(max_abs(g.at(t) - Mat::Identity(4, 4)) < 1e-6);
}

TEST_CASE("defect grows at most linearly in step count at fixed step size") {
    // Same h, growing horizon: the accumulated defect stays within a
    // linear envelope of the per-step contribution.
    IntegrateOptions opts;
    opts.eps_path = 1.0;
    const double h = 1.0 / 64.0;
    std::vector<double> defects;
    for (double tau : {1.0, 2.0, 4.0}) {
        const CoefficientPath a = CoefficientPath::isotropic(1, 3.0, tau);
        const SymplecticPath g = integrate_fundamental(a, static_cast<int>(tau / h), opts);
        defects.push_back(g.max_defect());
    }
    CHECK(defects[1] <= 2.5 * defects[0]);
    CHECK(defects[2] <= 4.5 * defects[0]);
}

TEST_CASE("defect stays bounded across extension segments") {
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 1}, 4);
    const CoefficientPath a = CoefficientPath::isotropic(2, 2.2, 1.0);
    const SymplecticPath g1 = integrate_fundamental(a, 256);
    const SymplecticPath g4 = extend_path_by_symmetry(g1, p, 4);
    CHECK(g4.max_defect() <= 4 * 1e-9 * 100);
}

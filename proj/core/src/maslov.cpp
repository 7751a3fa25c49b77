#include "pindex/maslov.hpp"

#include <cmath>

namespace pindex {

int nu_P_omega(const Mat& gamma_end, const SymmetryDescriptor& p, const Omega& omega,
               const SymplecticTolerances& tol) {
    if (std::abs(std::abs(omega.value) - 1.0) > tol.eps_u)
        throw ValidationError("nu_P_omega: omega must lie on the unit circle");
    const CMat target = omega.value * p.matrix().cast<Complex>();
    return kernel_count(CMat(gamma_end.cast<Complex>() - target), tol.eps_ker);
}

MaslovReport i_P_omega(const SymplecticPath& gamma, const SymmetryDescriptor& p,
                       const Omega& omega, const CrossingScanConfig& scan,
                       const SymplecticTolerances& tol) {
    if (std::abs(std::abs(omega.value) - 1.0) > tol.eps_u)
        throw ValidationError("i_P_omega: omega must lie on the unit circle");
    if (gamma.dim() != 2 * p.n()) throw ValidationError("i_P_omega: dimension mismatch");

    MaslovReport rep;
    rep.omega = omega;
    rep.horizon = gamma.tau();
    rep.nu_base = p.nu_omega_inverse(omega);

    const CMat target = omega.value * p.matrix().cast<Complex>();
    const auto f = complex_kernel_evaluator(gamma, target);
    const CrossingScanResult res = scan_kernel_crossings(f, gamma.tau(), scan, tol.eps_ker);
    rep.crossings = res.interior;
    rep.near_miss = res.near_miss;
    rep.nu_endpoint = res.endpoint_nullity;
    rep.index = rep.nu_base;
    for (const Crossing& c : rep.crossings) rep.index += c.nullity;
    return rep;
}

MaslovReport i_P_omega(const CoefficientPath& a, const SymmetryDescriptor& p, const Omega& omega,
                       const CrossingScanConfig& scan, const IntegrateOptions& iopts,
                       const SymplecticTolerances& tol) {
    const SymplecticPath gamma = integrate_fundamental(a, iopts.steps, iopts);
    return i_P_omega(gamma, p, omega, scan, tol);
}

Theorem36Result theorem36_check(const CoefficientPath& a, const SymmetryDescriptor& p, double s,
                                bool with_galerkin, const CrossingScanConfig& scan,
                                const IntegrateOptions& iopts, const SymplecticTolerances& tol) {
    Theorem36Result out;
    const CoefficientPath as = a.restrict(s);
    const SymplecticPath gamma = integrate_fundamental(as, iopts.steps, iopts);
    out.lhs = i_P_omega(gamma, p, Omega::one(), scan, tol);
    out.rhs = index_by_crossings(gamma, p, scan, tol);
    out.nu1_pinv = p.nu_omega_inverse(Omega::one());
    out.pass = out.lhs.index == out.nu1_pinv + out.rhs.index;
    if (with_galerkin) {
        const EkelandIndexReport g = index_by_galerkin_stabilized(as, p, s);
        out.galerkin_checked = true;
        out.galerkin_index = g.index;
        out.pass = out.pass && (out.lhs.index == out.nu1_pinv + g.index);
    }
    return out;
}

SplittingReport splitting_limit(const SymplecticPath& gamma, const SymmetryDescriptor& p,
                                const Omega& omega, const SplittingLimitOptions& lopts,
                                const CrossingScanConfig& scan, const SymplecticTolerances& tol) {
    SplittingReport rep;
    rep.omega = omega;
    rep.method = "limit";
    rep.p_relative = true;
    rep.nu_omega_pinv = p.nu_omega_inverse(omega);
    rep.nu_omega_m = nu_P_omega(gamma.endpoint(), p, omega, tol);

    const int base = i_P_omega(gamma, p, omega, scan, tol).index;
    int last_plus = 0, last_minus = 0;
    for (double eps : lopts.eps_ladder) {
        const int ip = i_P_omega(gamma, p, omega.rotated(eps), scan, tol).index;
        const int im = i_P_omega(gamma, p, omega.rotated(-eps), scan, tol).index;
        const int dp = ip - base, dm = im - base;
        rep.eps_trace.emplace_back(eps, dp, dm);
        if (rep.eps_trace.size() >= 2 && dp == last_plus && dm == last_minus) {
            rep.plus = dp;
            rep.minus = dm;
            rep.stabilized = true;
            return rep;
        }
        last_plus = dp;
        last_minus = dm;
    }
    std::string trace;
    for (auto [eps, dp, dm] : rep.eps_trace)
        trace += " (" + std::to_string(eps) + ": " + std::to_string(dp) + "," +
                 std::to_string(dm) + ")";
    throw NumericError("splitting_limit: epsilon ladder did not stabilize at omega = (" +
                       std::to_string(omega.value.real()) + ", " +
                       std::to_string(omega.value.imag()) + "); trace:" + trace);
}

SplittingReport splitting_limit(const CoefficientPath& a, const SymmetryDescriptor& p,
                                const Omega& omega, const SplittingLimitOptions& lopts,
                                const CrossingScanConfig& scan, const IntegrateOptions& iopts,
                                const SymplecticTolerances& tol) {
    const SymplecticPath gamma = integrate_fundamental(a, iopts.steps, iopts);
    return splitting_limit(gamma, p, omega, lopts, scan, tol);
}

NormalFormFactor NormalFormFactor::make_D(double lambda) {
    if (lambda != 2.0 && lambda != -2.0)
        throw ValidationError("NormalFormFactor: D requires lambda = +-2");
    NormalFormFactor f;
    f.kind = Kind::D;
    f.lambda = lambda;
    return f;
}

NormalFormFactor NormalFormFactor::make_N1(int lambda, int b) {
    if (lambda != 1 && lambda != -1)
        throw ValidationError("NormalFormFactor: N1 requires lambda = +-1");
    if (b < -1 || b > 1) throw ValidationError("NormalFormFactor: N1 requires b in {-1,0,1}");
    NormalFormFactor f;
    f.kind = Kind::N1;
    f.lambda = lambda;
    f.b = b;
    return f;
}

NormalFormFactor NormalFormFactor::make_R(double theta) {
    NormalFormFactor f;
    f.kind = Kind::R;
    f.theta = theta;
    normal_form_R(theta);  // validates the range
    return f;
}

NormalFormFactor NormalFormFactor::make_R(AngleFrac theta) {
    NormalFormFactor f = make_R(theta.radians());
    f.theta_exact = theta;
    return f;
}

NormalFormFactor NormalFormFactor::make_N2(double, const Mat&) {
    throw ValidationError(
        "NormalFormFactor: N2 blocks are outside the splitting-number catalog");
}

Mat NormalFormFactor::matrix() const {
    switch (kind) {
        case Kind::D:
            return normal_form_D(lambda);
        case Kind::N1:
            return normal_form_N1(static_cast<int>(lambda), b);
        case Kind::R:
            return normal_form_R(theta);
    }
    throw ValidationError("NormalFormFactor: unknown kind");
}

namespace {

bool omega_is(const Omega& w, Complex v) { return std::abs(w.value - v) <= 1e-9; }

bool omega_matches_angle(const Omega& w, const NormalFormFactor& f, bool conjugate) {
    if (w.exact && f.theta_exact) {
        const long long num =
            conjugate ? (f.theta_exact->den - f.theta_exact->num) : f.theta_exact->num;
        const long long lhs = num * w.exact->den;
        const long long rhs = static_cast<long long>(w.exact->num) * f.theta_exact->den;
        const long long mod = static_cast<long long>(f.theta_exact->den) * w.exact->den;
        return ((lhs - rhs) % mod + mod) % mod == 0;
    }
    const double ang = conjugate ? -f.theta : f.theta;
    return std::abs(w.value - std::polar(1.0, ang)) <= 1e-9;
}

}  // namespace

SplittingReport splitting_table(const std::vector<NormalFormFactor>& factors,
                                const Omega& omega) {
    SplittingReport rep;
    rep.omega = omega;
    rep.method = "table";
    rep.p_relative = false;
    for (const NormalFormFactor& f : factors) {
        switch (f.kind) {
            case NormalFormFactor::Kind::D:
                break;  // spectrum off U, contributes (0, 0)
            case NormalFormFactor::Kind::N1: {
                // S^+_{N1(1,a)}(1) = [a >= 0]; S^+_{N1(-1,a)}(-1) = [a <= 0];
                // S^- equals S^+ there by S^+_M(omega) = S^-_M(conj omega).
                if (f.lambda == 1.0 && omega_is(omega, Complex(1, 0))) {
                    const int sval = f.b >= 0 ? 1 : 0;
                    rep.plus += sval;
                    rep.minus += sval;
                } else if (f.lambda == -1.0 && omega_is(omega, Complex(-1, 0))) {
                    const int sval = f.b <= 0 ? 1 : 0;
                    rep.plus += sval;
                    rep.minus += sval;
                }
                break;
            }
            case NormalFormFactor::Kind::R: {
                // (S^+, S^-) = (0, 1) at e^{i theta}; conjugation gives (1, 0)
                // at e^{-i theta}.
                if (omega_matches_angle(omega, f, /*conjugate=*/false))
                    rep.minus += 1;
                else if (omega_matches_angle(omega, f, /*conjugate=*/true))
                    rep.plus += 1;
                break;
            }
        }
    }
    return rep;
}

std::vector<NormalFormFactor> inverse_symmetry_factors(const SymmetryDescriptor& p) {
    std::vector<NormalFormFactor> out;
    for (long num : p.angle_nums()) {
        if (2 * num == p.order()) {
            out.push_back(NormalFormFactor::make_N1(-1, 0));  // R(-pi) = -I2
        } else {
            out.push_back(NormalFormFactor::make_R(AngleFrac{p.order() - num, p.order()}));
        }
    }
    return out;
}

std::vector<NormalFormFactor> rotation_family_pinv_m_factors(const SymmetryDescriptor& p,
                                                             const std::vector<double>& speeds,
                                                             double s) {
    if (static_cast<int>(speeds.size()) != p.n())
        throw ValidationError("rotation_family_pinv_m_factors: one speed per plane required");
    std::vector<NormalFormFactor> out;
    const std::vector<double> thetas = p.angles();
    for (size_t i = 0; i < speeds.size(); ++i) {
        double phi = std::remainder(speeds[i] * s - thetas[i], kTwoPi);
        if (phi < 0) phi += kTwoPi;
        if (std::abs(phi) <= 1e-12 || std::abs(phi - kTwoPi) <= 1e-12)
            out.push_back(NormalFormFactor::make_N1(1, 0));  // R(0) = I2
        else if (std::abs(phi - kPi) <= 1e-12)
            out.push_back(NormalFormFactor::make_N1(-1, 0));  // R(pi) = -I2
        else
            out.push_back(NormalFormFactor::make_R(phi));
    }
    return out;
}

Lemma34iResult lemma34i_check(const CoefficientPath& a, const SymmetryDescriptor& p,
                              const std::vector<NormalFormFactor>& pinv_m_factors,
                              const Omega& omega, const SplittingLimitOptions& lopts,
                              const CrossingScanConfig& scan, const IntegrateOptions& iopts,
                              const SymplecticTolerances& tol) {
    Lemma34iResult out;
    out.limit = splitting_limit(a, p, omega, lopts, scan, iopts, tol);
    const SplittingReport s_pm = splitting_table(pinv_m_factors, omega);
    const SplittingReport s_pinv = splitting_table(inverse_symmetry_factors(p), omega);
    out.table_rhs = s_pm;
    out.table_rhs.method = "lemma34i";
    out.table_rhs.p_relative = true;
    out.table_rhs.plus = s_pm.plus - s_pinv.plus;
    out.table_rhs.minus = s_pm.minus - s_pinv.minus;
    out.pass = out.limit.plus == out.table_rhs.plus && out.limit.minus == out.table_rhs.minus;
    return out;
}

}  // namespace pindex

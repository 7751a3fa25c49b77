#pragma once

#include <string>
#include <tuple>

#include "pindex/ekeland.hpp"

namespace pindex {

struct MaslovReport {
    Omega omega;
    int index = 0;        // i_omega^P
    int nu_base = 0;      // nu_omega(P^{-1}), from the angle list
    int nu_endpoint = 0;  // nu_omega^P(gamma(tau)), not counted in the index
    std::vector<Crossing> crossings;
    int near_miss = 0;
    double horizon = 0;
};

// dim_C ker_C(gamma_end - omega P).
int nu_P_omega(const Mat& gamma_end, const SymmetryDescriptor& p, const Omega& omega,
               const SymplecticTolerances& tol = {});

// i_omega^P via the positive-definite-path identity: base term from the
// angle list plus the interior crossing nullities of gamma(sigma) - omega P.
MaslovReport i_P_omega(const SymplecticPath& gamma, const SymmetryDescriptor& p,
                       const Omega& omega, const CrossingScanConfig& scan = {},
                       const SymplecticTolerances& tol = {});
MaslovReport i_P_omega(const CoefficientPath& a, const SymmetryDescriptor& p, const Omega& omega,
                       const CrossingScanConfig& scan = {}, const IntegrateOptions& iopts = {},
                       const SymplecticTolerances& tol = {});

struct Theorem36Result {
    MaslovReport lhs;          // i_1^P
    EkelandIndexReport rhs;    // i_P^E by crossings
    int nu1_pinv = 0;          // nu_1(P^{-1})
    bool pass = false;         // lhs.index == nu1_pinv + rhs.index
    bool galerkin_checked = false;
    int galerkin_index = -1;
};

// i_1^P = nu_1(P^{-1}) + i_P^E, both sides by independent code paths.
Theorem36Result theorem36_check(const CoefficientPath& a, const SymmetryDescriptor& p, double s,
                                bool with_galerkin = false, const CrossingScanConfig& scan = {},
                                const IntegrateOptions& iopts = {},
                                const SymplecticTolerances& tol = {});

struct SplittingReport {
    Omega omega;
    int plus = 0;
    int minus = 0;
    std::string method;  // "limit", "table", "lemma34i"
    bool p_relative = false;  // true: _P S_M^+-; false: plain S_M^+-
    std::vector<std::tuple<double, int, int>> eps_trace;  // (eps, d_plus, d_minus)
    bool stabilized = false;
    int nu_omega_m = -1;     // nu_omega(P^{-1} M) when available
    int nu_omega_pinv = -1;  // nu_omega(P^{-1})
};

struct SplittingLimitOptions {
    std::vector<double> eps_ladder = {1e-2, 1e-3, 1e-4, 1e-5};
};

// _P S_M^+-(omega) as the stabilized limit of i^P at omega * e^{+-i eps}.
SplittingReport splitting_limit(const SymplecticPath& gamma, const SymmetryDescriptor& p,
                                const Omega& omega, const SplittingLimitOptions& lopts = {},
                                const CrossingScanConfig& scan = {},
                                const SymplecticTolerances& tol = {});
SplittingReport splitting_limit(const CoefficientPath& a, const SymmetryDescriptor& p,
                                const Omega& omega, const SplittingLimitOptions& lopts = {},
                                const CrossingScanConfig& scan = {},
                                const IntegrateOptions& iopts = {},
                                const SymplecticTolerances& tol = {});

// A symplectic matrix given as a diamond product of basic normal forms.
struct NormalFormFactor {
    enum class Kind { D, N1, R } kind;
    double lambda = 0;  // D: +-2, N1: +-1
    int b = 0;          // N1 only
    double theta = 0;   // R only, radians
    std::optional<AngleFrac> theta_exact;

    static NormalFormFactor make_D(double lambda);
    static NormalFormFactor make_N1(int lambda, int b);
    static NormalFormFactor make_R(double theta);
    static NormalFormFactor make_R(AngleFrac theta);
    // N2 blocks have no catalog entries; requesting one is an error.
    static NormalFormFactor make_N2(double theta, const Mat& b);

    Mat matrix() const;
};

// Plain splitting numbers S_M^+-(omega) of a factored matrix, by catalog
// lookup and additivity over the diamond product. Factors outside the
// catalog (N2 blocks) are rejected.
SplittingReport splitting_table(const std::vector<NormalFormFactor>& factors,
                                const Omega& omega);

// Factors of P^{-1}: R(2 pi - theta_i), with theta_i = pi turning into
// N1(-1, 0) (the R normal form excludes pi).
std::vector<NormalFormFactor> inverse_symmetry_factors(const SymmetryDescriptor& p);

// Factors of P^{-1} gamma(1) for the rotation family gamma(1) = <> R(a_i):
// per-plane angles a_i - theta_i, with 0 -> N1(1,0) and pi -> N1(-1,0).
std::vector<NormalFormFactor> rotation_family_pinv_m_factors(const SymmetryDescriptor& p,
                                                             const std::vector<double>& speeds,
                                                             double s);

struct Lemma34iResult {
    SplittingReport limit;       // _P S_M^+-(omega), numeric
    SplittingReport table_rhs;   // S_{P^{-1}M}(omega) - S_{P^{-1}}(omega), catalog
    bool pass = false;
};

// _P S_M^+-(omega) = S_{P^{-1}M}^+-(omega) - S_{P^{-1}}^+-(omega),
// limit route versus catalog route.
Lemma34iResult lemma34i_check(const CoefficientPath& a, const SymmetryDescriptor& p,
                              const std::vector<NormalFormFactor>& pinv_m_factors,
                              const Omega& omega, const SplittingLimitOptions& lopts = {},
                              const CrossingScanConfig& scan = {},
                              const IntegrateOptions& iopts = {},
                              const SymplecticTolerances& tol = {});

}  // namespace pindex

#pragma once

#include "pindex/maslov.hpp"

namespace pindex {

struct AuditLine {
    std::string id;         // which identity of the chain
    std::string statement;  // rendered with the computed numbers
    long lhs = 0;
    long rhs = 0;
    std::string op = "==";
    bool pass = false;
};

struct Theorem11Audit {
    bool pass = false;
    int n = 0;
    std::vector<AuditLine> lines;
    std::vector<Omega> ladder;  // jump ladder on the upper semicircle, 1 first
    int added_spectrum_points = 0;  // sigma(P^{-1}M) points absent from sigma(P^{-1})
    int e_pinv_m = 0;
    std::string transcript;
};

// Audits the index identity chain behind the ellipticity conclusion:
// per-arc splitting identities along the upper semicircle, the telescoped
// difference, the splitting-sum lower bound (= n) against the elliptic
// height upper bound, and the conclusion e(P^{-1} gamma(1)) = 2n.
// The ladder is augmented with the unit-circle spectrum of P^{-1} gamma(1):
// the index also jumps there, not only at eigenvalues of P^{-1}.
Theorem11Audit audit_theorem11_chain(const SymplecticPath& gamma1, const SymmetryDescriptor& p,
                                     const SplittingLimitOptions& lopts = {},
                                     const CrossingScanConfig& scan = {},
                                     const SymplecticTolerances& tol = {},
                                     const SymplecticTolerances& spectrum_tol = {});

struct Theorem12Audit {
    bool hypothesis_met = false;  // e(P^{-1}gamma(1)) = 2 with the N1(1,1) factor
    bool contradiction = false;   // telescoped value conflicts with the nullity bound
    long chain_value = 0;         // i^P_{omega_q} - i^P_1 from the splitting tables
    long lower_bound = 0;         // nu_{P^{-1}}(omega_q)-based bound
    long margin = 0;              // lower_bound - chain_value when contradiction
    int a_count = 0;              // #{theta in (0, pi)}
    int b_count = 0;              // #{theta = pi}
    bool condition_423 = false;   // a + b - (n - a - b) >= 2
    int e_value = 0;
    std::vector<AuditLine> lines;
    std::string transcript;
};

// Audits the hyperbolicity contradiction: under the hypothesis that
// P^{-1} gamma(1) is hyperbolic with the forced unipotent factor, the
// telescoped index difference computed from the splitting catalog
// conflicts with the nullity lower bound whenever the angle-count
// condition holds. On inputs that are not hyperbolic it reports
// "hypothesis not met" (the expected outcome on finder output).
Theorem12Audit audit_theorem12_chain(const Mat& gamma1_end, const SymmetryDescriptor& p,
                                     const SymplecticTolerances& spectrum_tol = {});

// Orientation class of the unipotent part: +1 for the N1(1,1) class,
// -1 for N1(1,-1), 0 when there is no size-2 Jordan block at 1.
int unipotent_class_sign(const Mat& m, const SymplecticTolerances& tol = {});

}  // namespace pindex

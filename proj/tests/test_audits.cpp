#include <doctest.h>

#include "pindex/audits.hpp"

using namespace pindex;

namespace {

SymplecticPath rotation_path(const std::vector<double>& speeds) {
    return integrate_fundamental(CoefficientPath::block_isotropic(speeds, 1.0), 512);
}

}  // namespace

TEST_CASE("unipotent class sign") {
    CHECK(unipotent_class_sign(normal_form_N1(1, 1)) == 1);
    CHECK(unipotent_class_sign(normal_form_N1(1, -1)) == -1);
    CHECK(unipotent_class_sign(Mat::Identity(2, 2)) == 0);   // nullity 2, no block
    CHECK(unipotent_class_sign(normal_form_D(2)) == 0);      // no unit eigenvalue
    CHECK(unipotent_class_sign(diamond(normal_form_N1(1, 1), normal_form_D(2))) == 1);
    // Conjugation invariance of the class.
    const Mat c = diamond(rotation2(0.4) * normal_form_N1(1, 1) * rotation2(-0.4),
                          normal_form_D(-2));
    CHECK(unipotent_class_sign(c) == 1);
}

TEST_CASE("ellipticity chain passes on an elliptic rotation instance, n = 2") {
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 1}, 4);
    // Speeds below the angles: no interior crossing at omega = 1, so the
    // minimizer precondition i_1^P = 0 holds; P^{-1}gamma(1) is elliptic.
    const SymplecticPath g = rotation_path({1.0, 1.2});
    const Theorem11Audit audit = audit_theorem11_chain(g, p);
    CHECK(audit.pass);
    CHECK(audit.e_pinv_m == 4);
    CHECK(audit.added_spectrum_points >= 1);  // sigma(P^{-1}M) interior arc points
    for (const AuditLine& l : audit.lines) {
        CAPTURE(l.id);
        CAPTURE(l.statement);
        CHECK(l.pass);
    }
}

TEST_CASE("ellipticity chain passes with omega_q = -1, n = 3") {
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{3, 4, 6}, 12);
    const SymplecticPath g = rotation_path({1.0, 1.2, 1.4});
    const Theorem11Audit audit = audit_theorem11_chain(g, p);
    CHECK(audit.pass);
    CHECK(audit.e_pinv_m == 6);
    // The nu-weighted sum line must certify n exactly.
    bool saw_nu_sum = false;
    for (const AuditLine& l : audit.lines)
        if (l.id == "nullity-sum") {
            saw_nu_sum = true;
            CHECK(l.lhs == 3);
            CHECK(l.pass);
        }
    CHECK(saw_nu_sum);
}

TEST_CASE("ellipticity chain rejects angles outside (0, pi]") {
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 5}, 6);  // 5pi/3
    const SymplecticPath g = rotation_path({1.0, 1.2});
    CHECK_THROWS_AS(audit_theorem11_chain(g, p), ValidationError);
}

TEST_CASE("hyperbolicity audit detects the contradiction on a synthetic instance") {
    // P = R(pi/2) <> R(2pi/3): a = 2, b = 0, the angle-count condition holds
    // with equality; gamma(1) = P (N1(1,1) <> D(2)) is the hyperbolic monodromy.
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{3, 4}, 12);
    const Mat m_hyp = diamond(normal_form_N1(1, 1), normal_form_D(2));
    const Mat gamma1 = p.matrix() * m_hyp;
    const Theorem12Audit audit = audit_theorem12_chain(gamma1, p);
    CHECK(audit.condition_423);
    CHECK(audit.hypothesis_met);
    CHECK(audit.contradiction);
    CHECK(audit.chain_value == 0);
    CHECK(audit.lower_bound == 1);
    CHECK(audit.margin == 1);
}

TEST_CASE("hyperbolicity audit with omega_q = -1 branch") {
    // P = R(pi/2) <> R(pi): a = 1, b = 1, n = 2: condition holds (2 >= 2).
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 2}, 4);
    const Mat m_hyp = diamond(normal_form_N1(1, 1), normal_form_D(2));
    const Mat gamma1 = p.matrix() * m_hyp;
    const Theorem12Audit audit = audit_theorem12_chain(gamma1, p);
    CHECK(audit.hypothesis_met);
    // chain value: 1 + (n-a-b+b) - a = 1 + 1 - 1 = 1; bound 2b = 2.
    CHECK(audit.chain_value == 1);
    CHECK(audit.lower_bound == 2);
    CHECK(audit.contradiction);
}

TEST_CASE("hyperbolicity audit reports hypothesis not met on elliptic input") {
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{3, 4}, 12);
    const Mat gamma1 = p.matrix();  // P^{-1}gamma(1) = I, elliptic, no N1(1,1)
    const Theorem12Audit audit = audit_theorem12_chain(gamma1, p);
    CHECK_FALSE(audit.hypothesis_met);
    CHECK_FALSE(audit.contradiction);
    CHECK(audit.transcript.find("hypothesis not met") != std::string::npos);
}

TEST_CASE("hyperbolicity audit leaves consistent chains alone") {
    // Without the angle-count condition there is no forced contradiction:
    // a = 1, b = 0, n = 2 fails the angle count.
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{3, 16}, 24);
    const Mat m_hyp = diamond(normal_form_N1(1, 1), normal_form_D(2));
    const Theorem12Audit audit = audit_theorem12_chain(Mat(p.matrix() * m_hyp), p);
    CHECK_FALSE(audit.condition_423);
    CHECK(audit.hypothesis_met);
    CHECK_FALSE(audit.contradiction);
}

TEST_CASE("audit transcripts render every line") {
    const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 1}, 4);
    const SymplecticPath g = rotation_path({1.0, 1.2});
    const Theorem11Audit audit = audit_theorem11_chain(g, p);
    for (const AuditLine& l : audit.lines) {
        CAPTURE(l.id);
        CHECK(audit.transcript.find(l.id) != std::string::npos);
    }
    CHECK(audit.transcript.find("[pass]") != std::string::npos);
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pindex/linalg.hpp"

namespace pindex {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct SymplecticTolerances {
    double eps_sp = 1e-9;    // max-abs defect ||M^T J M - J||
    double det_tol = 1e-6;   // |det - 1|
    double eps_u = 1e-8;     // distance to the unit circle
    double eps_ker = 1e-8;   // relative kernel threshold for SVD counts
    double cluster_tol = 1e-6;  // eigenvalue clustering radius
};

// J = [[0, -I_n], [I_n, 0]]
Mat standard_J(int n);

// Block-interleaving product: splits invariant planes, so that
// (M1 <> M2) acts on plane j of M1 as M1's j-th plane, etc.
Mat diamond(const Mat& m1, const Mat& m2);
Mat diamond(const std::vector<Mat>& factors);
Mat diamond_pow(const Mat& m, int k);

// [[cos t, -sin t], [sin t, cos t]]
Mat rotation2(double theta);

// max-abs norm of M^T J M - J
double symplectic_defect(const Mat& m);

// Basic normal forms. Parameters outside the catalog ranges are rejected.
Mat normal_form_D(double lambda);              // diag(lambda, 1/lambda), lambda = +-2
Mat normal_form_N1(int lambda, int b);         // [[l, b], [0, l]], l = +-1, b in {-1,0,1}
Mat normal_form_R(double theta);               // rotation, theta in (0,pi) u (pi,2pi)
Mat normal_form_N2(double theta, const Mat& b);  // [[R, B], [0, R]], b12 != b21

// A validated element of Sp(2n).
class SymplecticMatrix {
  public:
    SymplecticMatrix(Mat entries, const SymplecticTolerances& tol = {});

    int block_dim() const { return n_; }          // matrix is 2n x 2n
    const Mat& entries() const { return m_; }
    double defect() const { return defect_; }

  private:
    int n_;
    Mat m_;
    double defect_;
};

// Exact angle 2*pi*num/den used wherever ordering or equality of
// rotation angles must be decided without floating point.
struct AngleFrac {
    long num = 0;
    long den = 1;
    double radians() const { return kTwoPi * static_cast<double>(num) / static_cast<double>(den); }
    Complex unit() const { return std::polar(1.0, radians()); }
};

// A point omega on the unit circle, optionally with exact angle.
struct Omega {
    Complex value{1.0, 0.0};
    std::optional<AngleFrac> exact;

    static Omega one() { return {Complex(1.0, 0.0), AngleFrac{0, 1}}; }
    static Omega from_frac(long num, long den);
    static Omega from_value(Complex v);
    Omega conj() const;
    Omega rotated(double eps) const;  // multiplies by e^{i eps}; drops exactness
};

// The symmetry P = R(theta_1) <> ... <> R(theta_n) with P^k = I and
// ker(P - I) = 0. Angles are stored exactly as theta_i = 2*pi*num_i/k.
class SymmetryDescriptor {
  public:
    int n() const { return n_; }
    long order() const { return k_; }
    const std::vector<long>& angle_nums() const { return nums_; }
    std::vector<double> angles() const;
    const Mat& matrix() const { return p_; }
    const Mat& inverse() const { return pinv_; }
    double inv_p_minus_i_cond() const { return cond_p_minus_i_; }

    // dim ker(P^{-1} - omega I) from the angle list. Each plane contributes
    // [e^{i theta} == omega] + [e^{-i theta} == omega]; both fire at omega = +-1.
    int nu_omega_inverse(const Omega& omega) const;

    // Eigenvalue angles of P^{-1} on the closed upper semicircle,
    // deduplicated and sorted anticlockwise, excluding 1.
    std::vector<AngleFrac> upper_semicircle_eigenangles() const;

    // P^i with wraparound, i may be negative.
    Mat power(long i) const;

    friend SymmetryDescriptor build_symmetry(const std::vector<long>&, long,
                                             const SymplecticTolerances&);

  private:
    int n_ = 0;
    long k_ = 0;
    std::vector<long> nums_;
    Mat p_, pinv_;
    double cond_p_minus_i_ = 0.0;
};

// theta_i = 2*pi*nums[i]/k. Rejects nums[i] == 0 (mod k), k < 2.
SymmetryDescriptor build_symmetry(const std::vector<long>& nums, long k,
                                  const SymplecticTolerances& tol = {});
// Radians overload: snaps each theta to the nearest multiple of 2*pi/k,
// rejecting angles more than 1e-9 away from the grid.
SymmetryDescriptor build_symmetry(const std::vector<double>& angles, long k,
                                  const SymplecticTolerances& tol = {});

// dim_C ker_C(M - omega I), omega required on U.
int nu_omega(const Mat& m, const Omega& omega, const SymplecticTolerances& tol = {});

struct SpectrumCluster {
    Complex centroid;
    int multiplicity = 0;
    double circle_distance = 0.0;  // ||centroid| - 1|
    bool on_circle = false;
    bool straddles = false;  // members disagree with the centroid classification
};

struct UnitCircleSpectrum {
    std::vector<SpectrumCluster> clusters;  // all clusters, on and off U
    int elliptic_height = 0;                // sum of on-circle multiplicities
    bool any_straddle = false;
};

// Eigenvalues clustered at cluster_tol; a cluster counts toward e(M) when
// its centroid is within eps_u of the unit circle. Centroids are used
// because a numerically split multiple eigenvalue spreads O(sqrt(error))
// while its cluster mean stays O(error) from the true value.
UnitCircleSpectrum spectrum_on_circle(const Mat& m, const SymplecticTolerances& tol = {});

int elliptic_height(const Mat& m, const SymplecticTolerances& tol = {});

// Algebraic multiplicity of omega as eigenvalue of m (cluster size of
// the cluster containing omega, 0 if none within cluster_tol).
int algebraic_multiplicity(const Mat& m, Complex omega, const SymplecticTolerances& tol = {});

}  // namespace pindex

#include "pindex/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pindex {

Mat standard_J(int n) {
    if (n < 1) throw ValidationError("standard_J: n must be >= 1");
    Mat j = Mat::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = -Mat::Identity(n, n);
    j.bottomLeftCorner(n, n) = Mat::Identity(n, n);
    return j;
}

double symplectic_defect(const Mat& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
        throw ValidationError("symplectic_defect: matrix must be 2n x 2n");
    const int n = static_cast<int>(m.rows()) / 2;
    const Mat j = standard_J(n);
    return max_abs(m.transpose() * j * m - j);
}

Mat diamond(const Mat& m1, const Mat& m2) {
    if (m1.rows() != m1.cols() || m1.rows() % 2 != 0)
        throw ValidationError("diamond: first factor must be square with even dimension");
    if (m2.rows() != m2.cols() || m2.rows() % 2 != 0)
        throw ValidationError("diamond: second factor must be square with even dimension");
    const int n1 = static_cast<int>(m1.rows()) / 2;
    const int n2 = static_cast<int>(m2.rows()) / 2;
    const int n = n1 + n2;
    if (n1 == 0) return m2;
    if (n2 == 0) return m1;
    Mat out = Mat::Zero(2 * n, 2 * n);
    // Quadrants (qr, qc) of each factor land in the same quadrant of the
    // product, with factor-1 planes first inside every quadrant.
    for (int qr = 0; qr < 2; ++qr)
        for (int qc = 0; qc < 2; ++qc) {
            out.block(qr * n, qc * n, n1, n1) = m1.block(qr * n1, qc * n1, n1, n1);
            out.block(qr * n + n1, qc * n + n1, n2, n2) = m2.block(qr * n2, qc * n2, n2, n2);
        }
    return out;
}

Mat diamond(const std::vector<Mat>& factors) {
    Mat out = Mat::Zero(0, 0);
    for (const Mat& f : factors) out = diamond(out, f);
    return out;
}

Mat diamond_pow(const Mat& m, int k) {
    if (k < 1) throw ValidationError("diamond_pow: k must be >= 1");
    Mat out = m;
    for (int i = 1; i < k; ++i) out = diamond(out, m);
    return out;
}

Mat rotation2(double theta) {
    Mat r(2, 2);
    const double c = std::cos(theta), s = std::sin(theta);
    r << c, -s, s, c;
    return r;
}

Mat normal_form_D(double lambda) {
    if (lambda != 2.0 && lambda != -2.0)
        throw ValidationError("normal_form_D: lambda must be +-2");
    Mat m(2, 2);
    m << lambda, 0, 0, 1.0 / lambda;
    return m;
}

Mat normal_form_N1(int lambda, int b) {
    if (lambda != 1 && lambda != -1)
        throw ValidationError("normal_form_N1: lambda must be +-1");
    if (b < -1 || b > 1)
        throw ValidationError("normal_form_N1: b must be in {-1, 0, 1}");
    Mat m(2, 2);
    m << lambda, b, 0, lambda;
    return m;
}

Mat normal_form_R(double theta) {
    const double t = std::fmod(theta, kTwoPi);
    const double eps = 1e-12;
    if (!(t > eps && t < kTwoPi - eps) || std::abs(t - kPi) <= eps)
        throw ValidationError("normal_form_R: theta must lie in (0,pi) u (pi,2pi)");
    return rotation2(theta);
}

Mat normal_form_N2(double theta, const Mat& b) {
    if (b.rows() != 2 || b.cols() != 2)
        throw ValidationError("normal_form_N2: B must be 2x2");
    if (b(0, 1) == b(1, 0))
        throw ValidationError("normal_form_N2: requires b2 != b3");
    const Mat r = normal_form_R(theta);
    Mat m = Mat::Zero(4, 4);
    m.topLeftCorner(2, 2) = r;
    m.topRightCorner(2, 2) = b;
    m.bottomRightCorner(2, 2) = r;
    // The displayed block form is symplectic only when R^T B is symmetric;
    // the constructor enforces it.
    [[maybe_unused]] SymplecticMatrix check(m);
    return m;
}

SymplecticMatrix::SymplecticMatrix(Mat entries, const SymplecticTolerances& tol) {
    if (entries.rows() != entries.cols() || entries.rows() % 2 != 0 || entries.rows() == 0)
        throw ValidationError("SymplecticMatrix: entries must be 2n x 2n");
    n_ = static_cast<int>(entries.rows()) / 2;
    defect_ = symplectic_defect(entries);
    if (defect_ > tol.eps_sp)
        throw ValidationError("SymplecticMatrix: defect " + std::to_string(defect_) +
                              " exceeds " + std::to_string(tol.eps_sp));
    const double det = entries.determinant();
    if (det <= 0.0 || std::abs(det - 1.0) > tol.det_tol)
        throw ValidationError("SymplecticMatrix: determinant " + std::to_string(det) +
                              " not within tolerance of 1");
    m_ = std::move(entries);
}

Omega Omega::from_frac(long num, long den) {
    if (den <= 0) throw ValidationError("Omega::from_frac: den must be positive");
    long n = num % den;
    if (n < 0) n += den;
    Omega w;
    w.exact = AngleFrac{n, den};
    w.value = w.exact->unit();
    // Pin the exact lattice points so comparisons against +-1, +-i are clean.
    if (n == 0) w.value = Complex(1, 0);
    if (2 * n == den) w.value = Complex(-1, 0);
    if (4 * n == den) w.value = Complex(0, 1);
    if (4 * n == 3 * den) w.value = Complex(0, -1);
    return w;
}

Omega Omega::from_value(Complex v) {
    const double a = std::abs(v);
    if (a == 0.0) throw ValidationError("Omega::from_value: zero has no direction");
    Omega w;
    w.value = v / a;
    return w;
}

Omega Omega::conj() const {
    Omega w;
    w.value = std::conj(value);
    if (exact) w.exact = AngleFrac{(exact->den - exact->num) % exact->den, exact->den};
    return w;
}

Omega Omega::rotated(double eps) const {
    Omega w;
    w.value = value * std::polar(1.0, eps);
    return w;
}

namespace {

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// Does e^{2*pi*i*num/k} equal omega? Exact fraction comparison when omega
// carries one, otherwise numeric comparison at 1e-12.
bool angle_matches(const Omega& w, long num, long k) {
    const long n = mod_pos(num, k);
    if (w.exact) {
        const long long lhs = static_cast<long long>(n) * w.exact->den;
        const long long rhs = static_cast<long long>(w.exact->num) * k;
        const long long mod = static_cast<long long>(k) * w.exact->den;
        return ((lhs - rhs) % mod + mod) % mod == 0;
    }
    const double theta = kTwoPi * static_cast<double>(n) / static_cast<double>(k);
    const double d = std::remainder(theta - std::arg(w.value), kTwoPi);
    return std::abs(d) <= 1e-12;
}

}  // namespace

std::vector<double> SymmetryDescriptor::angles() const {
    std::vector<double> out;
    out.reserve(nums_.size());
    for (long m : nums_) out.push_back(kTwoPi * static_cast<double>(m) / static_cast<double>(k_));
    return out;
}

int SymmetryDescriptor::nu_omega_inverse(const Omega& omega) const {
    int count = 0;
    for (long m : nums_) {
        if (angle_matches(omega, m, k_)) ++count;       // e^{i theta} = omega
        if (angle_matches(omega, k_ - m, k_)) ++count;  // e^{-i theta} = omega
    }
    return count;
}

std::vector<AngleFrac> SymmetryDescriptor::upper_semicircle_eigenangles() const {
    // Eigenvalues of P^{-1} per plane are e^{+-i theta}; the upper-semicircle
    // representative has angle theta when theta <= pi, else 2*pi - theta.
    std::vector<long> reps;
    for (long m : nums_) {
        long phi = (2 * m <= k_) ? m : k_ - m;
        if (phi != 0) reps.push_back(phi);
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    std::vector<AngleFrac> out;
    out.reserve(reps.size());
    for (long p : reps) out.push_back(AngleFrac{p, k_});
    return out;
}

Mat SymmetryDescriptor::power(long i) const {
    const long e = mod_pos(i, k_);
    Mat out = Mat::Identity(2 * n_, 2 * n_);
    Mat base = p_;
    long rem = e;
    while (rem > 0) {
        if (rem & 1) out = out * base;
        base = base * base;
        rem >>= 1;
    }
    return out;
}

SymmetryDescriptor build_symmetry(const std::vector<long>& nums, long k,
                                  const SymplecticTolerances& tol) {
    if (k < 2) throw ValidationError("build_symmetry: order k must be >= 2");
    if (nums.empty()) throw ValidationError("build_symmetry: need at least one angle");
    SymmetryDescriptor d;
    d.n_ = static_cast<int>(nums.size());
    d.k_ = k;
    for (long m : nums) {
        const long r = mod_pos(m, k);
        if (r == 0)
            throw ValidationError(
                "build_symmetry: theta = 0 (mod 2pi) violates ker(P - I) = 0");
        d.nums_.push_back(r);
    }

    std::vector<Mat> blocks;
    for (long m : d.nums_)
        blocks.push_back(rotation2(kTwoPi * static_cast<double>(m) / static_cast<double>(k)));
    Mat p = diamond(blocks);

    const int dim = 2 * d.n_;
    if (max_abs(p.transpose() * p - Mat::Identity(dim, dim)) > tol.eps_sp)
        throw ValidationError("build_symmetry: P is not orthogonal");
    [[maybe_unused]] SymplecticMatrix validated(p, tol);  // symplecticity + determinant

    d.p_ = p;
    d.pinv_ = p.transpose();
    // P^k = I holds exactly in the angle arithmetic; verify the numeric
    // realization too, via binary powering.
    {
        Mat acc = Mat::Identity(dim, dim);
        Mat base = p;
        long rem = k;
        while (rem > 0) {
            if (rem & 1) acc = acc * base;
            base = base * base;
            rem >>= 1;
        }
        if (max_abs(acc - Mat::Identity(dim, dim)) > static_cast<double>(k) * tol.eps_sp * 100)
            throw ValidationError("build_symmetry: ||P^k - I|| out of tolerance");
    }

    auto [smin, smax] = singular_range(Mat(p - Mat::Identity(dim, dim)));
    if (smin <= tol.eps_ker * std::max(smax, 1.0))
        throw ValidationError("build_symmetry: ker(P - I) != 0");
    // ||(P - I)^{-1}|| relative to the unit scale of P, so a single tiny
    // angle is flagged even though smax/smin would stay near 1.
    d.cond_p_minus_i_ = std::max(smax, 1.0) / smin;
    return d;
}

SymmetryDescriptor build_symmetry(const std::vector<double>& angles, long k,
                                  const SymplecticTolerances& tol) {
    std::vector<long> nums;
    for (double theta : angles) {
        const double ratio = theta * static_cast<double>(k) / kTwoPi;
        const long num = std::lround(ratio);
        if (std::abs(ratio - static_cast<double>(num)) > 1e-9 * std::max(1.0, std::abs(ratio)))
            throw ValidationError(
                "build_symmetry: angle is not a multiple of 2*pi/k for the chosen k");
        nums.push_back(num);
    }
    return build_symmetry(nums, k, tol);
}

int nu_omega(const Mat& m, const Omega& omega, const SymplecticTolerances& tol) {
    if (std::abs(std::abs(omega.value) - 1.0) > tol.eps_u)
        throw ValidationError("nu_omega: omega must lie on the unit circle");
    CMat z = m.cast<Complex>();
    z.diagonal().array() -= omega.value;
    return kernel_count(z, tol.eps_ker);
}

UnitCircleSpectrum spectrum_on_circle(const Mat& m, const SymplecticTolerances& tol) {
    Eigen::EigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericError("spectrum_on_circle: eigenvalue solver did not converge");
    const CVec ev = es.eigenvalues();
    const int n = static_cast<int>(ev.size());

    // Union-find clustering at cluster_tol.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(ev(i) - ev(j)) <= tol.cluster_tol) parent[find(i)] = find(j);

    UnitCircleSpectrum out;
    std::vector<int> root_index(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (root_index[r] < 0) {
            root_index[r] = static_cast<int>(out.clusters.size());
            out.clusters.push_back({});
        }
        SpectrumCluster& c = out.clusters[root_index[r]];
        c.centroid += ev(i);
        c.multiplicity += 1;
    }
    for (SpectrumCluster& c : out.clusters) {
        c.centroid /= static_cast<double>(c.multiplicity);
        c.circle_distance = std::abs(std::abs(c.centroid) - 1.0);
        c.on_circle = c.circle_distance <= tol.eps_u;
    }
    for (int i = 0; i < n; ++i) {
        SpectrumCluster& c = out.clusters[root_index[find(i)]];
        const bool member_on = std::abs(std::abs(ev(i)) - 1.0) <= tol.eps_u;
        if (member_on != c.on_circle) {
            c.straddles = true;
            out.any_straddle = true;
        }
    }
    for (const SpectrumCluster& c : out.clusters)
        if (c.on_circle) out.elliptic_height += c.multiplicity;
    return out;
}

int elliptic_height(const Mat& m, const SymplecticTolerances& tol) {
    return spectrum_on_circle(m, tol).elliptic_height;
}

int algebraic_multiplicity(const Mat& m, Complex omega, const SymplecticTolerances& tol) {
    const UnitCircleSpectrum sp = spectrum_on_circle(m, tol);
    int best = 0;
    double best_dist = tol.cluster_tol;
    for (const SpectrumCluster& c : sp.clusters) {
        const double d = std::abs(c.centroid - omega);
        if (d <= best_dist) {
            best_dist = d;
            best = c.multiplicity;
        }
    }
    return best;
}

}  // namespace pindex

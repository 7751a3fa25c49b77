#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace pindex {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Errors that indicate a rejected input (bad parameters, failed validation).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Errors raised when a numerical procedure fails to meet its contract
// (defect target unreachable, non-stabilizing limit, lost bracket).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

// Count of singular values below eps_rel * max(sigma_max, 1).
// The floor of 1 keeps the threshold meaningful when the matrix is
// (numerically) zero, in which case every direction is kernel.
template <typename MatT>
int kernel_count(const MatT& m, double eps_rel) {
    Eigen::JacobiSVD<MatT> svd(m);
    const auto& s = svd.singularValues();
    const double scale = std::max(s.size() > 0 ? s(0) : 0.0, 1.0);
    int count = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) < eps_rel * scale) ++count;
    return count;
}

// Smallest and largest singular values in one call.
template <typename MatT>
std::pair<double, double> singular_range(const MatT& m) {
    Eigen::JacobiSVD<MatT> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return {0.0, 0.0};
    return {s(s.size() - 1), s(0)};
}

inline bool is_symmetric(const Mat& m, double tol) {
    return max_abs(m - m.transpose()) <= tol;
}

}  // namespace pindex

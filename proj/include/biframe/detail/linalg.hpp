#pragma once

// Dense complex linear-algebra primitives shared by the library.
// Everything here delegates to Eigen; the rest of the library speaks only
// in terms of these helpers.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>

namespace biframe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace detail {

// Jacobi is the more accurate choice for the small matrices that dominate
// this library; divide-and-conquer takes over once sizes grow.
inline RealVector singular_values(const Matrix& a) {
    if (std::max(a.rows(), a.cols()) <= 32) {
        Eigen::JacobiSVD<Matrix> svd(a);
        return svd.singularValues();
    }
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues();
}

inline double op_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return singular_values(a)(0);
}

inline double sigma_min(const Matrix& a) {
    const RealVector s = singular_values(a);
    return s(s.size() - 1);
}

// max(1, ||a||): the scale used by every relative tolerance comparison.
inline double comparison_scale(const Matrix& a) { return std::max(1.0, op_norm(a)); }

inline Matrix sym_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

inline double hermitian_defect(const Matrix& a) { return op_norm(a - a.adjoint()); }

inline bool is_hermitian(const Matrix& a, double abs_tol) {
    return hermitian_defect(a) <= abs_tol;
}

struct HermitianEig {
    RealVector values;  // ascending
    Matrix vectors;     // unitary, columns are eigenvectors
};

// Eigendecomposition of the Hermitian part of `a`. Callers gate on the
// Hermitian defect themselves.
inline HermitianEig hermitian_eig(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym_part(a));
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealVector hermitian_eigenvalues(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym_part(a), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

inline double lambda_min(const Matrix& hermitian) { return hermitian_eigenvalues(hermitian)(0); }

inline double lambda_max(const Matrix& hermitian) {
    const RealVector ev = hermitian_eigenvalues(hermitian);
    return ev(ev.size() - 1);
}

// Unique PSD square root of a PSD Hermitian matrix; tiny negative
// eigenvalues from roundoff are clamped to zero.
inline Matrix psd_sqrt(const Matrix& a) {
    const HermitianEig eig = hermitian_eig(a);
    RealVector roots(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        roots(i) = std::sqrt(std::max(0.0, eig.values(i)));
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

// p-th power of a Hermitian positive-definite matrix via its
// eigendecomposition. The caller has already verified positivity.
inline Matrix hermitian_power(const Matrix& a, double p) {
    const HermitianEig eig = hermitian_eig(a);
    RealVector powered(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        powered(i) = std::pow(eig.values(i), p);
    return eig.vectors * powered.asDiagonal() * eig.vectors.adjoint();
}

inline bool entrywise_close(const Matrix& a, const Matrix& b, double abs_tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return ((a - b).cwiseAbs().maxCoeff() <= abs_tol);
}

}  // namespace detail
}  // namespace biframe

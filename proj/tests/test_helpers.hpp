#pragma once

// Shared helpers for the unit suites, including the independent oracles the
// value tests are frozen against. Oracles deliberately take a different
// numerical route than the library (general complex eigensolver instead of
// the self-adjoint one, elementwise loops instead of matrix products).

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <vector>

#include "biframe/biframe.hpp"

namespace testutil {

using biframe::Complex;
using biframe::Matrix;

// PSD square root of a*a computed through the general (non-self-adjoint)
// eigensolver: an independent route to |a|.
inline Matrix abs_oracle(const Matrix& a) {
    const Matrix gram = a.adjoint() * a;
    Eigen::ComplexEigenSolver<Matrix> solver(gram);
    const Matrix v = solver.eigenvectors();
    Eigen::VectorXcd roots = solver.eigenvalues();
    for (Eigen::Index i = 0; i < roots.size(); ++i)
        roots(i) = std::sqrt(std::max(0.0, roots(i).real()));
    return v * roots.asDiagonal() * v.inverse();
}

// Largest singular value as sqrt(lambda_max(a* a)) via the general solver.
inline double opnorm_oracle(const Matrix& a) {
    Eigen::ComplexEigenSolver<Matrix> solver(a.adjoint() * a, false);
    double top = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        top = std::max(top, solver.eigenvalues()(i).real());
    return std::sqrt(std::max(0.0, top));
}

inline std::vector<double> eigenvalues_oracle(const Matrix& hermitian) {
    Eigen::ComplexEigenSolver<Matrix> solver(hermitian, false);
    std::vector<double> values;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        values.push_back(solver.eigenvalues()(i).real());
    std::sort(values.begin(), values.end());
    return values;
}

// <x, y> summed coordinate block by coordinate block with explicit loops.
inline Matrix inner_oracle(const biframe::ModuleElement& x, const biframe::ModuleElement& y) {
    const int d = x.space().d;
    Matrix acc = Matrix::Zero(d, d);
    for (int i = 0; i < x.space().m; ++i) acc += x.block(i) * y.block(i).adjoint();
    return acc;
}

// Operator application through blockwise sums instead of one flat product.
inline Matrix apply_oracle(const biframe::ModuleOperator& t, const biframe::ModuleElement& x) {
    const int d = t.space().d;
    const int m = t.space().m;
    Matrix out = Matrix::Zero(d, m * d);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            out.middleCols(j * d, d) +=
                x.block(i) * t.big().block(i * d, j * d, d, d);
        }
    }
    return out;
}

inline biframe::ModuleElement make_element(const biframe::ModuleSpace& space,
                                           std::initializer_list<Complex> scalars) {
    Matrix mat(1, static_cast<Eigen::Index>(scalars.size()));
    Eigen::Index c = 0;
    for (Complex v : scalars) mat(0, c++) = v;
    return biframe::ModuleElement(space, mat);
}

// Real scalar-module element (d = 1) from a coefficient list.
inline biframe::ModuleElement scalar_element(std::initializer_list<double> coords) {
    const biframe::ModuleSpace space{1, static_cast<int>(coords.size())};
    Matrix mat(1, static_cast<Eigen::Index>(coords.size()));
    Eigen::Index c = 0;
    for (double v : coords) mat(0, c++) = Complex(v, 0.0);
    return biframe::ModuleElement(space, mat);
}

inline Matrix matrix2(Complex a, Complex b, Complex c, Complex d) {
    Matrix mat(2, 2);
    mat << a, b, c, d;
    return mat;
}

}  // namespace testutil

#pragma once

// The coefficient C*-algebra: square complex matrices of a fixed dimension,
// with adjoints, positivity in the Loewner order, operator norms, and
// fractional powers of positive elements.

#include <cmath>
#include <string>
#include <utility>

#include "biframe/detail/linalg.hpp"
#include "biframe/errors.hpp"
#include "biframe/tolerance.hpp"

namespace biframe {

// An element of the d x d matrix algebra. Entries are validated finite.
class AlgebraElement {
public:
    explicit AlgebraElement(Matrix entries) : mat_(std::move(entries)) {
        if (mat_.rows() < 1 || mat_.rows() != mat_.cols())
            throw DimensionMismatch("algebra element must be a square matrix of dim >= 1");
        if (!mat_.allFinite())
            throw std::invalid_argument("algebra element has non-finite entries");
    }

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& mat() const { return mat_; }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
        require_same_dim(a, b);
        return AlgebraElement(a.mat_ + b.mat_);
    }
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
        require_same_dim(a, b);
        return AlgebraElement(a.mat_ - b.mat_);
    }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
        require_same_dim(a, b);
        return AlgebraElement(a.mat_ * b.mat_);
    }
    friend AlgebraElement operator*(Complex scalar, const AlgebraElement& a) {
        return AlgebraElement(scalar * a.mat_);
    }

    static void require_same_dim(const AlgebraElement& a, const AlgebraElement& b) {
        if (a.dim() != b.dim())
            throw DimensionMismatch("algebra elements have different dimensions: " +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }

private:
    Matrix mat_;
};

inline AlgebraElement algebra_identity(int d) { return AlgebraElement(Matrix::Identity(d, d)); }

inline AlgebraElement algebra_zero(int d) { return AlgebraElement(Matrix::Zero(d, d)); }

inline AlgebraElement adjoint(const AlgebraElement& a) { return AlgebraElement(a.mat().adjoint()); }

// |a| = (a* a)^(1/2), the unique PSD square root of a* a.
inline AlgebraElement abs_element(const AlgebraElement& a) {
    return AlgebraElement(detail::psd_sqrt(a.mat().adjoint() * a.mat()));
}

inline double operator_norm(const AlgebraElement& a) { return detail::op_norm(a.mat()); }

// Positive in the algebra: Hermitian within eq_tol and spectrum above the
// -psd_tol floor, both relative to max(1, ||a||).
inline bool is_positive(const AlgebraElement& a, const ToleranceConfig& tol = {}) {
    const double scale = detail::comparison_scale(a.mat());
    if (!detail::is_hermitian(a.mat(), tol.eq_tol * scale)) return false;
    return detail::lambda_min(a.mat()) >= -tol.psd_tol * scale;
}

// Loewner order: a <= b iff b - a is positive.
inline bool loewner_leq(const AlgebraElement& a, const AlgebraElement& b,
                        const ToleranceConfig& tol = {}) {
    AlgebraElement::require_same_dim(a, b);
    return is_positive(b - a, tol);
}

// a^p for Hermitian positive-definite a, via the eigendecomposition
// a = U diag(lambda) U*. Rejects non-Hermitian input and spectra at or
// below the psd_tol floor.
inline AlgebraElement frac_power(const AlgebraElement& a, double p,
                                 const ToleranceConfig& tol = {}) {
    const double scale = detail::comparison_scale(a.mat());
    if (!detail::is_hermitian(a.mat(), tol.eq_tol * scale))
        throw PreconditionFailed("frac_power requires a Hermitian element");
    if (detail::lambda_min(a.mat()) <= tol.psd_tol * scale)
        throw PreconditionFailed("frac_power requires a positive-definite element");
    return AlgebraElement(detail::hermitian_power(a.mat(), p));
}

inline bool approx_equal(const AlgebraElement& a, const AlgebraElement& b, double abs_tol) {
    return detail::entrywise_close(a.mat(), b.mat(), abs_tol);
}

}  // namespace biframe

#pragma once

// The standard left module over the matrix algebra: rank-m tuples of
// algebra elements with an algebra-valued inner product, plus the
// adjointable operators acting on them.
//
// Representation: an element is a d x (m*d) matrix, the m algebra
// coordinates concatenated horizontally. The inner product is
// <x, y> = X Y* (algebra-linear in the first slot). Operators act on the
// right by (m*d) x (m*d) matrices, so the adjoint of an operator is the
// conjugate transpose of its matrix and operator positivity reduces to
// an ordinary PSD condition.

#include <string>
#include <utility>
#include <vector>

#include "biframe/algebra.hpp"
#include "biframe/detail/linalg.hpp"
#include "biframe/errors.hpp"
#include "biframe/tolerance.hpp"

namespace biframe {

struct ModuleSpace {
    int d = 1;  // algebra dimension
    int m = 1;  // module rank

    int flat_dim() const { return d * m; }
    friend bool operator==(const ModuleSpace&, const ModuleSpace&) = default;

    void validate() const {
        if (d < 1 || m < 1) throw DimensionMismatch("module space requires d >= 1 and m >= 1");
    }
};

inline void require_same_space(const ModuleSpace& a, const ModuleSpace& b) {
    if (!(a == b))
        throw DimensionMismatch("module space mismatch: (d=" + std::to_string(a.d) +
                                ",m=" + std::to_string(a.m) + ") vs (d=" + std::to_string(b.d) +
                                ",m=" + std::to_string(b.m) + ")");
}

class ModuleElement {
public:
    ModuleElement(ModuleSpace space, Matrix mat) : space_(space), mat_(std::move(mat)) {
        space_.validate();
        if (mat_.rows() != space_.d || mat_.cols() != space_.flat_dim())
            throw DimensionMismatch("module element must be d x (m*d)");
        if (!mat_.allFinite())
            throw std::invalid_argument("module element has non-finite entries");
    }

    const ModuleSpace& space() const { return space_; }
    const Matrix& mat() const { return mat_; }

    // i-th algebra coordinate, 0-based.
    Matrix block(int i) const { return mat_.middleCols(i * space_.d, space_.d); }

    friend ModuleElement operator+(const ModuleElement& x, const ModuleElement& y) {
        require_same_space(x.space_, y.space_);
        return ModuleElement(x.space_, x.mat_ + y.mat_);
    }
    friend ModuleElement operator-(const ModuleElement& x, const ModuleElement& y) {
        require_same_space(x.space_, y.space_);
        return ModuleElement(x.space_, x.mat_ - y.mat_);
    }
    friend ModuleElement operator*(Complex scalar, const ModuleElement& x) {
        return ModuleElement(x.space_, scalar * x.mat_);
    }

private:
    ModuleSpace space_;
    Matrix mat_;
};

// Left action of the algebra: a . (x_1, ..., x_m) = (a x_1, ..., a x_m).
inline ModuleElement module_scale(const AlgebraElement& a, const ModuleElement& x) {
    if (a.dim() != x.space().d)
        throw DimensionMismatch("algebra element dimension does not match module space");
    return ModuleElement(x.space(), a.mat() * x.mat());
}

inline ModuleElement zero_element(const ModuleSpace& space) {
    return ModuleElement(space, Matrix::Zero(space.d, space.flat_dim()));
}

// i-th standard module basis element (0-based): identity in slot i, zero elsewhere.
inline ModuleElement standard_basis_element(const ModuleSpace& space, int i) {
    space.validate();
    if (i < 0 || i >= space.m) throw DimensionMismatch("basis index out of range");
    Matrix mat = Matrix::Zero(space.d, space.flat_dim());
    mat.middleCols(i * space.d, space.d) = Matrix::Identity(space.d, space.d);
    return ModuleElement(space, mat);
}

// <x, y> = X Y*, a d x d algebra element.
inline AlgebraElement inner(const ModuleElement& x, const ModuleElement& y) {
    require_same_space(x.space(), y.space());
    return AlgebraElement(x.mat() * y.mat().adjoint());
}

inline double module_norm(const ModuleElement& x) {
    // ||x|| = ||<x,x>||^(1/2) = sigma_max of the flat matrix.
    return detail::op_norm(x.mat());
}

// |x| = <x, x>^(1/2).
inline AlgebraElement a_valued_modulus(const ModuleElement& x) {
    return AlgebraElement(detail::psd_sqrt(x.mat() * x.mat().adjoint()));
}

// Adjointable module operator, acting on the right of the flat representation.
class ModuleOperator {
public:
    ModuleOperator(ModuleSpace space, Matrix big) : space_(space), big_(std::move(big)) {
        space_.validate();
        if (big_.rows() != space_.flat_dim() || big_.cols() != space_.flat_dim())
            throw DimensionMismatch("operator matrix must be (m*d) x (m*d)");
        if (!big_.allFinite())
            throw std::invalid_argument("operator matrix has non-finite entries");
    }

    const ModuleSpace& space() const { return space_; }
    const Matrix& big() const { return big_; }

private:
    ModuleSpace space_;
    Matrix big_;
};

inline ModuleOperator identity_operator(const ModuleSpace& space) {
    return ModuleOperator(space, Matrix::Identity(space.flat_dim(), space.flat_dim()));
}

inline ModuleElement apply(const ModuleOperator& t, const ModuleElement& x) {
    require_same_space(t.space(), x.space());
    return ModuleElement(x.space(), x.mat() * t.big());
}

inline ModuleOperator adjoint_op(const ModuleOperator& t) {
    return ModuleOperator(t.space(), t.big().adjoint());
}

// compose(t, s) applies s first: apply(compose(t, s), x) = apply(t, apply(s, x)).
// In the right-action representation that is big(s) * big(t).
inline ModuleOperator compose(const ModuleOperator& t, const ModuleOperator& s) {
    require_same_space(t.space(), s.space());
    return ModuleOperator(t.space(), s.big() * t.big());
}

inline ModuleOperator scale_op(Complex scalar, const ModuleOperator& t) {
    return ModuleOperator(t.space(), scalar * t.big());
}

// Operator norm of t as a map on the module; equals sigma_max of its matrix.
inline double op_norm(const ModuleOperator& t) { return detail::op_norm(t.big()); }

// Positive as an operator: <Tx, x> >= 0 in the algebra for every x, which in
// this representation is exactly "matrix Hermitian and PSD".
inline bool is_positive_op(const ModuleOperator& t, const ToleranceConfig& tol = {}) {
    const double scale = detail::comparison_scale(t.big());
    if (!detail::is_hermitian(t.big(), tol.eq_tol * scale)) return false;
    return detail::lambda_min(t.big()) >= -tol.psd_tol * scale;
}

// Bounded below (equivalently, invertible here). Returns the decision and
// the smallest singular value it was made from.
inline std::pair<bool, double> is_bounded_below(const ModuleOperator& t,
                                                const ToleranceConfig& tol = {}) {
    const double smin = detail::sigma_min(t.big());
    const double scale = detail::comparison_scale(t.big());
    return {smin > tol.inv_tol * scale, smin};
}

inline ModuleOperator inverse_op(const ModuleOperator& t, const ToleranceConfig& tol = {}) {
    if (!is_bounded_below(t, tol).first)
        throw PreconditionFailed("operator is not invertible at the configured tolerance");
    return ModuleOperator(t.space(), t.big().inverse());
}

// The operator sending the i-th standard basis element to images[i]; its
// matrix is the vertical stack of the images' matrices.
inline ModuleOperator op_from_basis_images(const std::vector<ModuleElement>& images) {
    if (images.empty()) throw DimensionMismatch("need at least one basis image");
    const ModuleSpace space = images.front().space();
    if (static_cast<int>(images.size()) != space.m)
        throw DimensionMismatch("need exactly m basis images, got " +
                                std::to_string(images.size()));
    Matrix big(space.flat_dim(), space.flat_dim());
    for (int i = 0; i < space.m; ++i) {
        require_same_space(space, images[i].space());
        big.middleRows(i * space.d, space.d) = images[i].mat();
    }
    return ModuleOperator(space, big);
}

// t^p for a positive-definite Hermitian operator, computed on its matrix.
inline ModuleOperator frac_power_op(const ModuleOperator& t, double p,
                                    const ToleranceConfig& tol = {}) {
    const double scale = detail::comparison_scale(t.big());
    if (!detail::is_hermitian(t.big(), tol.eq_tol * scale))
        throw PreconditionFailed("fractional power requires a Hermitian operator");
    if (detail::lambda_min(t.big()) <= tol.psd_tol * scale)
        throw PreconditionFailed("fractional power requires a positive-definite operator");
    return ModuleOperator(t.space(), detail::hermitian_power(t.big(), p));
}

inline bool approx_equal(const ModuleElement& x, const ModuleElement& y, double abs_tol) {
    return x.space() == y.space() && detail::entrywise_close(x.mat(), y.mat(), abs_tol);
}

inline bool approx_equal(const ModuleOperator& s, const ModuleOperator& t, double abs_tol) {
    return s.space() == t.space() && detail::entrywise_close(s.big(), t.big(), abs_tol);
}

}  // namespace biframe

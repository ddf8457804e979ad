#pragma once

// Everything built on top of a classified pair: reconstruction formulas,
// canonical duals, two-sided operator factorization through fractional
// powers, biframe transforms, Parseval rescaling, and Riesz-basis checks.

#include <cmath>
#include <utility>
#include <vector>

#include "biframe/detail/linalg.hpp"
#include "biframe/errors.hpp"
#include "biframe/frames.hpp"
#include "biframe/hmodule.hpp"
#include "biframe/tolerance.hpp"

namespace biframe {

enum class ReconstructionSide { left, right };

// Expand x against the pair and resum it. The left form routes the inverse
// mixed operator through the analysis coefficients, the right form through
// the synthesis family; both return x for a biframe.
inline ModuleElement reconstruct(const ModuleElement& x, const BiframePair& pair,
                                 ReconstructionSide side, const ToleranceConfig& tol = {}) {
    require_same_space(x.space(), pair.space());
    if (!biframe_check(pair, tol).is_biframe)
        throw PreconditionFailed("reconstruction requires a biframe pair");
    const Matrix big = biframe_operator(pair).big();
    ModuleElement acc = zero_element(x.space());
    if (side == ReconstructionSide::left) {
        // sum_i <x, (S_swapped)^{-1} xi_i> eta_i
        const Matrix inv_swapped = Matrix(big.adjoint()).inverse();
        for (int i = 0; i < pair.size(); ++i) {
            const ModuleElement dual_xi(x.space(), pair.xi[i].mat() * inv_swapped);
            acc = acc + module_scale(inner(x, dual_xi), pair.upsilon[i]);
        }
    } else {
        // sum_i <x, xi_i> (S^{-1} eta_i)
        const Matrix inv = big.inverse();
        for (int i = 0; i < pair.size(); ++i) {
            const ModuleElement dual_eta(x.space(), pair.upsilon[i].mat() * inv);
            acc = acc + module_scale(inner(x, pair.xi[i]), dual_eta);
        }
    }
    return acc;
}

// Canonical dual family {S^{-1} xi_i}; pairs with the original into a
// dual pair whose mixed operator is the identity.
inline FrameFamily canonical_dual(const FrameFamily& family, const ToleranceConfig& tol = {}) {
    if (!frame_bounds(family, tol).has_value())
        throw PreconditionFailed("canonical dual requires a frame");
    const Matrix inv = frame_operator(family).big().inverse();
    std::vector<ModuleElement> dual;
    dual.reserve(family.elements().size());
    for (const auto& e : family.elements())
        dual.emplace_back(family.space(), e.mat() * inv);
    return FrameFamily(std::move(dual));
}

// Inputs for the two-sided factorization u t1 s* = t2 through fractional
// powers: t1, t2 positive invertible, q_op p_op* = identity, and exponent
// splittings p+q = 1, r+s = 1.
struct FactorizationInput {
    ModuleOperator t1;
    ModuleOperator t2;
    ModuleOperator p_op;
    ModuleOperator q_op;
    double p = 0.5, q = 0.5, r = 0.5, s = 0.5;

    void validate(const ToleranceConfig& tol = {}) const {
        if (std::abs(p + q - 1.0) > 1e-12 || std::abs(r + s - 1.0) > 1e-12)
            throw PreconditionFailed("exponents must satisfy p+q = 1 and r+s = 1");
        if (!is_positive_op(t1, tol) || !is_bounded_below(t1, tol).first ||
            !is_positive_op(t2, tol) || !is_bounded_below(t2, tol).first)
            throw PreconditionFailed("t1 and t2 must be positive and invertible");
        const ModuleOperator qp = compose(q_op, adjoint_op(p_op));
        const double scale = detail::comparison_scale(qp.big());
        if (!approx_equal(qp, identity_operator(qp.space()), tol.eq_tol * scale))
            throw PreconditionFailed("q_op p_op* must be the identity");
    }
};

// Builds s = t2^s p_op t1^{-q} and u = t2^r q_op t1^{-p} and verifies
// u t1 s* = t2 before returning them.
inline std::pair<ModuleOperator, ModuleOperator> factorize_operators(
    const FactorizationInput& inp, const ToleranceConfig& tol = {}) {
    inp.validate(tol);
    const ModuleOperator s_op = compose(
        compose(frac_power_op(inp.t2, inp.s, tol), inp.p_op), frac_power_op(inp.t1, -inp.q, tol));
    const ModuleOperator u_op = compose(
        compose(frac_power_op(inp.t2, inp.r, tol), inp.q_op), frac_power_op(inp.t1, -inp.p, tol));

    const ModuleOperator recovered = compose(compose(u_op, inp.t1), adjoint_op(s_op));
    const double residual = detail::op_norm(recovered.big() - inp.t2.big());
    const double scale = std::max(detail::comparison_scale(inp.t2.big()),
                                  detail::comparison_scale(recovered.big()));
    if (residual > 10.0 * tol.eq_tol * scale)
        throw NumericalBreakdown("factorization residual " + detail::fmt_real(residual) +
                                 " exceeds tolerance");
    return {s_op, u_op};
}

// Converse extraction: from any s, u with u t1 s* = t2, recover the pair
// q = t2^{-r} u t1^p, p = t2^{-s} s t1^q satisfying q p* = identity.
inline std::pair<ModuleOperator, ModuleOperator> extract_factor_pair(
    const ModuleOperator& t1, const ModuleOperator& t2, const ModuleOperator& s_op,
    const ModuleOperator& u_op, double p, double q, double r, double s,
    const ToleranceConfig& tol = {}) {
    if (std::abs(p + q - 1.0) > 1e-12 || std::abs(r + s - 1.0) > 1e-12)
        throw PreconditionFailed("exponents must satisfy p+q = 1 and r+s = 1");
    const ModuleOperator p_out = compose(
        compose(frac_power_op(t2, -s, tol), s_op), frac_power_op(t1, q, tol));
    const ModuleOperator q_out = compose(
        compose(frac_power_op(t2, -r, tol), u_op), frac_power_op(t1, p, tol));
    return {p_out, q_out};
}

// ({p_op xi_i}, {q_op eta_i}) together with its mixed operator, which equals
// q_op . S . p_op* ; the identity is verified at matrix level.
inline std::pair<BiframePair, ModuleOperator> transform_biframe(const BiframePair& pair,
                                                                const ModuleOperator& p_op,
                                                                const ModuleOperator& q_op,
                                                                const ToleranceConfig& tol = {}) {
    require_same_space(pair.space(), p_op.space());
    require_same_space(pair.space(), q_op.space());
    BiframePair transformed(transform_family(p_op, pair.xi), transform_family(q_op, pair.upsilon));
    const ModuleOperator mixed = biframe_operator(transformed);
    const ModuleOperator expected =
        compose(compose(q_op, biframe_operator(pair)), adjoint_op(p_op));
    const double scale = detail::comparison_scale(expected.big());
    if (!approx_equal(mixed, expected, 10.0 * tol.eq_tol * scale))
        throw NumericalBreakdown("transformed mixed operator deviates from q S p*");
    return {std::move(transformed), mixed};
}

// Inputs for the Parseval rescaling: u = p_op S^{-p}, q = t_op S^{-q} with
// t_op p_op* = identity and p+q = 1.
struct ParsevalTransformInput {
    BiframePair pair;
    ModuleOperator p_op;
    ModuleOperator t_op;
    double p = 0.5, q = 0.5;

    void validate(const ToleranceConfig& tol = {}) const {
        if (std::abs(p + q - 1.0) > 1e-12)
            throw PreconditionFailed("exponents must satisfy p+q = 1");
        const ModuleOperator tp = compose(t_op, adjoint_op(p_op));
        const double scale = detail::comparison_scale(tp.big());
        if (!approx_equal(tp, identity_operator(tp.space()), tol.eq_tol * scale))
            throw PreconditionFailed("t_op p_op* must be the identity");
    }
};

// Rescales a biframe into a Parseval biframe through fractional powers of
// its (Hermitian) mixed operator.
inline BiframePair parseval_transform(const ParsevalTransformInput& inp,
                                      const ToleranceConfig& tol = {}) {
    inp.validate(tol);
    if (!biframe_check(inp.pair, tol).is_biframe)
        throw PreconditionFailed("parseval transform requires a biframe pair");
    const ModuleOperator mixed(inp.pair.space(),
                               detail::sym_part(biframe_operator(inp.pair).big()));
    const ModuleOperator u_op = compose(inp.p_op, frac_power_op(mixed, -inp.p, tol));
    const ModuleOperator q_op = compose(inp.t_op, frac_power_op(mixed, -inp.q, tol));
    BiframePair out(transform_family(u_op, inp.pair.xi),
                    transform_family(q_op, inp.pair.upsilon));
    const Matrix g = biframe_operator(out).big();
    const double defect = detail::op_norm(g - Matrix::Identity(g.rows(), g.cols()));
    if (defect > 10.0 * tol.eq_tol * detail::comparison_scale(g))
        throw NumericalBreakdown("parseval defect " + detail::fmt_real(defect) +
                                 " exceeds tolerance");
    return out;
}

enum class ParsevalBase { orthonormal, dual_pair, biorthogonal };

namespace detail {

inline bool families_equal(const FrameFamily& a, const FrameFamily& b, double abs_tol) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (!approx_equal(a[i], b[i], abs_tol)) return false;
    return true;
}

}  // namespace detail

// ({p_op xi_i}, {q_op eta_i}) over a base pair whose mixed operator is the
// identity (orthonormal basis, dual pair, or biorthogonal frames). Returns
// the transformed pair and whether q_op p_op* = identity; that boolean
// coincides with the result being Parseval, and the agreement is enforced.
inline std::pair<BiframePair, bool> parseval_from_pair(const ModuleOperator& p_op,
                                                       const ModuleOperator& q_op,
                                                       ParsevalBase base,
                                                       const BiframePair& base_pair,
                                                       const ToleranceConfig& tol = {}) {
    switch (base) {
        case ParsevalBase::orthonormal:
            if (base_pair.size() != base_pair.space().m ||
                !is_biorthogonal(BiframePair(base_pair.xi, base_pair.xi), tol) ||
                !detail::families_equal(base_pair.xi, base_pair.upsilon, tol.eq_tol))
                throw PreconditionFailed("base is not an orthonormal basis pair");
            break;
        case ParsevalBase::dual_pair:
            if (!is_dual_pair(base_pair, tol))
                throw PreconditionFailed("base families are not a dual pair");
            break;
        case ParsevalBase::biorthogonal:
            if (!is_biorthogonal(base_pair, tol) ||
                !frame_bounds(base_pair.xi, tol).has_value() ||
                !frame_bounds(base_pair.upsilon, tol).has_value())
                throw PreconditionFailed("base families are not biorthogonal frames");
            break;
    }
    BiframePair out(transform_family(p_op, base_pair.xi),
                    transform_family(q_op, base_pair.upsilon));
    const ModuleOperator qp = compose(q_op, adjoint_op(p_op));
    const double scale = detail::comparison_scale(qp.big());
    const bool identity_holds =
        approx_equal(qp, identity_operator(qp.space()), tol.eq_tol * scale);
    const bool parseval = biframe_check(out, tol).is_parseval;
    if (parseval != identity_holds)
        throw NumericalBreakdown("parseval outcome disagrees with q_op p_op* = identity");
    return {std::move(out), identity_holds};
}

// A square family that is the image of the standard basis under an
// invertible operator. Overcomplete families report false.
inline bool is_riesz_basis(const FrameFamily& family, const ToleranceConfig& tol = {}) {
    if (family.size() != family.space().m) return false;
    return is_bounded_below(op_from_basis_images(family.elements()), tol).first;
}

// For a biframe whose first family is a Riesz basis, the operator
// u = S (theta*)^{-1} carries the standard basis onto the second family,
// certifying it as a Riesz basis too.
inline ModuleOperator riesz_companion(const BiframePair& pair, const ToleranceConfig& tol = {}) {
    if (!biframe_check(pair, tol).is_biframe)
        throw PreconditionFailed("riesz companion requires a biframe pair");
    if (!is_riesz_basis(pair.xi, tol))
        throw PreconditionFailed("first family must be a Riesz basis");
    const ModuleOperator theta = op_from_basis_images(pair.xi.elements());
    const ModuleOperator u_op =
        compose(biframe_operator(pair), inverse_op(adjoint_op(theta), tol));
    const double scale = std::max(1.0, op_norm(u_op));
    for (int j = 0; j < pair.space().m; ++j) {
        const ModuleElement image = apply(u_op, standard_basis_element(pair.space(), j));
        if (!approx_equal(image, pair.upsilon[j], 10.0 * tol.eq_tol * scale))
            throw NumericalBreakdown("companion operator misses the second family at index " +
                                     std::to_string(j));
    }
    if (!is_bounded_below(u_op, tol).first)
        throw NumericalBreakdown("companion operator is not invertible");
    return u_op;
}

}  // namespace biframe

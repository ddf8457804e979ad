#pragma once

// Frame families and biframe pairs: the frame and biframe operators,
// optimal bounds in the Loewner order, and classification into
// Bessel / frame / pair-frame / biframe / tight / Parseval.

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biframe/detail/linalg.hpp"
#include "biframe/errors.hpp"
#include "biframe/hmodule.hpp"
#include "biframe/tolerance.hpp"

namespace biframe {

class FrameFamily {
public:
    explicit FrameFamily(std::vector<ModuleElement> elements) : elements_(std::move(elements)) {
        if (elements_.empty()) throw DimensionMismatch("frame family must be nonempty");
        for (const auto& e : elements_) require_same_space(space(), e.space());
    }

    const ModuleSpace& space() const { return elements_.front().space(); }
    const std::vector<ModuleElement>& elements() const { return elements_; }
    int size() const { return static_cast<int>(elements_.size()); }
    const ModuleElement& operator[](int i) const { return elements_[static_cast<size_t>(i)]; }

private:
    std::vector<ModuleElement> elements_;
};

struct BiframePair {
    FrameFamily xi;
    FrameFamily upsilon;

    BiframePair(FrameFamily first, FrameFamily second)
        : xi(std::move(first)), upsilon(std::move(second)) {
        require_same_space(xi.space(), upsilon.space());
        if (xi.size() != upsilon.size())
            throw DimensionMismatch("biframe families must have equal length");
    }

    const ModuleSpace& space() const { return xi.space(); }
    int size() const { return xi.size(); }
};

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
};

struct ClassificationReport {
    bool is_bessel = false;
    bool is_frame = false;
    bool is_pair_frame = false;
    bool is_biframe = false;
    std::optional<double> is_tight;  // the tight constant, when bounds coincide
    bool is_parseval = false;
    std::optional<FrameBounds> bounds;
    double hermitian_defect = 0.0;
    std::vector<std::string> diagnostics;
};

inline FrameFamily standard_basis_family(const ModuleSpace& space) {
    std::vector<ModuleElement> elems;
    elems.reserve(static_cast<size_t>(space.m));
    for (int i = 0; i < space.m; ++i) elems.push_back(standard_basis_element(space, i));
    return FrameFamily(std::move(elems));
}

inline FrameFamily transform_family(const ModuleOperator& t, const FrameFamily& family) {
    std::vector<ModuleElement> out;
    out.reserve(family.elements().size());
    for (const auto& e : family.elements()) out.push_back(apply(t, e));
    return FrameFamily(std::move(out));
}

// S x = sum_i <x, xi_i> xi_i; matrix sum_i Xi_i* Xi_i, always Hermitian PSD.
inline ModuleOperator frame_operator(const FrameFamily& family) {
    const int n = family.space().flat_dim();
    Matrix big = Matrix::Zero(n, n);
    for (const auto& e : family.elements()) big += e.mat().adjoint() * e.mat();
    return ModuleOperator(family.space(), big);
}

// S x = sum_i <x, xi_i> eta_i; matrix sum_i Xi_i* H_i. Its adjoint is the
// operator of the swapped pair, exactly at matrix level.
inline ModuleOperator biframe_operator(const FrameFamily& xi, const FrameFamily& upsilon) {
    require_same_space(xi.space(), upsilon.space());
    if (xi.size() != upsilon.size())
        throw DimensionMismatch("biframe operator needs equal-length families");
    const int n = xi.space().flat_dim();
    Matrix big = Matrix::Zero(n, n);
    for (int i = 0; i < xi.size(); ++i) big += xi[i].mat().adjoint() * upsilon[i].mat();
    return ModuleOperator(xi.space(), big);
}

inline ModuleOperator biframe_operator(const BiframePair& pair) {
    return biframe_operator(pair.xi, pair.upsilon);
}

// Optimal frame bounds (extreme eigenvalues of the frame operator), or
// nothing when the lower bound sits at or below the invertibility floor.
inline std::optional<FrameBounds> frame_bounds(const FrameFamily& family,
                                               const ToleranceConfig& tol = {}) {
    const Matrix big = frame_operator(family).big();
    const RealVector ev = detail::hermitian_eigenvalues(big);
    const double lo = ev(0);
    const double hi = ev(ev.size() - 1);
    if (lo <= tol.inv_tol * detail::comparison_scale(big)) return std::nullopt;
    return FrameBounds{lo, hi};
}

// Largest eigenvalue of the frame operator: the optimal Bessel constant.
// Defined for every finite family, frame or not.
inline double frame_upper_bound(const FrameFamily& family) {
    return detail::lambda_max(frame_operator(family).big());
}

// Mixed operator invertible <=> the pair is a pair frame (well-definedness
// and adjointability are automatic for finite families).
inline bool is_pair_frame(const BiframePair& pair, const ToleranceConfig& tol = {}) {
    const Matrix big = biframe_operator(pair).big();
    return detail::sigma_min(big) > tol.inv_tol * detail::comparison_scale(big);
}

namespace detail {

inline std::string fmt_real(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace detail

// Full classification of a pair. The two-sided Loewner inequality forces the
// mixed operator to be Hermitian-valued, so a Hermitian-defect gate runs
// before any bound is computed; the defect is always reported.
inline ClassificationReport biframe_check(const BiframePair& pair,
                                          const ToleranceConfig& tol = {}) {
    ClassificationReport report;
    const Matrix big = biframe_operator(pair).big();
    const double scale = detail::comparison_scale(big);

    report.hermitian_defect = detail::hermitian_defect(big);
    const bool hermitian_ok = report.hermitian_defect <= tol.eq_tol * scale;

    const Matrix sym = detail::sym_part(big);
    const RealVector sym_ev = detail::hermitian_eigenvalues(sym);
    const double lo = sym_ev(0);
    const double hi = sym_ev(sym_ev.size() - 1);

    report.is_pair_frame = detail::sigma_min(big) > tol.inv_tol * scale;
    report.is_biframe = hermitian_ok && lo > tol.inv_tol * scale;
    if (report.is_biframe) {
        // a biframe's mixed operator is invertible; keep the flags consistent
        // even when sigma_min sits on the tolerance boundary
        report.is_pair_frame = true;
        report.bounds = FrameBounds{lo, hi};
        if (hi - lo <= 2.0 * tol.psd_tol * scale) {
            const double lambda = 0.5 * (lo + hi);
            report.is_tight = lambda;
            report.is_parseval = std::abs(lambda - 1.0) <= tol.psd_tol * scale;
        }
    } else if (!hermitian_ok) {
        report.diagnostics.push_back("mixed operator is not Hermitian: defect " +
                                     detail::fmt_real(report.hermitian_defect) +
                                     " exceeds gate " + detail::fmt_real(tol.eq_tol * scale));
    } else {
        report.diagnostics.push_back("no positive lower bound: min eigenvalue " +
                                     detail::fmt_real(lo) + " at floor " +
                                     detail::fmt_real(tol.inv_tol * scale));
    }

    // every finite family is Bessel; the frame question concerns Xi alone
    report.is_bessel = true;
    const auto xi_bounds = frame_bounds(pair.xi, tol);
    report.is_frame = xi_bounds.has_value();
    if (!report.is_biframe && report.is_frame) {
        report.bounds = *xi_bounds;
        report.diagnostics.push_back("bounds refer to the first family as a frame for itself");
    }
    if (!report.is_frame)
        report.diagnostics.push_back("first family alone is not a frame (upper bound " +
                                     detail::fmt_real(frame_upper_bound(pair.xi)) + ")");
    return report;
}

// Classification of a controlled frame: the pair ({C1 x_i}, {C2 x_i}).
inline ClassificationReport controlled_frame_check(const FrameFamily& family,
                                                   const ModuleOperator& c1,
                                                   const ModuleOperator& c2,
                                                   const ToleranceConfig& tol = {}) {
    if (!is_bounded_below(c1, tol).first || !is_bounded_below(c2, tol).first)
        throw PreconditionFailed("controller operators must be invertible");
    return biframe_check(BiframePair(transform_family(c1, family), transform_family(c2, family)),
                         tol);
}

// Dual pair: sum_i <x, eta_i> xi_i = x for all x, i.e. the mixed operator of
// the swapped pair is the identity.
inline bool is_dual_pair(const BiframePair& pair, const ToleranceConfig& tol = {}) {
    const Matrix big = biframe_operator(pair.upsilon, pair.xi).big();
    const int n = pair.space().flat_dim();
    return detail::op_norm(big - Matrix::Identity(n, n)) <=
           tol.eq_tol * detail::comparison_scale(big);
}

inline bool is_biorthogonal(const BiframePair& pair, const ToleranceConfig& tol = {}) {
    const int d = pair.space().d;
    const Matrix id = Matrix::Identity(d, d);
    for (int i = 0; i < pair.size(); ++i) {
        for (int j = 0; j < pair.size(); ++j) {
            const Matrix g = inner(pair.xi[i], pair.upsilon[j]).mat();
            const Matrix expected = (i == j) ? id : Matrix::Zero(d, d).eval();
            if (!detail::entrywise_close(g, expected, tol.eq_tol)) return false;
        }
    }
    return true;
}

inline BiframePair swap(const BiframePair& pair) { return BiframePair(pair.upsilon, pair.xi); }

}  // namespace biframe

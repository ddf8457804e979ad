#pragma once

// Seeded generation of frames, biframes, and Parseval pairs. Uniform
// variates are derived from the raw mt19937_64 stream so a seed pins the
// output exactly, independent of standard-library distribution details.
//
// Biframes are generated constructively: draw a well-conditioned frame,
// pick a Hermitian positive-definite target for the mixed operator, and
// solve for the second family. The result is then gated through the
// classifier; generation never bypasses the checker.

#include <cstdint>
#include <random>
#include <vector>

#include "biframe/detail/linalg.hpp"
#include "biframe/errors.hpp"
#include "biframe/frames.hpp"
#include "biframe/hmodule.hpp"

namespace biframe {

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        const double unit = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + unit * (hi - lo);
    }

    Complex complex_uniform(double amplitude = 1.0) {
        return {uniform(-amplitude, amplitude), uniform(-amplitude, amplitude)};
    }

    int index(int count) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(count)); }

private:
    std::mt19937_64 eng_;
};

inline Matrix random_matrix(SeededRng& rng, Eigen::Index rows, Eigen::Index cols,
                            double amplitude = 1.0) {
    Matrix mat(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) mat(r, c) = rng.complex_uniform(amplitude);
    return mat;
}

inline Matrix random_unitary(SeededRng& rng, Eigen::Index n) {
    const Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n, n));
    return qr.householderQ() * Matrix::Identity(n, n);
}

// Hermitian positive definite with spectrum in [lo, hi].
inline Matrix random_pd_matrix(SeededRng& rng, Eigen::Index n, double lo = 0.5, double hi = 2.0) {
    const Matrix u = random_unitary(rng, n);
    RealVector spectrum(n);
    for (Eigen::Index i = 0; i < n; ++i) spectrum(i) = rng.uniform(lo, hi);
    return u * spectrum.asDiagonal() * u.adjoint();
}

inline Matrix random_invertible_matrix(SeededRng& rng, Eigen::Index n) {
    for (;;) {
        Matrix mat = random_matrix(rng, n, n);
        const RealVector sv = detail::singular_values(mat);
        if (sv(n - 1) > 0.1 * sv(0)) return mat;
    }
}

inline ModuleElement random_element(SeededRng& rng, const ModuleSpace& space,
                                    double amplitude = 1.0) {
    return ModuleElement(space, random_matrix(rng, space.d, space.flat_dim(), amplitude));
}

inline ModuleOperator random_pd_operator(SeededRng& rng, const ModuleSpace& space,
                                         double lo = 0.5, double hi = 2.0) {
    return ModuleOperator(space, random_pd_matrix(rng, space.flat_dim(), lo, hi));
}

inline ModuleOperator random_invertible_operator(SeededRng& rng, const ModuleSpace& space) {
    return ModuleOperator(space, random_invertible_matrix(rng, space.flat_dim()));
}

// `count` elements forming a frame whose operator is well conditioned;
// redraws until the conditioning target is met.
inline FrameFamily random_frame(SeededRng& rng, const ModuleSpace& space, int count) {
    if (count < space.m)
        throw PreconditionFailed("a frame needs at least m elements");
    for (;;) {
        std::vector<ModuleElement> elems;
        elems.reserve(static_cast<size_t>(count));
        for (int i = 0; i < count; ++i) elems.push_back(random_element(rng, space));
        FrameFamily family(std::move(elems));
        const RealVector ev = detail::hermitian_eigenvalues(frame_operator(family).big());
        if (ev(0) > 0.05 * ev(ev.size() - 1)) return family;
    }
}

// Square family forming a Riesz basis (images of the standard basis under
// a well-conditioned invertible operator).
inline FrameFamily random_riesz_family(SeededRng& rng, const ModuleSpace& space) {
    const ModuleOperator theta = random_invertible_operator(rng, space);
    return transform_family(theta, standard_basis_family(space));
}

// Biframe with a prescribed Hermitian PD mixed operator `target`:
// second family is xi_i . (S_xi^{-1} target).
inline BiframePair biframe_with_mixed_operator(const FrameFamily& xi, const Matrix& target,
                                               const ToleranceConfig& tol = {}) {
    const Matrix mixer = frame_operator(xi).big().inverse() * target;
    std::vector<ModuleElement> upsilon;
    upsilon.reserve(xi.elements().size());
    for (const auto& e : xi.elements())
        upsilon.emplace_back(xi.space(), e.mat() * mixer);
    BiframePair pair(xi, FrameFamily(std::move(upsilon)));
    if (!biframe_check(pair, tol).is_biframe)
        throw NumericalBreakdown("constructed pair failed the biframe gate");
    return pair;
}

inline BiframePair random_biframe(SeededRng& rng, const ModuleSpace& space, int count,
                                  const ToleranceConfig& tol = {}) {
    const FrameFamily xi = random_frame(rng, space, count);
    return biframe_with_mixed_operator(xi, random_pd_matrix(rng, space.flat_dim()), tol);
}

// Biframe whose first family is a Riesz basis (count = m); the second
// family then is one as well.
inline BiframePair random_riesz_biframe(SeededRng& rng, const ModuleSpace& space,
                                        const ToleranceConfig& tol = {}) {
    const FrameFamily xi = random_riesz_family(rng, space);
    return biframe_with_mixed_operator(xi, random_pd_matrix(rng, space.flat_dim()), tol);
}

inline BiframePair random_parseval_pair(SeededRng& rng, const ModuleSpace& space, int count,
                                        const ToleranceConfig& tol = {}) {
    const FrameFamily xi = random_frame(rng, space, count);
    const Eigen::Index n = space.flat_dim();
    return biframe_with_mixed_operator(xi, Matrix::Identity(n, n), tol);
}

}  // namespace biframe

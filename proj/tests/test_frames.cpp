#include <catch2/catch_amalgamated.hpp>

#include "biframe/frames.hpp"
#include "biframe/random_systems.hpp"
#include "biframe/sequences.hpp"
#include "test_helpers.hpp"

using namespace biframe;
using testutil::scalar_element;

namespace {
const ToleranceConfig tol{};
constexpr double kEq = 1e-9;

// the worked 2x2 pair-frame example: invertible mixed operator, no biframe
BiframePair pair_frame_example() {
    return BiframePair(FrameFamily({scalar_element({1, 2}), scalar_element({3, 4})}),
                       FrameFamily({scalar_element({1, 1}), scalar_element({1, -1})}));
}
}  // namespace

TEST_CASE("frame operator of simple families") {
    const ModuleSpace space{1, 2};
    const FrameFamily basis = standard_basis_family(space);
    CHECK(approx_equal(frame_operator(basis), identity_operator(space), 0.0));

    const double root2 = std::sqrt(2.0);
    const FrameFamily doubled(
        {Complex(root2, 0) * standard_basis_element(space, 0),
         Complex(root2, 0) * standard_basis_element(space, 1)});
    CHECK(approx_equal(frame_operator(doubled), scale_op(2.0, identity_operator(space)), kEq));
}

TEST_CASE("frame operator agrees with the summation oracle") {
    SeededRng rng(101);
    const ModuleSpace space{2, 2};
    const FrameFamily family = random_frame(rng, space, 3);
    const ModuleOperator s = frame_operator(family);
    CHECK(is_positive_op(s, tol));
    for (int trial = 0; trial < 100; ++trial) {
        const ModuleElement x = random_element(rng, space);
        ModuleElement expected = zero_element(space);
        for (const auto& e : family.elements())
            expected = expected + module_scale(inner(x, e), e);
        CHECK(approx_equal(apply(s, x), expected, 100 * kEq));
    }
}

TEST_CASE("mixed operator reduces to the frame operator on a doubled family") {
    SeededRng rng(103);
    const ModuleSpace space{2, 2};
    const FrameFamily family = random_frame(rng, space, 3);
    CHECK(approx_equal(biframe_operator(family, family), frame_operator(family), 0.0));
}

TEST_CASE("mixed operator of the worked example acts as (4x+6y, -2x-2y)") {
    const BiframePair pair = pair_frame_example();
    const ModuleOperator s = biframe_operator(pair);
    SeededRng rng(107);
    const Complex x = rng.complex_uniform();
    const Complex y = rng.complex_uniform();
    const ModuleElement v = testutil::make_element(pair.space(), {x, y});
    const ModuleElement expected =
        testutil::make_element(pair.space(), {4.0 * x + 6.0 * y, -2.0 * x - 2.0 * y});
    CHECK(approx_equal(apply(s, v), expected, kEq));
    CHECK(std::abs(Complex(s.big().determinant()) - Complex(4, 0)) < kEq);
}

TEST_CASE("adjoint of the mixed operator is the swapped mixed operator, exactly") {
    SeededRng rng(109);
    for (int trial = 0; trial < 20; ++trial) {
        const ModuleSpace space{1 + trial % 2, 2 + trial % 3};
        const int count = space.m + trial % 2;
        std::vector<ModuleElement> xi, upsilon;
        for (int i = 0; i < count; ++i) {
            xi.push_back(random_element(rng, space));
            upsilon.push_back(random_element(rng, space));
        }
        const Matrix lhs = biframe_operator(FrameFamily(xi), FrameFamily(upsilon)).big().adjoint();
        const Matrix rhs = biframe_operator(FrameFamily(upsilon), FrameFamily(xi)).big();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("optimal frame bounds") {
    const ModuleSpace space{1, 2};
    const auto basis_bounds = frame_bounds(standard_basis_family(space), tol);
    REQUIRE(basis_bounds.has_value());
    CHECK(basis_bounds->lower == Catch::Approx(1.0));
    CHECK(basis_bounds->upper == Catch::Approx(1.0));

    // {e1, e1, e2}: frame operator diag(2, 1)
    const FrameFamily repeated({standard_basis_element(space, 0),
                                standard_basis_element(space, 0),
                                standard_basis_element(space, 1)});
    const auto repeated_bounds = frame_bounds(repeated, tol);
    REQUIRE(repeated_bounds.has_value());
    CHECK(repeated_bounds->lower == Catch::Approx(1.0));
    CHECK(repeated_bounds->upper == Catch::Approx(2.0));

    // incomplete family: no lower bound
    CHECK_FALSE(frame_bounds(FrameFamily({standard_basis_element(space, 0)}), tol).has_value());
}

TEST_CASE("classification of an orthonormal pair") {
    const ModuleSpace space{1, 2};
    const FrameFamily basis = standard_basis_family(space);
    const ClassificationReport report = biframe_check(BiframePair(basis, basis), tol);
    CHECK(report.is_bessel);
    CHECK(report.is_frame);
    CHECK(report.is_pair_frame);
    CHECK(report.is_biframe);
    CHECK(report.is_parseval);
    REQUIRE(report.is_tight.has_value());
    CHECK(*report.is_tight == Catch::Approx(1.0));
    REQUIRE(report.bounds.has_value());
    CHECK(report.bounds->lower == Catch::Approx(1.0));
    CHECK(report.bounds->upper == Catch::Approx(1.0));
    CHECK(report.hermitian_defect == 0.0);
}

TEST_CASE("classification of the worked pair-frame example") {
    const ClassificationReport report = biframe_check(pair_frame_example(), tol);
    CHECK(report.is_pair_frame);
    CHECK_FALSE(report.is_biframe);
    CHECK(report.hermitian_defect == Catch::Approx(8.0));
    CHECK_FALSE(report.diagnostics.empty());

    // the mixed quadratic form 4x^2 - 2y^2 + 4xy vanishes at x = (-1+sqrt 3)/2, y = 1
    const Matrix big = biframe_operator(pair_frame_example()).big();
    const ModuleElement witness = scalar_element({(-1.0 + std::sqrt(3.0)) / 2.0, 1.0});
    const Complex value = (witness.mat() * big * witness.mat().adjoint())(0, 0);
    CHECK(std::abs(value) < kEq);
}

TEST_CASE("truncated telescoping example classifies as a biframe with known bounds") {
    const DiagonalExampleSpec spec = example_spec(ExampleId::ex32);
    for (int n : {2, 6, 20}) {
        const ClassificationReport report = biframe_check(build_truncated(spec, n), tol);
        CHECK(report.is_biframe);
        REQUIRE(report.bounds.has_value());
        CHECK(report.bounds->lower == Catch::Approx(double(n) / (n - 1)));
        CHECK(report.bounds->upper == Catch::Approx(2.0));
    }
}

TEST_CASE("pair frame detection") {
    CHECK(is_pair_frame(pair_frame_example(), tol));
    const ModuleSpace space{1, 2};
    const FrameFamily basis = standard_basis_family(space);
    CHECK(is_pair_frame(BiframePair(basis, basis), tol));
    const FrameFamily zeros({zero_element(space), zero_element(space)});
    CHECK_FALSE(is_pair_frame(BiframePair(basis, zeros), tol));
}

TEST_CASE("controlled frame classification") {
    const ModuleSpace space{1, 2};
    const FrameFamily basis = standard_basis_family(space);
    const ModuleOperator id = identity_operator(space);

    const ClassificationReport plain = controlled_frame_check(basis, id, id, tol);
    REQUIRE(plain.bounds.has_value());
    CHECK(plain.bounds->lower == Catch::Approx(1.0));
    CHECK(plain.bounds->upper == Catch::Approx(1.0));

    const ClassificationReport doubled =
        controlled_frame_check(basis, scale_op(2.0, id), id, tol);
    REQUIRE(doubled.bounds.has_value());
    CHECK(doubled.bounds->lower == Catch::Approx(2.0));
    CHECK(doubled.bounds->upper == Catch::Approx(2.0));

    SeededRng rng(113);
    const ModuleSpace big{2, 2};
    const ModuleOperator c1 = random_invertible_operator(rng, big);
    const ModuleOperator c2(big, Matrix(c1.big().adjoint()).inverse());
    const ClassificationReport balanced =
        controlled_frame_check(standard_basis_family(big), c1, c2, tol);
    CHECK(balanced.is_parseval);
    // oracle: the controlled sum collapses to the identity
    Matrix acc = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
        const ModuleElement e = standard_basis_element(big, i);
        acc += apply(c1, e).mat().adjoint() * apply(c2, e).mat();
    }
    CHECK(detail::entrywise_close(acc, Matrix::Identity(4, 4), 100 * kEq));

    const ModuleOperator singular(space, testutil::matrix2(1, 0, 0, 0));
    CHECK_THROWS_AS(controlled_frame_check(basis, singular, id, tol), PreconditionFailed);
}

TEST_CASE("dual pair detection") {
    const ModuleSpace space{1, 2};
    const FrameFamily basis = standard_basis_family(space);
    CHECK(is_dual_pair(BiframePair(basis, basis), tol));

    const FrameFamily scaled({Complex(2, 0) * standard_basis_element(space, 0),
                              standard_basis_element(space, 1)});
    const FrameFamily reciprocal({Complex(0.5, 0) * standard_basis_element(space, 0),
                                  standard_basis_element(space, 1)});
    CHECK(is_dual_pair(BiframePair(scaled, reciprocal), tol));
    CHECK_FALSE(is_dual_pair(BiframePair(scaled, scaled), tol));
}

TEST_CASE("biorthogonality") {
    const ModuleSpace space{1, 2};
    const FrameFamily basis = standard_basis_family(space);
    CHECK(is_biorthogonal(BiframePair(basis, basis), tol));

    const FrameFamily scaled({Complex(2, 0) * standard_basis_element(space, 0),
                              standard_basis_element(space, 1)});
    const FrameFamily reciprocal({Complex(0.5, 0) * standard_basis_element(space, 0),
                                  standard_basis_element(space, 1)});
    CHECK(is_biorthogonal(BiframePair(scaled, reciprocal), tol));

    // a repeated element defeats biorthogonality against every partner family
    const FrameFamily repeated({standard_basis_element(space, 0),
                                standard_basis_element(space, 0)});
    SeededRng rng(127);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<ModuleElement> partner{random_element(rng, space),
                                           random_element(rng, space)};
        CHECK_FALSE(is_biorthogonal(BiframePair(repeated, FrameFamily(partner)), tol));
    }
}

TEST_CASE("swap is an involution preserving bounds") {
    const BiframePair pair = pair_frame_example();
    const BiframePair twice = swap(swap(pair));
    for (int i = 0; i < pair.size(); ++i) {
        CHECK(approx_equal(twice.xi[i], pair.xi[i], 0.0));
        CHECK(approx_equal(twice.upsilon[i], pair.upsilon[i], 0.0));
    }

    const DiagonalExampleSpec spec = example_spec(ExampleId::ex32);
    const BiframePair trunc = build_truncated(spec, 10);
    const auto direct = biframe_check(trunc, tol);
    const auto swapped = biframe_check(swap(trunc), tol);
    REQUIRE(direct.bounds.has_value());
    REQUIRE(swapped.bounds.has_value());
    CHECK(direct.bounds->lower == Catch::Approx(swapped.bounds->lower).margin(tol.psd_tol));
    CHECK(direct.bounds->upper == Catch::Approx(swapped.bounds->upper).margin(tol.psd_tol));

    SeededRng rng(131);
    for (int trial = 0; trial < 10; ++trial) {
        const BiframePair random_pair = random_biframe(rng, ModuleSpace{1, 3}, 4);
        const auto a = biframe_check(random_pair, tol);
        const auto b = biframe_check(swap(random_pair), tol);
        CHECK(a.is_biframe == b.is_biframe);
        REQUIRE(a.bounds.has_value());
        REQUIRE(b.bounds.has_value());
        CHECK(a.bounds->lower == Catch::Approx(b.bounds->lower).margin(tol.psd_tol));
        CHECK(a.bounds->upper == Catch::Approx(b.bounds->upper).margin(tol.psd_tol));
    }
}

TEST_CASE("computed bounds are optimal: tightening either side is refuted") {
    SeededRng rng(137);
    for (int trial = 0; trial < 10; ++trial) {
        const ModuleSpace space{1 + trial % 2, 2 + trial % 2};
        const BiframePair pair = random_biframe(rng, space, space.m + 1);
        const ClassificationReport report = biframe_check(pair, tol);
        REQUIRE(report.is_biframe);
        const double lower = report.bounds->lower;
        const double upper = report.bounds->upper;
        const Matrix big = biframe_operator(pair).big();
        const detail::HermitianEig eig = detail::hermitian_eig(big);

        // the Loewner inequalities hold at the computed bounds on random probes
        for (int probe = 0; probe < 100; ++probe) {
            const ModuleElement x = random_element(rng, space);
            AlgebraElement sum = algebra_zero(space.d);
            for (int i = 0; i < pair.size(); ++i)
                sum = sum + inner(x, pair.xi[i]) * inner(pair.upsilon[i], x);
            CHECK(loewner_leq(Complex(lower, 0) * inner(x, x), sum, tol));
            CHECK(loewner_leq(sum, Complex(upper, 0) * inner(x, x), tol));
        }

        // witnesses from the extreme eigenvectors refute tightened constants
        const double bump = 1e3 * tol.psd_tol;
        auto witness_from = [&](int column) {
            Matrix mat = Matrix::Zero(space.d, space.flat_dim());
            mat.row(0) = eig.vectors.col(column).adjoint();
            return ModuleElement(space, mat);
        };
        const ModuleElement low_witness = witness_from(0);
        AlgebraElement low_sum = algebra_zero(space.d);
        for (int i = 0; i < pair.size(); ++i)
            low_sum = low_sum + inner(low_witness, pair.xi[i]) * inner(pair.upsilon[i], low_witness);
        CHECK_FALSE(loewner_leq(Complex(lower + bump, 0) * inner(low_witness, low_witness),
                                low_sum, tol));

        const ModuleElement high_witness = witness_from(space.flat_dim() - 1);
        AlgebraElement high_sum = algebra_zero(space.d);
        for (int i = 0; i < pair.size(); ++i)
            high_sum =
                high_sum + inner(high_witness, pair.xi[i]) * inner(pair.upsilon[i], high_witness);
        CHECK_FALSE(loewner_leq(high_sum,
                                Complex(upper - bump, 0) * inner(high_witness, high_witness),
                                tol));
    }
}

TEST_CASE("biframe iff mixed operator positive and bounded below") {
    SeededRng rng(139);
    const ModuleSpace space{2, 2};
    for (int trial = 0; trial < 10; ++trial) {
        // forward: every flagged biframe has a positive bounded-below operator
        const BiframePair pair = random_biframe(rng, space, 3);
        REQUIRE(biframe_check(pair, tol).is_biframe);
        const ModuleOperator s = biframe_operator(pair);
        CHECK(is_positive_op(s, tol));
        CHECK(is_bounded_below(s, tol).first);

        // backward: a prescribed PD mixed operator yields a flagged biframe
        const Matrix target = random_pd_matrix(rng, space.flat_dim());
        const BiframePair constructed =
            biframe_with_mixed_operator(random_frame(rng, space, 3), target, tol);
        CHECK(biframe_check(constructed, tol).is_biframe);
        CHECK(detail::entrywise_close(biframe_operator(constructed).big(), target, 1e-10));
    }
}

TEST_CASE("positive mixed operators satisfy the quadratic domination inequality") {
    // <Sx, Sx> <= ||S|| <Sx, x> holds for every PSD operator in this model
    SeededRng rng(149);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 5;
        const Matrix g = random_pd_matrix(rng, n, 0.1, 3.0);
        const AlgebraElement lhs(g.adjoint() * g);
        const AlgebraElement rhs(detail::op_norm(g) * detail::sym_part(g));
        CHECK(loewner_leq(lhs, rhs, tol));
    }
}

TEST_CASE("a biframe is a pair frame; the converse fails on the stored witness") {
    SeededRng rng(151);
    for (int trial = 0; trial < 10; ++trial) {
        const BiframePair pair = random_biframe(rng, ModuleSpace{1, 2}, 3);
        const ClassificationReport report = biframe_check(pair, tol);
        CHECK(report.is_biframe);
        CHECK(report.is_pair_frame);
    }
    const ClassificationReport witness = biframe_check(pair_frame_example(), tol);
    CHECK(witness.is_pair_frame);
    CHECK_FALSE(witness.is_biframe);
}

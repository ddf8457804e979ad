#pragma once

// Finite truncations of the classical diagonal sequence examples on the
// scalar module: coefficient rules indexed from 1, truncated at complete
// periods, with bound trajectories tracked against their limiting values.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biframe/errors.hpp"
#include "biframe/frames.hpp"
#include "biframe/hmodule.hpp"

namespace biframe {

enum class ExampleId { ex32, ex44, ex45, custom };

inline std::string example_name(ExampleId id) {
    switch (id) {
        case ExampleId::ex32: return "ex32";
        case ExampleId::ex44: return "ex44";
        case ExampleId::ex45: return "ex45";
        case ExampleId::custom: return "custom";
    }
    return "?";
}

// One family member: coeff * e_{basis_index}, indices starting at 1.
struct CoeffTerm {
    double coeff = 0.0;
    int basis_index = 1;
};

struct DiagonalExampleSpec {
    ExampleId id = ExampleId::custom;
    std::function<CoeffTerm(int)> xi_coeff;       // i >= 1
    std::function<CoeffTerm(int)> upsilon_coeff;  // i >= 1
    std::string description;
    int period = 1;       // valid truncation lengths are multiples of this
    int max_length = 0;   // 0 = unbounded (rule-based specs)
    std::optional<double> limit_lower;
    std::optional<double> limit_upper;
};

// The three stock examples. Indexing follows the printed listings:
//   ex32: {e1, 2e2, (1/3)e3, 4e4, ...} against {2e1, e2, 4e3, (1/3)e4, ...}
//   ex44: {e1,e1,e1, e2,e2,e2, ...} against {2e1, e1, -e1, (3/2)e2, e2, -e2, ...}
//   ex45: {e1, (1/sqrt2)e2, e3, (1/2)e4, ...} against {e1, sqrt2 e2, e3, 2e4, ...}
inline DiagonalExampleSpec example_spec(ExampleId id) {
    DiagonalExampleSpec spec;
    spec.id = id;
    switch (id) {
        case ExampleId::ex32:
            spec.description = "two non-Bessel diagonal sequences whose product telescopes";
            spec.period = 2;
            spec.limit_lower = 1.0;
            spec.limit_upper = 2.0;
            spec.xi_coeff = [](int i) {
                return (i % 2 == 1) ? CoeffTerm{1.0 / i, i} : CoeffTerm{double(i), i};
            };
            spec.upsilon_coeff = [](int i) {
                return (i % 2 == 1) ? CoeffTerm{double(i + 1), i} : CoeffTerm{1.0 / (i - 1), i};
            };
            break;
        case ExampleId::ex44:
            spec.description = "frame paired with a cancelling triple pattern";
            spec.period = 3;
            spec.limit_lower = 1.0;
            spec.limit_upper = 2.0;
            spec.xi_coeff = [](int i) { return CoeffTerm{1.0, (i - 1) / 3 + 1}; };
            spec.upsilon_coeff = [](int i) {
                const int k = (i - 1) / 3 + 1;
                switch ((i - 1) % 3) {
                    case 0: return CoeffTerm{double(k + 1) / k, k};
                    case 1: return CoeffTerm{1.0, k};
                    default: return CoeffTerm{-1.0, k};
                }
            };
            break;
        case ExampleId::ex45:
            spec.description = "Bessel against non-Bessel with pairwise-reciprocal weights";
            spec.period = 2;
            spec.limit_lower = 1.0;
            spec.limit_upper = 1.0;
            spec.xi_coeff = [](int i) {
                return (i % 2 == 1) ? CoeffTerm{1.0, i} : CoeffTerm{1.0 / std::sqrt(double(i)), i};
            };
            spec.upsilon_coeff = [](int i) {
                return (i % 2 == 1) ? CoeffTerm{1.0, i} : CoeffTerm{std::sqrt(double(i)), i};
            };
            break;
        case ExampleId::custom:
            throw PreconditionFailed("custom specs are built from explicit coefficient lists");
    }
    return spec;
}

inline DiagonalExampleSpec custom_spec(std::vector<CoeffTerm> xi, std::vector<CoeffTerm> upsilon,
                                       std::string description = "custom") {
    if (xi.size() != upsilon.size() || xi.empty())
        throw DimensionMismatch("custom spec needs equal-length nonempty coefficient lists");
    for (const auto& t : xi)
        if (!std::isfinite(t.coeff) || t.basis_index < 1)
            throw PreconditionFailed("coefficients must be finite with basis index >= 1");
    for (const auto& t : upsilon)
        if (!std::isfinite(t.coeff) || t.basis_index < 1)
            throw PreconditionFailed("coefficients must be finite with basis index >= 1");
    DiagonalExampleSpec spec;
    spec.id = ExampleId::custom;
    spec.description = std::move(description);
    spec.period = 1;
    spec.max_length = static_cast<int>(xi.size());
    spec.xi_coeff = [terms = std::move(xi)](int i) { return terms[static_cast<size_t>(i - 1)]; };
    spec.upsilon_coeff = [terms = std::move(upsilon)](int i) {
        return terms[static_cast<size_t>(i - 1)];
    };
    return spec;
}

inline void validate_truncation_length(const DiagonalExampleSpec& spec, int n) {
    if (n < 1 || n % spec.period != 0)
        throw PreconditionFailed("truncation length " + std::to_string(n) +
                                 " is not a positive multiple of the period " +
                                 std::to_string(spec.period));
    if (spec.max_length > 0 && n > spec.max_length)
        throw PreconditionFailed("truncation length exceeds the stored coefficient list");
}

// First n members of each family, realized on the scalar module whose rank
// is the largest basis index in play.
inline BiframePair build_truncated(const DiagonalExampleSpec& spec, int n) {
    validate_truncation_length(spec, n);
    int max_index = 1;
    for (int i = 1; i <= n; ++i) {
        max_index = std::max({max_index, spec.xi_coeff(i).basis_index,
                              spec.upsilon_coeff(i).basis_index});
    }
    const ModuleSpace space{1, max_index};
    auto realize = [&](const std::function<CoeffTerm(int)>& rule) {
        std::vector<ModuleElement> elems;
        elems.reserve(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i) {
            const CoeffTerm term = rule(i);
            elems.push_back(Complex(term.coeff, 0.0) *
                            standard_basis_element(space, term.basis_index - 1));
        }
        return FrameFamily(std::move(elems));
    };
    return BiframePair(realize(spec.xi_coeff), realize(spec.upsilon_coeff));
}

struct TruncationEntry {
    int n = 0;
    double lower = 0.0;
    double upper = 0.0;
    double parseval_defect = 0.0;
};

struct TruncationReport {
    std::string spec_id;
    std::vector<TruncationEntry> entries;  // ordered by n
    std::optional<double> limit_lower;
    std::optional<double> limit_upper;
};

// Classifies each truncation and records its optimal bounds next to the
// limiting values of the untruncated example.
inline TruncationReport bound_trajectory(const DiagonalExampleSpec& spec,
                                         const std::vector<int>& lengths,
                                         const ToleranceConfig& tol = {}) {
    TruncationReport report;
    report.spec_id = example_name(spec.id);
    report.limit_lower = spec.limit_lower;
    report.limit_upper = spec.limit_upper;
    std::vector<int> sorted = lengths;
    std::sort(sorted.begin(), sorted.end());
    for (int n : sorted) {
        const BiframePair pair = build_truncated(spec, n);
        const Matrix big = biframe_operator(pair).big();
        const ClassificationReport check = biframe_check(pair, tol);
        TruncationEntry entry;
        entry.n = n;
        if (check.bounds && check.is_biframe) {
            entry.lower = check.bounds->lower;
            entry.upper = check.bounds->upper;
        } else {
            const RealVector ev = detail::hermitian_eigenvalues(detail::sym_part(big));
            entry.lower = ev(0);
            entry.upper = ev(ev.size() - 1);
        }
        entry.parseval_defect =
            detail::op_norm(big - Matrix::Identity(big.rows(), big.cols()));
        report.entries.push_back(entry);
    }
    return report;
}

// Optimal Bessel constants of the two truncated families taken alone;
// their growth in n is the witness that the infinite families are not
// Bessel even though the pair stays a biframe.
inline std::pair<double, double> non_bessel_witness(const DiagonalExampleSpec& spec, int n) {
    if (spec.id != ExampleId::ex32 && spec.id != ExampleId::ex45)
        throw PreconditionFailed("non-Bessel witness is defined for ex32 and ex45 only");
    const BiframePair pair = build_truncated(spec, n);
    return {frame_upper_bound(pair.xi), frame_upper_bound(pair.upsilon)};
}

}  // namespace biframe

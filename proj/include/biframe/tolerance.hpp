#pragma once

#include <stdexcept>

namespace biframe {

// Numerical decision thresholds. All three are interpreted relative to the
// operator-norm scale of the inputs: a comparison against `eq_tol` uses
// eq_tol * max(1, ||input||).
//
//   eq_tol  - absolute entrywise / operator-norm equality tolerance
//   psd_tol - eigenvalue floor for positivity decisions
//   inv_tol - smallest-singular-value floor for invertibility decisions
struct ToleranceConfig {
    double eq_tol = 1e-9;
    double psd_tol = 1e-9;
    double inv_tol = 1e-9;

    void validate() const {
        auto ok = [](double t) { return t > 0.0 && t <= 1e-3; };
        if (!ok(eq_tol) || !ok(psd_tol) || !ok(inv_tol))
            throw std::invalid_argument("tolerances must lie in (0, 1e-3]");
    }
};

inline ToleranceConfig default_tolerances() { return ToleranceConfig{}; }

}  // namespace biframe

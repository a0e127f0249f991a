#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mbps {

/// Thrown when two algebraically equivalent evaluation routes disagree
/// beyond tolerance. User input errors never raise this; it signals an
/// implementation bug or corrupted state.
class identity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |a - b| / max(|a|, |b|, 1e-300).
inline double relative_error(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

inline bool nearly_equal(double a, double b, double rel_tol) {
    return relative_error(a, b) <= rel_tol;
}

/// Clamps a variance that went slightly negative from floating-point
/// cancellation. `scale_sq` is the squared natural scale of the quantity
/// (mean price squared for a price variance); anything more negative than
/// 1e-12 * scale_sq is treated as an internal-consistency failure.
inline double guard_variance(double value, double scale_sq) {
    if (value >= 0.0) {
        return value;
    }
    if (-value < 1e-12 * scale_sq) {
        return 0.0;
    }
    throw identity_error("variance evaluated to " + std::to_string(value) +
                         ", more negative than cancellation noise allows");
}

} // namespace mbps

#include "mbps/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace mbps {

double max_abs(const SquareMatrix& m) {
    double result = 0.0;
    for (double x : m.data()) {
        result = std::max(result, std::abs(x));
    }
    return result;
}

bool is_symmetric(const SquareMatrix& m, double rel_tol) {
    const double tol = rel_tol * std::max(max_abs(m), 1e-300);
    for (std::size_t j = 0; j < m.size(); ++j) {
        for (std::size_t k = j + 1; k < m.size(); ++k) {
            if (std::abs(m(j, k) - m(k, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

double min_eigenvalue(const SquareMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) {
        return 0.0;
    }
    SquareMatrix a = m;
    // symmetrize first; callers pass matrices symmetric up to rounding
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const double s = 0.5 * (a(j, k) + a(k, j));
            a(j, k) = s;
            a(k, j) = s;
        }
    }
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off < 1e-30 * std::max(max_abs(a) * max_abs(a), 1e-300)) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) +
                                  std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
            }
        }
    }
    double lambda_min = a(0, 0);
    for (std::size_t j = 1; j < n; ++j) {
        lambda_min = std::min(lambda_min, a(j, j));
    }
    return lambda_min;
}

bool is_positive_semidefinite(const SquareMatrix& m, double rel_tol) {
    if (m.size() == 0) {
        return true;
    }
    return min_eigenvalue(m) >= -rel_tol * std::max(max_abs(m), 1e-300);
}

} // namespace mbps

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mbps {

/// Dense row-major square matrix, sized for J x J covariance tables.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const { return n_; }

    double& operator()(std::size_t row, std::size_t col) {
        return a_[row * n_ + col];
    }
    double operator()(std::size_t row, std::size_t col) const {
        return a_[row * n_ + col];
    }

    std::span<const double> data() const { return a_; }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

double max_abs(const SquareMatrix& m);

/// Entrywise symmetry within tol * max_abs(m).
bool is_symmetric(const SquareMatrix& m, double rel_tol = 1e-9);

/// Smallest eigenvalue of a symmetric matrix (cyclic Jacobi sweeps).
double min_eigenvalue(const SquareMatrix& m);

/// True when the smallest eigenvalue is above -rel_tol * max_abs(m).
bool is_positive_semidefinite(const SquareMatrix& m, double rel_tol = 1e-10);

} // namespace mbps

#include <doctest.h>

#include <cmath>

#include "mbps/matrix.hpp"

using namespace mbps;

TEST_CASE("square matrix basics") {
    SquareMatrix m(3);
    CHECK(m.size() == 3);
    CHECK(m(1, 2) == 0.0);
    m(1, 2) = 4.5;
    CHECK(m(1, 2) == 4.5);
    CHECK(max_abs(m) == 4.5);
}

TEST_CASE("symmetry check") {
    SquareMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0 + 1e-15;
    CHECK(is_symmetric(m));
    m(1, 0) = 1.1;
    CHECK_FALSE(is_symmetric(m));
}

TEST_CASE("smallest eigenvalue via Jacobi sweeps") {
    SUBCASE("diagonal") {
        SquareMatrix m(3);
        m(0, 0) = 5.0;
        m(1, 1) = -2.0;
        m(2, 2) = 7.0;
        CHECK(min_eigenvalue(m) == doctest::Approx(-2.0));
    }

    SUBCASE("2x2 with known spectrum") {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        SquareMatrix m(2);
        m(0, 0) = 2.0;
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        m(1, 1) = 2.0;
        CHECK(min_eigenvalue(m) == doctest::Approx(1.0));
    }

    SUBCASE("rank-deficient Gram matrix has a zero eigenvalue") {
        // outer product of (1, 2, 3) with itself
        SquareMatrix m(3);
        const double v[3] = {1.0, 2.0, 3.0};
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                m(j, k) = v[j] * v[k];
            }
        }
        CHECK(std::abs(min_eigenvalue(m)) < 1e-10);
        CHECK(is_positive_semidefinite(m));
    }
}

TEST_CASE("positive semidefiniteness flag") {
    SquareMatrix psd(2);
    psd(0, 0) = 2.0;
    psd(0, 1) = 1.0;
    psd(1, 0) = 1.0;
    psd(1, 1) = 2.0;
    CHECK(is_positive_semidefinite(psd));

    // eigenvalues of [[1,2],[2,1]] are 3 and -1
    SquareMatrix indefinite(2);
    indefinite(0, 0) = 1.0;
    indefinite(0, 1) = 2.0;
    indefinite(1, 0) = 2.0;
    indefinite(1, 1) = 1.0;
    CHECK_FALSE(is_positive_semidefinite(indefinite));

    CHECK(is_positive_semidefinite(SquareMatrix{}));
}

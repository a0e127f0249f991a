#include <doctest.h>

#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "mbps/numeric.hpp"
#include "mbps/oracles.hpp"
#include "mbps/pair_stats.hpp"
#include "mbps/security_stats.hpp"

using namespace mbps;
using test::make_series;
using test::random_series;

namespace {

// fixture from the frozen 3-tick reference: sigma_jk = 61/2790
const std::vector<double> kValuesJ{1.0, 6.0, 9.0};
const std::vector<double> kVolumesJ{2.0, 3.0, 4.0};
const std::vector<double> kValuesK{8.0, 3.0, 10.0};
const std::vector<double> kVolumesK{4.0, 1.0, 5.0};

} // namespace

TEST_CASE("price covariance against the weighted-sum oracle") {
    const auto sj = make_series(kValuesJ, kVolumesJ, "J");
    const auto sk = make_series(kValuesK, kVolumesK, "K");
    const double sigma = price_covariance(sj, sk);
    CHECK(sigma == doctest::Approx(61.0 / 2790.0).epsilon(1e-12));
    const double direct = oracle::weighted_covariance(
        sj.prices(), sk.prices(), sj.volumes(), sk.volumes(), vwap(sj),
        vwap(sk));
    CHECK(relative_error(sigma, direct) < 1e-12);

    // two-tick instance, hand-evaluated weighted sum
    const auto a = make_series({10.0, 30.0}, {1.0, 2.0}, "J");
    const auto b = make_series({8.0, 8.0}, {2.0, 1.0}, "K");
    CHECK(price_covariance(a, b) == doctest::Approx(40.0 / 9.0));
}

TEST_CASE("price covariance diagonal and rescaled partner") {
    const auto sj = make_series({10.0, 30.0}, {1.0, 2.0}, "J");
    CHECK(relative_error(price_covariance(sj, sj), price_variance(sj)) <
          1e-12);
    // a rescaled copy carries identical prices
    const auto sk = rescale(sj, 0.25);
    CHECK(relative_error(price_covariance(sj, sk), price_variance(sj)) <
          1e-12);
}

TEST_CASE("price covariance requires aligned windows") {
    const auto sj = make_series({1.0, 2.0}, {1.0, 1.0}, "J");
    const TradeSeries sk("K", AveragingWindow("", 3, 1.0), {1.0, 2.0, 3.0},
                         {1.0, 1.0, 1.0});
    CHECK_THROWS_AS(price_covariance(sj, sk), std::invalid_argument);
    CHECK_THROWS_AS(frequency_price_covariance(sj, sk),
                    std::invalid_argument);
}

TEST_CASE("normalized coefficients") {
    SUBCASE("constant volumes zero the volume coefficients") {
        const auto sj = make_series({3.0, 9.0}, {2.0, 2.0}, "J");
        const auto sk = make_series({4.0, 5.0}, {7.0, 7.0}, "K");
        const auto c = normalized_coefficients(sj, sk);
        CHECK(c.value_volume == doctest::Approx(0.0));
        CHECK(c.volume_volume == doctest::Approx(0.0));
    }

    SUBCASE("diagonal matches the value coefficient of variation") {
        const auto sj = make_series({10.0, 30.0}, {1.0, 2.0}, "J");
        const auto c = normalized_coefficients(sj, sj);
        CHECK(c.value_value == doctest::Approx(100.0 / 400.0)); // Psi_C / C1^2
    }

    SUBCASE("invariant under rescaling of either argument") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> scale_dist(1e-3, 1e3);
        for (int rep = 0; rep < 25; ++rep) {
            const auto sj = random_series(rng, 2 + rep % 9, "J");
            const auto sk = random_series(rng, 2 + rep % 9, "K");
            const auto base = normalized_coefficients(sj, sk);
            const auto scaled = normalized_coefficients(
                rescale(sj, scale_dist(rng)), rescale(sk, scale_dist(rng)));
            CHECK(relative_error(base.value_value, scaled.value_value) <
                  1e-12);
            CHECK(relative_error(base.value_volume, scaled.value_volume) <
                  1e-12);
            CHECK(relative_error(base.volume_volume, scaled.volume_volume) <
                  1e-12);
        }
    }
}

TEST_CASE("normalized-coefficient form of the price covariance") {
    SUBCASE("matches the moment form on random pairs") {
        std::mt19937_64 rng(32);
        for (int rep = 0; rep < 60; ++rep) {
            const std::size_t n = 2 + rep % 15;
            const auto sj = random_series(rng, n, "J");
            const auto sk = random_series(rng, n, "K");
            CHECK(relative_error(price_covariance(sj, sk),
                                 price_covariance_normalized_form(sj, sk)) <
                  1e-12);
        }
    }

    SUBCASE("constant volumes reduce it to the value coefficient") {
        const auto sj = make_series({3.0, 9.0}, {2.0, 2.0}, "J");
        const auto sk = make_series({4.0, 5.0}, {7.0, 7.0}, "K");
        const auto c = normalized_coefficients(sj, sk);
        CHECK(relative_error(price_covariance_normalized_form(sj, sk),
                             c.value_value * vwap(sj) * vwap(sk)) < 1e-12);
    }
}

TEST_CASE("return covariance") {
    const auto sj = make_series(kValuesJ, kVolumesJ, "J");
    const auto sk = make_series(kValuesK, kVolumesK, "K");

    SUBCASE("unit reference prices reproduce the price covariance") {
        CHECK(relative_error(return_covariance(sj, sk, 1.0, 1.0),
                             price_covariance(sj, sk)) < 1e-14);
    }

    SUBCASE("diagonal consistency with the security return variance") {
        CHECK(relative_error(return_covariance(sj, sj, 2.0, 2.0),
                             return_variance(sj, 2.0)) < 1e-12);
    }

    SUBCASE("past-value route agrees") {
        std::mt19937_64 rng(33);
        std::uniform_real_distribution<double> p0_dist(0.1, 10.0);
        for (int rep = 0; rep < 40; ++rep) {
            const std::size_t n = 2 + rep % 8;
            const auto a = random_series(rng, n, "J");
            const auto b = random_series(rng, n, "K");
            const double p0j = p0_dist(rng);
            const double p0k = p0_dist(rng);
            CHECK(relative_error(
                      return_covariance(a, b, p0j, p0k),
                      return_covariance_past_value_form(a, b, p0j, p0k)) <
                  1e-12);
        }
    }

    SUBCASE("invalid reference prices") {
        CHECK_THROWS_AS(return_covariance(sj, sk, 0.0, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(return_covariance(sj, sk, 1.0, -2.0),
                        std::invalid_argument);
    }
}

TEST_CASE("exact symmetry under argument exchange") {
    std::mt19937_64 rng(34);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 2 + rep % 12;
        const auto sj = random_series(rng, n, "J");
        const auto sk = random_series(rng, n, "K");
        CHECK(price_covariance(sj, sk) == price_covariance(sk, sj));
        CHECK(return_covariance(sj, sk, 2.0, 5.0) ==
              return_covariance(sk, sj, 5.0, 2.0));
        CHECK(frequency_price_covariance(sj, sk) ==
              frequency_price_covariance(sk, sj));
    }
}

TEST_CASE("frequency covariances") {
    SUBCASE("constant volumes on both sides collapse market onto frequency") {
        std::mt19937_64 rng(35);
        std::uniform_real_distribution<double> dist(0.1, 10.0);
        for (int rep = 0; rep < 20; ++rep) {
            const std::size_t n = 2 + rep % 7;
            std::vector<double> cj(n);
            std::vector<double> ck(n);
            for (std::size_t i = 0; i < n; ++i) {
                cj[i] = dist(rng);
                ck[i] = dist(rng);
            }
            const auto sj =
                make_series(std::move(cj), std::vector<double>(n, dist(rng)), "J");
            const auto sk =
                make_series(std::move(ck), std::vector<double>(n, dist(rng)), "K");
            CHECK(relative_error(price_covariance(sj, sk),
                                 frequency_price_covariance(sj, sk)) < 1e-12);
            CHECK(relative_error(
                      return_covariance(sj, sk, 2.0, 3.0),
                      frequency_return_covariance(sj, sk, 2.0, 3.0)) < 1e-12);
        }
    }

    SUBCASE("identical series give the frequency price variance") {
        const auto sj = make_series({10.0, 20.0}, {1.0, 2.0}, "J");
        CHECK(relative_error(frequency_price_covariance(sj, sj),
                             frequency_price_variance(sj)) < 1e-14);
    }

    SUBCASE("random volumes split the two valuations") {
        const auto sj = make_series(kValuesJ, kVolumesJ, "J");
        const auto sk = make_series(kValuesK, kVolumesK, "K");
        CHECK(relative_error(price_covariance(sj, sk),
                             frequency_price_covariance(sj, sk)) > 1e-3);
    }
}

TEST_CASE("pair stats record") {
    const auto sj = make_series(kValuesJ, kVolumesJ, "J");
    const auto sk = make_series(kValuesK, kVolumesK, "K");
    const PairStats stats = pair_stats(sj, sk, 2.0, 3.0);
    CHECK(stats.value_value_cov ==
          doctest::Approx(covariance(kValuesJ, kValuesK)));
    CHECK(stats.value_volume_cov ==
          doctest::Approx(covariance(kValuesJ, kVolumesK)));
    CHECK(stats.volume_value_cov ==
          doctest::Approx(covariance(kVolumesJ, kValuesK)));
    CHECK(stats.volume_volume_cov ==
          doctest::Approx(covariance(kVolumesJ, kVolumesK)));
    CHECK(stats.joint_volume_moment ==
          doctest::Approx((2.0 * 4.0 + 3.0 * 1.0 + 4.0 * 5.0) / 3.0));
    // joint moment factors into mean volumes times one plus the coefficient
    CHECK(stats.joint_volume_moment ==
          doctest::Approx(mean(kVolumesJ) * mean(kVolumesK) *
                          (1.0 + stats.coefficients.volume_volume)));
    CHECK(stats.price_covariance == doctest::Approx(61.0 / 2790.0));
    CHECK(stats.return_covariance ==
          doctest::Approx(61.0 / 2790.0 / 6.0));
    CHECK(stats.joint_past_value_moment ==
          doctest::Approx(6.0 * stats.joint_volume_moment));
}

TEST_CASE("covariance matrices over a security set") {
    std::mt19937_64 rng(36);
    std::vector<TradeSeries> series;
    for (int j = 0; j < 4; ++j) {
        series.push_back(random_series(rng, 8, "S" + std::to_string(j + 1)));
    }
    const std::vector<double> p0{1.0, 2.0, 3.0, 4.0};

    const SquareMatrix sigma = price_covariance_matrix(series);
    CHECK(is_symmetric(sigma, 0.0)); // exact by construction
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(relative_error(sigma(j, j), price_variance(series[j])) < 1e-12);
    }

    const SquareMatrix theta = return_covariance_matrix(series, p0);
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(relative_error(theta(j, k),
                                 sigma(j, k) / (p0[j] * p0[k])) < 1e-14);
        }
    }

    const CoefficientMatrices coeffs = coefficient_matrices(series);
    CHECK(coeffs.value_value.size() == 4);
    // the value/volume block is directional: transpose under exchange
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t k = 0; k < 4; ++k) {
            const auto c = normalized_coefficients(series[j], series[k]);
            CHECK(coeffs.value_volume(j, k) == doctest::Approx(c.value_volume));
        }
    }

    CHECK_THROWS_AS(return_covariance_matrix(series, std::vector<double>{1.0}),
                    std::invalid_argument);
}

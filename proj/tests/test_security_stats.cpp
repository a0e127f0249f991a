#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "mbps/numeric.hpp"
#include "mbps/oracles.hpp"
#include "mbps/security_stats.hpp"

using namespace mbps;
using test::make_series;
using test::random_series;

TEST_CASE("vwap") {
    CHECK(vwap(make_series({10.0, 30.0}, {1.0, 2.0})) ==
          doctest::Approx(40.0 / 3.0));
    // constant price at any volumes
    CHECK(vwap(make_series({5.0, 15.0, 35.0}, {1.0, 3.0, 7.0})) ==
          doctest::Approx(5.0));
    // constant volumes reduce to the arithmetic mean
    CHECK(vwap(make_series({10.0, 20.0}, {1.0, 1.0})) ==
          doctest::Approx(15.0));
}

TEST_CASE("vwap lies between the extreme prices") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        const auto s = random_series(rng, 1 + rep % 13);
        const auto prices = s.prices();
        const auto [lo, hi] = std::minmax_element(prices.begin(), prices.end());
        const double p = vwap(s);
        CHECK(p >= *lo - 1e-12 * *hi);
        CHECK(p <= *hi + 1e-12 * *hi);
    }
}

TEST_CASE("market-based price variance") {
    CHECK(price_variance(make_series({5.0, 10.0}, {1.0, 2.0})) ==
          doctest::Approx(0.0)); // constant price
    CHECK(price_variance(make_series({10.0, 30.0}, {1.0, 2.0})) ==
          doctest::Approx(40.0 / 9.0));
    // constant volumes, prices (10, 20): the population variance
    CHECK(price_variance(make_series({30.0, 60.0}, {3.0, 3.0})) ==
          doctest::Approx(25.0));
}

TEST_CASE("price variance equals the weighted-sum oracle") {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 100; ++rep) {
        const auto s = random_series(rng, 1 + rep % 31);
        const double direct =
            oracle::weighted_variance(s.prices(), s.volumes(), vwap(s));
        CHECK(relative_error(price_variance(s), direct) < 1e-12);
    }
}

TEST_CASE("security stats record") {
    const auto s = make_series({10.0, 30.0}, {1.0, 2.0});
    const SecurityStats stats = security_stats(s);
    CHECK(stats.mean_price == doctest::Approx(40.0 / 3.0));
    CHECK(stats.price_variance == doctest::Approx(40.0 / 9.0));
    CHECK(stats.value_variance == doctest::Approx(100.0));
    CHECK(stats.volume_variance == doctest::Approx(0.25));
    CHECK(stats.value_volume_cov == doctest::Approx(5.0));
    CHECK(stats.second_volume_moment == doctest::Approx(2.5));

    double sum1 = 0.0;
    double sum2 = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        sum1 += stats.first_order_weights[i];
        sum2 += stats.second_order_weights[i];
    }
    CHECK(sum1 == doctest::Approx(1.0));
    CHECK(sum2 == doctest::Approx(1.0));
}

TEST_CASE("frequency-based price statistics") {
    const auto s = make_series({10.0, 20.0}, {1.0, 1.0});
    CHECK(frequency_mean_price(s) == doctest::Approx(15.0));
    CHECK(frequency_price_variance(s) == doctest::Approx(25.0));

    SUBCASE("constant volumes collapse market-based onto frequency-based") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> dist(0.1, 10.0);
        for (int rep = 0; rep < 20; ++rep) {
            const std::size_t n = 2 + rep % 11;
            std::vector<double> values(n);
            for (double& c : values) {
                c = dist(rng);
            }
            const auto series =
                make_series(std::move(values),
                            std::vector<double>(n, dist(rng)));
            CHECK(relative_error(vwap(series), frequency_mean_price(series)) <
                  1e-13);
            CHECK(relative_error(price_variance(series),
                                 frequency_price_variance(series)) < 1e-12);
        }
    }

    SUBCASE("random volumes split the two valuations") {
        const auto mixed = make_series({10.0, 30.0}, {1.0, 2.0});
        CHECK(frequency_price_variance(mixed) == doctest::Approx(6.25));
        CHECK(price_variance(mixed) == doctest::Approx(40.0 / 9.0));
        CHECK(frequency_price_variance(mixed) != price_variance(mixed));
    }
}

TEST_CASE("mean return") {
    const auto s = make_series({10.0, 30.0}, {1.0, 2.0});
    CHECK(mean_return(s, 1.0) == doctest::Approx(vwap(s)));
    CHECK(mean_return(s, 10.0) == doctest::Approx(4.0 / 3.0));
    // constant price equal to the reference
    CHECK(mean_return(make_series({5.0, 10.0}, {1.0, 2.0}), 5.0) ==
          doctest::Approx(1.0));
    CHECK_THROWS_WITH_AS(mean_return(s, 0.0), "invalid reference price",
                         std::invalid_argument);
    CHECK_THROWS_AS(mean_return(s, -3.0), std::invalid_argument);
}

TEST_CASE("return variance") {
    const auto s = make_series({10.0, 30.0}, {1.0, 2.0});
    CHECK(return_variance(s, 10.0) == doctest::Approx(4.0 / 90.0));
    CHECK(return_variance(make_series({5.0, 10.0}, {1.0, 2.0}), 2.0) ==
          doctest::Approx(0.0));

    SUBCASE("scaled by the squared reference price it reproduces the price variance") {
        std::mt19937_64 rng(24);
        std::uniform_real_distribution<double> p0_dist(0.1, 10.0);
        for (int rep = 0; rep < 50; ++rep) {
            const auto r = random_series(rng, 1 + rep % 23);
            const double p0 = p0_dist(rng);
            CHECK(relative_error(return_variance(r, p0) * p0 * p0,
                                 price_variance(r)) < 1e-12);
        }
    }
}

TEST_CASE("return stats record") {
    const auto s = make_series({10.0, 30.0}, {1.0, 2.0});
    const ReturnStats stats = return_stats(s, 10.0);
    CHECK(stats.reference_price == doctest::Approx(10.0));
    CHECK(stats.mean_return == doctest::Approx(4.0 / 3.0));
    CHECK(stats.net_mean_return() == doctest::Approx(1.0 / 3.0));
    CHECK(stats.return_variance == doctest::Approx(4.0 / 90.0));
    REQUIRE(stats.past_values.size() == 2);
    CHECK(stats.past_values[0] == doctest::Approx(10.0));
    CHECK(stats.past_values[1] == doctest::Approx(20.0));
    CHECK(stats.past_value_variance == doctest::Approx(25.0));
    CHECK(stats.current_past_cov == doctest::Approx(50.0));
    CHECK(stats.second_past_moment == doctest::Approx(250.0));
}

TEST_CASE("gross and net returns share the variance") {
    std::mt19937_64 rng(25);
    for (int rep = 0; rep < 20; ++rep) {
        const auto s = random_series(rng, 2 + rep % 9);
        const double p0 = 3.0;
        auto returns = s.prices();
        for (double& r : returns) {
            r /= p0;
        }
        auto net = returns;
        for (double& r : net) {
            r -= 1.0;
        }
        CHECK(relative_error(variance(returns), variance(net)) < 1e-9);
        CHECK(relative_error(frequency_return_variance(s, p0),
                             variance(net)) < 1e-9);
    }
}

TEST_CASE("frequency-based return statistics") {
    const auto s = make_series({10.0, 20.0}, {1.0, 1.0});
    CHECK(frequency_mean_return(s, 10.0) == doctest::Approx(1.5));
    CHECK(frequency_return_variance(s, 10.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(frequency_mean_return(s, 0.0), std::invalid_argument);

    // constant volumes: market-based equals frequency-based
    const auto cv = make_series({4.0, 14.0, 6.0}, {2.0, 2.0, 2.0});
    CHECK(relative_error(mean_return(cv, 2.0), frequency_mean_return(cv, 2.0)) <
          1e-13);
    CHECK(relative_error(return_variance(cv, 2.0),
                         frequency_return_variance(cv, 2.0)) < 1e-12);

    // random volumes: they differ
    const auto mixed = make_series({10.0, 30.0}, {1.0, 2.0});
    CHECK(relative_error(return_variance(mixed, 10.0),
                         frequency_return_variance(mixed, 10.0)) > 1e-3);
}

TEST_CASE("variance guard clamps cancellation noise only") {
    CHECK(guard_variance(-1e-20, 1.0) == 0.0);
    CHECK(guard_variance(0.0, 1.0) == 0.0);
    CHECK(guard_variance(2.5, 1.0) == 2.5);
    CHECK_THROWS_AS(guard_variance(-1.0, 1.0), identity_error);
}

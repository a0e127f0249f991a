#include <doctest.h>

#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "mbps/campaign.hpp"
#include "mbps/decomposition.hpp"
#include "mbps/numeric.hpp"
#include "mbps/oracles.hpp"
#include "mbps/security_stats.hpp"

using namespace mbps;
using test::make_series;
using test::random_series;

namespace {

struct Fixture {
    Portfolio portfolio;
    PortfolioSeries ps;
};

// trades A: values (10,30) volumes (1,2); B: values (8,8) volumes (2,1)
Fixture make_fixture(double holding_a, double holding_b, double p0_a,
                     double p0_b) {
    const auto a = make_series({10.0, 30.0}, {1.0, 2.0}, "A");
    const auto b = make_series({8.0, 8.0}, {2.0, 1.0}, "B");
    Portfolio portfolio =
        compose_portfolio({{"A", holding_a, p0_a}, {"B", holding_b, p0_b}});
    PortfolioSeries ps =
        aggregate(portfolio, std::vector<TradeSeries>{a, b});
    return Fixture{std::move(portfolio), std::move(ps)};
}

struct DecompositionInputs {
    std::vector<double> mean_prices;
    std::vector<double> mean_returns;
    CoefficientMatrices coefficients;
    double volume_cv_sq;
};

DecompositionInputs decomposition_inputs(const Portfolio& portfolio,
                                         const PortfolioSeries& ps) {
    DecompositionInputs in;
    for (std::size_t j = 0; j < ps.security_count(); ++j) {
        in.mean_prices.push_back(vwap(ps.normalized(j)));
        in.mean_returns.push_back(in.mean_prices[j] / portfolio.price_at_t0(j));
    }
    in.coefficients = coefficient_matrices(ps.normalized());
    in.volume_cv_sq = portfolio_stats(portfolio, ps).volume_cv_sq;
    return in;
}

RandomInstance random_instance(std::uint64_t seed, std::size_t securities,
                               std::size_t ticks,
                               bool constant_volume = false) {
    return make_random_instance(seed, securities, ticks, 0.1, 10.0, 0.1, 10.0,
                                constant_volume);
}

} // namespace

TEST_CASE("portfolio mean price") {
    SUBCASE("single security reduces to its VWAP") {
        const auto s = make_series({10.0, 30.0}, {1.0, 2.0}, "A");
        const Portfolio p = compose_portfolio({{"A", 5.0, 11.0}});
        const PortfolioSeries ps = aggregate(p, std::vector<TradeSeries>{s});
        CHECK(relative_error(portfolio_mean_price(ps), vwap(s)) < 1e-12);
    }

    SUBCASE("worked instance") {
        const Fixture f = make_fixture(2.0, 3.0, 12.0, 5.0);
        CHECK(portfolio_mean_price(f.ps) == doctest::Approx(128.0 / 15.0));
    }

    SUBCASE("component decomposition agrees") {
        std::mt19937_64 rng(51);
        for (int rep = 0; rep < 30; ++rep) {
            const auto inst =
                random_instance(1000 + rep, 1 + rep % 5, 2 + rep % 13);
            const PortfolioSeries ps =
                aggregate(inst.portfolio, inst.series);
            std::vector<double> vwaps;
            for (std::size_t j = 0; j < ps.security_count(); ++j) {
                vwaps.push_back(vwap(ps.normalized(j)));
            }
            CHECK(relative_error(
                      portfolio_mean_price(ps),
                      mean_price_decomposition(inst.portfolio, vwaps)) <
                  1e-12);
        }
    }

    SUBCASE("mean price stays inside the range of per-tick prices") {
        for (int rep = 0; rep < 20; ++rep) {
            const auto inst =
                random_instance(1100 + rep, 1 + rep % 5, 2 + rep % 17);
            const PortfolioSeries ps =
                aggregate(inst.portfolio, inst.series);
            double lo = ps.aggregate_price(0);
            double hi = lo;
            for (std::size_t i = 1; i < ps.tick_count(); ++i) {
                lo = std::min(lo, ps.aggregate_price(i));
                hi = std::max(hi, ps.aggregate_price(i));
            }
            const double s = portfolio_mean_price(ps);
            CHECK(s >= lo - 1e-12 * hi);
            CHECK(s <= hi + 1e-12 * hi);
        }
    }

    SUBCASE("weight count mismatch") {
        const Fixture f = make_fixture(2.0, 3.0, 12.0, 5.0);
        CHECK_THROWS_AS(
            mean_price_decomposition(f.portfolio, std::vector<double>{1.0}),
            std::invalid_argument);
    }
}

TEST_CASE("portfolio price variance") {
    SUBCASE("constant aggregate price gives zero") {
        const auto a = make_series({7.0, 14.0}, {1.0, 2.0}, "A");
        const auto b = make_series({21.0, 7.0}, {3.0, 1.0}, "B");
        const Portfolio p =
            compose_portfolio({{"A", 2.0, 7.0}, {"B", 3.0, 7.0}});
        const PortfolioSeries ps =
            aggregate(p, std::vector<TradeSeries>{a, b});
        CHECK(portfolio_price_variance(ps) == doctest::Approx(0.0));
    }

    SUBCASE("single security reduces to its market-based variance") {
        const auto s = make_series({10.0, 30.0}, {1.0, 2.0}, "A");
        const Portfolio p = compose_portfolio({{"A", 5.0, 11.0}});
        const PortfolioSeries ps = aggregate(p, std::vector<TradeSeries>{s});
        CHECK(relative_error(portfolio_price_variance(ps),
                             price_variance(s)) < 1e-12);
    }

    SUBCASE("worked instances") {
        const Fixture simple = make_fixture(2.0, 2.0, 1.0, 3.0);
        CHECK(portfolio_price_variance(simple.ps) ==
              doctest::Approx(100.0 / 9.0));
        const Fixture rich = make_fixture(2.0, 3.0, 12.0, 5.0);
        CHECK(portfolio_price_variance(rich.ps) ==
              doctest::Approx(10.422497541789577).epsilon(1e-12));
    }

    SUBCASE("agrees with the aggregate-series oracle") {
        std::mt19937_64 rng(52);
        for (int rep = 0; rep < 30; ++rep) {
            const auto inst =
                random_instance(2000 + rep, 1 + rep % 5, 2 + rep % 17);
            const PortfolioSeries ps =
                aggregate(inst.portfolio, inst.series);
            CHECK(relative_error(
                      portfolio_price_variance(ps),
                      oracle::portfolio_variance(ps).price_variance) < 1e-12);
        }
    }
}

TEST_CASE("portfolio mean return") {
    SUBCASE("prices static at composition levels give unit return") {
        const auto a = make_series({6.0, 12.0}, {2.0, 4.0}, "A"); // price 3
        const auto b = make_series({10.0, 5.0}, {2.0, 1.0}, "B"); // price 5
        const Portfolio p =
            compose_portfolio({{"A", 2.0, 3.0}, {"B", 3.0, 5.0}});
        const PortfolioSeries ps =
            aggregate(p, std::vector<TradeSeries>{a, b});
        CHECK(portfolio_mean_return(p, ps) == doctest::Approx(1.0));
    }

    SUBCASE("single security") {
        const auto s = make_series({10.0, 30.0}, {1.0, 2.0}, "A");
        const Portfolio p = compose_portfolio({{"A", 5.0, 10.0}});
        const PortfolioSeries ps = aggregate(p, std::vector<TradeSeries>{s});
        CHECK(relative_error(portfolio_mean_return(p, ps), 4.0 / 3.0) <
              1e-12);
    }

    SUBCASE("worked instance") {
        const Fixture f = make_fixture(2.0, 3.0, 12.0, 5.0);
        CHECK(portfolio_mean_return(f.portfolio, f.ps) ==
              doctest::Approx(128.0 / 117.0));
    }
}

TEST_CASE("portfolio return variance") {
    SUBCASE("worked instances") {
        const Fixture simple = make_fixture(2.0, 2.0, 1.0, 3.0);
        CHECK(portfolio_return_variance(simple.portfolio, simple.ps) ==
              doctest::Approx(25.0 / 9.0));
        const Fixture rich = make_fixture(2.0, 3.0, 12.0, 5.0);
        CHECK(portfolio_return_variance(rich.portfolio, rich.ps) ==
              doctest::Approx(0.17130995302086746).epsilon(1e-12));
    }

    SUBCASE("links to the price variance through the composition price") {
        std::mt19937_64 rng(53);
        for (int rep = 0; rep < 30; ++rep) {
            const auto inst =
                random_instance(3000 + rep, 1 + rep % 5, 2 + rep % 11);
            const PortfolioSeries ps =
                aggregate(inst.portfolio, inst.series);
            const double s0 = ps.composition_price();
            CHECK(relative_error(
                      portfolio_return_variance(inst.portfolio, ps) * s0 * s0,
                      portfolio_price_variance(ps)) < 1e-12);
        }
    }
}

TEST_CASE("price variance decomposition") {
    SUBCASE("random instances reproduce the direct variance") {
        for (int rep = 0; rep < 40; ++rep) {
            const auto inst =
                random_instance(4000 + rep, 1 + rep % 5, 2 + rep % 29);
            const PortfolioSeries ps =
                aggregate(inst.portfolio, inst.series);
            const auto in = decomposition_inputs(inst.portfolio, ps);
            const auto dec = price_variance_decomposition(
                inst.portfolio, in.coefficients, in.mean_prices,
                in.volume_cv_sq);
            CHECK(relative_error(
                      dec.total(),
                      oracle::portfolio_variance(ps).price_variance) < 1e-10);
        }
    }

    SUBCASE("single security reduces to the coefficient form") {
        const auto inst = random_instance(4100, 1, 12);
        const PortfolioSeries ps = aggregate(inst.portfolio, inst.series);
        const auto in = decomposition_inputs(inst.portfolio, ps);
        const auto dec = price_variance_decomposition(
            inst.portfolio, in.coefficients, in.mean_prices, in.volume_cv_sq);
        const auto c = in.coefficients;
        const double p = in.mean_prices[0];
        const double expected = (c.value_value(0, 0) -
                                 2.0 * c.value_volume(0, 0) +
                                 c.volume_volume(0, 0)) /
                                (1.0 + c.volume_volume(0, 0)) * p * p;
        CHECK(relative_error(dec.total(), expected) < 1e-12);
    }

    SUBCASE("factored contractions match naive loops") {
        for (int rep = 0; rep < 20; ++rep) {
            const auto inst = random_instance(4200 + rep, 1 + rep % 4, 6);
            const PortfolioSeries ps =
                aggregate(inst.portfolio, inst.series);
            const auto in = decomposition_inputs(inst.portfolio, ps);
            const auto dec = price_variance_decomposition(
                inst.portfolio, in.coefficients, in.mean_prices,
                in.volume_cv_sq);
            const auto x = inst.portfolio.share_weights();
            std::vector<double> slot(x.size());
            for (std::size_t j = 0; j < x.size(); ++j) {
                slot[j] = in.mean_prices[j] * x[j];
            }
            CHECK(relative_error(
                      dec.total(),
                      oracle::quartic_total(in.coefficients.value_value,
                                            in.coefficients.value_volume,
                                            in.coefficients.volume_volume,
                                            slot, x, in.volume_cv_sq)) <
                  1e-12);
        }
    }
}

TEST_CASE("return variance decomposition") {
    SUBCASE("random instances reproduce the direct variance") {
        for (int rep = 0; rep < 40; ++rep) {
            const auto inst =
                random_instance(5000 + rep, 1 + rep % 5, 2 + rep % 29);
            const PortfolioSeries ps =
                aggregate(inst.portfolio, inst.series);
            const auto in = decomposition_inputs(inst.portfolio, ps);
            const auto dec = return_variance_decomposition(
                inst.portfolio, in.coefficients, in.mean_returns,
                in.volume_cv_sq);
            CHECK(relative_error(
                      dec.total(),
                      oracle::portfolio_variance(ps).return_variance) <
                  1e-10);
        }
    }

    SUBCASE("constant volumes collapse onto the classical quadratic form") {
        for (int rep = 0; rep < 20; ++rep) {
            const auto inst =
                random_instance(5100 + rep, 1 + rep % 5, 2 + rep % 13, true);
            const PortfolioSeries ps =
                aggregate(inst.portfolio, inst.series);
            const auto in = decomposition_inputs(inst.portfolio, ps);
            const auto dec = return_variance_decomposition(
                inst.portfolio, in.coefficients, in.mean_returns,
                in.volume_cv_sq);
            std::vector<double> p0(inst.series.size());
            for (std::size_t j = 0; j < inst.series.size(); ++j) {
                p0[j] = inst.portfolio.price_at_t0(j);
            }
            const SquareMatrix theta_freq =
                frequency_return_covariance_matrix(inst.series, p0);
            CHECK(relative_error(
                      dec.total(),
                      markowitz_variance(theta_freq,
                                         inst.portfolio.value_weights())) <
                  1e-12);
        }
    }

    SUBCASE("worked instance decomposition totals equal the direct values") {
        const Fixture f = make_fixture(2.0, 3.0, 12.0, 5.0);
        const auto in = decomposition_inputs(f.portfolio, f.ps);
        const auto price_dec = price_variance_decomposition(
            f.portfolio, in.coefficients, in.mean_prices, in.volume_cv_sq);
        const auto return_dec = return_variance_decomposition(
            f.portfolio, in.coefficients, in.mean_returns, in.volume_cv_sq);
        CHECK(price_dec.total() ==
              doctest::Approx(10.422497541789577).epsilon(1e-12));
        CHECK(return_dec.total() ==
              doctest::Approx(0.17130995302086746).epsilon(1e-12));
        CHECK(price_dec.quadratic == doctest::Approx(64.0 / 9.0));
        CHECK(price_dec.basis == VarianceDecomposition::Basis::price);
        CHECK(return_dec.basis == VarianceDecomposition::Basis::returns);
    }
}

TEST_CASE("markowitz quadratic form") {
    SUBCASE("single entry") {
        SquareMatrix m(1);
        m(0, 0) = 7.0;
        CHECK(markowitz_variance(m, std::vector<double>{1.0}) ==
              doctest::Approx(7.0));
    }

    SUBCASE("diagonal with equal weights") {
        SquareMatrix m(2);
        m(0, 0) = 4.0;
        m(1, 1) = 4.0;
        CHECK(markowitz_variance(m, std::vector<double>{0.5, 0.5}) ==
              doctest::Approx(2.0));
    }

    SUBCASE("zero matrix") {
        SquareMatrix m(3);
        CHECK(markowitz_variance(
                  m, std::vector<double>{0.2, 0.3, 0.5}) ==
              doctest::Approx(0.0));
    }

    SUBCASE("rejects asymmetry and non-unit weights") {
        SquareMatrix m(2);
        m(0, 1) = 1.0;
        m(1, 0) = 2.0;
        CHECK_THROWS_AS(markowitz_variance(m, std::vector<double>{0.5, 0.5}),
                        std::invalid_argument);
        SquareMatrix ok(2);
        CHECK_THROWS_AS(markowitz_variance(ok, std::vector<double>{0.5, 0.4}),
                        std::invalid_argument);
        CHECK_THROWS_AS(markowitz_variance(ok, std::vector<double>{1.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("per-trade return identity") {
    SUBCASE("worked instance, both ticks") {
        const Fixture f = make_fixture(2.0, 3.0, 12.0, 5.0);
        CHECK(per_trade_return_direct(f.portfolio, f.ps, 0) ==
              doctest::Approx(0.7051282051282052));
        CHECK(per_trade_return_direct(f.portfolio, f.ps, 1) ==
              doctest::Approx(1.5384615384615385));
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(relative_error(
                      per_trade_return_components(f.portfolio, f.ps, i),
                      per_trade_return_direct(f.portfolio, f.ps, i)) < 1e-12);
        }
    }

    SUBCASE("single security reduces to the component return") {
        const auto s = make_series({10.0, 30.0}, {1.0, 2.0}, "A");
        const Portfolio p = compose_portfolio({{"A", 5.0, 10.0}});
        const PortfolioSeries ps = aggregate(p, std::vector<TradeSeries>{s});
        CHECK(relative_error(per_trade_return_components(p, ps, 0),
                             s.price(0) / 10.0) < 1e-12);
        CHECK(relative_error(per_trade_return_components(p, ps, 1),
                             s.price(1) / 10.0) < 1e-12);
    }

    SUBCASE("constant volumes make the correction factor exactly one") {
        const auto inst = random_instance(6000, 3, 8, true);
        const PortfolioSeries ps = aggregate(inst.portfolio, inst.series);
        for (std::size_t i = 0; i < ps.tick_count(); ++i) {
            for (std::size_t j = 0; j < ps.security_count(); ++j) {
                const double factor = ps.normalized(j).volume(i) /
                                      ps.aggregate_volumes()[i] *
                                      inst.portfolio.total_volume() /
                                      inst.portfolio.shares(j);
                CHECK(std::abs(factor - 1.0) <= 1e-14);
            }
            // and the identity collapses to the plain weighted component sum
            double weighted = 0.0;
            for (std::size_t j = 0; j < ps.security_count(); ++j) {
                weighted += ps.normalized(j).price(i) /
                            inst.portfolio.price_at_t0(j) *
                            inst.portfolio.value_weights()[j];
            }
            CHECK(relative_error(
                      weighted,
                      per_trade_return_direct(inst.portfolio, ps, i)) <
                  1e-12);
        }
    }

    SUBCASE("dual-path identity on random instances, every tick") {
        for (int rep = 0; rep < 20; ++rep) {
            const auto inst =
                random_instance(6100 + rep, 1 + rep % 5, 2 + rep % 17);
            const PortfolioSeries ps =
                aggregate(inst.portfolio, inst.series);
            for (std::size_t i = 0; i < ps.tick_count(); ++i) {
                CHECK(relative_error(per_trade_return_components(
                                         inst.portfolio, ps, i),
                                     per_trade_return_direct(inst.portfolio,
                                                             ps, i)) < 1e-12);
            }
        }
    }

    SUBCASE("tick bounds") {
        const Fixture f = make_fixture(2.0, 3.0, 12.0, 5.0);
        CHECK_THROWS_AS(per_trade_return_components(f.portfolio, f.ps, 2),
                        std::out_of_range);
    }
}

TEST_CASE("degenerate single-tick window") {
    const auto inst = random_instance(7000, 3, 1);
    const PortfolioSeries ps = aggregate(inst.portfolio, inst.series);
    CHECK(portfolio_price_variance(ps) == 0.0);
    CHECK(portfolio_return_variance(inst.portfolio, ps) == 0.0);
    const auto in = decomposition_inputs(inst.portfolio, ps);
    CHECK(price_variance_decomposition(inst.portfolio, in.coefficients,
                                       in.mean_prices, in.volume_cv_sq)
              .total() == 0.0);
    CHECK(return_variance_decomposition(inst.portfolio, in.coefficients,
                                        in.mean_returns, in.volume_cv_sq)
              .total() == 0.0);
}

TEST_CASE("aggregate volume variation equals the component-sum route") {
    for (int rep = 0; rep < 20; ++rep) {
        const auto inst = random_instance(8000 + rep, 1 + rep % 5, 2 + rep % 13);
        const PortfolioSeries ps = aggregate(inst.portfolio, inst.series);
        const PortfolioStats stats = portfolio_stats(inst.portfolio, ps);
        CHECK(relative_error(stats.volume_cv_sq, component_volume_cv_sq(ps)) <
              1e-12);
    }
}

TEST_CASE("portfolio stats record carries the past-value block") {
    const Fixture f = make_fixture(2.0, 3.0, 12.0, 5.0);
    const PortfolioStats stats = portfolio_stats(f.portfolio, f.ps);
    REQUIRE(stats.past_values.size() == 2);
    CHECK(stats.past_values[0] == doctest::Approx(7.8 * 8.0 / 3.0));
    CHECK(stats.past_values[1] == doctest::Approx(7.8 * 7.0 / 3.0));
    CHECK(stats.mean_price == doctest::Approx(128.0 / 15.0));
    CHECK(stats.mean_return == doctest::Approx(128.0 / 117.0));
    CHECK(stats.return_variance ==
          doctest::Approx(stats.price_variance / (7.8 * 7.8)));
    // second past moment is the mean squared past value
    CHECK(stats.second_past_moment ==
          doctest::Approx((stats.past_values[0] * stats.past_values[0] +
                           stats.past_values[1] * stats.past_values[1]) /
                          2.0));
}

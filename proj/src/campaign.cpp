#include "mbps/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "mbps/decomposition.hpp"
#include "mbps/numeric.hpp"
#include "mbps/oracles.hpp"
#include "mbps/pair_stats.hpp"
#include "mbps/security_stats.hpp"

namespace mbps {

namespace {

constexpr std::uint64_t kSeedStride = 0x9e3779b97f4a7c15ULL;

// Variance-route comparisons carry absolute rounding noise of order
// eps * N times the moment magnitudes entering the cancellation, however
// small the variance itself comes out; differences below this floor are
// noise, not route disagreement.
constexpr double kVarianceNoise = 1e-13;

double joint_volume_moment(const TradeSeries& sj, const TradeSeries& sk) {
    double sum = 0.0;
    for (std::size_t i = 0; i < sj.size(); ++i) {
        sum += sj.volume(i) * sk.volume(i);
    }
    return sum / static_cast<double>(sj.size());
}

// Magnitude of the summands behind the moment route of a price covariance,
// bounded by Cauchy-Schwarz so that a covariance canceling to near zero
// (nearly orthogonal series) still reports its pre-cancellation scale. The
// achievable absolute accuracy is a small multiple of eps times this.
double covariance_moment_scale(const TradeSeries& sj, const TradeSeries& sk) {
    const double pj = vwap(sj);
    const double pk = vwap(sk);
    const double value_j = variance(sj.values());
    const double value_k = variance(sk.values());
    const double volume_j = variance(sj.volumes());
    const double volume_k = variance(sk.volumes());
    return (std::sqrt(value_j * value_k) +
            std::abs(pk) * std::sqrt(value_j * volume_k) +
            std::abs(pj) * std::sqrt(volume_j * value_k) +
            std::abs(pj * pk) * std::sqrt(volume_j * volume_k)) /
           joint_volume_moment(sj, sk);
}

double variance_moment_scale(const TradeSeries& s) {
    return covariance_moment_scale(s, s);
}

// Tracks the worst offender across a family of element-wise comparisons.
// `noise_floor` is an absolute difference below which the two routes are
// considered identical.
class WorstPair {
public:
    void update(double main, double oracle, double noise_floor = 0.0) {
        const double err = std::abs(main - oracle) <= noise_floor
                               ? 0.0
                               : relative_error(main, oracle);
        if (err >= error_) {
            error_ = err;
            main_ = main;
            oracle_ = oracle;
        }
    }
    double main() const { return main_; }
    double oracle() const { return oracle_; }
    double error() const { return error_ < 0.0 ? 0.0 : error_; }

private:
    double error_ = -1.0;
    double main_ = 0.0;
    double oracle_ = 0.0;
};

class CheckList {
public:
    explicit CheckList(std::vector<IdentityCheck>& out) : out_(out) {}

    void add(std::string name, double main, double oracle, double tol) {
        IdentityCheck c;
        c.name = std::move(name);
        c.main_value = main;
        c.oracle_value = oracle;
        c.error = relative_error(main, oracle);
        c.tolerance = tol;
        c.pass = c.error <= tol;
        out_.push_back(std::move(c));
    }

    // For dimensionless quantities whose true value may be an exact zero:
    // differences below the floor are cancellation noise, not disagreement.
    void add_with_zero_floor(std::string name, double main, double oracle,
                             double tol, double floor) {
        IdentityCheck c;
        c.name = std::move(name);
        c.main_value = main;
        c.oracle_value = oracle;
        c.error = std::abs(main - oracle) <= floor
                      ? 0.0
                      : relative_error(main, oracle);
        c.tolerance = tol;
        c.pass = c.error <= tol;
        out_.push_back(std::move(c));
    }

    void add(std::string name, const WorstPair& worst, double tol) {
        IdentityCheck c;
        c.name = std::move(name);
        c.main_value = worst.main();
        c.oracle_value = worst.oracle();
        c.error = worst.error(); // already noise-floored by the tracker
        c.tolerance = tol;
        c.pass = c.error <= tol;
        out_.push_back(std::move(c));
    }

private:
    std::vector<IdentityCheck>& out_;
};

} // namespace

RandomInstance make_random_instance(std::uint64_t seed,
                                    std::size_t securities, std::size_t ticks,
                                    double value_min, double value_max,
                                    double volume_min, double volume_max,
                                    bool constant_volume) {
    if (securities == 0) {
        throw std::invalid_argument("need at least one security");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value_dist(value_min, value_max);
    std::uniform_real_distribution<double> volume_dist(volume_min, volume_max);
    std::uniform_real_distribution<double> price_dist(value_min / volume_max,
                                                      value_max / volume_min);
    const AveragingWindow window("", ticks, 1.0);

    std::vector<TradeSeries> series;
    series.reserve(securities);
    for (std::size_t j = 0; j < securities; ++j) {
        std::vector<double> volumes(ticks);
        if (constant_volume) {
            const double u = volume_dist(rng);
            std::fill(volumes.begin(), volumes.end(), u);
        } else {
            for (double& u : volumes) {
                u = volume_dist(rng);
            }
        }
        std::vector<double> values(ticks);
        for (double& c : values) {
            c = value_dist(rng);
        }
        series.emplace_back("S" + std::to_string(j + 1), window,
                            std::move(values), std::move(volumes));
    }

    std::vector<Holding> holdings;
    holdings.reserve(securities);
    for (std::size_t j = 0; j < securities; ++j) {
        holdings.push_back(Holding{series[j].security_id(), volume_dist(rng),
                                   price_dist(rng)});
    }
    return RandomInstance{std::move(series), Portfolio(std::move(holdings)),
                          constant_volume};
}

OracleReport run_identity_checks(const RandomInstance& instance,
                                 std::size_t index, std::uint64_t seed,
                                 double identity_tol, double dual_path_tol,
                                 bool inject_sign_flip) {
    const auto& series = instance.series;
    const Portfolio& portfolio = instance.portfolio;
    const std::size_t n_sec = series.size();

    OracleReport report;
    report.instance_index = index;
    report.securities = n_sec;
    report.ticks = series[0].size();
    report.seed = seed;
    report.constant_volume = instance.constant_volume;
    CheckList checks(report.checks);

    std::vector<double> reference_prices(n_sec);
    for (std::size_t j = 0; j < n_sec; ++j) {
        reference_prices[j] = portfolio.price_at_t0(j);
    }

    // per-security identities
    {
        WorstPair phi_vs_weighted;
        WorstPair theta_vs_weighted;
        WorstPair theta_vs_scaled;
        for (std::size_t j = 0; j < n_sec; ++j) {
            const auto prices = series[j].prices();
            const double p = vwap(series[j]);
            const double phi = price_variance(series[j]);
            const double noise =
                kVarianceNoise * variance_moment_scale(series[j]);
            phi_vs_weighted.update(
                phi, oracle::weighted_variance(prices, series[j].volumes(), p),
                noise);

            const double p0 = reference_prices[j];
            const double theta = return_variance(series[j], p0);
            std::vector<double> returns = prices;
            for (double& r : returns) {
                r /= p0;
            }
            theta_vs_weighted.update(
                theta, oracle::weighted_variance(returns, series[j].volumes(),
                                                 p / p0),
                noise / (p0 * p0));
            theta_vs_scaled.update(theta * p0 * p0, phi, noise);
        }
        checks.add("security price variance: moments vs weighted sum",
                   phi_vs_weighted, dual_path_tol);
        checks.add("security return variance: past-value vs weighted sum",
                   theta_vs_weighted, dual_path_tol);
        checks.add("security return variance: scaled price variance",
                   theta_vs_scaled, dual_path_tol);
    }

    // pairwise identities over all ordered pairs
    SquareMatrix sigma(n_sec);
    {
        WorstPair vs_weighted;
        WorstPair vs_normalized;
        WorstPair symmetry;
        WorstPair diagonal_price;
        WorstPair past_value_form;
        WorstPair diagonal_return;
        for (std::size_t j = 0; j < n_sec; ++j) {
            for (std::size_t k = 0; k < n_sec; ++k) {
                const double pair_noise =
                    kVarianceNoise *
                    covariance_moment_scale(series[j], series[k]);
                sigma(j, k) = price_covariance(series[j], series[k]);
                vs_weighted.update(
                    sigma(j, k),
                    oracle::weighted_covariance(
                        series[j].prices(), series[k].prices(),
                        series[j].volumes(), series[k].volumes(),
                        vwap(series[j]), vwap(series[k])),
                    pair_noise);
                vs_normalized.update(
                    sigma(j, k),
                    price_covariance_normalized_form(series[j], series[k]),
                    pair_noise);
                const double theta = return_covariance(
                    series[j], series[k], reference_prices[j],
                    reference_prices[k]);
                const double theta_noise =
                    pair_noise / (reference_prices[j] * reference_prices[k]);
                past_value_form.update(
                    theta, return_covariance_past_value_form(
                               series[j], series[k], reference_prices[j],
                               reference_prices[k]),
                    theta_noise);
                if (j == k) {
                    diagonal_price.update(sigma(j, j),
                                          price_variance(series[j]),
                                          pair_noise);
                    diagonal_return.update(
                        theta,
                        return_variance(series[j], reference_prices[j]),
                        theta_noise);
                }
            }
        }
        for (std::size_t j = 0; j < n_sec; ++j) {
            for (std::size_t k = j + 1; k < n_sec; ++k) {
                symmetry.update(sigma(j, k), sigma(k, j));
            }
        }
        checks.add("pair price covariance: moments vs weighted sum",
                   vs_weighted, dual_path_tol);
        checks.add("pair price covariance: normalized-coefficient form",
                   vs_normalized, dual_path_tol);
        if (n_sec > 1) {
            checks.add("pair price covariance: symmetry", symmetry, 0.0);
        }
        checks.add("pair price covariance: diagonal equals security variance",
                   diagonal_price, dual_path_tol);
        checks.add("pair return covariance: past-value form", past_value_form,
                   dual_path_tol);
        checks.add("pair return covariance: diagonal equals security variance",
                   diagonal_return, dual_path_tol);
        report.sigma_not_psd = !is_positive_semidefinite(sigma);
    }

    // portfolio pipeline
    const PortfolioSeries ps = aggregate(portfolio, series);
    {
        WorstPair holdings_conservation;
        for (std::size_t j = 0; j < n_sec; ++j) {
            holdings_conservation.update(
                total(ps.normalized(j), Field::volume), portfolio.shares(j));
        }
        checks.add("normalization: holdings conservation",
                   holdings_conservation, dual_path_tol);

        double total_volume = 0.0;
        for (double w : ps.aggregate_volumes()) {
            total_volume += w;
        }
        checks.add("aggregation: total volume conservation", total_volume,
                   portfolio.total_volume(), dual_path_tol);
    }

    std::vector<double> component_mean_prices(n_sec);
    std::vector<double> component_mean_returns(n_sec);
    for (std::size_t j = 0; j < n_sec; ++j) {
        component_mean_prices[j] = vwap(ps.normalized(j));
        component_mean_returns[j] =
            component_mean_prices[j] / reference_prices[j];
    }

    const double s_t = portfolio_mean_price(ps);
    checks.add("portfolio mean price: aggregate vs component decomposition",
               s_t, mean_price_decomposition(portfolio, component_mean_prices),
               dual_path_tol);

    const double mean_ret = s_t / ps.composition_price();
    {
        double decomposed = 0.0;
        const auto value_weights = portfolio.value_weights();
        for (std::size_t j = 0; j < n_sec; ++j) {
            decomposed += component_mean_returns[j] * value_weights[j];
        }
        checks.add("portfolio mean return: price ratio vs component decomposition",
                   mean_ret, decomposed, dual_path_tol);
    }

    // Portfolio-level variance routes accumulate floating error over the
    // aggregated sums, so they get the identity tolerance, not the tighter
    // security-level dual-path tolerance.
    const oracle::PortfolioVariances direct = oracle::portfolio_variance(ps);
    const double phi_portfolio = portfolio_price_variance(ps);
    const double theta_portfolio = portfolio_return_variance(portfolio, ps);
    checks.add("portfolio price variance: moments vs oracle weighted sum",
               phi_portfolio, direct.price_variance, identity_tol);
    checks.add("portfolio return variance: price route vs oracle",
               theta_portfolio, direct.return_variance, identity_tol);

    const PortfolioStats stats = portfolio_stats(portfolio, ps);
    checks.add_with_zero_floor(
        "aggregate volume variation: aggregate vs component covariances",
        stats.volume_cv_sq, component_volume_cv_sq(ps), dual_path_tol, 1e-16);

    const CoefficientMatrices coefficients =
        coefficient_matrices(ps.normalized());

    const VarianceDecomposition price_dec = price_variance_decomposition(
        portfolio, coefficients, component_mean_prices, stats.volume_cv_sq);
    const VarianceDecomposition return_dec = return_variance_decomposition(
        portfolio, coefficients, component_mean_returns, stats.volume_cv_sq);

    const double flip = inject_sign_flip ? -1.0 : 1.0;
    const double price_total =
        price_dec.prefactor *
        (price_dec.quadratic + flip * price_dec.cubic + price_dec.quartic);
    const double return_total =
        return_dec.prefactor *
        (return_dec.quadratic + flip * return_dec.cubic + return_dec.quartic);
    checks.add("price variance decomposition vs oracle", price_total,
               direct.price_variance, identity_tol);
    checks.add("return variance decomposition vs oracle", return_total,
               direct.return_variance, identity_tol);

    if (n_sec <= 4) {
        const auto x = portfolio.share_weights();
        std::vector<double> price_slot(n_sec);
        std::vector<double> return_slot(n_sec);
        for (std::size_t j = 0; j < n_sec; ++j) {
            price_slot[j] = component_mean_prices[j] * x[j];
            return_slot[j] =
                component_mean_returns[j] * portfolio.value_weights()[j];
        }
        checks.add("price decomposition: factored vs naive loops",
                   price_dec.total(),
                   oracle::quartic_total(coefficients.value_value,
                                         coefficients.value_volume,
                                         coefficients.volume_volume,
                                         price_slot, x, stats.volume_cv_sq),
                   identity_tol);
        checks.add("return decomposition: factored vs naive loops",
                   return_dec.total(),
                   oracle::quartic_total(coefficients.value_value,
                                         coefficients.value_volume,
                                         coefficients.volume_volume,
                                         return_slot, x, stats.volume_cv_sq),
                   identity_tol);
    }

    {
        WorstPair per_trade;
        for (std::size_t i = 0; i < ps.tick_count(); ++i) {
            per_trade.update(per_trade_return_components(portfolio, ps, i),
                             per_trade_return_direct(portfolio, ps, i));
        }
        checks.add("per-trade return: component sum vs aggregate", per_trade,
                   dual_path_tol);
    }

    // market-based statistics are invariant under changes of trade scale
    {
        WorstPair vwap_invariance;
        WorstPair variance_invariance;
        WorstPair covariance_invariance;
        const std::size_t partner = n_sec > 1 ? 1 : 0;
        const double variance_noise =
            kVarianceNoise * variance_moment_scale(series[0]);
        const double covariance_noise =
            kVarianceNoise *
            covariance_moment_scale(series[0], series[partner]);
        for (double lambda : {1e-3, 1.0, 1e3}) {
            const TradeSeries scaled = rescale(series[0], lambda);
            vwap_invariance.update(vwap(scaled), vwap(series[0]));
            variance_invariance.update(price_variance(scaled),
                                       price_variance(series[0]),
                                       variance_noise);
            covariance_invariance.update(
                price_covariance(scaled, series[partner]),
                price_covariance(series[0], series[partner]),
                covariance_noise);
        }
        checks.add("scale invariance: vwap", vwap_invariance, dual_path_tol);
        checks.add("scale invariance: price variance", variance_invariance,
                   dual_path_tol);
        checks.add("scale invariance: price covariance",
                   covariance_invariance, dual_path_tol);
    }

    // the frequency suite must agree with the main path on the market side
    {
        WorstPair suite_mean;
        WorstPair suite_variance;
        for (std::size_t j = 0; j < n_sec; ++j) {
            const auto cmp = oracle::frequency_moment_suite(series[j]);
            suite_mean.update(vwap(series[j]), cmp.market_mean_price);
            suite_variance.update(price_variance(series[j]),
                                  cmp.market_price_variance,
                                  kVarianceNoise *
                                      variance_moment_scale(series[j]));
        }
        checks.add("frequency suite: market mean matches VWAP", suite_mean,
                   dual_path_tol);
        checks.add("frequency suite: market variance matches price variance",
                   suite_variance, dual_path_tol);
    }

    if (instance.constant_volume) {
        const auto absolute_form = [](const SquareMatrix& m,
                                      std::span<const double> w) {
            double sum = 0.0;
            for (std::size_t j = 0; j < m.size(); ++j) {
                for (std::size_t k = 0; k < m.size(); ++k) {
                    sum += std::abs(m(j, k)) * w[j] * w[k];
                }
            }
            return sum;
        };

        const SquareMatrix theta_freq =
            frequency_return_covariance_matrix(series, reference_prices);
        checks.add_with_zero_floor(
            "Markowitz limit: return quartic vs quadratic form", return_total,
            markowitz_variance(theta_freq, portfolio.value_weights()),
            dual_path_tol,
            kVarianceNoise *
                absolute_form(theta_freq, portfolio.value_weights()));

        SquareMatrix sigma_freq(n_sec);
        for (std::size_t j = 0; j < n_sec; ++j) {
            for (std::size_t k = 0; k < n_sec; ++k) {
                sigma_freq(j, k) =
                    frequency_price_covariance(series[j], series[k]);
            }
        }
        checks.add_with_zero_floor(
            "Markowitz limit: price quartic vs quadratic form", price_total,
            markowitz_variance(sigma_freq, portfolio.share_weights()),
            dual_path_tol,
            kVarianceNoise *
                absolute_form(sigma_freq, portfolio.share_weights()));

        // Entrywise comparison is normalized by the geometric mean of the
        // diagonal variances: nearly orthogonal pairs have tiny covariances
        // whose plain relative error reflects cancellation, not disagreement.
        {
            IdentityCheck c;
            c.name = "Markowitz limit: market vs frequency return covariance";
            c.tolerance = dual_path_tol;
            c.error = -1.0;
            for (std::size_t j = 0; j < n_sec; ++j) {
                for (std::size_t k = 0; k < n_sec; ++k) {
                    const double market = return_covariance(
                        series[j], series[k], reference_prices[j],
                        reference_prices[k]);
                    const double freq = theta_freq(j, k);
                    const double scale =
                        std::sqrt(theta_freq(j, j) * theta_freq(k, k));
                    const double err =
                        std::abs(market - freq) /
                        std::max({std::abs(market), std::abs(freq), scale,
                                  1e-300});
                    if (err > c.error) {
                        c.error = err;
                        c.main_value = market;
                        c.oracle_value = freq;
                    }
                }
            }
            c.pass = c.error <= c.tolerance;
            report.checks.push_back(std::move(c));
        }

        WorstPair mean_gap;
        WorstPair variance_gap;
        WorstPair reconstruction;
        for (std::size_t j = 0; j < n_sec; ++j) {
            const auto cmp = oracle::frequency_moment_suite(series[j]);
            mean_gap.update(cmp.market_mean_price, cmp.frequency_mean_price);
            variance_gap.update(cmp.market_price_variance,
                                cmp.frequency_price_variance);
            reconstruction.update(cmp.price_moment_1,
                                  cmp.reconstructed_moment_1);
            reconstruction.update(cmp.price_moment_2,
                                  cmp.reconstructed_moment_2);
        }
        checks.add("frequency suite: mean gap vanishes", mean_gap,
                   dual_path_tol);
        checks.add("frequency suite: variance gap vanishes", variance_gap,
                   dual_path_tol);
        checks.add("frequency suite: price moments rebuilt from value moments",
                   reconstruction, dual_path_tol);

        WorstPair correction;
        for (std::size_t i = 0; i < ps.tick_count(); ++i) {
            const double w_i = ps.aggregate_volumes()[i];
            for (std::size_t j = 0; j < n_sec; ++j) {
                const double factor = ps.normalized(j).volume(i) / w_i *
                                      portfolio.total_volume() /
                                      portfolio.shares(j);
                correction.update(factor, 1.0);
            }
        }
        checks.add("per-trade volume correction factor is unity", correction,
                   1e-14);
    }

    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const IdentityCheck& c) { return c.pass; });
    return report;
}

std::vector<OracleReport> randomized_identity_campaign(
    const CampaignConfig& config) {
    if (config.instances == 0) {
        throw std::invalid_argument("empty campaign");
    }
    if (config.min_securities == 0 ||
        config.min_securities > config.max_securities ||
        config.min_ticks == 0 || config.min_ticks > config.max_ticks) {
        throw std::invalid_argument("invalid campaign ranges");
    }
    if (!(config.value_min > 0.0) || config.value_min > config.value_max ||
        !(config.volume_min > 0.0) || config.volume_min > config.volume_max) {
        throw std::invalid_argument("invalid campaign ranges");
    }

    std::vector<OracleReport> reports;
    reports.reserve(config.instances);
    for (std::size_t index = 0; index < config.instances; ++index) {
        const std::uint64_t instance_seed =
            config.seed + kSeedStride * (static_cast<std::uint64_t>(index) + 1);
        std::mt19937_64 shape_rng(instance_seed);
        std::uniform_int_distribution<std::size_t> sec_dist(
            config.min_securities, config.max_securities);
        std::uniform_int_distribution<std::size_t> tick_dist(config.min_ticks,
                                                             config.max_ticks);
        const std::size_t securities = sec_dist(shape_rng);
        const std::size_t ticks = tick_dist(shape_rng);
        const bool constant_volume =
            config.family == CampaignConfig::VolumeFamily::constant_only ||
            (config.family == CampaignConfig::VolumeFamily::mixed &&
             index % 2 == 1);

        const RandomInstance instance = make_random_instance(
            instance_seed ^ 0x5bf03635ULL, securities, ticks, config.value_min,
            config.value_max, config.volume_min, config.volume_max,
            constant_volume);
        reports.push_back(run_identity_checks(
            instance, index, instance_seed, config.identity_tol,
            config.dual_path_tol, config.inject_sign_flip));
    }
    return reports;
}

CampaignSummary summarize(std::span<const OracleReport> reports) {
    CampaignSummary summary;
    summary.instances = reports.size();
    for (const OracleReport& report : reports) {
        if (!report.pass) {
            ++summary.failed_instances;
        }
        if (report.sigma_not_psd) {
            ++summary.non_psd_instances;
        }
        for (const IdentityCheck& check : report.checks) {
            auto it = std::find_if(summary.checks.begin(),
                                   summary.checks.end(),
                                   [&](const CheckSummary& s) {
                                       return s.name == check.name;
                                   });
            if (it == summary.checks.end()) {
                summary.checks.push_back(CheckSummary{check.name, 0, 0, 0.0});
                it = std::prev(summary.checks.end());
            }
            ++it->count;
            if (!check.pass) {
                ++it->failures;
            }
            it->worst_error = std::max(it->worst_error, check.error);
        }
    }
    summary.pass = summary.failed_instances == 0;
    return summary;
}

std::string campaign_report_json(const CampaignConfig& config,
                                 std::span<const OracleReport> reports) {
    using json = nlohmann::ordered_json;
    json root;
    root["schema"] = "mbps.verify/1";
    root["config"] = {
        {"instances", config.instances},
        {"seed", config.seed},
        {"securities", {config.min_securities, config.max_securities}},
        {"ticks", {config.min_ticks, config.max_ticks}},
        {"value_range", {config.value_min, config.value_max}},
        {"volume_range", {config.volume_min, config.volume_max}},
        {"family",
         config.family == CampaignConfig::VolumeFamily::random_only
             ? "random"
             : config.family == CampaignConfig::VolumeFamily::constant_only
                   ? "constant"
                   : "mixed"},
        {"identity_tol", config.identity_tol},
        {"dual_path_tol", config.dual_path_tol},
        {"inject_sign_flip", config.inject_sign_flip},
    };

    const CampaignSummary summary = summarize(reports);
    json checks = json::array();
    for (const CheckSummary& s : summary.checks) {
        checks.push_back({{"name", s.name},
                          {"count", s.count},
                          {"failures", s.failures},
                          {"worst_error", s.worst_error}});
    }
    root["summary"] = {{"instances", summary.instances},
                       {"failed_instances", summary.failed_instances},
                       {"non_psd_instances", summary.non_psd_instances},
                       {"pass", summary.pass},
                       {"checks", checks}};

    json instances = json::array();
    for (const OracleReport& report : reports) {
        json rc = json::array();
        for (const IdentityCheck& check : report.checks) {
            rc.push_back({{"name", check.name},
                          {"main", check.main_value},
                          {"oracle", check.oracle_value},
                          {"error", check.error},
                          {"tolerance", check.tolerance},
                          {"pass", check.pass}});
        }
        instances.push_back({{"index", report.instance_index},
                             {"securities", report.securities},
                             {"ticks", report.ticks},
                             {"seed", report.seed},
                             {"constant_volume", report.constant_volume},
                             {"sigma_not_psd", report.sigma_not_psd},
                             {"pass", report.pass},
                             {"checks", rc}});
    }
    root["instances"] = instances;
    return root.dump(2) + "\n";
}

} // namespace mbps

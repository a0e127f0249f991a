#include "mbps/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mbps/csv_io.hpp"
#include "mbps/numeric.hpp"
#include "mbps/oracles.hpp"
#include "mbps/pair_stats.hpp"

namespace mbps {

namespace {

struct Inputs {
    std::vector<TradeSeries> series;
    std::vector<Holding> holdings;
};

Inputs load_inputs(const AnalysisConfig& config) {
    Inputs inputs;
    if (!(config.identity_tol > 0.0) || !(config.dual_path_tol > 0.0)) {
        throw std::invalid_argument("tolerances must be positive");
    }
    if (config.trades_path && config.synthetic) {
        throw std::invalid_argument(
            "specify either a trades file or a synthetic spec, not both");
    }
    if (config.trades_path) {
        inputs.series = ingest_csv(*config.trades_path);
    } else if (config.synthetic) {
        inputs.series = generate_synthetic(*config.synthetic);
    } else {
        throw std::invalid_argument("no trade input configured");
    }
    if (config.portfolio_path) {
        inputs.holdings = read_portfolio_csv(*config.portfolio_path);
    } else if (!config.holdings.empty()) {
        inputs.holdings = config.holdings;
    } else if (config.synthetic) {
        inputs.holdings =
            generate_synthetic_with_portfolio(*config.synthetic).holdings;
    } else {
        throw std::invalid_argument("no portfolio configured");
    }
    if (config.expected_ticks != 0 &&
        inputs.series[0].size() != config.expected_ticks) {
        throw std::runtime_error(
            "window mismatch: input has " +
            std::to_string(inputs.series[0].size()) + " ticks, expected " +
            std::to_string(config.expected_ticks));
    }
    return inputs;
}

void add_check(std::vector<IdentityCheck>& checks, std::string name,
               double main, double oracle, double tol) {
    IdentityCheck c;
    c.name = std::move(name);
    c.main_value = main;
    c.oracle_value = oracle;
    c.error = relative_error(main, oracle);
    c.tolerance = tol;
    c.pass = c.error <= tol;
    checks.push_back(std::move(c));
}

nlohmann::ordered_json matrix_json(const SquareMatrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.size(); ++j) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < m.size(); ++k) {
            row.push_back(m(j, k));
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace

AnalysisReport analyze(const AnalysisConfig& config) {
    Inputs inputs = load_inputs(config);
    const Portfolio portfolio(inputs.holdings);

    // align series to portfolio order; aggregate() revalidates the set
    const PortfolioSeries ps =
        aggregate(portfolio, inputs.series, config.liquidity_warn_factor);

    AnalysisReport report;
    report.warnings.assign(ps.warnings().begin(), ps.warnings().end());

    std::vector<double> reference_prices(portfolio.security_count());
    std::vector<const TradeSeries*> raw_in_portfolio_order(
        portfolio.security_count());
    for (std::size_t j = 0; j < portfolio.security_count(); ++j) {
        reference_prices[j] = portfolio.price_at_t0(j);
        for (const TradeSeries& s : inputs.series) {
            if (s.security_id() == portfolio.security_id(j)) {
                raw_in_portfolio_order[j] = &s;
            }
        }
    }

    std::vector<TradeSeries> raw_series;
    raw_series.reserve(portfolio.security_count());
    for (const TradeSeries* s : raw_in_portfolio_order) {
        raw_series.push_back(*s);
    }

    for (std::size_t j = 0; j < portfolio.security_count(); ++j) {
        const TradeSeries& s = raw_series[j];
        SecurityReport sec;
        sec.id = s.security_id();
        sec.market = security_stats(s);
        sec.frequency_mean_price = frequency_mean_price(s);
        sec.frequency_price_variance = frequency_price_variance(s);
        sec.returns = return_stats(s, reference_prices[j]);
        sec.frequency_mean_return =
            frequency_mean_return(s, reference_prices[j]);
        sec.frequency_return_variance =
            frequency_return_variance(s, reference_prices[j]);
        report.securities.push_back(std::move(sec));
    }

    report.price_covariances = price_covariance_matrix(raw_series);
    report.return_covariances =
        return_covariance_matrix(raw_series, reference_prices);
    report.frequency_return_covariances =
        frequency_return_covariance_matrix(raw_series, reference_prices);
    report.sigma_not_psd = !is_positive_semidefinite(report.price_covariances);

    report.composition_price = portfolio.price();
    report.composition_value = portfolio.total_value();
    report.composition_volume = portfolio.total_volume();
    report.share_weights.assign(portfolio.share_weights().begin(),
                                portfolio.share_weights().end());
    report.value_weights.assign(portfolio.value_weights().begin(),
                                portfolio.value_weights().end());

    report.portfolio = portfolio_stats(portfolio, ps);

    std::vector<double> component_mean_prices(portfolio.security_count());
    std::vector<double> component_mean_returns(portfolio.security_count());
    for (std::size_t j = 0; j < portfolio.security_count(); ++j) {
        component_mean_prices[j] = vwap(ps.normalized(j));
        component_mean_returns[j] =
            component_mean_prices[j] / reference_prices[j];
    }
    const CoefficientMatrices coefficients =
        coefficient_matrices(ps.normalized());
    report.price_decomposition = price_variance_decomposition(
        portfolio, coefficients, component_mean_prices,
        report.portfolio.volume_cv_sq);
    report.return_decomposition = return_variance_decomposition(
        portfolio, coefficients, component_mean_returns,
        report.portfolio.volume_cv_sq);

    report.markowitz_variance = markowitz_variance(
        report.frequency_return_covariances, portfolio.value_weights());
    report.markowitz_discrepancy =
        report.portfolio.return_variance == 0.0
            ? 0.0
            : (report.portfolio.return_variance - report.markowitz_variance) /
                  report.portfolio.return_variance;

    // oracle cross-checks at the configured tolerances
    auto& checks = report.oracle_checks;
    {
        double worst_phi = -1.0;
        double phi_main = 0.0;
        double phi_oracle = 0.0;
        for (std::size_t j = 0; j < portfolio.security_count(); ++j) {
            const TradeSeries& s = raw_series[j];
            const double main = report.securities[j].market.price_variance;
            const double ref = oracle::weighted_variance(
                s.prices(), s.volumes(), report.securities[j].market.mean_price);
            if (relative_error(main, ref) > worst_phi) {
                worst_phi = relative_error(main, ref);
                phi_main = main;
                phi_oracle = ref;
            }
        }
        add_check(checks, "security price variance vs weighted sum", phi_main,
                  phi_oracle, config.dual_path_tol);
    }
    {
        double worst = -1.0;
        double main_v = 0.0;
        double oracle_v = 0.0;
        for (std::size_t j = 0; j < portfolio.security_count(); ++j) {
            for (std::size_t k = 0; k < portfolio.security_count(); ++k) {
                const double main = report.price_covariances(j, k);
                const double ref = oracle::weighted_covariance(
                    raw_series[j].prices(), raw_series[k].prices(),
                    raw_series[j].volumes(), raw_series[k].volumes(),
                    report.securities[j].market.mean_price,
                    report.securities[k].market.mean_price);
                if (relative_error(main, ref) > worst) {
                    worst = relative_error(main, ref);
                    main_v = main;
                    oracle_v = ref;
                }
            }
        }
        add_check(checks, "pair price covariance vs weighted sum", main_v,
                  oracle_v, config.dual_path_tol);
    }
    const oracle::PortfolioVariances direct = oracle::portfolio_variance(ps);
    add_check(checks, "portfolio price variance vs oracle",
              report.portfolio.price_variance, direct.price_variance,
              config.dual_path_tol);
    add_check(checks, "portfolio return variance vs oracle",
              report.portfolio.return_variance, direct.return_variance,
              config.dual_path_tol);
    add_check(checks, "price variance decomposition vs oracle",
              report.price_decomposition.total(), direct.price_variance,
              config.identity_tol);
    add_check(checks, "return variance decomposition vs oracle",
              report.return_decomposition.total(), direct.return_variance,
              config.identity_tol);
    {
        double worst = -1.0;
        double main_v = 0.0;
        double oracle_v = 0.0;
        for (std::size_t j = 0; j < portfolio.security_count(); ++j) {
            const double main = total(ps.normalized(j), Field::volume);
            const double ref = portfolio.shares(j);
            if (relative_error(main, ref) > worst) {
                worst = relative_error(main, ref);
                main_v = main;
                oracle_v = ref;
            }
        }
        add_check(checks, "holdings conservation", main_v, oracle_v,
                  config.dual_path_tol);
    }
    {
        double worst = -1.0;
        double main_v = 0.0;
        double oracle_v = 0.0;
        for (std::size_t i = 0; i < ps.tick_count(); ++i) {
            const double main = per_trade_return_components(portfolio, ps, i);
            const double ref = per_trade_return_direct(portfolio, ps, i);
            if (relative_error(main, ref) > worst) {
                worst = relative_error(main, ref);
                main_v = main;
                oracle_v = ref;
            }
        }
        add_check(checks, "per-trade return identity", main_v, oracle_v,
                  config.dual_path_tol);
    }

    report.pass = true;
    for (const IdentityCheck& c : checks) {
        report.pass = report.pass && c.pass;
    }
    return report;
}

std::string to_json(const AnalysisReport& report) {
    using json = nlohmann::ordered_json;
    json root;
    root["schema"] = "mbps.analysis/1";

    json securities = json::array();
    for (const SecurityReport& sec : report.securities) {
        json market = {
            {"mean_price", sec.market.mean_price},
            {"price_variance", sec.market.price_variance},
            {"value_variance", sec.market.value_variance},
            {"volume_variance", sec.market.volume_variance},
            {"value_volume_cov", sec.market.value_volume_cov},
            {"second_volume_moment", sec.market.second_volume_moment},
        };
        json returns = {
            {"reference_price", sec.returns.reference_price},
            {"mean_return", sec.returns.mean_return},
            {"return_variance", sec.returns.return_variance},
            {"past_value_variance", sec.returns.past_value_variance},
            {"current_past_cov", sec.returns.current_past_cov},
            {"second_past_moment", sec.returns.second_past_moment},
        };
        json frequency = {
            {"mean_price", sec.frequency_mean_price},
            {"price_variance", sec.frequency_price_variance},
            {"mean_return", sec.frequency_mean_return},
            {"return_variance", sec.frequency_return_variance},
        };
        securities.push_back({{"id", sec.id},
                              {"market", market},
                              {"frequency", frequency},
                              {"returns", returns}});
    }
    root["securities"] = securities;

    root["matrices"] = {
        {"price_covariance", matrix_json(report.price_covariances)},
        {"return_covariance", matrix_json(report.return_covariances)},
        {"frequency_return_covariance",
         matrix_json(report.frequency_return_covariances)},
        {"price_covariance_psd", !report.sigma_not_psd},
    };

    root["portfolio"] = {
        {"composition",
         {{"price", report.composition_price},
          {"total_value", report.composition_value},
          {"total_volume", report.composition_volume},
          {"share_weights", report.share_weights},
          {"value_weights", report.value_weights}}},
        {"mean_price", report.portfolio.mean_price},
        {"price_variance", report.portfolio.price_variance},
        {"mean_return", report.portfolio.mean_return},
        {"return_variance", report.portfolio.return_variance},
        {"value_variance", report.portfolio.value_variance},
        {"volume_variance", report.portfolio.volume_variance},
        {"value_volume_cov", report.portfolio.value_volume_cov},
        {"value_cv_sq", report.portfolio.value_cv_sq},
        {"volume_cv_sq", report.portfolio.volume_cv_sq},
        {"value_volume_ncov", report.portfolio.value_volume_ncov},
    };

    const auto decomposition_json = [](const VarianceDecomposition& d) {
        return json{{"quadratic", d.quadratic},
                    {"cubic", d.cubic},
                    {"quartic", d.quartic},
                    {"prefactor", d.prefactor},
                    {"total", d.total()}};
    };
    root["decomposition"] = {
        {"price", decomposition_json(report.price_decomposition)},
        {"return", decomposition_json(report.return_decomposition)},
    };

    root["markowitz"] = {
        {"variance", report.markowitz_variance},
        {"relative_discrepancy", report.markowitz_discrepancy},
    };

    json checks = json::array();
    for (const IdentityCheck& c : report.oracle_checks) {
        checks.push_back({{"name", c.name},
                          {"main", c.main_value},
                          {"oracle", c.oracle_value},
                          {"error", c.error},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    }
    root["oracle_checks"] = checks;
    root["warnings"] = report.warnings;
    root["pass"] = report.pass;
    return root.dump(2) + "\n";
}

std::string to_csv(const AnalysisReport& report) {
    std::ostringstream out;
    out << "section,key,value\n";
    const auto row = [&](const std::string& section, const std::string& key,
                         double value) {
        out << section << ',' << key << ',' << format_double(value) << '\n';
    };
    for (const SecurityReport& sec : report.securities) {
        const std::string section = "security:" + sec.id;
        row(section, "market_mean_price", sec.market.mean_price);
        row(section, "market_price_variance", sec.market.price_variance);
        row(section, "frequency_mean_price", sec.frequency_mean_price);
        row(section, "frequency_price_variance",
            sec.frequency_price_variance);
        row(section, "mean_return", sec.returns.mean_return);
        row(section, "return_variance", sec.returns.return_variance);
        row(section, "frequency_mean_return", sec.frequency_mean_return);
        row(section, "frequency_return_variance",
            sec.frequency_return_variance);
    }
    for (std::size_t j = 0; j < report.price_covariances.size(); ++j) {
        for (std::size_t k = 0; k < report.price_covariances.size(); ++k) {
            const std::string suffix =
                "[" + std::to_string(j) + "][" + std::to_string(k) + "]";
            row("matrices", "price_covariance" + suffix,
                report.price_covariances(j, k));
            row("matrices", "return_covariance" + suffix,
                report.return_covariances(j, k));
            row("matrices", "frequency_return_covariance" + suffix,
                report.frequency_return_covariances(j, k));
        }
    }
    out << "matrices,price_covariance_psd,"
        << (report.sigma_not_psd ? "false" : "true") << '\n';
    row("portfolio", "composition_price", report.composition_price);
    row("portfolio", "total_value", report.composition_value);
    row("portfolio", "total_volume", report.composition_volume);
    row("portfolio", "mean_price", report.portfolio.mean_price);
    row("portfolio", "price_variance", report.portfolio.price_variance);
    row("portfolio", "mean_return", report.portfolio.mean_return);
    row("portfolio", "return_variance", report.portfolio.return_variance);
    row("portfolio", "value_cv_sq", report.portfolio.value_cv_sq);
    row("portfolio", "volume_cv_sq", report.portfolio.volume_cv_sq);
    row("portfolio", "value_volume_ncov", report.portfolio.value_volume_ncov);
    const auto decomposition_rows = [&](const std::string& section,
                                        const VarianceDecomposition& d) {
        row(section, "quadratic", d.quadratic);
        row(section, "cubic", d.cubic);
        row(section, "quartic", d.quartic);
        row(section, "prefactor", d.prefactor);
        row(section, "total", d.total());
    };
    decomposition_rows("decomposition:price", report.price_decomposition);
    decomposition_rows("decomposition:return", report.return_decomposition);
    row("markowitz", "variance", report.markowitz_variance);
    row("markowitz", "relative_discrepancy", report.markowitz_discrepancy);
    for (const IdentityCheck& c : report.oracle_checks) {
        out << "oracle_check," << c.name << ','
            << (c.pass ? "pass" : "fail") << '\n';
    }
    for (const std::string& w : report.warnings) {
        out << "warning,," << w << '\n';
    }
    out << "report,pass," << (report.pass ? "true" : "false") << '\n';
    return out.str();
}

std::string serialize(const AnalysisReport& report,
                      AnalysisConfig::Format format) {
    return format == AnalysisConfig::Format::json ? to_json(report)
                                                  : to_csv(report);
}

} // namespace mbps

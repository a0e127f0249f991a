#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mbps/campaign.hpp"
#include "mbps/decomposition.hpp"
#include "mbps/matrix.hpp"
#include "mbps/security_stats.hpp"
#include "mbps/synthetic.hpp"

namespace mbps {

/// Inputs and knobs of one analysis run. Trades come either from a CSV file
/// or from an in-memory synthetic spec; the portfolio always comes from its
/// own CSV (or a preloaded holding list).
struct AnalysisConfig {
    std::optional<std::filesystem::path> trades_path;
    std::optional<SyntheticSpec> synthetic;
    std::optional<std::filesystem::path> portfolio_path;
    std::vector<Holding> holdings; ///< used when portfolio_path is empty

    std::size_t expected_ticks = 0; ///< 0 = accept whatever the input has
    enum class Format { json, csv };
    Format format = Format::json;
    double identity_tol = 1e-10;
    double dual_path_tol = 1e-12;
    double liquidity_warn_factor = 10.0;
};

/// Per-security block of the report.
struct SecurityReport {
    std::string id;
    SecurityStats market;
    double frequency_mean_price = 0.0;
    double frequency_price_variance = 0.0;
    ReturnStats returns;
    double frequency_mean_return = 0.0;
    double frequency_return_variance = 0.0;
};

/// Full analysis result: per-security statistics, pairwise covariance
/// tables, portfolio-level statistics with both variance decompositions,
/// the classical quadratic-form value, and the oracle cross-checks. The
/// discrepancy field is (market return variance - quadratic form) / market
/// return variance; it vanishes only when trade volumes are constant.
struct AnalysisReport {
    std::vector<SecurityReport> securities;
    SquareMatrix price_covariances;
    SquareMatrix return_covariances;
    SquareMatrix frequency_return_covariances;
    bool sigma_not_psd = false;

    double composition_price = 0.0; ///< s(t0)
    double composition_value = 0.0; ///< total invested amount
    double composition_volume = 0.0;
    std::vector<double> share_weights;
    std::vector<double> value_weights;

    PortfolioStats portfolio;
    VarianceDecomposition price_decomposition;
    VarianceDecomposition return_decomposition;

    double markowitz_variance = 0.0; ///< quadratic form, frequency covariances
    double markowitz_discrepancy = 0.0;

    std::vector<IdentityCheck> oracle_checks;
    std::vector<std::string> warnings;
    bool pass = true;
};

AnalysisReport analyze(const AnalysisConfig& config);

std::string to_json(const AnalysisReport& report);
std::string to_csv(const AnalysisReport& report);
std::string serialize(const AnalysisReport& report,
                      AnalysisConfig::Format format);

} // namespace mbps

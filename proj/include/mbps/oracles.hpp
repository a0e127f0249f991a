#pragma once

#include <span>

#include "mbps/matrix.hpp"
#include "mbps/portfolio.hpp"

/// Brute-force reference evaluations for the identity checks. Everything in
/// this namespace recomputes its result directly from tick data with plain
/// sums and shares no statistics code with the main modules; tests and the
/// verification campaign compare the two sides.
namespace mbps::oracle {

/// Direct weighted variance: squared deviations from the supplied mean,
/// weighted by squared volumes.
double weighted_variance(std::span<const double> prices,
                         std::span<const double> volumes, double mean_price);

/// Direct weighted covariance of two price sequences, weighted by the
/// product of the volumes.
double weighted_covariance(std::span<const double> prices_j,
                           std::span<const double> prices_k,
                           std::span<const double> volumes_j,
                           std::span<const double> volumes_k,
                           double mean_price_j, double mean_price_k);

struct PortfolioVariances {
    double price_variance = 0.0;
    double return_variance = 0.0;
};

/// Price and return variance of the portfolio from the aggregate series
/// alone, never touching the decomposition code paths.
PortfolioVariances portfolio_variance(const PortfolioSeries& ps);

/// Naive loop evaluation of the three decomposition sums, O(J^4); verifies
/// the factored contractions for small portfolios.
double quartic_total(const SquareMatrix& value_value,
                     const SquareMatrix& value_volume,
                     const SquareMatrix& volume_volume,
                     std::span<const double> value_slot,
                     std::span<const double> volume_slot,
                     double volume_cv_sq);

/// Side-by-side market-based and frequency-based price moments of one
/// series, including the reconstruction of the price moments from the value
/// moments, which is exact only under constant trade volume.
struct MomentComparison {
    bool constant_volume = false;
    double market_mean_price = 0.0;
    double frequency_mean_price = 0.0;
    double market_price_variance = 0.0;
    double frequency_price_variance = 0.0;
    double price_moment_1 = 0.0;         ///< (1/N) sum p(t_i)
    double price_moment_2 = 0.0;         ///< (1/N) sum p^2(t_i)
    double value_moment_1 = 0.0;         ///< (1/N) sum C(t_i)
    double value_moment_2 = 0.0;         ///< (1/N) sum C^2(t_i)
    double reconstructed_moment_1 = 0.0; ///< value_moment_1 / mean volume
    double reconstructed_moment_2 = 0.0; ///< value_moment_2 / mean volume^2
    double mean_gap = 0.0;               ///< rel. gap market vs frequency mean
    double variance_gap = 0.0;           ///< rel. gap market vs frequency var
    double reconstruction_gap_1 = 0.0;   ///< rel. gap moment 1 vs rebuilt
    double reconstruction_gap_2 = 0.0;   ///< rel. gap moment 2 vs rebuilt
};

MomentComparison frequency_moment_suite(const TradeSeries& series);

} // namespace mbps::oracle

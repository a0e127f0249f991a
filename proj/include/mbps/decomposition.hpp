#pragma once

#include <span>
#include <vector>

#include "mbps/pair_stats.hpp"
#include "mbps/portfolio.hpp"

namespace mbps {

/// Volume-weighted moments of the portfolio's aggregate trade series plus
/// the coefficients of variation that parameterize its variance.
struct PortfolioStats {
    double mean_price = 0.0;      ///< volume-weighted mean of aggregate prices
    double price_variance = 0.0;
    double mean_return = 0.0;     ///< mean price / composition price
    double return_variance = 0.0; ///< price variance / composition price^2

    double value_variance = 0.0;  ///< variance of the aggregate values
    double volume_variance = 0.0; ///< variance of the aggregate volumes
    double value_volume_cov = 0.0;

    double value_cv_sq = 0.0;        ///< value variance / mean value^2
    double volume_cv_sq = 0.0;       ///< volume variance / mean volume^2
    double value_volume_ncov = 0.0;  ///< covariance / (mean value x mean volume)

    std::vector<double> past_values; ///< composition price x aggregate volume
    double past_value_variance = 0.0;
    double current_past_cov = 0.0;
    double second_past_moment = 0.0;
};

/// One evaluated variance decomposition over the portfolio's securities:
/// total = prefactor * (quadratic + cubic + quartic), the cubic term
/// carrying its factor of -2. The quadratic term alone is the classical
/// quadratic form; the cubic and quartic terms are the contributions of
/// random trade volumes and vanish when every security trades in constant
/// volume.
struct VarianceDecomposition {
    enum class Basis { price, returns };
    Basis basis = Basis::price;
    double quadratic = 0.0;
    double cubic = 0.0;
    double quartic = 0.0;
    double prefactor = 1.0; ///< 1 / (1 + volume_cv_sq of the aggregate)
    double total() const { return prefactor * (quadratic + cubic + quartic); }
};

/// Mean price of the portfolio: total aggregate value over the (constant)
/// total volume. Identical to the VWAP of the aggregate series.
double portfolio_mean_price(const PortfolioSeries& ps);

/// Mean price rebuilt from component VWAPs weighted by share fractions.
double mean_price_decomposition(const Portfolio& portfolio,
                                std::span<const double> component_mean_prices);

/// Market-based price variance of the aggregate series. Evaluates three
/// algebraically equivalent routes (moment form, coefficient form, direct
/// weighted sum) and raises identity_error if they disagree; disagreement
/// means a bug, not bad input.
double portfolio_price_variance(const PortfolioSeries& ps);

/// Mean return via both routes (price ratio and component decomposition),
/// which must agree.
double portfolio_mean_return(const Portfolio& portfolio,
                             const PortfolioSeries& ps);

/// Return variance via the price variance and via the explicit past-value
/// series; the routes must agree.
double portfolio_return_variance(const Portfolio& portfolio,
                                 const PortfolioSeries& ps);

/// Everything above in one record.
PortfolioStats portfolio_stats(const Portfolio& portfolio,
                               const PortfolioSeries& ps);

/// Price-variance decomposition over securities: a 4th-degree polynomial in
/// the share weights. Coefficient matrices must be computed on the
/// normalized component series; component mean prices are their VWAPs.
/// volume_cv_sq is the aggregate-level volume coefficient of variation.
VarianceDecomposition price_variance_decomposition(
    const Portfolio& portfolio, const CoefficientMatrices& coefficients,
    std::span<const double> component_mean_prices, double volume_cv_sq);

/// Return-variance decomposition over securities. Value-indexed slots carry
/// value weights times component mean returns; volume-indexed slots (the
/// second index of the value/volume coefficient and both indices of the
/// volume/volume coefficient) carry share weights. With that weighting the
/// total reproduces the direct return variance exactly; putting value
/// weights in the volume slots breaks the identity whenever composition
/// prices differ across securities.
VarianceDecomposition return_variance_decomposition(
    const Portfolio& portfolio, const CoefficientMatrices& coefficients,
    std::span<const double> component_mean_returns, double volume_cv_sq);

/// Classical quadratic form: sum of covariances weighted by the products of
/// the invested fractions. The covariance matrix must be symmetric and the
/// weights must sum to one.
double markowitz_variance(const SquareMatrix& return_covariances,
                          std::span<const double> weights);

/// Portfolio return realized by the trade at one tick, decomposed over the
/// securities. Each component return is weighted by its invested fraction
/// and by a volume correction factor that equals one only when all trade
/// volumes are constant.
double per_trade_return_components(const Portfolio& portfolio,
                                   const PortfolioSeries& ps,
                                   std::size_t tick);

/// The same quantity read off the aggregate series directly.
double per_trade_return_direct(const Portfolio& portfolio,
                               const PortfolioSeries& ps, std::size_t tick);

/// Aggregate volume coefficient of variation rebuilt from the component
/// volume covariances; equals the aggregate-level value by bilinearity.
double component_volume_cv_sq(const PortfolioSeries& ps);

} // namespace mbps

#pragma once

#include <vector>

#include "mbps/trade.hpp"

namespace mbps {

/// Volume-weighted moments of one security over its window.
///
/// The mean price is the VWAP: first-order weights are the volume shares
/// mu(t_i;1) = U(t_i) / sum U. The price variance weights squared deviations
/// from the VWAP by the squared-volume shares mu(t_i;2) = U^2(t_i) / sum U^2
/// and is evaluated through the value/volume moments, never from the price
/// sequence alone.
struct SecurityStats {
    double mean_price = 0.0;           ///< p(t) = C(t;1) / U(t;1), the VWAP
    double price_variance = 0.0;       ///< weighted variance of the price
    double value_variance = 0.0;       ///< population variance of trade values
    double volume_variance = 0.0;      ///< population variance of trade volumes
    double value_volume_cov = 0.0;     ///< cov{C, U}
    double second_volume_moment = 0.0; ///< U(t;2) = (1/N) sum U^2(t_i)
    std::vector<double> first_order_weights;  ///< mu(t_i;1), sums to 1
    std::vector<double> second_order_weights; ///< mu(t_i;2), sums to 1
};

/// Gross-return statistics relative to a reference price (the security's
/// price when the portfolio was composed). The canonical representation is
/// the gross return p(t_i)/p0; net returns are a view (R - 1) with the same
/// variance. The past-value series prices the current trade volumes at the
/// reference price.
struct ReturnStats {
    double reference_price = 0.0;
    double mean_return = 0.0;          ///< R(t,t0) = vwap / reference price
    double return_variance = 0.0;      ///< equals price_variance / p0^2
    std::vector<double> past_values;   ///< C0(t_i) = p0 * U(t_i)
    double past_value_variance = 0.0;  ///< population variance of C0
    double current_past_cov = 0.0;     ///< cov{C, C0}
    double second_past_moment = 0.0;   ///< (1/N) sum C0^2(t_i)

    /// The net view; shifting by one leaves the variance untouched.
    double net_mean_return() const { return mean_return - 1.0; }
};

/// Volume weighted average price, total value / total volume.
double vwap(const TradeSeries& series);

/// Market-based price variance from the value/volume second moments. Tiny
/// negative results from cancellation are clamped to zero.
double price_variance(const TradeSeries& series);

SecurityStats security_stats(const TradeSeries& series);

// Conventional unweighted price moments; equal to the market-based ones
// exactly when all trade volumes in the window coincide.
double frequency_mean_price(const TradeSeries& series);
double frequency_price_variance(const TradeSeries& series);

double mean_return(const TradeSeries& series, double reference_price);
double return_variance(const TradeSeries& series, double reference_price);
ReturnStats return_stats(const TradeSeries& series, double reference_price);

double frequency_mean_return(const TradeSeries& series, double reference_price);
double frequency_return_variance(const TradeSeries& series,
                                 double reference_price);

} // namespace mbps

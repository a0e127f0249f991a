#pragma once

#include <span>
#include <string>
#include <vector>

#include "mbps/trade.hpp"

namespace mbps {

/// One position fixed at the composition time t0.
struct Holding {
    std::string security_id;
    double shares = 0.0;      ///< number of shares held
    double price_at_t0 = 0.0; ///< composition price, an explicit input
};

/// Portfolio composed at t0. Holdings stay constant over the averaging
/// window; every derived quantity is precomputed on construction.
///
/// Two weight systems coexist: share weights x_j are fractions of the total
/// share count and drive the price decomposition; value weights X_j are
/// fractions of the total invested amount and drive the return
/// decomposition. Both sum to one.
class Portfolio {
public:
    explicit Portfolio(std::vector<Holding> holdings);

    std::size_t security_count() const { return holdings_.size(); }
    const std::vector<Holding>& holdings() const { return holdings_; }
    const std::string& security_id(std::size_t j) const {
        return holdings_[j].security_id;
    }
    double shares(std::size_t j) const { return holdings_[j].shares; }
    double price_at_t0(std::size_t j) const {
        return holdings_[j].price_at_t0;
    }
    double value_at_t0(std::size_t j) const { return values_[j]; }

    double total_value() const { return total_value_; }   ///< sum of values
    double total_volume() const { return total_volume_; } ///< sum of shares
    double price() const { return price_; } ///< total value / total volume

    std::span<const double> share_weights() const { return share_weights_; }
    std::span<const double> value_weights() const { return value_weights_; }

private:
    std::vector<Holding> holdings_;
    std::vector<double> values_;
    double total_value_ = 0.0;
    double total_volume_ = 0.0;
    double price_ = 0.0;
    std::vector<double> share_weights_;
    std::vector<double> value_weights_;
};

Portfolio compose_portfolio(std::vector<Holding> holdings);

/// A security's series rescaled so that its traded volume over the window
/// equals the portfolio's holding of that security. Prices are untouched.
struct NormalizedSeries {
    double scale = 0.0; ///< holding / total traded volume
    TradeSeries series;
    bool liquidity_warning = false;
};

/// Rescales the series to the holding. The market must trade much more of
/// the security than the portfolio holds for the statistics to be
/// meaningful; when traded volume falls below warn_factor * holding the
/// result carries a warning rather than an error.
NormalizedSeries normalize_to_holdings(const TradeSeries& series,
                                       double holding,
                                       double warn_factor = 10.0);

/// Normalized component series plus the portfolio's own trade series. Each
/// tick sums the normalized values and volumes across securities, so the
/// portfolio trades like a single security whose total traded volume equals
/// its share count at composition.
class PortfolioSeries {
public:
    PortfolioSeries(AveragingWindow window,
                    std::vector<TradeSeries> normalized,
                    std::vector<double> scales, double composition_price,
                    double composition_volume,
                    std::vector<std::string> warnings);

    std::size_t security_count() const { return normalized_.size(); }
    std::size_t tick_count() const { return window_.tick_count; }
    const AveragingWindow& window() const { return window_; }

    const std::vector<TradeSeries>& normalized() const { return normalized_; }
    const TradeSeries& normalized(std::size_t j) const {
        return normalized_[j];
    }
    double scale(std::size_t j) const { return scales_[j]; }

    std::span<const double> aggregate_values() const {
        return aggregate_.values();
    }
    std::span<const double> aggregate_volumes() const {
        return aggregate_.volumes();
    }
    double aggregate_price(std::size_t i) const { return aggregate_.price(i); }
    std::vector<double> aggregate_prices() const {
        return aggregate_.prices();
    }

    /// The aggregate as a plain trade series; the portfolio is a security.
    const TradeSeries& aggregate_series() const { return aggregate_; }

    double composition_price() const { return composition_price_; }
    double composition_volume() const { return composition_volume_; }

    std::span<const std::string> warnings() const { return warnings_; }

private:
    AveragingWindow window_;
    std::vector<TradeSeries> normalized_;
    std::vector<double> scales_;
    TradeSeries aggregate_;
    double composition_price_ = 0.0;
    double composition_volume_ = 0.0;
    std::vector<std::string> warnings_;
};

/// Normalizes every component series to its holding and sums them per tick.
/// The raw series may arrive in any order; they are matched to the
/// portfolio by security id and must cover it exactly.
PortfolioSeries aggregate(const Portfolio& portfolio,
                          std::span<const TradeSeries> raw_series,
                          double liquidity_warn_factor = 10.0);

} // namespace mbps

#include "mbps/portfolio.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace mbps {

Portfolio::Portfolio(std::vector<Holding> holdings)
    : holdings_(std::move(holdings)) {
    if (holdings_.empty()) {
        throw std::invalid_argument("portfolio must hold at least one security");
    }
    values_.reserve(holdings_.size());
    for (const Holding& h : holdings_) {
        if (h.security_id.empty()) {
            throw std::invalid_argument("holding with empty security id");
        }
        if (!(h.shares > 0.0) || !std::isfinite(h.shares)) {
            throw std::invalid_argument("holding " + h.security_id +
                                        ": shares must be positive");
        }
        if (!(h.price_at_t0 > 0.0) || !std::isfinite(h.price_at_t0)) {
            throw std::invalid_argument("holding " + h.security_id +
                                        ": composition price must be positive");
        }
        values_.push_back(h.price_at_t0 * h.shares);
    }
    for (std::size_t j = 0; j < holdings_.size(); ++j) {
        for (std::size_t k = j + 1; k < holdings_.size(); ++k) {
            if (holdings_[j].security_id == holdings_[k].security_id) {
                throw std::invalid_argument("duplicate security " +
                                            holdings_[j].security_id);
            }
        }
    }
    for (std::size_t j = 0; j < holdings_.size(); ++j) {
        total_value_ += values_[j];
        total_volume_ += holdings_[j].shares;
    }
    price_ = total_value_ / total_volume_;
    share_weights_.reserve(holdings_.size());
    value_weights_.reserve(holdings_.size());
    for (std::size_t j = 0; j < holdings_.size(); ++j) {
        share_weights_.push_back(holdings_[j].shares / total_volume_);
        value_weights_.push_back(values_[j] / total_value_);
    }
}

Portfolio compose_portfolio(std::vector<Holding> holdings) {
    return Portfolio(std::move(holdings));
}

NormalizedSeries normalize_to_holdings(const TradeSeries& series,
                                       double holding, double warn_factor) {
    if (!(holding > 0.0) || !std::isfinite(holding)) {
        throw std::invalid_argument("holding must be positive");
    }
    const double traded = total(series, Field::volume);
    if (!(traded > 0.0)) {
        throw std::invalid_argument("zero total traded volume for " +
                                    series.security_id());
    }
    const double scale = holding / traded;
    return NormalizedSeries{
        scale,
        rescale(series, scale),
        warn_factor > 0.0 && traded < warn_factor * holding,
    };
}

namespace {

// per-tick sum of one field over the component series, component order fixed
std::vector<double> sum_per_tick(const std::vector<TradeSeries>& components,
                                 std::size_t ticks, Field field) {
    std::vector<double> out(ticks, 0.0);
    for (const TradeSeries& s : components) {
        const auto xs = field == Field::value ? s.values() : s.volumes();
        for (std::size_t i = 0; i < ticks; ++i) {
            out[i] += xs[i];
        }
    }
    return out;
}

} // namespace

PortfolioSeries::PortfolioSeries(AveragingWindow window,
                                 std::vector<TradeSeries> normalized,
                                 std::vector<double> scales,
                                 double composition_price,
                                 double composition_volume,
                                 std::vector<std::string> warnings)
    : window_(std::move(window)), normalized_(std::move(normalized)),
      scales_(std::move(scales)),
      aggregate_("__portfolio__", window_,
                 sum_per_tick(normalized_, window_.tick_count, Field::value),
                 sum_per_tick(normalized_, window_.tick_count, Field::volume)),
      composition_price_(composition_price),
      composition_volume_(composition_volume),
      warnings_(std::move(warnings)) {}

PortfolioSeries aggregate(const Portfolio& portfolio,
                          std::span<const TradeSeries> raw_series,
                          double liquidity_warn_factor) {
    std::unordered_map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < raw_series.size(); ++i) {
        const auto [it, inserted] =
            by_id.emplace(raw_series[i].security_id(), i);
        if (!inserted) {
            throw std::invalid_argument("duplicate series for " +
                                        raw_series[i].security_id());
        }
    }
    if (raw_series.size() != portfolio.security_count()) {
        throw std::invalid_argument(
            "security-set mismatch: portfolio holds " +
            std::to_string(portfolio.security_count()) + " securities, " +
            std::to_string(raw_series.size()) + " series given");
    }

    std::vector<TradeSeries> normalized;
    std::vector<double> scales;
    std::vector<std::string> warnings;
    normalized.reserve(portfolio.security_count());
    scales.reserve(portfolio.security_count());
    for (std::size_t j = 0; j < portfolio.security_count(); ++j) {
        const auto it = by_id.find(portfolio.security_id(j));
        if (it == by_id.end()) {
            throw std::invalid_argument("security-set mismatch: no series for " +
                                        portfolio.security_id(j));
        }
        const TradeSeries& raw = raw_series[it->second];
        if (j > 0) {
            require_same_window(raw_series[0], raw);
        }
        NormalizedSeries ns = normalize_to_holdings(raw, portfolio.shares(j),
                                                    liquidity_warn_factor);
        if (ns.liquidity_warning) {
            warnings.push_back(
                "security " + raw.security_id() + ": traded volume " +
                std::to_string(total(raw, Field::volume)) + " is below " +
                std::to_string(liquidity_warn_factor) + "x the holding " +
                std::to_string(portfolio.shares(j)));
        }
        scales.push_back(ns.scale);
        normalized.push_back(std::move(ns.series));
    }

    return PortfolioSeries(raw_series[0].window(), std::move(normalized),
                           std::move(scales), portfolio.price(),
                           portfolio.total_volume(), std::move(warnings));
}

} // namespace mbps

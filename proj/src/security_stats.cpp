#include "mbps/security_stats.hpp"

#include <cmath>
#include <stdexcept>

#include "mbps/numeric.hpp"

namespace mbps {

namespace {

void require_reference_price(double p0) {
    if (!(p0 > 0.0) || !std::isfinite(p0)) {
        throw std::invalid_argument("invalid reference price");
    }
}

} // namespace

double vwap(const TradeSeries& series) {
    return total(series, Field::value) / total(series, Field::volume);
}

double price_variance(const TradeSeries& series) {
    const double p = vwap(series);
    const double value_var = variance(series.values());
    const double volume_var = variance(series.volumes());
    const double cov_cu = covariance(series.values(), series.volumes());
    const double second_volume = raw_moment(series, Field::volume, 2);
    const double raw =
        (value_var + p * p * volume_var - 2.0 * p * cov_cu) / second_volume;
    return guard_variance(raw, p * p);
}

SecurityStats security_stats(const TradeSeries& series) {
    SecurityStats stats;
    stats.mean_price = vwap(series);
    stats.value_variance = variance(series.values());
    stats.volume_variance = variance(series.volumes());
    stats.value_volume_cov = covariance(series.values(), series.volumes());
    stats.second_volume_moment = raw_moment(series, Field::volume, 2);
    const double raw = (stats.value_variance +
                        stats.mean_price * stats.mean_price *
                            stats.volume_variance -
                        2.0 * stats.mean_price * stats.value_volume_cov) /
                       stats.second_volume_moment;
    stats.price_variance =
        guard_variance(raw, stats.mean_price * stats.mean_price);

    const double total_volume = total(series, Field::volume);
    const double total_volume_sq =
        stats.second_volume_moment * static_cast<double>(series.size());
    stats.first_order_weights.reserve(series.size());
    stats.second_order_weights.reserve(series.size());
    for (double u : series.volumes()) {
        stats.first_order_weights.push_back(u / total_volume);
        stats.second_order_weights.push_back(u * u / total_volume_sq);
    }
    return stats;
}

double frequency_mean_price(const TradeSeries& series) {
    return mean(series.prices());
}

double frequency_price_variance(const TradeSeries& series) {
    return variance(series.prices());
}

double mean_return(const TradeSeries& series, double reference_price) {
    require_reference_price(reference_price);
    return vwap(series) / reference_price;
}

ReturnStats return_stats(const TradeSeries& series, double reference_price) {
    require_reference_price(reference_price);
    ReturnStats stats;
    stats.reference_price = reference_price;
    stats.mean_return = vwap(series) / reference_price;
    stats.past_values.reserve(series.size());
    for (double u : series.volumes()) {
        stats.past_values.push_back(reference_price * u);
    }
    stats.past_value_variance = variance(stats.past_values);
    stats.current_past_cov = covariance(series.values(), stats.past_values);
    double second = 0.0;
    for (double c0 : stats.past_values) {
        second += c0 * c0;
    }
    stats.second_past_moment = second / static_cast<double>(series.size());

    const double r = stats.mean_return;
    const double raw = (variance(series.values()) +
                        r * r * stats.past_value_variance -
                        2.0 * r * stats.current_past_cov) /
                       stats.second_past_moment;
    stats.return_variance = guard_variance(raw, r * r);
    return stats;
}

double return_variance(const TradeSeries& series, double reference_price) {
    return return_stats(series, reference_price).return_variance;
}

double frequency_mean_return(const TradeSeries& series,
                             double reference_price) {
    require_reference_price(reference_price);
    return frequency_mean_price(series) / reference_price;
}

double frequency_return_variance(const TradeSeries& series,
                                 double reference_price) {
    require_reference_price(reference_price);
    auto returns = series.prices();
    for (double& r : returns) {
        r /= reference_price;
    }
    return variance(returns);
}

} // namespace mbps

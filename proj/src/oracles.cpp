#include "mbps/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "mbps/numeric.hpp"

namespace mbps::oracle {

double weighted_variance(std::span<const double> prices,
                         std::span<const double> volumes, double mean_price) {
    if (prices.size() != volumes.size()) {
        throw std::invalid_argument("length mismatch");
    }
    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t i = 0; i < prices.size(); ++i) {
        const double dev = prices[i] - mean_price;
        numerator += dev * dev * volumes[i] * volumes[i];
        denominator += volumes[i] * volumes[i];
    }
    return numerator / denominator;
}

double weighted_covariance(std::span<const double> prices_j,
                           std::span<const double> prices_k,
                           std::span<const double> volumes_j,
                           std::span<const double> volumes_k,
                           double mean_price_j, double mean_price_k) {
    if (prices_j.size() != prices_k.size() ||
        prices_j.size() != volumes_j.size() ||
        prices_j.size() != volumes_k.size()) {
        throw std::invalid_argument("length mismatch");
    }
    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t i = 0; i < prices_j.size(); ++i) {
        const double w = volumes_j[i] * volumes_k[i];
        numerator += (prices_j[i] - mean_price_j) *
                     (prices_k[i] - mean_price_k) * w;
        denominator += w;
    }
    return numerator / denominator;
}

PortfolioVariances portfolio_variance(const PortfolioSeries& ps) {
    const auto values = ps.aggregate_values();
    const auto volumes = ps.aggregate_volumes();
    double total_value = 0.0;
    double total_volume = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        total_value += values[i];
        total_volume += volumes[i];
    }
    const double mean_price = total_value / total_volume;
    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double dev = values[i] / volumes[i] - mean_price;
        numerator += dev * dev * volumes[i] * volumes[i];
        denominator += volumes[i] * volumes[i];
    }
    PortfolioVariances result;
    result.price_variance = numerator / denominator;
    const double s0 = ps.composition_price();
    result.return_variance = result.price_variance / (s0 * s0);
    return result;
}

double quartic_total(const SquareMatrix& value_value,
                     const SquareMatrix& value_volume,
                     const SquareMatrix& volume_volume,
                     std::span<const double> value_slot,
                     std::span<const double> volume_slot,
                     double volume_cv_sq) {
    const std::size_t n = value_slot.size();
    double quadratic = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            quadratic += value_value(j, k) * value_slot[j] * value_slot[k];
        }
    }
    double cubic = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = 0; l < n; ++l) {
                cubic += value_volume(j, k) * value_slot[j] * volume_slot[k] *
                         value_slot[l];
            }
        }
    }
    double quartic = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = 0; l < n; ++l) {
                for (std::size_t f = 0; f < n; ++f) {
                    quartic += volume_volume(j, k) * volume_slot[j] *
                               volume_slot[k] * value_slot[l] * value_slot[f];
                }
            }
        }
    }
    return (quadratic - 2.0 * cubic + quartic) / (1.0 + volume_cv_sq);
}

MomentComparison frequency_moment_suite(const TradeSeries& series) {
    const auto values = series.values();
    const auto volumes = series.volumes();
    const auto n = static_cast<double>(values.size());

    MomentComparison cmp;
    double min_volume = volumes[0];
    double max_volume = volumes[0];
    double total_value = 0.0;
    double total_volume = 0.0;
    double value_1 = 0.0;
    double value_2 = 0.0;
    double volume_1 = 0.0;
    double price_1 = 0.0;
    double price_2 = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        min_volume = std::min(min_volume, volumes[i]);
        max_volume = std::max(max_volume, volumes[i]);
        total_value += values[i];
        total_volume += volumes[i];
        value_1 += values[i];
        value_2 += values[i] * values[i];
        volume_1 += volumes[i];
        const double p = values[i] / volumes[i];
        price_1 += p;
        price_2 += p * p;
    }
    cmp.constant_volume = min_volume == max_volume;
    cmp.market_mean_price = total_value / total_volume;
    cmp.value_moment_1 = value_1 / n;
    cmp.value_moment_2 = value_2 / n;
    cmp.price_moment_1 = price_1 / n;
    cmp.price_moment_2 = price_2 / n;
    cmp.frequency_mean_price = cmp.price_moment_1;

    double freq_var = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double dev = values[i] / volumes[i] - cmp.frequency_mean_price;
        freq_var += dev * dev;
    }
    cmp.frequency_price_variance = freq_var / n;

    {
        std::vector<double> prices;
        prices.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            prices.push_back(values[i] / volumes[i]);
        }
        cmp.market_price_variance =
            weighted_variance(prices, volumes, cmp.market_mean_price);
    }

    const double mean_volume = volume_1 / n;
    cmp.reconstructed_moment_1 = cmp.value_moment_1 / mean_volume;
    cmp.reconstructed_moment_2 =
        cmp.value_moment_2 / (mean_volume * mean_volume);

    cmp.mean_gap =
        relative_error(cmp.market_mean_price, cmp.frequency_mean_price);
    cmp.variance_gap = relative_error(cmp.market_price_variance,
                                      cmp.frequency_price_variance);
    cmp.reconstruction_gap_1 =
        relative_error(cmp.price_moment_1, cmp.reconstructed_moment_1);
    cmp.reconstruction_gap_2 =
        relative_error(cmp.price_moment_2, cmp.reconstructed_moment_2);
    return cmp;
}

} // namespace mbps::oracle

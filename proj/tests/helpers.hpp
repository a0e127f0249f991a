#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mbps/trade.hpp"

namespace mbps::test {

inline TradeSeries make_series(std::vector<double> values,
                               std::vector<double> volumes,
                               const std::string& id = "S1") {
    AveragingWindow window("", values.size(), 1.0);
    return TradeSeries(id, std::move(window), std::move(values),
                       std::move(volumes));
}

/// Positive random series for property-style tests, values and volumes
/// uniform in [0.1, 10].
inline TradeSeries random_series(std::mt19937_64& rng, std::size_t ticks,
                                 const std::string& id = "S1") {
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    std::vector<double> values(ticks);
    std::vector<double> volumes(ticks);
    for (std::size_t i = 0; i < ticks; ++i) {
        values[i] = dist(rng);
        volumes[i] = dist(rng);
    }
    return make_series(std::move(values), std::move(volumes), id);
}

} // namespace mbps::test

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mbps/portfolio.hpp"
#include "mbps/trade.hpp"

namespace mbps {

/// Deterministic synthetic trade generator. `constant` volume mode draws one
/// volume per security and holds it over the window, which is exactly the
/// regime in which the classical quadratic variance form is exact; `random`
/// mode draws volumes per tick.
struct SyntheticSpec {
    enum class VolumeMode { constant, random };

    std::size_t securities = 2;
    std::size_t ticks = 16;
    std::uint64_t seed = 0;
    VolumeMode volume_mode = VolumeMode::random;
    double value_min = 0.1;
    double value_max = 10.0;
    double volume_min = 0.1;
    double volume_max = 10.0;
};

struct SyntheticData {
    std::vector<TradeSeries> series;
    std::vector<Holding> holdings;
};

/// Trade series for the spec; identical spec gives identical series.
std::vector<TradeSeries> generate_synthetic(const SyntheticSpec& spec);

/// Trade series plus a compatible portfolio (holdings from the volume
/// range, composition prices from the attainable price range). The series
/// are identical to generate_synthetic for the same spec.
SyntheticData generate_synthetic_with_portfolio(const SyntheticSpec& spec);

SyntheticSpec parse_synthetic_spec(const std::string& json_text);
std::string to_json(const SyntheticSpec& spec);

} // namespace mbps

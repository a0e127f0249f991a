#include "mbps/synthetic.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace mbps {

namespace {

void validate(const SyntheticSpec& spec) {
    if (spec.securities == 0) {
        throw std::invalid_argument("need at least one security");
    }
    if (spec.ticks == 0) {
        throw std::invalid_argument("empty window");
    }
    if (!(spec.value_min > 0.0) || spec.value_min > spec.value_max ||
        !(spec.volume_min > 0.0) || spec.volume_min > spec.volume_max) {
        throw std::invalid_argument("invalid ranges");
    }
}

// Single fixed draw order: per security volumes then values, then holdings,
// then composition prices. generate_synthetic and the with-portfolio
// variant therefore produce identical series for the same spec.
SyntheticData generate(const SyntheticSpec& spec, bool with_portfolio) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> value_dist(spec.value_min,
                                                      spec.value_max);
    std::uniform_real_distribution<double> volume_dist(spec.volume_min,
                                                       spec.volume_max);
    const AveragingWindow window("", spec.ticks, 1.0);

    SyntheticData data;
    data.series.reserve(spec.securities);
    for (std::size_t j = 0; j < spec.securities; ++j) {
        std::vector<double> volumes(spec.ticks);
        if (spec.volume_mode == SyntheticSpec::VolumeMode::constant) {
            std::fill(volumes.begin(), volumes.end(), volume_dist(rng));
        } else {
            for (double& u : volumes) {
                u = volume_dist(rng);
            }
        }
        std::vector<double> values(spec.ticks);
        for (double& c : values) {
            c = value_dist(rng);
        }
        data.series.emplace_back("S" + std::to_string(j + 1), window,
                                 std::move(values), std::move(volumes));
    }

    if (with_portfolio) {
        std::uniform_real_distribution<double> price_dist(
            spec.value_min / spec.volume_max, spec.value_max / spec.volume_min);
        data.holdings.reserve(spec.securities);
        for (std::size_t j = 0; j < spec.securities; ++j) {
            data.holdings.push_back(Holding{data.series[j].security_id(),
                                            volume_dist(rng), price_dist(rng)});
        }
    }
    return data;
}

} // namespace

std::vector<TradeSeries> generate_synthetic(const SyntheticSpec& spec) {
    return generate(spec, false).series;
}

SyntheticData generate_synthetic_with_portfolio(const SyntheticSpec& spec) {
    return generate(spec, true);
}

SyntheticSpec parse_synthetic_spec(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    SyntheticSpec spec;
    spec.securities = j.at("securities").get<std::size_t>();
    spec.ticks = j.at("ticks").get<std::size_t>();
    spec.seed = j.value("seed", std::uint64_t{0});
    const std::string mode = j.value("volume_mode", std::string("random"));
    if (mode == "constant") {
        spec.volume_mode = SyntheticSpec::VolumeMode::constant;
    } else if (mode == "random") {
        spec.volume_mode = SyntheticSpec::VolumeMode::random;
    } else {
        throw std::invalid_argument("volume_mode must be constant or random");
    }
    if (j.contains("value_range")) {
        spec.value_min = j.at("value_range").at(0).get<double>();
        spec.value_max = j.at("value_range").at(1).get<double>();
    }
    if (j.contains("volume_range")) {
        spec.volume_min = j.at("volume_range").at(0).get<double>();
        spec.volume_max = j.at("volume_range").at(1).get<double>();
    }
    validate(spec);
    return spec;
}

std::string to_json(const SyntheticSpec& spec) {
    nlohmann::ordered_json j;
    j["securities"] = spec.securities;
    j["ticks"] = spec.ticks;
    j["seed"] = spec.seed;
    j["volume_mode"] = spec.volume_mode == SyntheticSpec::VolumeMode::constant
                           ? "constant"
                           : "random";
    j["value_range"] = {spec.value_min, spec.value_max};
    j["volume_range"] = {spec.volume_min, spec.volume_max};
    return j.dump(2) + "\n";
}

} // namespace mbps

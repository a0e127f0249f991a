#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mbps/portfolio.hpp"

namespace mbps {

/// Configuration of the randomized identity campaign. Instances are seeded
/// independently from `seed`, so the campaign is deterministic and the
/// instances could be evaluated in any order.
struct CampaignConfig {
    enum class VolumeFamily {
        random_only,   ///< volumes drawn per tick
        constant_only, ///< one volume per security, held over the window
        mixed          ///< alternate between the two families
    };

    std::size_t instances = 100;
    std::uint64_t seed = 0;
    std::size_t min_securities = 1;
    std::size_t max_securities = 5;
    std::size_t min_ticks = 1;
    std::size_t max_ticks = 64;
    double value_min = 0.1;
    double value_max = 10.0;
    double volume_min = 0.1;
    double volume_max = 10.0;
    VolumeFamily family = VolumeFamily::mixed;
    double identity_tol = 1e-10;  ///< quartic decomposition identities
    double dual_path_tol = 1e-12; ///< simple dual-path identities
    /// Negative control: evaluates the decomposition identities with the
    /// sign of the cubic term flipped; the campaign must then fail.
    bool inject_sign_flip = false;
};

/// One identity evaluated along two routes.
struct IdentityCheck {
    std::string name;
    double main_value = 0.0;
    double oracle_value = 0.0;
    double error = 0.0; ///< relative error between the two routes
    double tolerance = 0.0;
    bool pass = false;
};

/// Outcome of all identity checks on one random instance.
struct OracleReport {
    std::size_t instance_index = 0;
    std::size_t securities = 0;
    std::size_t ticks = 0;
    std::uint64_t seed = 0;
    bool constant_volume = false;
    bool sigma_not_psd = false; ///< informational, never a failure
    std::vector<IdentityCheck> checks;
    bool pass = true;
};

/// Random test instance: aligned trade series plus a portfolio over them.
struct RandomInstance {
    std::vector<TradeSeries> series;
    Portfolio portfolio;
    bool constant_volume = false;
};

/// Deterministic instance generator. Values (and per-tick volumes, unless
/// constant_volume) are uniform in the configured ranges; holdings reuse the
/// volume range and composition prices the attainable price range.
RandomInstance make_random_instance(std::uint64_t seed,
                                    std::size_t securities, std::size_t ticks,
                                    double value_min, double value_max,
                                    double volume_min, double volume_max,
                                    bool constant_volume);

/// Runs every dual-path and oracle identity on one instance.
OracleReport run_identity_checks(const RandomInstance& instance,
                                 std::size_t index, std::uint64_t seed,
                                 double identity_tol, double dual_path_tol,
                                 bool inject_sign_flip = false);

/// Generates `config.instances` random instances and checks them all.
/// Results are deterministic given the config; failures are recorded in the
/// reports rather than thrown.
std::vector<OracleReport> randomized_identity_campaign(
    const CampaignConfig& config);

struct CheckSummary {
    std::string name;
    std::size_t count = 0;
    std::size_t failures = 0;
    double worst_error = 0.0;
};

struct CampaignSummary {
    std::size_t instances = 0;
    std::size_t failed_instances = 0;
    std::size_t non_psd_instances = 0;
    std::vector<CheckSummary> checks;
    bool pass = true;
};

CampaignSummary summarize(std::span<const OracleReport> reports);

/// Serializes config, per-instance reports, and summary; key order is fixed
/// so identical runs produce identical bytes.
std::string campaign_report_json(const CampaignConfig& config,
                                 std::span<const OracleReport> reports);

} // namespace mbps

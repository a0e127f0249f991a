#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mbps/analysis.hpp"
#include "mbps/campaign.hpp"
#include "mbps/csv_io.hpp"
#include "mbps/numeric.hpp"
#include "mbps/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitVerificationFailure = 2;

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << text;
}

int run_analyze(const std::string& trades, const std::string& portfolio,
                const std::string& out_path, const std::string& format,
                std::size_t window, double identity_tol, double dual_tol,
                double liquidity_factor) {
    mbps::AnalysisConfig config;
    config.trades_path = trades;
    config.portfolio_path = portfolio;
    config.expected_ticks = window;
    config.format = format == "csv" ? mbps::AnalysisConfig::Format::csv
                                    : mbps::AnalysisConfig::Format::json;
    config.identity_tol = identity_tol;
    config.dual_path_tol = dual_tol;
    config.liquidity_warn_factor = liquidity_factor;

    const mbps::AnalysisReport report = mbps::analyze(config);
    write_output(mbps::serialize(report, config.format), out_path);
    for (const std::string& warning : report.warnings) {
        std::cerr << "warning: " << warning << '\n';
    }
    if (!report.pass) {
        std::cerr << "identity cross-checks FAILED\n";
        return kExitVerificationFailure;
    }
    return kExitOk;
}

int run_generate(const std::string& spec_path, const std::string& out_path,
                 const std::string& portfolio_out, std::uint64_t seed,
                 bool seed_given) {
    std::ifstream in(spec_path);
    if (!in) {
        throw std::runtime_error("cannot open " + spec_path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    mbps::SyntheticSpec spec = mbps::parse_synthetic_spec(buffer.str());
    if (seed_given) {
        spec.seed = seed;
    }

    const mbps::SyntheticData data =
        mbps::generate_synthetic_with_portfolio(spec);
    if (out_path.empty()) {
        std::ostringstream out;
        mbps::write_trades_csv(out, data.series);
        std::cout << out.str();
    } else {
        mbps::write_trades_csv(std::filesystem::path(out_path), data.series);
    }
    if (!portfolio_out.empty()) {
        mbps::write_portfolio_csv(std::filesystem::path(portfolio_out),
                                  data.holdings);
    }
    return kExitOk;
}

int run_verify(const mbps::CampaignConfig& config,
               const std::string& out_path) {
    const auto reports = mbps::randomized_identity_campaign(config);
    const mbps::CampaignSummary summary = mbps::summarize(reports);

    std::printf("verification campaign: %zu instances, seed %llu\n",
                summary.instances,
                static_cast<unsigned long long>(config.seed));
    for (const mbps::CheckSummary& check : summary.checks) {
        std::printf("  %-62s  runs %4zu  failures %zu  worst %.3e\n",
                    check.name.c_str(), check.count, check.failures,
                    check.worst_error);
    }
    if (summary.non_psd_instances > 0) {
        std::printf("note: %zu instance(s) with a non-PSD price covariance "
                    "matrix (reported, not a failure)\n",
                    summary.non_psd_instances);
    }
    std::printf("verification %s (%zu of %zu instances failed)\n",
                summary.pass ? "PASSED" : "FAILED", summary.failed_instances,
                summary.instances);

    if (!out_path.empty()) {
        write_output(mbps::campaign_report_json(config, reports), out_path);
    }
    return summary.pass ? kExitOk : kExitVerificationFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "market-based portfolio statistics: volume-weighted moments, "
        "portfolio aggregation, and the quartic variance decomposition"};
    app.require_subcommand(1);

    // analyze
    std::string trades_path;
    std::string portfolio_path;
    std::string analyze_out;
    std::string format = "json";
    std::size_t window = 0;
    double identity_tol = 1e-10;
    double dual_tol = 1e-12;
    double liquidity_factor = 10.0;
    auto* analyze = app.add_subcommand(
        "analyze", "analyze a portfolio over a trade series file");
    analyze->add_option("--trades", trades_path, "trade CSV file")
        ->required();
    analyze->add_option("--portfolio", portfolio_path, "portfolio CSV file")
        ->required();
    analyze->add_option("--out", analyze_out,
                        "output file (default: stdout)");
    analyze->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    analyze->add_option("--window", window,
                        "expected tick count (0 = accept input)");
    analyze->add_option("--identity-tol", identity_tol,
                        "tolerance for decomposition identities");
    analyze->add_option("--dual-tol", dual_tol,
                        "tolerance for dual-path identities");
    analyze->add_option("--liquidity-factor", liquidity_factor,
                        "warn when traded volume < factor x holding");

    // generate
    std::string spec_path;
    std::string generate_out;
    std::string portfolio_out;
    std::uint64_t generate_seed = 0;
    auto* generate = app.add_subcommand(
        "generate", "generate a synthetic trade series CSV");
    generate->add_option("--spec", spec_path, "synthetic spec JSON file")
        ->required();
    generate->add_option("--out", generate_out,
                         "trade CSV output (default: stdout)");
    generate->add_option("--portfolio-out", portfolio_out,
                         "also write a matching portfolio CSV");
    auto* generate_seed_opt =
        generate->add_option("--seed", generate_seed,
                             "override the seed in the spec")
            ->envname("MBPS_SEED");

    // verify
    mbps::CampaignConfig campaign;
    std::string verify_out;
    std::string family = "mixed";
    auto* verify = app.add_subcommand(
        "verify", "run the randomized identity campaign");
    verify->add_option("--instances", campaign.instances,
                       "number of random instances");
    verify->add_option("--seed", campaign.seed, "campaign seed")
        ->envname("MBPS_SEED");
    verify->add_option("--max-j", campaign.max_securities,
                       "largest portfolio size");
    verify->add_option("--max-n", campaign.max_ticks,
                       "largest window tick count");
    verify->add_option("--min-j", campaign.min_securities,
                       "smallest portfolio size");
    verify->add_option("--min-n", campaign.min_ticks,
                       "smallest window tick count");
    verify->add_option("--family", family, "volume family")
        ->check(CLI::IsMember({"random", "constant", "mixed"}));
    verify->add_option("--out", verify_out, "write the full JSON report");
    verify->add_flag("--negative-control", campaign.inject_sign_flip,
                     "flip a sign in the decomposition; the campaign "
                     "must fail and exit 2");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            return run_analyze(trades_path, portfolio_path, analyze_out,
                               format, window, identity_tol, dual_tol,
                               liquidity_factor);
        }
        if (generate->parsed()) {
            // count() covers both the flag and the MBPS_SEED fallback
            return run_generate(spec_path, generate_out, portfolio_out,
                                generate_seed, generate_seed_opt->count() > 0);
        }
        if (verify->parsed()) {
            campaign.family =
                family == "random"
                    ? mbps::CampaignConfig::VolumeFamily::random_only
                    : family == "constant"
                          ? mbps::CampaignConfig::VolumeFamily::constant_only
                          : mbps::CampaignConfig::VolumeFamily::mixed;
            return run_verify(campaign, verify_out);
        }
    } catch (const mbps::identity_error& e) {
        std::cerr << "identity failure: " << e.what() << '\n';
        return kExitVerificationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

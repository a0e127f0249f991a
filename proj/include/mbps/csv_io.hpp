#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mbps/portfolio.hpp"
#include "mbps/trade.hpp"

namespace mbps {

// Trade CSV schema: `security_id,tick,value,volume`. Prices are always
// derived from value/volume and are never an input column. Ticks must form
// a complete 1..N grid for every security, with the same N throughout; rows
// may arrive in any order. Numbers are written with shortest round-trip
// formatting, so export followed by ingest reproduces the doubles exactly.

std::vector<TradeSeries> ingest_csv(const std::filesystem::path& path);
std::vector<TradeSeries> ingest_csv(std::istream& in,
                                    const std::string& origin = "<stream>");

void write_trades_csv(std::ostream& out, std::span<const TradeSeries> series);
void write_trades_csv(const std::filesystem::path& path,
                      std::span<const TradeSeries> series);

// Portfolio CSV schema: `security_id,holding,price_at_t0`. Composition
// prices are explicit inputs, not inferred from the trade data.

std::vector<Holding> read_portfolio_csv(const std::filesystem::path& path);
std::vector<Holding> read_portfolio_csv(std::istream& in,
                                        const std::string& origin = "<stream>");

void write_portfolio_csv(std::ostream& out, std::span<const Holding> holdings);
void write_portfolio_csv(const std::filesystem::path& path,
                         std::span<const Holding> holdings);

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double x);

} // namespace mbps

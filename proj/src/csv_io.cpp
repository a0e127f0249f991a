#include "mbps/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mbps {

namespace {

constexpr const char* kTradeHeader = "security_id,tick,value,volume";
constexpr const char* kPortfolioHeader = "security_id,holding,price_at_t0";

[[noreturn]] void fail(const std::string& origin, std::size_t line,
                       const std::string& message) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " +
                             message);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    fields.push_back(current);
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

double parse_double(const std::string& text, const std::string& origin,
                    std::size_t line, const char* what) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() ||
        !std::isfinite(value)) {
        fail(origin, line, std::string("cannot parse ") + what + " '" + text +
                               "'");
    }
    return value;
}

std::size_t parse_tick(const std::string& text, const std::string& origin,
                       std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        fail(origin, line, "cannot parse tick '" + text +
                               "' (expects a positive integer)");
    }
    return value;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() +
                                 " for writing");
    }
    return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return in;
}

} // namespace

std::string format_double(double x) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
    if (ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buffer, ptr);
}

std::vector<TradeSeries> ingest_csv(std::istream& in,
                                    const std::string& origin) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != kTradeHeader) {
        fail(origin, 1, std::string("expected header '") + kTradeHeader + "'");
    }

    struct Row {
        double value;
        double volume;
    };
    std::vector<std::string> order; // first-appearance order of securities
    std::map<std::string, std::map<std::size_t, Row>> by_security;
    std::size_t max_tick = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 4) {
            fail(origin, line_no, "expected 4 fields, got " +
                                      std::to_string(fields.size()));
        }
        const std::string& id = fields[0];
        if (id.empty()) {
            fail(origin, line_no, "empty security id");
        }
        const std::size_t tick = parse_tick(fields[1], origin, line_no);
        const double value = parse_double(fields[2], origin, line_no, "value");
        const double volume =
            parse_double(fields[3], origin, line_no, "volume");
        if (!(value > 0.0)) {
            fail(origin, line_no, "nonpositive value for " + id + " tick " +
                                      std::to_string(tick));
        }
        if (!(volume > 0.0)) {
            fail(origin, line_no, "nonpositive volume for " + id + " tick " +
                                      std::to_string(tick));
        }
        auto [it, inserted] = by_security.try_emplace(id);
        if (inserted) {
            order.push_back(id);
        }
        if (!it->second.emplace(tick, Row{value, volume}).second) {
            fail(origin, line_no, "duplicate tick " + std::to_string(tick) +
                                      " for security " + id);
        }
        max_tick = std::max(max_tick, tick);
    }
    if (by_security.empty()) {
        throw std::runtime_error(origin + ": no trade rows");
    }

    // every security must cover the full 1..N grid
    std::string gaps;
    for (const std::string& id : order) {
        const auto& rows = by_security.at(id);
        for (std::size_t tick = 1; tick <= max_tick; ++tick) {
            if (!rows.contains(tick)) {
                if (!gaps.empty()) {
                    gaps += ", ";
                }
                gaps += id + ":" + std::to_string(tick);
            }
        }
    }
    if (!gaps.empty()) {
        throw std::runtime_error(origin + ": unaligned grid, missing " + gaps);
    }

    const AveragingWindow window("", max_tick, 1.0);
    std::vector<TradeSeries> series;
    series.reserve(order.size());
    for (const std::string& id : order) {
        const auto& rows = by_security.at(id);
        std::vector<double> values;
        std::vector<double> volumes;
        values.reserve(max_tick);
        volumes.reserve(max_tick);
        for (std::size_t tick = 1; tick <= max_tick; ++tick) {
            values.push_back(rows.at(tick).value);
            volumes.push_back(rows.at(tick).volume);
        }
        series.emplace_back(id, window, std::move(values), std::move(volumes));
    }
    return series;
}

std::vector<TradeSeries> ingest_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return ingest_csv(in, path.string());
}

void write_trades_csv(std::ostream& out, std::span<const TradeSeries> series) {
    out << kTradeHeader << '\n';
    for (const TradeSeries& s : series) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            out << s.security_id() << ',' << i + 1 << ','
                << format_double(s.value(i)) << ','
                << format_double(s.volume(i)) << '\n';
        }
    }
}

void write_trades_csv(const std::filesystem::path& path,
                      std::span<const TradeSeries> series) {
    auto out = open_output(path);
    write_trades_csv(out, series);
}

std::vector<Holding> read_portfolio_csv(std::istream& in,
                                        const std::string& origin) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != kPortfolioHeader) {
        fail(origin, 1,
             std::string("expected header '") + kPortfolioHeader + "'");
    }
    std::vector<Holding> holdings;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 3) {
            fail(origin, line_no, "expected 3 fields, got " +
                                      std::to_string(fields.size()));
        }
        if (fields[0].empty()) {
            fail(origin, line_no, "empty security id");
        }
        const double shares =
            parse_double(fields[1], origin, line_no, "holding");
        const double price =
            parse_double(fields[2], origin, line_no, "price_at_t0");
        if (!(shares > 0.0)) {
            fail(origin, line_no, "nonpositive holding for " + fields[0]);
        }
        if (!(price > 0.0)) {
            fail(origin, line_no, "nonpositive price_at_t0 for " + fields[0]);
        }
        for (const Holding& h : holdings) {
            if (h.security_id == fields[0]) {
                fail(origin, line_no, "duplicate security " + fields[0]);
            }
        }
        holdings.push_back(Holding{fields[0], shares, price});
    }
    if (holdings.empty()) {
        throw std::runtime_error(origin + ": no holdings");
    }
    return holdings;
}

std::vector<Holding> read_portfolio_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_portfolio_csv(in, path.string());
}

void write_portfolio_csv(std::ostream& out,
                         std::span<const Holding> holdings) {
    out << kPortfolioHeader << '\n';
    for (const Holding& h : holdings) {
        out << h.security_id << ',' << format_double(h.shares) << ','
            << format_double(h.price_at_t0) << '\n';
    }
}

void write_portfolio_csv(const std::filesystem::path& path,
                         std::span<const Holding> holdings) {
    auto out = open_output(path);
    write_portfolio_csv(out, holdings);
}

} // namespace mbps

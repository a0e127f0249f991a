#pragma once

#include <span>
#include <string>
#include <vector>

namespace mbps {

/// Uniform grid of trade ticks around a nominal center time. Tick times are
/// abstract indices 1..tick_count; the only physical quantity is the window
/// length tick_count * tick_spacing. All series statistics are taken over
/// exactly these ticks.
struct AveragingWindow {
    std::string label;          ///< opaque tag for the window center
    std::size_t tick_count = 0; ///< number of ticks inside the window
    double tick_spacing = 1.0;  ///< uniform spacing between ticks

    AveragingWindow(std::string label, std::size_t tick_count,
                    double tick_spacing = 1.0);

    double length() const {
        return static_cast<double>(tick_count) * tick_spacing;
    }

    bool operator==(const AveragingWindow&) const = default;
};

/// One market trade: value paid and number of shares exchanged. The price is
/// always the ratio value/volume and is never stored independently, so the
/// trade equation holds by construction.
class TradeTick {
public:
    TradeTick(double value, double volume);

    double value() const { return value_; }
    double volume() const { return volume_; }
    double price() const { return value_ / volume_; }

private:
    double value_;
    double volume_;
};

/// Aligned trade series of one security over an averaging window, stored as
/// parallel value/volume arrays. Immutable after construction; every volume
/// is strictly positive and the series length matches the window.
class TradeSeries {
public:
    TradeSeries(std::string security_id, AveragingWindow window,
                std::vector<double> values, std::vector<double> volumes);
    TradeSeries(std::string security_id, AveragingWindow window,
                std::span<const TradeTick> ticks);

    const std::string& security_id() const { return security_id_; }
    const AveragingWindow& window() const { return window_; }
    std::size_t size() const { return values_.size(); }

    std::span<const double> values() const { return values_; }
    std::span<const double> volumes() const { return volumes_; }

    double value(std::size_t i) const { return values_[i]; }
    double volume(std::size_t i) const { return volumes_[i]; }
    double price(std::size_t i) const { return values_[i] / volumes_[i]; }
    std::vector<double> prices() const;

private:
    std::string security_id_;
    AveragingWindow window_;
    std::vector<double> values_;
    std::vector<double> volumes_;
};

enum class Field { value, volume };

/// n-th raw statistical moment (1/N) sum field(t_i)^n, population convention.
double raw_moment(const TradeSeries& series, Field field, int order);

/// Sum of the field over the window; equals N * raw_moment(series, field, 1).
double total(const TradeSeries& series, Field field);

/// Multiplies every value and volume by `scale`, leaving all derived prices
/// unchanged. The statistical properties of the price are scale-invariant.
TradeSeries rescale(const TradeSeries& series, double scale);

// Population statistics over plain sequences (divide by N, never N-1).
double mean(std::span<const double> xs);
double covariance(std::span<const double> a, std::span<const double> b);
double variance(std::span<const double> xs);

bool same_window(const TradeSeries& a, const TradeSeries& b);
void require_same_window(const TradeSeries& a, const TradeSeries& b);

} // namespace mbps

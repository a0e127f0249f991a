#include "mbps/trade.hpp"

#include <cmath>
#include <stdexcept>

namespace mbps {

namespace {

void require_finite(double x, const char* what, std::size_t index) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("tick " + std::to_string(index + 1) +
                                    ": non-finite " + what);
    }
}

double ipow(double x, int n) {
    double result = 1.0;
    for (int i = 0; i < n; ++i) {
        result *= x;
    }
    return result;
}

} // namespace

AveragingWindow::AveragingWindow(std::string label, std::size_t tick_count,
                                 double tick_spacing)
    : label(std::move(label)), tick_count(tick_count),
      tick_spacing(tick_spacing) {
    if (tick_count == 0) {
        throw std::invalid_argument("empty window");
    }
    if (!(tick_spacing > 0.0) || !std::isfinite(tick_spacing)) {
        throw std::invalid_argument("tick spacing must be positive");
    }
}

TradeTick::TradeTick(double value, double volume)
    : value_(value), volume_(volume) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("non-finite trade value");
    }
    if (!(volume > 0.0) || !std::isfinite(volume)) {
        throw std::invalid_argument("trade volume must be strictly positive");
    }
}

TradeSeries::TradeSeries(std::string security_id, AveragingWindow window,
                         std::vector<double> values,
                         std::vector<double> volumes)
    : security_id_(std::move(security_id)), window_(std::move(window)),
      values_(std::move(values)), volumes_(std::move(volumes)) {
    if (values_.size() != volumes_.size()) {
        throw std::invalid_argument("value/volume length mismatch");
    }
    if (values_.size() != window_.tick_count) {
        throw std::invalid_argument(
            "series for " + security_id_ + " has " +
            std::to_string(values_.size()) + " ticks, window expects " +
            std::to_string(window_.tick_count));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        require_finite(values_[i], "value", i);
        require_finite(volumes_[i], "volume", i);
        if (!(volumes_[i] > 0.0)) {
            throw std::invalid_argument("tick " + std::to_string(i + 1) +
                                        ": nonpositive volume");
        }
    }
}

TradeSeries::TradeSeries(std::string security_id, AveragingWindow window,
                         std::span<const TradeTick> ticks)
    : TradeSeries(std::move(security_id), std::move(window),
                  [&] {
                      std::vector<double> v;
                      v.reserve(ticks.size());
                      for (const auto& t : ticks) v.push_back(t.value());
                      return v;
                  }(),
                  [&] {
                      std::vector<double> v;
                      v.reserve(ticks.size());
                      for (const auto& t : ticks) v.push_back(t.volume());
                      return v;
                  }()) {}

std::vector<double> TradeSeries::prices() const {
    std::vector<double> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out.push_back(values_[i] / volumes_[i]);
    }
    return out;
}

double raw_moment(const TradeSeries& series, Field field, int order) {
    if (order < 1) {
        throw std::invalid_argument("moment order must be >= 1");
    }
    if (series.size() == 0) {
        throw std::invalid_argument("empty window");
    }
    const auto xs =
        field == Field::value ? series.values() : series.volumes();
    double sum = 0.0;
    for (double x : xs) {
        sum += ipow(x, order);
    }
    return sum / static_cast<double>(xs.size());
}

double total(const TradeSeries& series, Field field) {
    const auto xs =
        field == Field::value ? series.values() : series.volumes();
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    return sum;
}

TradeSeries rescale(const TradeSeries& series, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("invalid scale");
    }
    std::vector<double> values(series.values().begin(), series.values().end());
    std::vector<double> volumes(series.volumes().begin(),
                                series.volumes().end());
    for (auto& v : values) v *= scale;
    for (auto& v : volumes) v *= scale;
    return TradeSeries(series.security_id(), series.window(),
                       std::move(values), std::move(volumes));
}

double mean(std::span<const double> xs) {
    if (xs.empty()) {
        throw std::invalid_argument("empty sequence");
    }
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    return sum / static_cast<double>(xs.size());
}

double covariance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("length mismatch");
    }
    const double ma = mean(a);
    const double mb = mean(b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += (a[i] - ma) * (b[i] - mb);
    }
    return sum / static_cast<double>(a.size());
}

double variance(std::span<const double> xs) { return covariance(xs, xs); }

bool same_window(const TradeSeries& a, const TradeSeries& b) {
    return a.window() == b.window();
}

void require_same_window(const TradeSeries& a, const TradeSeries& b) {
    if (!same_window(a, b)) {
        throw std::invalid_argument("window mismatch between " +
                                    a.security_id() + " and " +
                                    b.security_id());
    }
}

} // namespace mbps

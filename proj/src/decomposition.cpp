#include "mbps/decomposition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mbps/numeric.hpp"
#include "mbps/security_stats.hpp"

namespace mbps {

namespace {

// The three equivalent variance routes are compared with a small absolute
// floor tied to the price scale, so degenerate near-zero variances do not
// trip the guard.
void require_consistent(double a, double b, double scale_sq,
                        const char* what) {
    const double diff = std::abs(a - b);
    if (diff <= 1e-10 * std::max(std::abs(a), std::abs(b)) ||
        diff <= 1e-14 * scale_sq) {
        return;
    }
    throw identity_error(std::string(what) + " routes disagree: " +
                         std::to_string(a) + " vs " + std::to_string(b));
}

void require_dimension(std::size_t got, std::size_t expected,
                       const char* what) {
    if (got != expected) {
        throw std::invalid_argument(std::string(what) + " count mismatch: " +
                                    std::to_string(got) + " given, " +
                                    std::to_string(expected) + " expected");
    }
}

struct AggregateMoments {
    double mean_value = 0.0;    // Q(t;1)
    double mean_volume = 0.0;   // W(t;1)
    double second_volume = 0.0; // W(t;2)
    double value_variance = 0.0;
    double volume_variance = 0.0;
    double value_volume_cov = 0.0;
    double mean_price = 0.0;    // s(t)
    double value_cv_sq = 0.0;
    double volume_cv_sq = 0.0;
    double value_volume_ncov = 0.0;
};

AggregateMoments aggregate_moments(const PortfolioSeries& ps) {
    const auto q = ps.aggregate_values();
    const auto w = ps.aggregate_volumes();
    AggregateMoments m;
    m.mean_value = mean(q);
    m.mean_volume = mean(w);
    m.second_volume = raw_moment(ps.aggregate_series(), Field::volume, 2);
    m.value_variance = variance(q);
    m.volume_variance = variance(w);
    m.value_volume_cov = covariance(q, w);
    m.mean_price = portfolio_mean_price(ps);
    m.value_cv_sq = m.value_variance / (m.mean_value * m.mean_value);
    m.volume_cv_sq = m.volume_variance / (m.mean_volume * m.mean_volume);
    m.value_volume_ncov = m.value_volume_cov / (m.mean_value * m.mean_volume);
    return m;
}

double checked_price_variance(const PortfolioSeries& ps,
                              const AggregateMoments& m) {
    const double s = m.mean_price;
    const double moment_form = (m.value_variance + s * s * m.volume_variance -
                                2.0 * s * m.value_volume_cov) /
                               m.second_volume;
    const double coefficient_form =
        (m.value_cv_sq - 2.0 * m.value_volume_ncov + m.volume_cv_sq) /
        (1.0 + m.volume_cv_sq) * s * s;

    // direct weighted sum over the aggregate ticks
    const auto q = ps.aggregate_values();
    const auto w = ps.aggregate_volumes();
    double weighted = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double dev = q[i] / w[i] - s;
        weighted += dev * dev * w[i] * w[i];
    }
    weighted /= static_cast<double>(q.size());
    weighted /= m.second_volume;

    require_consistent(moment_form, coefficient_form, s * s,
                       "portfolio price variance (moment vs coefficient)");
    require_consistent(moment_form, weighted, s * s,
                       "portfolio price variance (moment vs weighted)");
    return guard_variance(moment_form, s * s);
}

// Shared evaluator for both decompositions. `value_slot` carries the
// weights attached to value-indexed positions (price x share weight, or
// mean return x value weight); `volume_slot` carries the weights attached
// to volume-indexed positions (share weights in both bases). The cubic and
// quartic sums factor into matrix contractions times powers of the linear
// form sum(value_slot), which keeps evaluation at O(J^2).
VarianceDecomposition evaluate_decomposition(
    const CoefficientMatrices& coefficients,
    std::span<const double> value_slot, std::span<const double> volume_slot,
    double volume_cv_sq, VarianceDecomposition::Basis basis) {
    const std::size_t n = value_slot.size();
    require_dimension(volume_slot.size(), n, "weight");
    require_dimension(coefficients.value_value.size(), n, "coefficient row");
    require_dimension(coefficients.value_volume.size(), n, "coefficient row");
    require_dimension(coefficients.volume_volume.size(), n, "coefficient row");

    double linear = 0.0;
    for (double a : value_slot) {
        linear += a;
    }

    double quad = 0.0;
    double cross = 0.0;
    double vol = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            quad += coefficients.value_value(j, k) * value_slot[j] *
                    value_slot[k];
            cross += coefficients.value_volume(j, k) * value_slot[j] *
                     volume_slot[k];
            vol += coefficients.volume_volume(j, k) * volume_slot[j] *
                   volume_slot[k];
        }
    }

    VarianceDecomposition d;
    d.basis = basis;
    d.quadratic = quad;
    d.cubic = -2.0 * cross * linear;
    d.quartic = vol * linear * linear;
    d.prefactor = 1.0 / (1.0 + volume_cv_sq);
    return d;
}

} // namespace

double portfolio_mean_price(const PortfolioSeries& ps) {
    double total_value = 0.0;
    for (double q : ps.aggregate_values()) {
        total_value += q;
    }
    return total_value / ps.composition_volume();
}

double mean_price_decomposition(
    const Portfolio& portfolio,
    std::span<const double> component_mean_prices) {
    require_dimension(component_mean_prices.size(),
                      portfolio.security_count(), "component mean price");
    const auto x = portfolio.share_weights();
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        s += component_mean_prices[j] * x[j];
    }
    return s;
}

double portfolio_price_variance(const PortfolioSeries& ps) {
    return checked_price_variance(ps, aggregate_moments(ps));
}

double portfolio_mean_return(const Portfolio& portfolio,
                             const PortfolioSeries& ps) {
    require_dimension(ps.security_count(), portfolio.security_count(),
                      "series");
    const double s0 = ps.composition_price();
    if (!(s0 > 0.0)) {
        throw std::invalid_argument("invalid composition price");
    }
    const double direct = portfolio_mean_price(ps) / s0;

    const auto value_weights = portfolio.value_weights();
    double decomposed = 0.0;
    for (std::size_t j = 0; j < portfolio.security_count(); ++j) {
        decomposed += mean_return(ps.normalized(j), portfolio.price_at_t0(j)) *
                      value_weights[j];
    }
    require_consistent(direct, decomposed, direct * direct,
                       "portfolio mean return");
    return direct;
}

double portfolio_return_variance(const Portfolio& portfolio,
                                 const PortfolioSeries& ps) {
    const AggregateMoments m = aggregate_moments(ps);
    const double s0 = ps.composition_price();
    const double via_price = checked_price_variance(ps, m) / (s0 * s0);

    // explicit past-value route
    const auto q = ps.aggregate_values();
    const auto w = ps.aggregate_volumes();
    std::vector<double> past;
    past.reserve(w.size());
    for (double wi : w) {
        past.push_back(s0 * wi);
    }
    const double r = portfolio_mean_return(portfolio, ps);
    const double past_var = variance(past);
    const double cov_qq0 = covariance(q, past);
    double second_past = 0.0;
    for (double q0 : past) {
        second_past += q0 * q0;
    }
    second_past /= static_cast<double>(past.size());
    const double via_past =
        (m.value_variance + r * r * past_var - 2.0 * r * cov_qq0) /
        second_past;

    require_consistent(via_price, via_past, r * r,
                       "portfolio return variance");
    return guard_variance(via_price, r * r);
}

PortfolioStats portfolio_stats(const Portfolio& portfolio,
                               const PortfolioSeries& ps) {
    const AggregateMoments m = aggregate_moments(ps);
    PortfolioStats stats;
    stats.mean_price = m.mean_price;
    stats.price_variance = checked_price_variance(ps, m);
    stats.mean_return = portfolio_mean_return(portfolio, ps);
    stats.return_variance = portfolio_return_variance(portfolio, ps);
    stats.value_variance = m.value_variance;
    stats.volume_variance = m.volume_variance;
    stats.value_volume_cov = m.value_volume_cov;
    stats.value_cv_sq = m.value_cv_sq;
    stats.volume_cv_sq = m.volume_cv_sq;
    stats.value_volume_ncov = m.value_volume_ncov;

    const double s0 = ps.composition_price();
    stats.past_values.reserve(ps.tick_count());
    for (double wi : ps.aggregate_volumes()) {
        stats.past_values.push_back(s0 * wi);
    }
    stats.past_value_variance = variance(stats.past_values);
    stats.current_past_cov =
        covariance(ps.aggregate_values(), stats.past_values);
    double second_past = 0.0;
    for (double q0 : stats.past_values) {
        second_past += q0 * q0;
    }
    stats.second_past_moment =
        second_past / static_cast<double>(stats.past_values.size());
    return stats;
}

VarianceDecomposition price_variance_decomposition(
    const Portfolio& portfolio, const CoefficientMatrices& coefficients,
    std::span<const double> component_mean_prices, double volume_cv_sq) {
    require_dimension(component_mean_prices.size(),
                      portfolio.security_count(), "component mean price");
    const auto x = portfolio.share_weights();
    std::vector<double> value_slot(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        value_slot[j] = component_mean_prices[j] * x[j];
    }
    return evaluate_decomposition(coefficients, value_slot, x, volume_cv_sq,
                                  VarianceDecomposition::Basis::price);
}

VarianceDecomposition return_variance_decomposition(
    const Portfolio& portfolio, const CoefficientMatrices& coefficients,
    std::span<const double> component_mean_returns, double volume_cv_sq) {
    require_dimension(component_mean_returns.size(),
                      portfolio.security_count(), "component mean return");
    const auto value_weights = portfolio.value_weights();
    std::vector<double> value_slot(value_weights.size());
    for (std::size_t j = 0; j < value_weights.size(); ++j) {
        value_slot[j] = component_mean_returns[j] * value_weights[j];
    }
    return evaluate_decomposition(coefficients, value_slot,
                                  portfolio.share_weights(), volume_cv_sq,
                                  VarianceDecomposition::Basis::returns);
}

double markowitz_variance(const SquareMatrix& return_covariances,
                          std::span<const double> weights) {
    require_dimension(return_covariances.size(), weights.size(),
                      "covariance row");
    if (!is_symmetric(return_covariances)) {
        throw std::invalid_argument("covariance matrix is not symmetric");
    }
    double weight_sum = 0.0;
    for (double w : weights) {
        weight_sum += w;
    }
    if (std::abs(weight_sum - 1.0) > 1e-9) {
        throw std::invalid_argument("weights must sum to one, got " +
                                    std::to_string(weight_sum));
    }
    double result = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        for (std::size_t k = 0; k < weights.size(); ++k) {
            result += return_covariances(j, k) * weights[j] * weights[k];
        }
    }
    return result;
}

double per_trade_return_components(const Portfolio& portfolio,
                                   const PortfolioSeries& ps,
                                   std::size_t tick) {
    require_dimension(ps.security_count(), portfolio.security_count(),
                      "series");
    if (tick >= ps.tick_count()) {
        throw std::out_of_range("tick index out of range");
    }
    const auto value_weights = portfolio.value_weights();
    const double total_shares = portfolio.total_volume();
    const double w_i = ps.aggregate_volumes()[tick];
    double r = 0.0;
    for (std::size_t j = 0; j < portfolio.security_count(); ++j) {
        const TradeSeries& s = ps.normalized(j);
        const double component_return =
            s.price(tick) / portfolio.price_at_t0(j);
        const double volume_correction =
            (s.volume(tick) / w_i) * (total_shares / portfolio.shares(j));
        r += component_return * value_weights[j] * volume_correction;
    }
    return r;
}

double per_trade_return_direct(const Portfolio& portfolio,
                               const PortfolioSeries& ps, std::size_t tick) {
    (void)portfolio;
    if (tick >= ps.tick_count()) {
        throw std::out_of_range("tick index out of range");
    }
    return ps.aggregate_values()[tick] /
           (ps.composition_price() * ps.aggregate_volumes()[tick]);
}

double component_volume_cv_sq(const PortfolioSeries& ps) {
    double sum = 0.0;
    for (std::size_t j = 0; j < ps.security_count(); ++j) {
        for (std::size_t k = 0; k < ps.security_count(); ++k) {
            sum += covariance(ps.normalized(j).volumes(),
                              ps.normalized(k).volumes());
        }
    }
    const double mean_volume = mean(ps.aggregate_volumes());
    return sum / (mean_volume * mean_volume);
}

} // namespace mbps

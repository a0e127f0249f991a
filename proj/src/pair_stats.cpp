#include "mbps/pair_stats.hpp"

#include <cmath>
#include <stdexcept>

#include "mbps/numeric.hpp"
#include "mbps/security_stats.hpp"

namespace mbps {

namespace {

void require_reference_prices(double p0_j, double p0_k) {
    if (!(p0_j > 0.0) || !(p0_k > 0.0) || !std::isfinite(p0_j) ||
        !std::isfinite(p0_k)) {
        throw std::invalid_argument("invalid reference price");
    }
}

double joint_moment(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += a[i] * b[i];
    }
    return sum / static_cast<double>(a.size());
}

} // namespace

double price_covariance(const TradeSeries& sj, const TradeSeries& sk) {
    require_same_window(sj, sk);
    const double pj = vwap(sj);
    const double pk = vwap(sk);
    const double cov_cc = covariance(sj.values(), sk.values());
    const double cov_cu = covariance(sj.values(), sk.volumes());
    const double cov_uc = covariance(sj.volumes(), sk.values());
    const double cov_uu = covariance(sj.volumes(), sk.volumes());
    const double u_jk = joint_moment(sj.volumes(), sk.volumes());
    // grouped as (like terms) - (cross terms); both groups are invariant
    // under exchange of the arguments, so sigma_jk == sigma_kj bit-exactly
    return ((cov_cc + pj * pk * cov_uu) - (pk * cov_cu + pj * cov_uc)) / u_jk;
}

PairCoefficients normalized_coefficients(const TradeSeries& sj,
                                         const TradeSeries& sk) {
    require_same_window(sj, sk);
    const double cj1 = mean(sj.values());
    const double ck1 = mean(sk.values());
    const double uj1 = mean(sj.volumes());
    const double uk1 = mean(sk.volumes());
    if (cj1 == 0.0 || ck1 == 0.0 || uj1 == 0.0 || uk1 == 0.0) {
        throw std::invalid_argument("degenerate normalization");
    }
    PairCoefficients c;
    c.value_value = covariance(sj.values(), sk.values()) / (cj1 * ck1);
    c.value_volume = covariance(sj.values(), sk.volumes()) / (cj1 * uk1);
    c.volume_volume = covariance(sj.volumes(), sk.volumes()) / (uj1 * uk1);
    return c;
}

double price_covariance_normalized_form(const TradeSeries& sj,
                                        const TradeSeries& sk) {
    const PairCoefficients fwd = normalized_coefficients(sj, sk);
    const PairCoefficients rev = normalized_coefficients(sk, sj);
    if (std::abs(1.0 + fwd.volume_volume) < 1e-12) {
        throw std::invalid_argument("singular joint volume moment");
    }
    const double pj = vwap(sj);
    const double pk = vwap(sk);
    const double numerator = fwd.value_value -
                             (fwd.value_volume + rev.value_volume) +
                             fwd.volume_volume;
    return numerator / (1.0 + fwd.volume_volume) * pj * pk;
}

double return_covariance(const TradeSeries& sj, const TradeSeries& sk,
                         double reference_price_j, double reference_price_k) {
    require_reference_prices(reference_price_j, reference_price_k);
    return price_covariance(sj, sk) / (reference_price_j * reference_price_k);
}

double return_covariance_past_value_form(const TradeSeries& sj,
                                         const TradeSeries& sk,
                                         double reference_price_j,
                                         double reference_price_k) {
    require_reference_prices(reference_price_j, reference_price_k);
    require_same_window(sj, sk);
    std::vector<double> past_j;
    std::vector<double> past_k;
    past_j.reserve(sj.size());
    past_k.reserve(sk.size());
    for (double u : sj.volumes()) past_j.push_back(reference_price_j * u);
    for (double u : sk.volumes()) past_k.push_back(reference_price_k * u);

    const double rj = mean_return(sj, reference_price_j);
    const double rk = mean_return(sk, reference_price_k);
    const double cov_cc = covariance(sj.values(), sk.values());
    const double cov_c0 = covariance(sj.values(), past_k);
    const double cov_0c = covariance(past_j, sk.values());
    const double cov_00 = covariance(past_j, past_k);
    const double c0_jk = joint_moment(past_j, past_k);
    return ((cov_cc + rj * rk * cov_00) - (rk * cov_c0 + rj * cov_0c)) / c0_jk;
}

double frequency_price_covariance(const TradeSeries& sj,
                                  const TradeSeries& sk) {
    require_same_window(sj, sk);
    return covariance(sj.prices(), sk.prices());
}

double frequency_return_covariance(const TradeSeries& sj,
                                   const TradeSeries& sk,
                                   double reference_price_j,
                                   double reference_price_k) {
    require_reference_prices(reference_price_j, reference_price_k);
    return frequency_price_covariance(sj, sk) /
           (reference_price_j * reference_price_k);
}

PairStats pair_stats(const TradeSeries& sj, const TradeSeries& sk,
                     double reference_price_j, double reference_price_k) {
    require_reference_prices(reference_price_j, reference_price_k);
    require_same_window(sj, sk);
    PairStats stats;
    stats.value_value_cov = covariance(sj.values(), sk.values());
    stats.value_volume_cov = covariance(sj.values(), sk.volumes());
    stats.volume_value_cov = covariance(sj.volumes(), sk.values());
    stats.volume_volume_cov = covariance(sj.volumes(), sk.volumes());
    stats.joint_volume_moment = joint_moment(sj.volumes(), sk.volumes());
    stats.coefficients = normalized_coefficients(sj, sk);
    stats.price_covariance = price_covariance(sj, sk);
    stats.return_covariance =
        stats.price_covariance / (reference_price_j * reference_price_k);
    stats.joint_past_value_moment = reference_price_j * reference_price_k *
                                    stats.joint_volume_moment;
    return stats;
}

SquareMatrix price_covariance_matrix(std::span<const TradeSeries> series) {
    SquareMatrix m(series.size());
    for (std::size_t j = 0; j < series.size(); ++j) {
        for (std::size_t k = 0; k < series.size(); ++k) {
            m(j, k) = price_covariance(series[j], series[k]);
        }
    }
    return m;
}

SquareMatrix return_covariance_matrix(
    std::span<const TradeSeries> series,
    std::span<const double> reference_prices) {
    if (series.size() != reference_prices.size()) {
        throw std::invalid_argument("reference price count mismatch");
    }
    SquareMatrix m(series.size());
    for (std::size_t j = 0; j < series.size(); ++j) {
        for (std::size_t k = 0; k < series.size(); ++k) {
            m(j, k) = return_covariance(series[j], series[k],
                                        reference_prices[j],
                                        reference_prices[k]);
        }
    }
    return m;
}

SquareMatrix frequency_return_covariance_matrix(
    std::span<const TradeSeries> series,
    std::span<const double> reference_prices) {
    if (series.size() != reference_prices.size()) {
        throw std::invalid_argument("reference price count mismatch");
    }
    SquareMatrix m(series.size());
    for (std::size_t j = 0; j < series.size(); ++j) {
        for (std::size_t k = 0; k < series.size(); ++k) {
            m(j, k) = frequency_return_covariance(series[j], series[k],
                                                  reference_prices[j],
                                                  reference_prices[k]);
        }
    }
    return m;
}

CoefficientMatrices coefficient_matrices(std::span<const TradeSeries> series) {
    const std::size_t n = series.size();
    CoefficientMatrices m{SquareMatrix(n), SquareMatrix(n), SquareMatrix(n)};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const PairCoefficients c =
                normalized_coefficients(series[j], series[k]);
            m.value_value(j, k) = c.value_value;
            m.value_volume(j, k) = c.value_volume;
            m.volume_volume(j, k) = c.volume_volume;
        }
    }
    return m;
}

} // namespace mbps

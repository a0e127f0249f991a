#pragma once

#include <span>

#include "mbps/matrix.hpp"
#include "mbps/trade.hpp"

namespace mbps {

/// Covariances of two securities' trade values and volumes, normalized to
/// unit means. All three are invariant under rescaling of either series.
/// value_volume is directional: it pairs the value of the first security
/// with the volume of the second, so swapping the arguments transposes it.
struct PairCoefficients {
    double value_value = 0.0;   ///< cov{C_j, C_k} / (C_j(t;1) C_k(t;1))
    double value_volume = 0.0;  ///< cov{C_j, U_k} / (C_j(t;1) U_k(t;1))
    double volume_volume = 0.0; ///< cov{U_j, U_k} / (U_j(t;1) U_k(t;1))
};

/// Full covariance record for an ordered pair of securities.
struct PairStats {
    double value_value_cov = 0.0;
    double value_volume_cov = 0.0; ///< cov{C_j, U_k}
    double volume_value_cov = 0.0; ///< cov{U_j, C_k}
    double volume_volume_cov = 0.0;
    double joint_volume_moment = 0.0; ///< (1/N) sum U_j(t_i) U_k(t_i)
    PairCoefficients coefficients;
    double price_covariance = 0.0;
    double return_covariance = 0.0;
    double joint_past_value_moment = 0.0; ///< (1/N) sum C0_j(t_i) C0_k(t_i)
};

/// Market-based covariance of the two price sequences, weighted by the
/// product of trade volumes. The two cross terms are grouped symmetrically
/// so that exchanging the arguments reproduces the identical value.
double price_covariance(const TradeSeries& sj, const TradeSeries& sk);

/// Coefficients normalized to unit means; requires nonzero mean values.
PairCoefficients normalized_coefficients(const TradeSeries& sj,
                                         const TradeSeries& sk);

/// Price covariance rebuilt from the normalized coefficients. The
/// directional value/volume coefficient enters once per direction; the
/// single doubled-coefficient shortcut is exact only after summing over
/// both orderings, which this form does explicitly.
double price_covariance_normalized_form(const TradeSeries& sj,
                                        const TradeSeries& sk);

/// Covariance of gross returns, price covariance divided by the two
/// reference prices.
double return_covariance(const TradeSeries& sj, const TradeSeries& sk,
                         double reference_price_j, double reference_price_k);

/// Same quantity evaluated from the explicit past-value series
/// C0(t_i) = p0 * U(t_i); a second route used by the identity checks.
double return_covariance_past_value_form(const TradeSeries& sj,
                                         const TradeSeries& sk,
                                         double reference_price_j,
                                         double reference_price_k);

double frequency_price_covariance(const TradeSeries& sj,
                                  const TradeSeries& sk);
double frequency_return_covariance(const TradeSeries& sj,
                                   const TradeSeries& sk,
                                   double reference_price_j,
                                   double reference_price_k);

PairStats pair_stats(const TradeSeries& sj, const TradeSeries& sk,
                     double reference_price_j, double reference_price_k);

// All-pairs tables over a set of aligned series. Every ordered pair is
// computed; symmetry is a checked property, not an optimization.
SquareMatrix price_covariance_matrix(std::span<const TradeSeries> series);
SquareMatrix return_covariance_matrix(std::span<const TradeSeries> series,
                                      std::span<const double> reference_prices);
SquareMatrix frequency_return_covariance_matrix(
    std::span<const TradeSeries> series,
    std::span<const double> reference_prices);

struct CoefficientMatrices {
    SquareMatrix value_value;
    SquareMatrix value_volume;
    SquareMatrix volume_volume;
};

CoefficientMatrices coefficient_matrices(std::span<const TradeSeries> series);

} // namespace mbps

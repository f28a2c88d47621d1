#ifndef RETCURVE_COND_EXTREMES_HPP_
#define RETCURVE_COND_EXTREMES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "retcurve/curves.hpp"
#include "retcurve/types.hpp"

namespace retcurve {

/// Which variable is conditioned on (taken large).
enum class CondDirection { given_x, given_y };

/// Fitted conditional tail model for one conditioning direction, on
/// Laplace margins: dependent = alpha * cond + cond^beta * Z, with the
/// empirical residual pool standing in for the distribution of Z.
struct CondExtFit {
    double alpha = 0.0;        ///< in [-1, 1]
    double beta = 0.0;         ///< < 1
    double threshold_u = 0.0;  ///< Laplace units
    std::vector<double> residuals;
    CondDirection direction = CondDirection::given_y;
    bool converged = false;
};

/// Fits (alpha, beta) by Gaussian pseudo-likelihood over exceedances of
/// the conditioning variable above its threshold_prob empirical
/// quantile (or an explicit threshold), then stores empirical
/// residuals. The Gaussian location/scale are nuisance parameters and
/// are discarded.
CondExtFit fit_conditional(const BivariateSample& laplace_sample, CondDirection direction,
                           double threshold_prob = 0.95,
                           std::optional<double> threshold = {});

struct HtCurveConfig {
    double p = 1e-3;
    int quantile_grid_size = 200;  ///< points per conditioning region
    int sim_draws = 10000;         ///< conditional simulation size per point
    double threshold_prob = 0.95;
    std::uint64_t seed = 0;
};

/// Conditional quantile level 1 - p/q used along the grid; q * (p/q) = p.
inline double conditional_level(double p, double q) { return 1.0 - p / q; }

/// Return-curve estimate from the two-direction conditional model:
/// fits both directions on Laplace margins, walks a descending grid of
/// exceedance probabilities simulating the conditional distribution at
/// each level, merges the two point sets, transforms back to
/// exponential margins and enforces curve properties.
ReturnCurve ht_curve(const BivariateSample& exp_sample, const HtCurveConfig& config);

/// Exact exponential <-> Laplace margin maps (x >= 0 on the exponential
/// side).
double exp_to_laplace(double x);
double laplace_to_exp(double z);

}  // namespace retcurve

#endif  // RETCURVE_COND_EXTREMES_HPP_

#ifndef RETCURVE_MARGINS_HPP_
#define RETCURVE_MARGINS_HPP_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "retcurve/types.hpp"

namespace retcurve {

/// Generalized Pareto tail above a fixed threshold.
struct GpdModel {
    double threshold_u = 0.0;
    double sigma = 1.0;       ///< scale, native units, > 0
    double xi = 0.0;          ///< shape
    double exceed_prob = 0.0; ///< Pr(X > threshold_u), in (0,1)

    /// Pr(X > x) for x >= threshold_u.
    double survival(double x) const;
};

/// CDF of GPD excesses: G(z) = 1 - (1 + xi z / sigma)_+^(-1/xi), z >= 0,
/// with the exponential branch taken for |xi| < 1e-6.
double gpd_excess_cdf(double z, double sigma, double xi);
double gpd_excess_quantile(double q, double sigma, double xi);

struct GpdFit {
    double sigma = 1.0;
    double xi = 0.0;
    double loglik = 0.0;
    bool converged = false;
    int evaluations = 0;
};

/// Maximum-likelihood GPD fit to strictly positive excesses. Simplex
/// search over (log sigma, xi) with xi clipped to [-0.95, 5]. A
/// non-converged fit carries the best values found, flagged unreliable.
GpdFit gpd_fit(std::span<const double> excesses,
               std::optional<std::pair<double, double>> init = {});

/// Semi-parametric marginal distribution: empirical rank transform
/// below the threshold, GPD tail above it. Immutable after construction.
class MarginalModel {
  public:
    MarginalModel(std::vector<double> sorted_sample, GpdModel gpd);

    /// Fits threshold (empirical quantile at threshold_prob), GPD tail
    /// and exceedance probability from raw data.
    static MarginalModel fit(std::span<const double> data, double threshold_prob = 0.95);

    /// Rank transform below the threshold, GPD extrapolation above;
    /// continuous at the threshold, values strictly inside (0,1).
    double cdf(double x) const;

    /// Inverse of cdf: interpolated order statistics below the threshold
    /// probability, closed-form GPD inverse above.
    double quantile(double q) const;

    const GpdModel& gpd() const { return gpd_; }
    std::size_t n() const { return sorted_.size(); }
    const std::vector<double>& sorted_sample() const { return sorted_; }
    /// Rank-transform value at the threshold.
    double cdf_at_threshold() const { return 1.0 - gpd_.exceed_prob; }

  private:
    std::vector<double> sorted_;
    GpdModel gpd_;
};

namespace margin_fn {
/// Closed-form CDF of a standard margin convention (not `native`).
double cdf(Margin m, double value);
/// Closed-form quantile of a standard margin convention (not `native`).
double quantile(Margin m, double u);
}  // namespace margin_fn

/// Probability-integral transform between margin conventions. `native`
/// endpoints require the corresponding fitted model.
double convert_margin(double value, Margin from, Margin to,
                      const MarginalModel* model = nullptr);

}  // namespace retcurve

#endif  // RETCURVE_MARGINS_HPP_

#ifndef RETCURVE_ANGULAR_DEPENDENCE_HPP_
#define RETCURVE_ANGULAR_DEPENDENCE_HPP_

#include <optional>
#include <span>
#include <vector>

#include "retcurve/curves.hpp"
#include "retcurve/types.hpp"

namespace retcurve {

/// Pointwise estimate of the angular dependence function on a ray grid.
/// `rays` holds the full equally spaced grid on [0,1]; estimates cover
/// the interior rays only (endpoints are supplied exactly by the curve
/// boundary points). lambda_hat is kept at or above the theoretical
/// lower bound max(w, 1-w).
struct AdfEstimate {
    std::vector<double> rays;        ///< full grid, size num_rays
    std::vector<double> lambda_hat;  ///< per interior ray, size num_rays - 2
    std::vector<double> thresholds;  ///< per interior ray, size num_rays - 2
    double hill_threshold_prob = 0.95;
    double pstar = 0.05;
};

/// Reciprocal mean excess of t above u: the Hill-type tail-rate
/// estimator on the exponential scale.
double hill_rate(std::span<const double> t, double u);

/// Symmetric equally spaced ray grid on [0,1]; entry N-1-j is exactly
/// 1 - entry j, so relabeling (x,y) with w -> 1-w is an exact symmetry
/// of the estimator.
std::vector<double> ray_grid(int num_rays);

AdfEstimate adf_estimate(const BivariateSample& exp_sample, int num_rays = 151,
                         double hill_threshold_prob = 0.95);

/// Coefficient of tail dependence: 1 / (2 lambda(0.5)). Requires the
/// ray 0.5 on the grid (odd num_rays).
double adf_to_eta(const AdfEstimate& adf);

/// Return-curve estimate via ray-wise tail extrapolation: for each
/// interior ray, u = empirical (1-pstar) quantile of the min-projection
/// variable, t = -log(p/pstar)/lambda_hat(w), point (w(t+u), (1-w)(t+u));
/// boundary points appended and properties enforced. pstar defaults to
/// 1 - hill_threshold_prob so the extrapolation base coincides with the
/// estimation threshold.
ReturnCurve wt_curve(const BivariateSample& exp_sample, double p, int num_rays = 151,
                     double hill_threshold_prob = 0.95,
                     std::optional<double> pstar = {});

}  // namespace retcurve

#endif  // RETCURVE_ANGULAR_DEPENDENCE_HPP_

#ifndef RETCURVE_INFERENCE_HPP_
#define RETCURVE_INFERENCE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "retcurve/curves.hpp"
#include "retcurve/types.hpp"

namespace retcurve {

/// Bootstrap scheme. `iid` draws n points with replacement; `block`
/// concatenates uniformly chosen contiguous blocks (no wrap-around) and
/// truncates to n, preserving short-range temporal dependence;
/// `identity` returns the sample unchanged (debug / zero-width bands).
struct Resampler {
    enum class Mode { iid, block, identity };
    Mode mode = Mode::iid;
    int block_size = 1;
    std::uint64_t seed = 0;
    int K = 200;  ///< replicates
};

BivariateSample resample(const BivariateSample& sample, const Resampler& resampler,
                         int replicate);

/// Re-estimates a curve on one bootstrap replicate. The replicate seed
/// is derived from the resampler seed and replicate index; estimators
/// with internal simulation should consume it.
using CurveEstimator =
    std::function<ReturnCurve(const BivariateSample& replicate_sample,
                              std::uint64_t replicate_seed)>;

/// Angle-indexed bootstrap summary of curve estimates: the K x m matrix
/// of ray norms plus per-angle quantile/mean reductions mapped back to
/// coordinates along each ray.
struct BootstrapCurveSummary {
    AngleGrid grid;
    double level = 0.95;
    std::vector<std::vector<double>> norms;  ///< K rows, m columns
    std::vector<double> d_median, d_mean, d_lower, d_upper;
    std::vector<Point> median_curve, mean_curve, lower_curve, upper_curve;
    int failed_replicates = 0;
};

/// Runs the estimator on K bootstrap replicates, intersects every ray
/// of the grid, and reduces the norms per angle. Replicates that fail
/// to estimate are dropped and counted; more than 10% failures aborts.
BootstrapCurveSummary bootstrap_curve_summary(const BivariateSample& sample,
                                              const CurveEstimator& estimator,
                                              const AngleGrid& grid,
                                              const Resampler& resampler,
                                              double level = 0.95, int workers = 0);

/// Survival-region diagnostic: fixes the curve points at the grid
/// angles, then bootstraps the data and reports per-angle quantiles of
/// the empirical joint-exceedance proportions.
struct DiagnosticReport {
    AngleGrid grid;
    double p = 0.0;
    double level = 0.95;
    std::vector<double> phat_median, phat_lower, phat_upper;
    std::vector<Point> curve_points;
};

DiagnosticReport diagnostic(const BivariateSample& sample, const ReturnCurve& curve,
                            const AngleGrid& grid, const Resampler& resampler,
                            double level = 0.95, int workers = 0);

}  // namespace retcurve

#endif  // RETCURVE_INFERENCE_HPP_

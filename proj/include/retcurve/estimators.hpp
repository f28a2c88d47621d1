#ifndef RETCURVE_ESTIMATORS_HPP_
#define RETCURVE_ESTIMATORS_HPP_

#include <optional>

#include "retcurve/inference.hpp"
#include "retcurve/margins.hpp"
#include "retcurve/types.hpp"

namespace retcurve {

/// The two curve estimation methods: `ht` fits the conditional tail
/// model in both directions, `wt` extrapolates along rays from the
/// angular dependence function.
enum class CurveMethod { ht, wt };

CurveMethod curve_method_from_name(const std::string& name);
std::string curve_method_name(CurveMethod method);

struct EstimatorParams {
    // wt
    int num_rays = 151;
    double hill_threshold_prob = 0.95;
    std::optional<double> pstar = {};
    // ht
    int quantile_grid_size = 200;
    int sim_draws = 10000;
    double threshold_prob = 0.95;
};

/// Estimator on standard exponential margins.
CurveEstimator make_estimator(CurveMethod method, double p,
                              const EstimatorParams& params = {});

/// Estimator on native margins: refits both marginal models on each
/// replicate, transforms to exponential margins, estimates there and
/// maps the enforced curve back to native coordinates.
CurveEstimator make_native_estimator(CurveMethod method, double p,
                                     const EstimatorParams& params = {},
                                     double margin_threshold_prob = 0.95);

/// Forward PIT of a native sample through fitted marginal models.
BivariateSample to_exponential_margins(const BivariateSample& native,
                                       const MarginalModel& mx, const MarginalModel& my);

/// Maps an exponential-margin curve back through the marginal models.
ReturnCurve curve_to_native(const ReturnCurve& exp_curve, const MarginalModel& mx,
                            const MarginalModel& my);

}  // namespace retcurve

#endif  // RETCURVE_ESTIMATORS_HPP_

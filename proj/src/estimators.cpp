#include "retcurve/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "retcurve/angular_dependence.hpp"
#include "retcurve/cond_extremes.hpp"

namespace retcurve {

CurveMethod curve_method_from_name(const std::string& name) {
    if (name == "ht") return CurveMethod::ht;
    if (name == "wt") return CurveMethod::wt;
    throw data_error("unknown estimator '" + name + "' (expected ht or wt)");
}

std::string curve_method_name(CurveMethod method) {
    return method == CurveMethod::ht ? "ht" : "wt";
}

CurveEstimator make_estimator(CurveMethod method, double p, const EstimatorParams& params) {
    if (method == CurveMethod::wt) {
        return [p, params](const BivariateSample& sample, std::uint64_t) {
            return wt_curve(sample, p, params.num_rays, params.hill_threshold_prob,
                            params.pstar);
        };
    }
    return [p, params](const BivariateSample& sample, std::uint64_t seed) {
        HtCurveConfig config;
        config.p = p;
        config.quantile_grid_size = params.quantile_grid_size;
        config.sim_draws = params.sim_draws;
        config.threshold_prob = params.threshold_prob;
        config.seed = seed;
        return ht_curve(sample, config);
    };
}

BivariateSample to_exponential_margins(const BivariateSample& native,
                                       const MarginalModel& mx, const MarginalModel& my) {
    BivariateSample out;
    out.x.resize(native.size());
    out.y.resize(native.size());
    for (std::size_t i = 0; i < native.size(); ++i) {
        out.x[i] = -std::log1p(-mx.cdf(native.x[i]));
        out.y[i] = -std::log1p(-my.cdf(native.y[i]));
    }
    return out;
}

ReturnCurve curve_to_native(const ReturnCurve& exp_curve, const MarginalModel& mx,
                            const MarginalModel& my) {
    ReturnCurve native;
    native.p = exp_curve.p;
    native.margin = Margin::native;
    native.enforced = exp_curve.enforced;  // monotone maps preserve the shape
    native.points.reserve(exp_curve.points.size());
    constexpr double kEps = 1e-15;
    for (const Point& q : exp_curve.points) {
        const double ux = std::clamp(-std::expm1(-q.x), kEps, 1.0 - kEps);
        const double uy = std::clamp(-std::expm1(-q.y), kEps, 1.0 - kEps);
        native.points.push_back({mx.quantile(ux), my.quantile(uy)});
    }
    return native;
}

CurveEstimator make_native_estimator(CurveMethod method, double p,
                                     const EstimatorParams& params,
                                     double margin_threshold_prob) {
    const CurveEstimator inner = make_estimator(method, p, params);
    return [inner, margin_threshold_prob](const BivariateSample& native,
                                          std::uint64_t seed) {
        const MarginalModel mx = MarginalModel::fit(native.x, margin_threshold_prob);
        const MarginalModel my = MarginalModel::fit(native.y, margin_threshold_prob);
        const BivariateSample exp_sample = to_exponential_margins(native, mx, my);
        const ReturnCurve exp_curve = inner(exp_sample, seed);
        return curve_to_native(exp_curve, mx, my);
    };
}

}  // namespace retcurve

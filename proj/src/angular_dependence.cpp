#include "retcurve/angular_dependence.hpp"

#include <algorithm>
#include <cmath>

#include "retcurve/kernels.hpp"
#include "retcurve/stats.hpp"

namespace retcurve {

double hill_rate(std::span<const double> t, double u) {
    const kernels::ExcessStats s = kernels::excess_stats(t.data(), t.size(), u);
    if (s.count == 0) throw data_error("hill_rate: no exceedances above threshold");
    if (!(s.sum > 0.0)) throw data_error("hill_rate: zero mean excess");
    return static_cast<double>(s.count) / s.sum;
}

std::vector<double> ray_grid(int num_rays) {
    if (num_rays < 3) throw data_error("ray_grid: need at least 3 rays");
    std::vector<double> rays(static_cast<std::size_t>(num_rays));
    const auto n = static_cast<std::size_t>(num_rays);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double w = static_cast<double>(j) / static_cast<double>(num_rays - 1);
        rays[j] = w;
        rays[n - 1 - j] = 1.0 - w;
    }
    if (n % 2 == 1) rays[n / 2] = 0.5;
    return rays;
}

AdfEstimate adf_estimate(const BivariateSample& exp_sample, int num_rays,
                         double hill_threshold_prob) {
    if (exp_sample.empty()) throw data_error("adf_estimate: empty sample");
    if (!(hill_threshold_prob > 0.0 && hill_threshold_prob < 1.0)) {
        throw data_error("adf_estimate: threshold probability outside (0,1)");
    }
    const std::vector<double> rays = ray_grid(num_rays);
    const std::size_t n = exp_sample.size();
    const std::size_t interior = rays.size() - 2;

    AdfEstimate adf;
    adf.rays = rays;
    adf.hill_threshold_prob = hill_threshold_prob;
    adf.pstar = 1.0 - hill_threshold_prob;
    adf.lambda_hat.resize(interior);
    adf.thresholds.resize(interior);

    std::vector<double> t(n);
    for (std::size_t j = 1; j + 1 < rays.size(); ++j) {
        const double w = rays[j];
        const double wc = rays[rays.size() - 1 - j];  // exactly 1 - w on this grid
        kernels::min_scaled(exp_sample.x.data(), exp_sample.y.data(), n, 1.0 / w,
                            1.0 / wc, t.data());
        const double u = quantile_inplace(t, hill_threshold_prob);
        // the excess sum is invariant to the nth_element reordering
        const kernels::ExcessStats s = kernels::excess_stats(t.data(), n, u);
        if (s.count < 20) {
            throw data_error("adf_estimate: fewer than 20 exceedances at a ray");
        }
        const double lambda = static_cast<double>(s.count) / s.sum;
        adf.lambda_hat[j - 1] = std::fmax(lambda, std::fmax(w, wc));
        adf.thresholds[j - 1] = u;
    }
    return adf;
}

double adf_to_eta(const AdfEstimate& adf) {
    for (std::size_t j = 1; j + 1 < adf.rays.size(); ++j) {
        if (adf.rays[j] == 0.5) return 1.0 / (2.0 * adf.lambda_hat[j - 1]);
    }
    throw data_error("adf_to_eta: ray 0.5 not on the grid (use odd num_rays)");
}

ReturnCurve wt_curve(const BivariateSample& exp_sample, double p, int num_rays,
                     double hill_threshold_prob, std::optional<double> pstar_opt) {
    const double pstar = pstar_opt.value_or(1.0 - hill_threshold_prob);
    if (!(p > 0.0 && p < pstar)) throw data_error("wt_curve: requires p < pstar");
    const std::size_t n = exp_sample.size();
    if (static_cast<double>(n) * pstar < 20.0) {
        throw data_error("wt_curve: pstar too small for the sample size");
    }

    const AdfEstimate adf = adf_estimate(exp_sample, num_rays, hill_threshold_prob);
    const double log_ratio = std::log(p / pstar);

    ReturnCurve curve;
    curve.p = p;
    curve.margin = Margin::exponential;
    curve.points.reserve(adf.rays.size());

    const bool reuse_threshold = pstar == adf.pstar;
    std::vector<double> t(n);
    for (std::size_t j = 1; j + 1 < adf.rays.size(); ++j) {
        const double w = adf.rays[j];
        const double wc = adf.rays[adf.rays.size() - 1 - j];
        double u;
        if (reuse_threshold) {
            u = adf.thresholds[j - 1];
        } else {
            kernels::min_scaled(exp_sample.x.data(), exp_sample.y.data(), n, 1.0 / w,
                                1.0 / wc, t.data());
            u = quantile_inplace(t, 1.0 - pstar);
        }
        const double excess = -log_ratio / adf.lambda_hat[j - 1];
        const double radial = excess + u;
        curve.points.push_back({w * radial, wc * radial});
    }

    curve.enforced = false;
    return enforce_properties(std::move(curve));
}

}  // namespace retcurve

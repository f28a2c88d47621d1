#include "retcurve/cond_extremes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "retcurve/optim.hpp"
#include "retcurve/rng.hpp"
#include "retcurve/stats.hpp"

namespace retcurve {

namespace {

constexpr double kLog2 = 0.6931471805599453094;
constexpr double kBetaCap = 1.0 - 1e-6;
constexpr double kMinLogSigma = -18.0;

struct ExceedanceData {
    std::vector<double> cond;      // conditioning variable, > 0
    std::vector<double> dep;       // dependent variable
    std::vector<double> log_cond;  // cached log(cond)
    double sum_log_cond = 0.0;
};

// Negative Gaussian pseudo-log-likelihood of the working model
// dep | cond ~ N(alpha cond + mu cond^beta, (sigma cond^beta)^2),
// up to the constant n log sqrt(2 pi).
double cond_negloglik(const ExceedanceData& d, double alpha, double beta, double mu,
                      double log_sigma) {
    const double sigma = std::exp(std::fmax(log_sigma, kMinLogSigma));
    double acc = 0.0;
    for (std::size_t i = 0; i < d.cond.size(); ++i) {
        const double scale = std::exp(beta * d.log_cond[i]);
        const double resid = (d.dep[i] - alpha * d.cond[i] - mu * scale) / scale;
        acc += resid * resid;
    }
    const auto n = static_cast<double>(d.cond.size());
    const double value = n * std::fmax(log_sigma, kMinLogSigma) +
                         beta * d.sum_log_cond + 0.5 * acc / (sigma * sigma);
    return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
}

}  // namespace

double exp_to_laplace(double x) {
    if (!(x >= 0.0)) throw data_error("exp_to_laplace: negative exponential value");
    if (x >= kLog2) return x - kLog2;  // upper half maps by a shift, exactly
    return kLog2 + std::log1p(-std::exp(-x));
}

double laplace_to_exp(double z) {
    if (z >= 0.0) return z + kLog2;
    return -std::log1p(-0.5 * std::exp(z));
}

CondExtFit fit_conditional(const BivariateSample& laplace_sample, CondDirection direction,
                           double threshold_prob, std::optional<double> threshold) {
    if (laplace_sample.empty()) throw data_error("fit_conditional: empty sample");
    const std::vector<double>& cond_col =
        direction == CondDirection::given_y ? laplace_sample.y : laplace_sample.x;
    const std::vector<double>& dep_col =
        direction == CondDirection::given_y ? laplace_sample.x : laplace_sample.y;

    const double u = threshold ? *threshold : empirical_quantile(cond_col, threshold_prob);

    ExceedanceData d;
    for (std::size_t i = 0; i < cond_col.size(); ++i) {
        if (cond_col[i] > u) {
            d.cond.push_back(cond_col[i]);
            d.dep.push_back(dep_col[i]);
        }
    }
    if (d.cond.size() < 50) {
        throw data_error("fit_conditional: fewer than 50 threshold exceedances");
    }
    for (double c : d.cond) {
        // above the 0.95 Laplace quantile every conditioning value is
        // positive; a non-positive one means the margins are wrong
        if (!(c > 0.0)) throw data_error("fit_conditional: non-positive conditioning value");
    }
    d.log_cond.resize(d.cond.size());
    for (std::size_t i = 0; i < d.cond.size(); ++i) d.log_cond[i] = std::log(d.cond[i]);
    for (double lc : d.log_cond) d.sum_log_cond += lc;

    // unconstrained coordinates: alpha = tanh(a), beta = 1 - exp(b)
    auto objective = [&](const std::vector<double>& params) {
        const double alpha = std::tanh(params[0]);
        const double beta = 1.0 - std::exp(params[1]);
        return cond_negloglik(d, alpha, beta, params[2], params[3]);
    };

    // moment start: slope of dep on cond for alpha, mild positive beta
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < d.cond.size(); ++i) {
        sxy += d.cond[i] * d.dep[i];
        sxx += d.cond[i] * d.cond[i];
    }
    const double alpha0 = std::clamp(sxx > 0.0 ? sxy / sxx : 0.0, -0.999, 0.999);
    std::vector<double> resid0(d.cond.size());
    for (std::size_t i = 0; i < d.cond.size(); ++i) {
        resid0[i] = d.dep[i] - alpha0 * d.cond[i];
    }
    const double mu0 = mean(resid0);
    const double sd0 = std::sqrt(std::fmax(variance(resid0), 1e-6));

    const std::vector<double> start0 = {std::atanh(alpha0), std::log(1.0 - 0.2),
                                        mu0, std::log(sd0)};

    // the pseudo-likelihood can be multimodal for weak dependence; a few
    // seeded restarts around the moment start pick the best mode
    Rng restart_rng(0x8f1bbcdc5c6e9b1fULL);
    SimplexResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::vector<double> start = start0;
        if (attempt > 0) {
            start[0] += 0.8 * restart_rng.normal();
            start[1] += 0.8 * restart_rng.normal();
            start[2] += 0.5 * sd0 * restart_rng.normal();
            start[3] += 0.5 * restart_rng.normal();
        }
        SimplexResult r = nelder_mead(objective, start, {0.25, 0.25, 0.2, 0.2},
                                      {.max_evaluations = 4000,
                                       .f_tolerance = 1e-9,
                                       .x_tolerance = 1e-7});
        if (r.value < best.value) best = r;
    }
    if (!std::isfinite(best.value)) {
        throw numeric_error("fit_conditional: likelihood optimization failed");
    }

    CondExtFit fit;
    fit.direction = direction;
    fit.threshold_u = u;
    fit.alpha = std::tanh(best.x[0]);
    fit.beta = std::fmin(1.0 - std::exp(best.x[1]), kBetaCap);
    fit.converged = best.converged;
    fit.residuals.resize(d.cond.size());
    for (std::size_t i = 0; i < d.cond.size(); ++i) {
        fit.residuals[i] = (d.dep[i] - fit.alpha * d.cond[i]) /
                           std::exp(fit.beta * d.log_cond[i]);
    }
    return fit;
}

namespace {

// Simulates the dependent variable given cond > v (cond = v + E exactly,
// by the standard-Laplace upper tail) and returns the requested
// conditional quantile.
double simulated_conditional_quantile(const CondExtFit& fit, double v, double level,
                                      int draws, Rng rng) {
    const auto m = static_cast<std::size_t>(draws);
    const std::size_t n_resid = fit.residuals.size();
    std::vector<double> sims(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double cond = v + rng.exponential();
        const double z = fit.residuals[rng.below(n_resid)];
        sims[i] = fit.alpha * cond + std::exp(fit.beta * std::log(cond)) * z;
    }
    const double clamped =
        std::clamp(level, 1.0 / static_cast<double>(m + 1), 1.0 - 1e-12);
    return quantile_inplace(sims, clamped);
}

// Exceedance probability of a positive Laplace value: Pr(Z > z) = e^-z / 2.
double laplace_tail(double z) { return 0.5 * std::exp(-z); }

}  // namespace

ReturnCurve ht_curve(const BivariateSample& exp_sample, const HtCurveConfig& config) {
    if (exp_sample.size() < 500) throw data_error("ht_curve: need at least 500 points");
    if (!(config.threshold_prob > 0.5 && config.threshold_prob < 1.0)) {
        throw data_error("ht_curve: threshold_prob outside (0.5, 1)");
    }
    const double q_top = 1.0 - config.threshold_prob;
    if (!(config.p > 0.0 && config.p < q_top)) {
        throw data_error("ht_curve: requires p < 1 - threshold_prob");
    }
    if (config.quantile_grid_size < 2) {
        throw data_error("ht_curve: quantile_grid_size must be >= 2");
    }
    if (config.sim_draws < 100) throw data_error("ht_curve: sim_draws must be >= 100");

    const std::size_t n = exp_sample.size();
    BivariateSample lap;
    lap.x.resize(n);
    lap.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        lap.x[i] = exp_to_laplace(exp_sample.x[i]);
        lap.y[i] = exp_to_laplace(exp_sample.y[i]);
    }

    const int grid = config.quantile_grid_size;
    std::vector<Point> laplace_points;
    laplace_points.reserve(2 * static_cast<std::size_t>(grid));

    // region y > x: condition on Y and walk a decreasing sequence of
    // conditioning quantiles, from the p-quantile down toward the
    // threshold, until the traced points cross the diagonal
    const CondExtFit fit_y = fit_conditional(lap, CondDirection::given_y,
                                             config.threshold_prob);
    std::optional<double> x_stop;
    for (int j = 0; j < grid; ++j) {
        const double frac = static_cast<double>(j) / static_cast<double>(grid - 1);
        const double q = config.p + (q_top - config.p) * frac;
        const double y_star = -std::log(2.0 * q);
        const double x_star = simulated_conditional_quantile(
            fit_y, y_star, conditional_level(config.p, q), config.sim_draws,
            Rng::derived(config.seed, 1, static_cast<std::uint64_t>(j)));
        laplace_points.push_back({x_star, y_star});
        if (x_star >= y_star) {
            x_stop = x_star;
            break;
        }
    }

    // region y <= x: condition on X, walk from the crossing (or the X
    // threshold when the regions never met) out to the p-quantile
    const CondExtFit fit_x = fit_conditional(lap, CondDirection::given_x,
                                             config.threshold_prob);
    const double x_start = x_stop ? *x_stop : fit_x.threshold_u;
    const double q_start = std::fmin(laplace_tail(std::fmax(x_start, 0.0)), q_top);
    if (q_start > config.p) {
        for (int k = 0; k < grid; ++k) {
            const double frac = static_cast<double>(k) / static_cast<double>(grid - 1);
            const double q = q_start + (config.p - q_start) * frac;
            const double x_star = -std::log(2.0 * q);
            const double y_star = simulated_conditional_quantile(
                fit_x, x_star, conditional_level(config.p, q), config.sim_draws,
                Rng::derived(config.seed, 2, static_cast<std::uint64_t>(k)));
            laplace_points.push_back({x_star, y_star});
        }
    }

    ReturnCurve curve;
    curve.p = config.p;
    curve.margin = Margin::exponential;
    curve.points.reserve(laplace_points.size());
    for (const Point& q : laplace_points) {
        curve.points.push_back({laplace_to_exp(q.x), laplace_to_exp(q.y)});
    }
    return enforce_properties(std::move(curve));
}

}  // namespace retcurve

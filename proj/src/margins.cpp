#include "retcurve/margins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "retcurve/optim.hpp"
#include "retcurve/stats.hpp"

namespace retcurve {

namespace {

constexpr double kXiLower = -0.95;
constexpr double kXiUpper = 5.0;
constexpr double kXiExponentialBranch = 1e-6;

double clip_xi(double xi) { return std::clamp(xi, kXiLower, kXiUpper); }

double gpd_negloglik(std::span<const double> excesses, double log_sigma, double xi) {
    const double sigma = std::exp(log_sigma);
    const auto n = static_cast<double>(excesses.size());
    if (std::fabs(xi) < kXiExponentialBranch) {
        double acc = 0.0;
        for (double z : excesses) acc += z;
        return n * log_sigma + acc / sigma;
    }
    double acc = 0.0;
    for (double z : excesses) {
        const double w = xi * z / sigma;
        if (w <= -1.0) return std::numeric_limits<double>::infinity();
        acc += std::log1p(w);
    }
    return n * log_sigma + (1.0 + 1.0 / xi) * acc;
}

}  // namespace

double gpd_excess_cdf(double z, double sigma, double xi) {
    if (z <= 0.0) return 0.0;
    if (std::fabs(xi) < kXiExponentialBranch) return -std::expm1(-z / sigma);
    const double w = 1.0 + xi * z / sigma;
    if (w <= 0.0) return 1.0;  // beyond the upper bound for xi < 0
    return 1.0 - std::pow(w, -1.0 / xi);
}

double gpd_excess_quantile(double q, double sigma, double xi) {
    if (!(q >= 0.0 && q < 1.0)) throw data_error("gpd_excess_quantile: q outside [0,1)");
    if (std::fabs(xi) < kXiExponentialBranch) return -sigma * std::log1p(-q);
    return sigma / xi * (std::pow(1.0 - q, -xi) - 1.0);
}

double GpdModel::survival(double x) const {
    if (x < threshold_u) throw data_error("GpdModel::survival below threshold");
    return exceed_prob * (1.0 - gpd_excess_cdf(x - threshold_u, sigma, xi));
}

GpdFit gpd_fit(std::span<const double> excesses,
               std::optional<std::pair<double, double>> init) {
    if (excesses.empty()) throw data_error("gpd_fit: empty excess sample");
    for (double z : excesses) {
        if (!(z > 0.0)) throw data_error("gpd_fit: non-positive excess");
    }

    double sigma0, xi0;
    if (init) {
        sigma0 = init->first;
        xi0 = init->second;
    } else {
        // method-of-moments start
        const double m = mean(excesses);
        double v = excesses.size() > 1 ? variance(excesses) : m * m;
        if (!(v > 0.0)) v = m * m;
        xi0 = 0.5 * (1.0 - m * m / v);
        sigma0 = 0.5 * m * (m * m / v + 1.0);
        if (!(sigma0 > 0.0)) sigma0 = m;
    }
    xi0 = std::clamp(xi0, kXiLower + 0.05, kXiUpper - 0.1);

    auto objective = [&](const std::vector<double>& params) {
        return gpd_negloglik(excesses, params[0], clip_xi(params[1]));
    };
    SimplexResult opt =
        nelder_mead(objective, {std::log(sigma0), xi0}, {0.3, 0.2},
                    {.max_evaluations = 5000, .f_tolerance = 1e-10, .x_tolerance = 1e-8});

    GpdFit fit;
    fit.sigma = std::exp(opt.x[0]);
    fit.xi = clip_xi(opt.x[1]);
    fit.loglik = -opt.value;
    fit.converged = opt.converged && std::isfinite(opt.value);
    fit.evaluations = opt.evaluations;
    return fit;
}

MarginalModel::MarginalModel(std::vector<double> sorted_sample, GpdModel gpd)
    : sorted_(std::move(sorted_sample)), gpd_(gpd) {
    if (sorted_.empty()) throw data_error("MarginalModel: empty sample");
    if (!std::is_sorted(sorted_.begin(), sorted_.end())) {
        throw data_error("MarginalModel: sample not sorted");
    }
    if (!(gpd_.sigma > 0.0)) throw data_error("MarginalModel: sigma must be > 0");
    if (!(gpd_.exceed_prob > 0.0 && gpd_.exceed_prob < 1.0)) {
        throw data_error("MarginalModel: exceed_prob outside (0,1)");
    }
}

MarginalModel MarginalModel::fit(std::span<const double> data, double threshold_prob) {
    if (data.size() < 20) throw data_error("MarginalModel::fit: need at least 20 points");
    if (!(threshold_prob > 0.0 && threshold_prob < 1.0)) {
        throw data_error("MarginalModel::fit: threshold_prob outside (0,1)");
    }
    std::vector<double> sorted = sorted_copy(data);
    const double u = sorted_quantile(sorted, threshold_prob);

    std::vector<double> excesses;
    for (auto it = std::upper_bound(sorted.begin(), sorted.end(), u);
         it != sorted.end(); ++it) {
        excesses.push_back(*it - u);
    }
    if (excesses.size() < 5) {
        throw data_error("MarginalModel::fit: too few threshold exceedances");
    }
    const GpdFit tail = gpd_fit(excesses);

    const auto n_leq = static_cast<double>(
        std::upper_bound(sorted.begin(), sorted.end(), u) - sorted.begin());
    const double rank_at_u = n_leq / static_cast<double>(sorted.size() + 1);

    GpdModel gpd;
    gpd.threshold_u = u;
    gpd.sigma = tail.sigma;
    gpd.xi = tail.xi;
    gpd.exceed_prob = 1.0 - rank_at_u;
    return MarginalModel(std::move(sorted), gpd);
}

double MarginalModel::cdf(double x) const {
    const double np1 = static_cast<double>(sorted_.size() + 1);
    if (x <= gpd_.threshold_u) {
        const auto count = static_cast<double>(
            std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
        // keep values strictly above 0 below the sample minimum
        return std::fmax(count, 0.5) / np1;
    }
    const double tail = gpd_.exceed_prob *
                        (1.0 - gpd_excess_cdf(x - gpd_.threshold_u, gpd_.sigma, gpd_.xi));
    const double value = 1.0 - tail;
    return std::fmin(value, std::nextafter(1.0, 0.0));
}

double MarginalModel::quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) throw data_error("MarginalModel::quantile: q outside (0,1)");
    const double split = cdf_at_threshold();
    if (q <= split) return sorted_quantile(sorted_, q);
    const double g = 1.0 - (1.0 - q) / gpd_.exceed_prob;
    return gpd_.threshold_u + gpd_excess_quantile(g, gpd_.sigma, gpd_.xi);
}

namespace margin_fn {

double cdf(Margin m, double value) {
    switch (m) {
        case Margin::uniform:
            if (!(value >= 0.0 && value <= 1.0)) {
                throw data_error("uniform value outside [0,1]");
            }
            return value;
        case Margin::exponential:
            if (!(value >= 0.0)) throw data_error("exponential value negative");
            return -std::expm1(-value);
        case Margin::laplace:
            return value < 0.0 ? 0.5 * std::exp(value) : 1.0 - 0.5 * std::exp(-value);
        case Margin::frechet:
            if (!(value > 0.0)) throw data_error("frechet value not positive");
            return std::exp(-1.0 / value);
        case Margin::native:
            throw data_error("native margin requires a MarginalModel");
    }
    throw data_error("unknown margin");
}

double quantile(Margin m, double u) {
    if (!(u > 0.0 && u < 1.0)) throw data_error("probability outside (0,1)");
    switch (m) {
        case Margin::uniform:
            return u;
        case Margin::exponential:
            return -std::log1p(-u);
        case Margin::laplace:
            return u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
        case Margin::frechet:
            return -1.0 / std::log(u);
        case Margin::native:
            throw data_error("native margin requires a MarginalModel");
    }
    throw data_error("unknown margin");
}

}  // namespace margin_fn

double convert_margin(double value, Margin from, Margin to, const MarginalModel* model) {
    if (from == to) return value;
    double u;
    if (from == Margin::native) {
        if (model == nullptr) throw data_error("convert_margin: native source needs model");
        u = model->cdf(value);
    } else {
        u = margin_fn::cdf(from, value);
    }
    if (to == Margin::native) {
        if (model == nullptr) throw data_error("convert_margin: native target needs model");
        return model->quantile(u);
    }
    return margin_fn::quantile(to, u);
}

}  // namespace retcurve

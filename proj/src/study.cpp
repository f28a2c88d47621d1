#include "retcurve/study.hpp"

#include <algorithm>
#include <cmath>

#include "retcurve/rng.hpp"
#include "retcurve/stats.hpp"

namespace retcurve {

double bias_statistic(std::span<const double> true_d, std::span<const double> est_d) {
    if (true_d.size() != est_d.size()) {
        throw data_error("bias_statistic: vector length mismatch");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < true_d.size(); ++j) {
        acc += std::fabs(true_d[j] - est_d[j]);
    }
    return acc;
}

std::vector<double> default_coverage_angles() {
    return {5.0 * M_PI / 12.0, M_PI / 3.0, M_PI / 4.0, M_PI / 6.0, M_PI / 12.0};
}

namespace {

std::vector<double> oracle_norms(const CopulaSpec& copula, double p, int grid_size,
                                 const std::vector<double>& angles) {
    const ReturnCurve truth = to_return_curve(true_return_curve(copula, p, grid_size));
    std::vector<double> d(angles.size());
    for (std::size_t j = 0; j < angles.size(); ++j) {
        d[j] = intersect_ray(truth, angles[j], {0.0, 0.0}).distance;
    }
    return d;
}

}  // namespace

BiasStudyResult run_bias_study(const BiasStudyConfig& config) {
    if (config.num_samples < 1 || config.sample_size < 1) {
        throw data_error("run_bias_study: sizes must be positive");
    }
    if (!(config.p > 0.0 && config.p < 0.05)) {
        throw data_error("run_bias_study: p outside (0, 0.05)");
    }
    const AngleGrid grid = angle_grid(config.m);
    const std::vector<double> true_d =
        oracle_norms(config.copula, config.p, config.oracle_grid_size, grid.angles);

    const CurveEstimator estimator =
        config.estimator_override ? config.estimator_override
                                  : make_estimator(config.method, config.p, config.params);
    const auto S = static_cast<std::size_t>(config.num_samples);
    const auto m = static_cast<std::size_t>(config.m);

    std::vector<std::vector<double>> norms(S);
    std::vector<char> ok(S, 0);
    parallel_for(S, config.workers, [&](std::size_t i) {
        try {
            const BivariateSample sample =
                copula_sample(config.copula, static_cast<std::size_t>(config.sample_size),
                              Margin::exponential, derive_seed(config.seed, 0xda7aULL, i));
            const ReturnCurve curve =
                estimator(sample, derive_seed(config.seed, 0xc0deULL, i));
            std::vector<double> row(m);
            for (std::size_t j = 0; j < m; ++j) {
                row[j] = intersect_ray(curve, grid.angles[j], {0.0, 0.0}).distance;
            }
            norms[i] = std::move(row);
            ok[i] = 1;
        } catch (const std::exception&) {
            ok[i] = 0;
        }
    });

    BiasStudyResult result;
    result.copula = config.copula;
    result.method = config.method;
    result.p = config.p;
    result.num_samples = config.num_samples;
    result.sample_size = config.sample_size;
    result.angles = grid.angles;
    result.true_d = true_d;

    std::vector<std::vector<double>> kept;
    for (std::size_t i = 0; i < S; ++i) {
        if (ok[i]) {
            kept.push_back(std::move(norms[i]));
        } else {
            ++result.failed_datasets;
        }
    }
    if (kept.empty() || result.failed_datasets * 10 > config.num_samples) {
        throw numeric_error("run_bias_study: estimator failed on more than 10% of samples");
    }

    result.median_d.resize(m);
    std::vector<double> buf(kept.size());
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < kept.size(); ++i) buf[i] = kept[i][j];
        result.median_d[j] = empirical_quantile(buf, 0.5);
    }
    result.A = bias_statistic(result.true_d, result.median_d);
    return result;
}

CoverageStudyResult run_coverage_study(const CoverageStudyConfig& config) {
    if (config.num_samples < 1 || config.sample_size < 1 || config.K < 1) {
        throw data_error("run_coverage_study: sizes must be positive");
    }
    if (!(config.p > 0.0 && config.p < 0.05)) {
        throw data_error("run_coverage_study: p outside (0, 0.05)");
    }
    std::vector<double> angles =
        config.angles.empty() ? default_coverage_angles() : config.angles;
    if (config.copula.exchangeable() && config.angles.empty() && angles.size() == 5) {
        angles.resize(3);  // angles 4, 5 mirror 2, 1 for symmetric joint tails
    }

    const std::vector<double> true_d =
        oracle_norms(config.copula, config.p, config.oracle_grid_size, angles);

    AngleGrid grid;
    grid.m = static_cast<int>(angles.size());
    grid.angles = angles;
    grid.reference = {0.0, 0.0};

    const CurveEstimator estimator =
        config.estimator_override ? config.estimator_override
                                  : make_estimator(config.method, config.p, config.params);
    const auto S = static_cast<std::size_t>(config.num_samples);

    std::vector<std::vector<char>> hit(S);
    std::vector<char> ok(S, 0);
    parallel_for(S, config.workers, [&](std::size_t i) {
        try {
            const BivariateSample sample =
                copula_sample(config.copula, static_cast<std::size_t>(config.sample_size),
                              Margin::exponential, derive_seed(config.seed, 0xda7aULL, i));
            Resampler resampler;
            resampler.mode = Resampler::Mode::iid;
            resampler.K = config.K;
            resampler.seed = derive_seed(config.seed, 0xb007ULL, i);
            const BootstrapCurveSummary summary = bootstrap_curve_summary(
                sample, estimator, grid, resampler, config.level, /*workers=*/1);
            std::vector<char> row(angles.size());
            for (std::size_t j = 0; j < angles.size(); ++j) {
                row[j] = static_cast<char>(summary.d_lower[j] <= true_d[j] &&
                                           true_d[j] <= summary.d_upper[j]);
            }
            hit[i] = std::move(row);
            ok[i] = 1;
        } catch (const std::exception&) {
            ok[i] = 0;
        }
    });

    CoverageStudyResult result;
    result.copula = config.copula;
    result.method = config.method;
    result.p = config.p;
    result.num_samples = config.num_samples;
    result.sample_size = config.sample_size;
    result.K = config.K;
    result.angles = angles;
    result.true_d = true_d;

    std::size_t kept = 0;
    std::vector<double> counts(angles.size(), 0.0);
    for (std::size_t i = 0; i < S; ++i) {
        if (!ok[i]) {
            ++result.failed_datasets;
            continue;
        }
        ++kept;
        for (std::size_t j = 0; j < angles.size(); ++j) {
            counts[j] += static_cast<double>(hit[i][j]);
        }
    }
    if (kept == 0 || result.failed_datasets * 10 > config.num_samples) {
        throw numeric_error("run_coverage_study: estimator failed on more than 10% of samples");
    }
    result.coverage.resize(angles.size());
    for (std::size_t j = 0; j < angles.size(); ++j) {
        result.coverage[j] = counts[j] / static_cast<double>(kept);
    }
    return result;
}

}  // namespace retcurve

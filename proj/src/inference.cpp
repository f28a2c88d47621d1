#include "retcurve/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "retcurve/kernels.hpp"
#include "retcurve/rng.hpp"
#include "retcurve/stats.hpp"

namespace retcurve {

BivariateSample resample(const BivariateSample& sample, const Resampler& resampler,
                         int replicate) {
    const std::size_t n = sample.size();
    if (n == 0) throw data_error("resample: empty sample");

    if (resampler.mode == Resampler::Mode::identity) return sample;

    Rng rng = Rng::derived(resampler.seed, 0x726573616dULL,
                           static_cast<std::uint64_t>(replicate));
    BivariateSample out;
    out.x.reserve(n);
    out.y.reserve(n);

    if (resampler.mode == Resampler::Mode::iid || resampler.block_size <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = rng.below(n);
            out.push_back(sample.x[k], sample.y[k]);
        }
        return out;
    }

    const auto b = static_cast<std::size_t>(resampler.block_size);
    if (b > n) throw data_error("resample: block_size larger than sample");
    const std::size_t starts = n - b + 1;  // moving blocks, no wrap-around
    while (out.size() < n) {
        const std::size_t s = rng.below(starts);
        for (std::size_t j = 0; j < b && out.size() < n; ++j) {
            out.push_back(sample.x[s + j], sample.y[s + j]);
        }
    }
    return out;
}

namespace {

std::vector<double> column_quantiles(const std::vector<std::vector<double>>& rows,
                                     std::size_t cols, double q) {
    std::vector<double> out(cols);
    std::vector<double> buf(rows.size());
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows.size(); ++r) buf[r] = rows[r][c];
        out[c] = empirical_quantile(buf, q);
    }
    return out;
}

std::vector<Point> norms_to_points(const AngleGrid& grid, const std::vector<double>& d) {
    std::vector<Point> pts(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) {
        pts[j] = {grid.reference.x + d[j] * std::cos(grid.angles[j]),
                  grid.reference.y + d[j] * std::sin(grid.angles[j])};
    }
    return pts;
}

}  // namespace

BootstrapCurveSummary bootstrap_curve_summary(const BivariateSample& sample,
                                              const CurveEstimator& estimator,
                                              const AngleGrid& grid,
                                              const Resampler& resampler, double level,
                                              int workers) {
    if (resampler.K < 1) throw data_error("bootstrap_curve_summary: K must be >= 1");
    if (!(level > 0.0 && level < 1.0)) {
        throw data_error("bootstrap_curve_summary: level outside (0,1)");
    }
    const auto m = static_cast<std::size_t>(grid.m);
    const auto K = static_cast<std::size_t>(resampler.K);

    std::vector<std::vector<double>> norms(K);
    std::vector<char> ok(K, 0);
    parallel_for(K, workers, [&](std::size_t k) {
        try {
            const BivariateSample rep = resample(sample, resampler, static_cast<int>(k));
            const std::uint64_t rep_seed = derive_seed(resampler.seed, 0xe57ULL, k);
            const ReturnCurve curve = estimator(rep, rep_seed);
            std::vector<double> row(m);
            for (std::size_t j = 0; j < m; ++j) {
                row[j] = intersect_ray(curve, grid.angles[j], grid.reference).distance;
            }
            norms[k] = std::move(row);
            ok[k] = 1;
        } catch (const std::exception&) {
            ok[k] = 0;
        }
    });

    BootstrapCurveSummary summary;
    summary.grid = grid;
    summary.level = level;
    for (std::size_t k = 0; k < K; ++k) {
        if (ok[k]) {
            summary.norms.push_back(std::move(norms[k]));
        } else {
            ++summary.failed_replicates;
        }
    }
    if (summary.norms.empty() ||
        summary.failed_replicates * 10 > static_cast<int>(K)) {
        throw numeric_error("bootstrap_curve_summary: more than 10% of replicates failed");
    }

    const double alpha = 1.0 - level;
    summary.d_lower = column_quantiles(summary.norms, m, 0.5 * alpha);
    summary.d_median = column_quantiles(summary.norms, m, 0.5);
    summary.d_upper = column_quantiles(summary.norms, m, 1.0 - 0.5 * alpha);
    summary.d_mean.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        double acc = 0.0;
        for (const auto& row : summary.norms) acc += row[j];
        summary.d_mean[j] = acc / static_cast<double>(summary.norms.size());
    }

    summary.median_curve = norms_to_points(grid, summary.d_median);
    summary.mean_curve = norms_to_points(grid, summary.d_mean);
    summary.lower_curve = norms_to_points(grid, summary.d_lower);
    summary.upper_curve = norms_to_points(grid, summary.d_upper);
    return summary;
}

DiagnosticReport diagnostic(const BivariateSample& sample, const ReturnCurve& curve,
                            const AngleGrid& grid, const Resampler& resampler,
                            double level, int workers) {
    if (sample.empty()) throw data_error("diagnostic: empty sample");
    if (resampler.K < 1) throw data_error("diagnostic: K must be >= 1");
    const auto m = static_cast<std::size_t>(grid.m);
    const auto K = static_cast<std::size_t>(resampler.K);

    // survival-region corners fixed once from the given curve
    std::vector<Point> corners(m);
    for (std::size_t j = 0; j < m; ++j) {
        corners[j] = intersect_ray(curve, grid.angles[j], grid.reference).point;
    }

    std::vector<std::vector<double>> phat(K, std::vector<double>(m));
    parallel_for(K, workers, [&](std::size_t k) {
        const BivariateSample rep = resample(sample, resampler, static_cast<int>(k));
        const double inv_n = 1.0 / static_cast<double>(rep.size());
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t count = kernels::count_joint_gt(
                rep.x.data(), rep.y.data(), rep.size(), corners[j].x, corners[j].y);
            phat[k][j] = static_cast<double>(count) * inv_n;
        }
    });

    const double alpha = 1.0 - level;
    DiagnosticReport report;
    report.grid = grid;
    report.p = curve.p;
    report.level = level;
    report.curve_points = std::move(corners);
    report.phat_lower = column_quantiles(phat, m, 0.5 * alpha);
    report.phat_median = column_quantiles(phat, m, 0.5);
    report.phat_upper = column_quantiles(phat, m, 1.0 - 0.5 * alpha);
    return report;
}

}  // namespace retcurve

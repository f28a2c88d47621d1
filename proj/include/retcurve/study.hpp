#ifndef RETCURVE_STUDY_HPP_
#define RETCURVE_STUDY_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "retcurve/copulas.hpp"
#include "retcurve/estimators.hpp"
#include "retcurve/types.hpp"

namespace retcurve {

/// Sum over the angle grid of |d_true - d_est|: the bias summary for a
/// median curve estimate (zero iff the median curve matches the truth
/// at every grid angle).
double bias_statistic(std::span<const double> true_d, std::span<const double> est_d);

/// The five coverage angles {75, 60, 45, 30, 15} degrees, decreasing
/// clockwise from the y-axis; angles 4 and 5 mirror 2 and 1 through
/// pi/4 and only matter for non-exchangeable copulas.
std::vector<double> default_coverage_angles();

struct BiasStudyConfig {
    CopulaSpec copula;
    CurveMethod method = CurveMethod::wt;
    double p = 1e-3;
    int num_samples = 50;
    int sample_size = 10000;
    std::uint64_t seed = 0;
    int m = 150;               ///< angle-grid size for the norm comparison
    int oracle_grid_size = 600;
    EstimatorParams params;
    /// When set, used in place of the method/params estimator (e.g. an
    /// oracle for self-comparison checks).
    CurveEstimator estimator_override;
    int workers = 0;
};

struct BiasStudyResult {
    CopulaSpec copula;
    CurveMethod method;
    double p = 0.0;
    int num_samples = 0;
    int sample_size = 0;
    double A = 0.0;
    std::vector<double> angles;
    std::vector<double> true_d;
    std::vector<double> median_d;  ///< per-angle median over datasets
    int failed_datasets = 0;
};

/// Simulates num_samples datasets, estimates one curve per dataset,
/// takes the per-angle median of the ray norms and compares to the
/// oracle curve through the bias statistic.
BiasStudyResult run_bias_study(const BiasStudyConfig& config);

struct CoverageStudyConfig {
    CopulaSpec copula;
    CurveMethod method = CurveMethod::wt;
    double p = 1e-3;
    int num_samples = 100;
    int sample_size = 5000;
    int K = 100;
    std::uint64_t seed = 0;
    double level = 0.95;
    int oracle_grid_size = 600;
    std::vector<double> angles;  ///< empty = default_coverage_angles()
    EstimatorParams params;
    CurveEstimator estimator_override;
    int workers = 0;
};

struct CoverageStudyResult {
    CopulaSpec copula;
    CurveMethod method;
    double p = 0.0;
    int num_samples = 0;
    int sample_size = 0;
    int K = 0;
    std::vector<double> angles;    ///< 3 entries for exchangeable copulas
    std::vector<double> coverage;  ///< inclusion proportion per angle
    std::vector<double> true_d;
    int failed_datasets = 0;
};

/// For each simulated dataset, builds the per-angle bootstrap interval
/// of ray norms and records whether the oracle norm lies inside;
/// coverage is the inclusion proportion over datasets.
CoverageStudyResult run_coverage_study(const CoverageStudyConfig& config);

}  // namespace retcurve

#endif  // RETCURVE_STUDY_HPP_

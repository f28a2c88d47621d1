#ifndef RETCURVE_STATS_HPP_
#define RETCURVE_STATS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace retcurve {

/// Quantile of an ascending-sorted sample with linear interpolation
/// between order statistics, placing x_(i) at probability i/(n+1).
/// This is the exact inverse of the rank transform used by the
/// semi-parametric marginal model, so cdf/quantile round-trip on the
/// order statistics.
double sorted_quantile(std::span<const double> sorted, double q);

/// Quantile of an unsorted sample; copies and sorts internally.
double empirical_quantile(std::span<const double> values, double q);

/// Same quantile via nth_element on a caller-owned scratch buffer;
/// reorders the buffer. O(n) instead of O(n log n).
double quantile_inplace(std::vector<double>& values, double q);

double mean(std::span<const double> values);
double variance(std::span<const double> values);

std::vector<double> sorted_copy(std::span<const double> values);

/// Ranks of each element: count of values <= v, same tie handling as
/// the rank transform.
std::vector<std::size_t> leq_ranks(std::span<const double> values);

/// Lag-k autocorrelations for k = 1..max_lag (mean-centred, biased
/// denominator). Used to assist manual block-size selection.
std::vector<double> autocorrelations(std::span<const double> values, int max_lag);

/// Runs fn(i) for i in [0, n) on `workers` threads (0 = hardware
/// concurrency). Each task must write only to its own slot; results are
/// then independent of scheduling. Exceptions are captured and the
/// first one rethrown after all workers join.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace retcurve

#endif  // RETCURVE_STATS_HPP_

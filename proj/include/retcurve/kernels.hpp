#ifndef RETCURVE_KERNELS_HPP_
#define RETCURVE_KERNELS_HPP_

#include <cstddef>

namespace retcurve::kernels {

/// Sum and count of threshold excesses: over all t[i] > u, accumulates
/// t[i] - u. Feeds the reciprocal-mean-excess tail-rate estimator.
struct ExcessStats {
    double sum = 0.0;
    std::size_t count = 0;
};

// Dispatched entry points. The implementation is chosen once per process
// from CPU capabilities; all variants are equivalence-tested against the
// scalar reference (counts exact, sums up to accumulation order).

/// Number of i with x[i] > x0 && y[i] > y0 (joint survival-region count).
std::size_t count_joint_gt(const double* x, const double* y, std::size_t n,
                           double x0, double y0);

/// Number of i with v[i] <= bound (rank-transform count).
std::size_t count_leq(const double* v, std::size_t n, double bound);

/// out[i] = min(x[i] * ax, y[i] * ay). With ax = 1/w and ay = 1/(1-w)
/// this is the min-projection variable along ray w.
void min_scaled(const double* x, const double* y, std::size_t n, double ax,
                double ay, double* out);

ExcessStats excess_stats(const double* t, std::size_t n, double u);

/// Name of the active backend ("scalar", "avx2", "neon").
const char* backend_name();

// Reference implementations, always available; SIMD variants must agree
// with these.
namespace scalar {
std::size_t count_joint_gt(const double* x, const double* y, std::size_t n,
                           double x0, double y0);
std::size_t count_leq(const double* v, std::size_t n, double bound);
void min_scaled(const double* x, const double* y, std::size_t n, double ax,
                double ay, double* out);
ExcessStats excess_stats(const double* t, std::size_t n, double u);
}  // namespace scalar

#if defined(RETCURVE_HAVE_AVX2)
namespace avx2 {
std::size_t count_joint_gt(const double* x, const double* y, std::size_t n,
                           double x0, double y0);
std::size_t count_leq(const double* v, std::size_t n, double bound);
void min_scaled(const double* x, const double* y, std::size_t n, double ax,
                double ay, double* out);
ExcessStats excess_stats(const double* t, std::size_t n, double u);
}  // namespace avx2
#endif

#if defined(__ARM_NEON) || defined(__ARM_NEON__)
namespace neon {
std::size_t count_joint_gt(const double* x, const double* y, std::size_t n,
                           double x0, double y0);
std::size_t count_leq(const double* v, std::size_t n, double bound);
void min_scaled(const double* x, const double* y, std::size_t n, double ax,
                double ay, double* out);
ExcessStats excess_stats(const double* t, std::size_t n, double u);
}  // namespace neon
#endif

}  // namespace retcurve::kernels

#endif  // RETCURVE_KERNELS_HPP_

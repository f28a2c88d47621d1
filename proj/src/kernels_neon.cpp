// NEON variants for aarch64. Same contracts as the scalar reference;
// the equivalence suite in tests/test_kernels.cpp covers whichever
// backend is active on the build machine.

#include "retcurve/kernels.hpp"

#if defined(__ARM_NEON) || defined(__ARM_NEON__)

#include <arm_neon.h>

namespace retcurve::kernels::neon {

std::size_t count_joint_gt(const double* x, const double* y, std::size_t n,
                           double x0, double y0) {
    const std::size_t body = n & ~std::size_t{1};
    const float64x2_t vx0 = vdupq_n_f64(x0);
    const float64x2_t vy0 = vdupq_n_f64(y0);
    uint64x2_t acc = vdupq_n_u64(0);
    for (std::size_t i = 0; i < body; i += 2) {
        const uint64x2_t gx = vcgtq_f64(vld1q_f64(x + i), vx0);
        const uint64x2_t gy = vcgtq_f64(vld1q_f64(y + i), vy0);
        // true lanes are all-ones; shift to 1 before accumulating
        acc = vaddq_u64(acc, vshrq_n_u64(vandq_u64(gx, gy), 63));
    }
    std::size_t c = static_cast<std::size_t>(vgetq_lane_u64(acc, 0) +
                                             vgetq_lane_u64(acc, 1));
    for (std::size_t i = body; i < n; ++i) {
        c += static_cast<std::size_t>(x[i] > x0 && y[i] > y0);
    }
    return c;
}

std::size_t count_leq(const double* v, std::size_t n, double bound) {
    const std::size_t body = n & ~std::size_t{1};
    const float64x2_t vb = vdupq_n_f64(bound);
    uint64x2_t acc = vdupq_n_u64(0);
    for (std::size_t i = 0; i < body; i += 2) {
        const uint64x2_t le = vcleq_f64(vld1q_f64(v + i), vb);
        acc = vaddq_u64(acc, vshrq_n_u64(le, 63));
    }
    std::size_t c = static_cast<std::size_t>(vgetq_lane_u64(acc, 0) +
                                             vgetq_lane_u64(acc, 1));
    for (std::size_t i = body; i < n; ++i) {
        c += static_cast<std::size_t>(v[i] <= bound);
    }
    return c;
}

void min_scaled(const double* x, const double* y, std::size_t n, double ax,
                double ay, double* out) {
    const std::size_t body = n & ~std::size_t{1};
    const float64x2_t vax = vdupq_n_f64(ax);
    const float64x2_t vay = vdupq_n_f64(ay);
    for (std::size_t i = 0; i < body; i += 2) {
        const float64x2_t a = vmulq_f64(vld1q_f64(x + i), vax);
        const float64x2_t b = vmulq_f64(vld1q_f64(y + i), vay);
        vst1q_f64(out + i, vminq_f64(a, b));
    }
    for (std::size_t i = body; i < n; ++i) {
        const double a = x[i] * ax;
        const double b = y[i] * ay;
        out[i] = a < b ? a : b;
    }
}

ExcessStats excess_stats(const double* t, std::size_t n, double u) {
    const std::size_t body = n & ~std::size_t{1};
    const float64x2_t vu = vdupq_n_f64(u);
    float64x2_t acc = vdupq_n_f64(0.0);
    uint64x2_t cnt = vdupq_n_u64(0);
    for (std::size_t i = 0; i < body; i += 2) {
        const float64x2_t vt = vld1q_f64(t + i);
        const uint64x2_t gt = vcgtq_f64(vt, vu);
        const float64x2_t excess = vreinterpretq_f64_u64(
            vandq_u64(vreinterpretq_u64_f64(vsubq_f64(vt, vu)), gt));
        acc = vaddq_f64(acc, excess);
        cnt = vaddq_u64(cnt, vshrq_n_u64(gt, 63));
    }
    ExcessStats s;
    s.sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    s.count = static_cast<std::size_t>(vgetq_lane_u64(cnt, 0) +
                                       vgetq_lane_u64(cnt, 1));
    for (std::size_t i = body; i < n; ++i) {
        if (t[i] > u) {
            s.sum += t[i] - u;
            ++s.count;
        }
    }
    return s;
}

}  // namespace retcurve::kernels::neon

#endif  // __ARM_NEON

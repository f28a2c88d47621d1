// AVX2 variants of the streaming kernels. This translation unit is
// compiled with -mavx2 and only linked behind the runtime CPU check in
// kernels.cpp; nothing here may be called on a machine without AVX2.

#include "retcurve/kernels.hpp"

#if defined(RETCURVE_HAVE_AVX2)

#include <immintrin.h>

namespace retcurve::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

}  // namespace

std::size_t count_joint_gt(const double* x, const double* y, std::size_t n,
                           double x0, double y0) {
    const std::size_t body = n & ~std::size_t{3};
    const __m256d vx0 = _mm256_set1_pd(x0);
    const __m256d vy0 = _mm256_set1_pd(y0);
    std::size_t c = 0;
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d gx = _mm256_cmp_pd(_mm256_loadu_pd(x + i), vx0, _CMP_GT_OQ);
        const __m256d gy = _mm256_cmp_pd(_mm256_loadu_pd(y + i), vy0, _CMP_GT_OQ);
        const int mask = _mm256_movemask_pd(_mm256_and_pd(gx, gy));
        c += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (std::size_t i = body; i < n; ++i) {
        c += static_cast<std::size_t>(x[i] > x0 && y[i] > y0);
    }
    return c;
}

std::size_t count_leq(const double* v, std::size_t n, double bound) {
    const std::size_t body = n & ~std::size_t{3};
    const __m256d vb = _mm256_set1_pd(bound);
    std::size_t c = 0;
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d le = _mm256_cmp_pd(_mm256_loadu_pd(v + i), vb, _CMP_LE_OQ);
        const int mask = _mm256_movemask_pd(le);
        c += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (std::size_t i = body; i < n; ++i) {
        c += static_cast<std::size_t>(v[i] <= bound);
    }
    return c;
}

void min_scaled(const double* x, const double* y, std::size_t n, double ax,
                double ay, double* out) {
    const std::size_t body = n & ~std::size_t{3};
    const __m256d vax = _mm256_set1_pd(ax);
    const __m256d vay = _mm256_set1_pd(ay);
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(x + i), vax);
        const __m256d b = _mm256_mul_pd(_mm256_loadu_pd(y + i), vay);
        _mm256_storeu_pd(out + i, _mm256_min_pd(a, b));
    }
    for (std::size_t i = body; i < n; ++i) {
        const double a = x[i] * ax;
        const double b = y[i] * ay;
        out[i] = a < b ? a : b;
    }
}

ExcessStats excess_stats(const double* t, std::size_t n, double u) {
    const std::size_t body = n & ~std::size_t{3};
    const __m256d vu = _mm256_set1_pd(u);
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d vt = _mm256_loadu_pd(t + i);
        const __m256d gt = _mm256_cmp_pd(vt, vu, _CMP_GT_OQ);
        const __m256d excess = _mm256_and_pd(_mm256_sub_pd(vt, vu), gt);
        acc = _mm256_add_pd(acc, excess);
        const int mask = _mm256_movemask_pd(gt);
        c += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    ExcessStats s;
    s.sum = hsum(acc);
    s.count = c;
    for (std::size_t i = body; i < n; ++i) {
        if (t[i] > u) {
            s.sum += t[i] - u;
            ++s.count;
        }
    }
    return s;
}

}  // namespace retcurve::kernels::avx2

#endif  // RETCURVE_HAVE_AVX2

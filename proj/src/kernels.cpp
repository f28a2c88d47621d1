#include "retcurve/kernels.hpp"

namespace retcurve::kernels {

namespace scalar {

std::size_t count_joint_gt(const double* x, const double* y, std::size_t n,
                           double x0, double y0) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
        c += static_cast<std::size_t>(x[i] > x0 && y[i] > y0);
    }
    return c;
}

std::size_t count_leq(const double* v, std::size_t n, double bound) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
        c += static_cast<std::size_t>(v[i] <= bound);
    }
    return c;
}

void min_scaled(const double* x, const double* y, std::size_t n, double ax,
                double ay, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = x[i] * ax;
        const double b = y[i] * ay;
        out[i] = a < b ? a : b;
    }
}

ExcessStats excess_stats(const double* t, std::size_t n, double u) {
    ExcessStats s;
    for (std::size_t i = 0; i < n; ++i) {
        if (t[i] > u) {
            s.sum += t[i] - u;
            ++s.count;
        }
    }
    return s;
}

}  // namespace scalar

namespace {

struct Dispatch {
    std::size_t (*count_joint_gt)(const double*, const double*, std::size_t,
                                  double, double) = scalar::count_joint_gt;
    std::size_t (*count_leq)(const double*, std::size_t, double) = scalar::count_leq;
    void (*min_scaled)(const double*, const double*, std::size_t, double,
                       double, double*) = scalar::min_scaled;
    ExcessStats (*excess_stats)(const double*, std::size_t, double) = scalar::excess_stats;
    const char* name = "scalar";
};

Dispatch select_backend() {
    Dispatch d;
#if defined(RETCURVE_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) {
        d.count_joint_gt = avx2::count_joint_gt;
        d.count_leq = avx2::count_leq;
        d.min_scaled = avx2::min_scaled;
        d.excess_stats = avx2::excess_stats;
        d.name = "avx2";
        return d;
    }
#endif
#if defined(__ARM_NEON) || defined(__ARM_NEON__)
    d.count_joint_gt = neon::count_joint_gt;
    d.count_leq = neon::count_leq;
    d.min_scaled = neon::min_scaled;
    d.excess_stats = neon::excess_stats;
    d.name = "neon";
#endif
    return d;
}

const Dispatch& active() {
    static const Dispatch d = select_backend();
    return d;
}

}  // namespace

std::size_t count_joint_gt(const double* x, const double* y, std::size_t n,
                           double x0, double y0) {
    return active().count_joint_gt(x, y, n, x0, y0);
}

std::size_t count_leq(const double* v, std::size_t n, double bound) {
    return active().count_leq(v, n, bound);
}

void min_scaled(const double* x, const double* y, std::size_t n, double ax,
                double ay, double* out) {
    active().min_scaled(x, y, n, ax, ay, out);
}

ExcessStats excess_stats(const double* t, std::size_t n, double u) {
    return active().excess_stats(t, n, u);
}

const char* backend_name() { return active().name; }

}  // namespace retcurve::kernels

#include "retcurve/special.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <functional>

#include "retcurve/types.hpp"

namespace retcurve {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

// Adaptive Simpson with the usual 1/15 error estimate.
double simpson_step(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double m, double fm, double whole,
                    double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw numeric_error("adaptive quadrature: depth exhausted");
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 60);
}

// Bivariate normal lower CDF Phi2(h, k; rho) via quadrature of
// phi(z) * Phi((k - rho z)/sqrt(1-rho^2)) over z in (-inf, h).
double bvn_lower(double h, double k, double rho) {
    if (rho >= 1.0) return normal_cdf(std::fmin(h, k));
    if (rho <= -1.0) return std::fmax(0.0, normal_cdf(h) + normal_cdf(k) - 1.0);
    const double lo = -8.75;  // Phi(-8.75) ~ 1e-18, below target accuracy
    const double hi = std::fmin(h, 8.75);
    if (hi <= lo) return 0.0;
    const double s = std::sqrt(1.0 - rho * rho);
    auto integrand = [&](double z) {
        return normal_pdf(z) * normal_cdf((k - rho * z) / s);
    };
    return adaptive_simpson(integrand, lo, hi, 1e-10);
}

// Bivariate t lower CDF via the conditional decomposition
//   T2 | T1 = t  ~  rho t + sqrt(1-rho^2) sqrt((nu+t^2)/(nu+1)) T',
// T' ~ t_{nu+1}, integrated on the probability scale s = F_nu(t) so the
// heavy tails collapse to a bounded integrand on (0, F_nu(h)).
double bvt_lower(double h, double k, double rho, double nu) {
    if (rho >= 1.0) return student_t_cdf(std::fmin(h, k), nu);
    if (rho <= -1.0) {
        return std::fmax(0.0, student_t_cdf(h, nu) + student_t_cdf(k, nu) - 1.0);
    }
    const double s = std::sqrt(1.0 - rho * rho);
    const double upper = student_t_cdf(h, nu);
    if (upper <= 0.0) return 0.0;
    const double lower = std::fmin(1e-16, 0.5 * upper);
    auto integrand = [&](double sp) {
        const double t = student_t_quantile(sp, nu);
        const double scale = s * std::sqrt((nu + t * t) / (nu + 1.0));
        return student_t_cdf((k - rho * t) / scale, nu + 1.0);
    };
    return adaptive_simpson(integrand, lower, upper, 1e-9);
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw data_error("normal_quantile: p outside (0,1)");
    static const boost::math::normal_distribution<double> dist;
    return boost::math::quantile(dist, p);
}

double student_t_cdf(double t, double nu) {
    const boost::math::students_t_distribution<double> dist(nu);
    return boost::math::cdf(dist, t);
}

double student_t_quantile(double p, double nu) {
    if (!(p > 0.0 && p < 1.0)) throw data_error("student_t_quantile: p outside (0,1)");
    const boost::math::students_t_distribution<double> dist(nu);
    return boost::math::quantile(dist, p);
}

double bvn_upper(double a, double b, double rho) {
    // (Z1, Z2) -> (-Z1, -Z2) keeps the correlation, so the upper orthant
    // probability is the lower CDF at the reflected point. Evaluating the
    // survival directly keeps small joint-tail values fully accurate.
    return bvn_lower(-a, -b, rho);
}

double bvt_upper(double a, double b, double rho, double nu) {
    return bvt_lower(-a, -b, rho, nu);
}

}  // namespace retcurve

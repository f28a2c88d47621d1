#include "retcurve/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "retcurve/margins.hpp"
#include "retcurve/rng.hpp"
#include "retcurve/special.hpp"
#include "retcurve/stats.hpp"

namespace retcurve {

namespace {

using Family = CopulaSpec::Family;

// Exponent function of the logistic BEV copula in the coordinates
// a = -log u, b = -log v.
double logistic_exponent(double a, double b, double r) {
    return std::pow(std::pow(a, 1.0 / r) + std::pow(b, 1.0 / r), r);
}

// Asymmetric-logistic exponent function, same coordinates.
double asym_logistic_exponent(double a, double b, double r, double t1, double t2) {
    const double ma = t1 > 0.0 ? std::pow(t1 * a, 1.0 / r) : 0.0;
    const double mb = t2 > 0.0 ? std::pow(t2 * b, 1.0 / r) : 0.0;
    const double mixed = (ma > 0.0 || mb > 0.0) ? std::pow(ma + mb, r) : 0.0;
    return (1.0 - t1) * a + (1.0 - t2) * b + mixed;
}

double bev_exponent(const CopulaSpec& spec, double a, double b) {
    if (spec.family == Family::bev_logistic ||
        spec.family == Family::inverted_bev_logistic) {
        return logistic_exponent(a, b, spec.r);
    }
    return asym_logistic_exponent(a, b, spec.r, spec.t1, spec.t2);
}

// d/da of the exponent function, used by the conditional sampler.
double bev_exponent_da(const CopulaSpec& spec, double a, double b) {
    const double r = spec.r;
    if (spec.family == Family::bev_logistic) {
        const double sa = std::pow(a, 1.0 / r);
        const double sb = std::pow(b, 1.0 / r);
        return std::pow(sa + sb, r - 1.0) * std::pow(a, 1.0 / r - 1.0);
    }
    const double t1 = spec.t1;
    const double t2 = spec.t2;
    double mixed_da = 0.0;
    if (t1 > 0.0) {
        const double ma = std::pow(t1 * a, 1.0 / r);
        const double mb = t2 > 0.0 ? std::pow(t2 * b, 1.0 / r) : 0.0;
        mixed_da = std::pow(ma + mb, r - 1.0) * std::pow(t1, 1.0 / r) *
                   std::pow(a, 1.0 / r - 1.0);
    }
    return (1.0 - t1) + mixed_da;
}

double frank_cdf(double u, double v, double zeta) {
    const double num = std::expm1(-zeta * u) * std::expm1(-zeta * v);
    return -std::log1p(num / std::expm1(-zeta)) / zeta;
}

// Conditional CDF Pr(V <= v | U = u) for the closed-form families.
double conditional_cdf(const CopulaSpec& spec, double u, double v) {
    switch (spec.family) {
        case Family::bev_logistic:
        case Family::bev_asym_logistic: {
            const double a = -std::log(u);
            const double b = -std::log(v);
            const double c = std::exp(-bev_exponent(spec, a, b));
            return c * bev_exponent_da(spec, a, b) / u;
        }
        case Family::frank: {
            const double gu = std::expm1(-spec.zeta * u);
            const double gv = std::expm1(-spec.zeta * v);
            const double g1 = std::expm1(-spec.zeta);
            return std::exp(-spec.zeta * u) * gv / (g1 + gu * gv);
        }
        default:
            throw numeric_error("conditional_cdf: unsupported family");
    }
}

// Solves Pr(V <= v | U = u) = target for v; the conditional CDF is a
// CDF in v, so bisection on (0,1) always converges.
double invert_conditional(const CopulaSpec& spec, double u, double target) {
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (conditional_cdf(spec, u, mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Draws one pair on uniform margins.
void sample_uniform_pair(const CopulaSpec& spec, Rng& rng, double& u, double& v) {
    switch (spec.family) {
        case Family::independence:
            u = rng.uniform_pos();
            v = rng.uniform_pos();
            return;
        case Family::comonotone:
            u = rng.uniform_pos();
            v = u;
            return;
        case Family::gaussian: {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            const double s = std::sqrt(1.0 - spec.rho * spec.rho);
            u = normal_cdf(z1);
            v = normal_cdf(spec.rho * z1 + s * z2);
            return;
        }
        case Family::bivariate_t: {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            const double s = std::sqrt(1.0 - spec.rho * spec.rho);
            const double w = rng.chi_squared(spec.nu);
            const double scale = std::sqrt(spec.nu / w);
            u = student_t_cdf(z1 * scale, spec.nu);
            v = student_t_cdf((spec.rho * z1 + s * z2) * scale, spec.nu);
            return;
        }
        case Family::bev_logistic:
        case Family::bev_asym_logistic:
        case Family::frank: {
            u = rng.uniform_pos();
            const double target = rng.uniform_pos();
            v = invert_conditional(spec, u, target);
            return;
        }
        case Family::inverted_bev_logistic: {
            CopulaSpec base = spec;
            base.family = Family::bev_logistic;
            sample_uniform_pair(base, rng, u, v);
            u = 1.0 - u;
            v = 1.0 - v;
            return;
        }
        case Family::inverted_bev_asym_logistic: {
            CopulaSpec base = spec;
            base.family = Family::bev_asym_logistic;
            sample_uniform_pair(base, rng, u, v);
            u = 1.0 - u;
            v = 1.0 - v;
            return;
        }
    }
    throw data_error("unknown copula family");
}

double clamp_unit_open(double u) {
    return std::clamp(u, 1e-15, 1.0 - 1e-15);
}

// Marginal survival Pr(X > x) for a standard margin, computed directly
// so small joint-tail probabilities keep full precision.
double margin_survival(Margin m, double x) {
    switch (m) {
        case Margin::uniform:
            return 1.0 - x;
        case Margin::exponential:
            if (x <= 0.0) return 1.0;
            return std::exp(-x);
        case Margin::laplace:
            return x < 0.0 ? 1.0 - 0.5 * std::exp(x) : 0.5 * std::exp(-x);
        case Margin::frechet:
            if (x <= 0.0) return 1.0;
            return -std::expm1(-1.0 / x);
        case Margin::native:
            throw data_error("joint_survival: native margin not supported here");
    }
    throw data_error("unknown margin");
}

}  // namespace

CopulaSpec CopulaSpec::logistic(double r) {
    CopulaSpec s;
    s.family = Family::bev_logistic;
    s.r = r;
    s.validate();
    return s;
}

CopulaSpec CopulaSpec::asym_logistic(double r, double t1, double t2) {
    CopulaSpec s;
    s.family = Family::bev_asym_logistic;
    s.r = r;
    s.t1 = t1;
    s.t2 = t2;
    s.validate();
    return s;
}

CopulaSpec CopulaSpec::gaussian_copula(double rho) {
    CopulaSpec s;
    s.family = Family::gaussian;
    s.rho = rho;
    s.validate();
    return s;
}

CopulaSpec CopulaSpec::inverted_logistic(double r) {
    CopulaSpec s;
    s.family = Family::inverted_bev_logistic;
    s.r = r;
    s.validate();
    return s;
}

CopulaSpec CopulaSpec::inverted_asym_logistic(double r, double t1, double t2) {
    CopulaSpec s;
    s.family = Family::inverted_bev_asym_logistic;
    s.r = r;
    s.t1 = t1;
    s.t2 = t2;
    s.validate();
    return s;
}

CopulaSpec CopulaSpec::student_t(double rho, double nu) {
    CopulaSpec s;
    s.family = Family::bivariate_t;
    s.rho = rho;
    s.nu = nu;
    s.validate();
    return s;
}

CopulaSpec CopulaSpec::frank_copula(double zeta) {
    CopulaSpec s;
    s.family = Family::frank;
    s.zeta = zeta;
    s.validate();
    return s;
}

CopulaSpec CopulaSpec::independence_copula() {
    CopulaSpec s;
    s.family = Family::independence;
    return s;
}

CopulaSpec CopulaSpec::comonotone_copula() {
    CopulaSpec s;
    s.family = Family::comonotone;
    return s;
}

void CopulaSpec::validate() const {
    switch (family) {
        case Family::bev_logistic:
        case Family::inverted_bev_logistic:
            if (!(r > 0.0 && r <= 1.0)) throw data_error("logistic: r outside (0,1]");
            return;
        case Family::bev_asym_logistic:
        case Family::inverted_bev_asym_logistic:
            if (!(r > 0.0 && r <= 1.0)) throw data_error("asym logistic: r outside (0,1]");
            if (!(t1 >= 0.0 && t1 <= 1.0 && t2 >= 0.0 && t2 <= 1.0)) {
                throw data_error("asym logistic: asymmetry weights outside [0,1]");
            }
            return;
        case Family::gaussian:
            if (!(rho > -1.0 && rho < 1.0)) throw data_error("gaussian: rho outside (-1,1)");
            return;
        case Family::bivariate_t:
            if (!(rho > -1.0 && rho < 1.0)) throw data_error("t: rho outside (-1,1)");
            if (!(nu > 0.0)) throw data_error("t: nu must be > 0");
            return;
        case Family::frank:
            if (zeta == 0.0) throw data_error("frank: zeta must be nonzero");
            return;
        case Family::independence:
        case Family::comonotone:
            return;
    }
    throw data_error("unknown copula family");
}

std::string CopulaSpec::name() const {
    std::ostringstream os;
    switch (family) {
        case Family::bev_logistic:
            os << "bev_logistic(" << r << ")";
            break;
        case Family::bev_asym_logistic:
            os << "bev_asym_logistic(" << r << "," << t1 << "," << t2 << ")";
            break;
        case Family::gaussian:
            os << "gaussian(" << rho << ")";
            break;
        case Family::inverted_bev_logistic:
            os << "inverted_bev_logistic(" << r << ")";
            break;
        case Family::inverted_bev_asym_logistic:
            os << "inverted_bev_asym_logistic(" << r << "," << t1 << "," << t2 << ")";
            break;
        case Family::bivariate_t:
            os << "t(" << rho << "," << nu << ")";
            break;
        case Family::frank:
            os << "frank(" << zeta << ")";
            break;
        case Family::independence:
            os << "independence";
            break;
        case Family::comonotone:
            os << "comonotone";
            break;
    }
    return os.str();
}

bool CopulaSpec::exchangeable() const {
    switch (family) {
        case Family::bev_asym_logistic:
        case Family::inverted_bev_asym_logistic:
            return t1 == t2;
        default:
            return true;
    }
}

CopulaSpec CopulaSpec::parse(const std::string& text) {
    std::string head = text;
    std::vector<double> args;
    const auto open = text.find('(');
    if (open != std::string::npos) {
        if (text.back() != ')') throw data_error("copula spec: missing ')': " + text);
        head = text.substr(0, open);
        std::string inner = text.substr(open + 1, text.size() - open - 2);
        std::istringstream is(inner);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            try {
                args.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw data_error("copula spec: bad parameter '" + tok + "'");
            }
        }
    }
    auto need = [&](std::size_t k) {
        if (args.size() != k) {
            throw data_error("copula spec: " + head + " expects " + std::to_string(k) +
                             " parameter(s)");
        }
    };
    if (head == "independence") {
        need(0);
        return independence_copula();
    }
    if (head == "comonotone") {
        need(0);
        return comonotone_copula();
    }
    if (head == "bev_logistic" || head == "logistic") {
        need(1);
        return logistic(args[0]);
    }
    if (head == "bev_asym_logistic" || head == "asym_logistic") {
        need(3);
        return asym_logistic(args[0], args[1], args[2]);
    }
    if (head == "gaussian" || head == "normal") {
        need(1);
        return gaussian_copula(args[0]);
    }
    if (head == "inverted_bev_logistic" || head == "inverted_logistic") {
        need(1);
        return inverted_logistic(args[0]);
    }
    if (head == "inverted_bev_asym_logistic" || head == "inverted_asym_logistic") {
        need(3);
        return inverted_asym_logistic(args[0], args[1], args[2]);
    }
    if (head == "t" || head == "bivariate_t") {
        need(2);
        return student_t(args[0], args[1]);
    }
    if (head == "frank") {
        need(1);
        return frank_copula(args[0]);
    }
    throw data_error("unknown copula family: " + head);
}

double copula_cdf(const CopulaSpec& spec, double u, double v) {
    spec.validate();
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0 && v >= 1.0) return 1.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    switch (spec.family) {
        case Family::independence:
            return u * v;
        case Family::comonotone:
            return std::fmin(u, v);
        case Family::bev_logistic:
        case Family::bev_asym_logistic:
            return std::exp(-bev_exponent(spec, -std::log(u), -std::log(v)));
        case Family::gaussian:
            return bvn_upper(-normal_quantile(u), -normal_quantile(v), spec.rho);
        case Family::bivariate_t:
            return bvt_upper(-student_t_quantile(u, spec.nu),
                             -student_t_quantile(v, spec.nu), spec.rho, spec.nu);
        case Family::frank:
            return frank_cdf(u, v, spec.zeta);
        case Family::inverted_bev_logistic:
        case Family::inverted_bev_asym_logistic: {
            // survival copula of the base BEV family
            const double su = 1.0 - u;
            const double sv = 1.0 - v;
            return u + v - 1.0 +
                   std::exp(-bev_exponent(spec, -std::log(su), -std::log(sv)));
        }
    }
    throw data_error("unknown copula family");
}

double joint_survival(const CopulaSpec& spec, double x, double y, Margin margin) {
    spec.validate();
    const double sx = margin_survival(margin, x);
    const double sy = margin_survival(margin, y);
    if (sx <= 0.0 || sy <= 0.0) return 0.0;
    if (sx >= 1.0) return sy;
    if (sy >= 1.0) return sx;

    switch (spec.family) {
        case Family::independence:
            return sx * sy;
        case Family::comonotone:
            return std::fmin(sx, sy);
        case Family::inverted_bev_logistic:
        case Family::inverted_bev_asym_logistic:
            // Pr(X>x, Y>y) = C_bev(sx, sy); on exponential margins this is
            // exp(-V(x, y)) for the exponent function V.
            return std::exp(-bev_exponent(spec, -std::log(sx), -std::log(sy)));
        case Family::gaussian:
            return bvn_upper(-normal_quantile(sx), -normal_quantile(sy), spec.rho);
        case Family::bivariate_t:
            return bvt_upper(-student_t_quantile(sx, spec.nu),
                             -student_t_quantile(sy, spec.nu), spec.rho, spec.nu);
        case Family::bev_logistic:
        case Family::bev_asym_logistic: {
            // S = sx + sy - (1 - C(u,v)) with 1 - C = -expm1(-V)
            const double a = -std::log1p(-sx);
            const double b = -std::log1p(-sy);
            return sx + sy + std::expm1(-bev_exponent(spec, a, b));
        }
        case Family::frank: {
            const double u = 1.0 - sx;
            const double v = 1.0 - sy;
            return sx + sy - 1.0 + frank_cdf(u, v, spec.zeta);
        }
    }
    throw data_error("unknown copula family");
}

BivariateSample copula_sample(const CopulaSpec& spec, std::size_t n, Margin margin,
                              std::uint64_t seed) {
    spec.validate();
    if (n == 0) throw data_error("copula_sample: n must be >= 1");
    if (margin == Margin::native) {
        throw data_error("copula_sample: native margin not supported");
    }
    Rng rng(derive_seed(seed, 0x636f70756cULL));
    BivariateSample out;
    out.x.reserve(n);
    out.y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u, v;
        sample_uniform_pair(spec, rng, u, v);
        u = clamp_unit_open(u);
        v = clamp_unit_open(v);
        if (spec.family == Family::comonotone) v = u;  // keep exact equality
        if (margin == Margin::uniform) {
            out.push_back(u, v);
        } else {
            out.push_back(margin_fn::quantile(margin, u), margin_fn::quantile(margin, v));
        }
    }
    return out;
}

TrueCurve true_return_curve(const CopulaSpec& spec, double p, int grid_size) {
    spec.validate();
    if (!(p > 0.0 && p < 0.05)) throw data_error("true_return_curve: p outside (0, 0.05)");
    if (grid_size < 1) throw data_error("true_return_curve: grid_size must be >= 1");

    const double xp = -std::log(p);
    constexpr double kTol = 1e-10;

    TrueCurve curve;
    curve.p = p;
    curve.tolerance = kTol;
    curve.points.reserve(static_cast<std::size_t>(grid_size) + 2);
    curve.points.push_back({0.0, xp});

    for (int j = 1; j <= grid_size; ++j) {
        const double x = xp * static_cast<double>(j) / static_cast<double>(grid_size + 1);
        double lo = 0.0;
        double hi = xp;
        double flo = joint_survival(spec, x, lo, Margin::exponential) - p;
        double fhi = joint_survival(spec, x, hi, Margin::exponential) - p;
        if (flo < -kTol || fhi > kTol) {
            throw numeric_error("true_return_curve: root not bracketed (survival bug?)");
        }
        double best_y = std::fabs(flo) <= std::fabs(fhi) ? lo : hi;
        double best_f = std::fmin(std::fabs(flo), std::fabs(fhi));
        for (int it = 0; it < 200 && best_f > 0.5 * kTol && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = joint_survival(spec, x, mid, Margin::exponential) - p;
            if (std::fabs(fm) < best_f) {
                best_f = std::fabs(fm);
                best_y = mid;
            }
            if (fm > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (best_f > kTol) {
            throw numeric_error("true_return_curve: bisection did not reach tolerance");
        }
        curve.points.push_back({x, best_y});
    }

    curve.points.push_back({xp, 0.0});
    return curve;
}

ReturnCurve to_return_curve(const TrueCurve& curve) {
    ReturnCurve rc;
    rc.p = curve.p;
    rc.margin = Margin::exponential;
    rc.points = curve.points;
    rc.enforced = true;
    return rc;
}

double chi_u(const BivariateSample& sample, double u) {
    if (sample.empty()) throw data_error("chi_u: empty sample");
    if (!(u > 0.0 && u < 1.0)) throw data_error("chi_u: u outside (0,1)");
    const double np1 = static_cast<double>(sample.size() + 1);
    const std::vector<std::size_t> rx = leq_ranks(sample.x);
    const std::vector<std::size_t> ry = leq_ranks(sample.y);
    std::size_t denom = 0;
    std::size_t num = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const bool x_exceeds = static_cast<double>(rx[i]) / np1 > u;
        if (!x_exceeds) continue;
        ++denom;
        num += static_cast<std::size_t>(static_cast<double>(ry[i]) / np1 > u);
    }
    if (denom == 0) throw data_error("chi_u: no exceedances of u in first coordinate");
    return static_cast<double>(num) / static_cast<double>(denom);
}

}  // namespace retcurve

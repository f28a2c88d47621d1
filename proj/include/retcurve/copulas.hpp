#ifndef RETCURVE_COPULAS_HPP_
#define RETCURVE_COPULAS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "retcurve/curves.hpp"
#include "retcurve/types.hpp"

namespace retcurve {

/// One of the nine study copula families with its parameters.
struct CopulaSpec {
    enum class Family {
        bev_logistic,
        bev_asym_logistic,
        gaussian,
        inverted_bev_logistic,
        inverted_bev_asym_logistic,
        bivariate_t,
        frank,
        independence,
        comonotone,
    };

    Family family = Family::independence;
    double r = 0.5;    ///< logistic dependence, in (0,1]
    double t1 = 1.0;   ///< asymmetry weights, in [0,1]
    double t2 = 1.0;
    double rho = 0.0;  ///< correlation, in (-1,1)
    double nu = 1.0;   ///< t degrees of freedom, > 0
    double zeta = 1.0; ///< Frank dependence, != 0

    static CopulaSpec logistic(double r);
    static CopulaSpec asym_logistic(double r, double t1, double t2);
    static CopulaSpec gaussian_copula(double rho);
    static CopulaSpec inverted_logistic(double r);
    static CopulaSpec inverted_asym_logistic(double r, double t1, double t2);
    static CopulaSpec student_t(double rho, double nu);
    static CopulaSpec frank_copula(double zeta);
    static CopulaSpec independence_copula();
    static CopulaSpec comonotone_copula();

    /// Parses e.g. "bev_logistic(0.5)", "gaussian(0.9)", "t(0.8,2)",
    /// "frank(-5)", "independence".
    static CopulaSpec parse(const std::string& text);

    void validate() const;
    std::string name() const;
    /// Exchangeable families produce symmetric joint tails; the
    /// asymmetric-logistic pairs do not (in general).
    bool exchangeable() const;
};

/// i.i.d. draws from the copula on the requested standard margins,
/// deterministic per (spec, seed).
BivariateSample copula_sample(const CopulaSpec& spec, std::size_t n, Margin margin,
                              std::uint64_t seed);

/// Pr(X > x, Y > y) with both coordinates on the given standard margin.
double joint_survival(const CopulaSpec& spec, double x, double y, Margin margin);

/// Copula CDF C(u,v) on uniform margins.
double copula_cdf(const CopulaSpec& spec, double u, double v);

/// The exact p-probability return curve on standard exponential margins.
struct TrueCurve {
    double p = 0.0;
    std::vector<Point> points;
    double tolerance = 1e-10;
};

/// Solves S(x,y) = p along a uniform x grid over [0, -log p] by
/// bisection; endpoints (0, y_p), (x_p, 0) included.
TrueCurve true_return_curve(const CopulaSpec& spec, double p, int grid_size);

/// View of a TrueCurve as an enforced exponential-margin ReturnCurve.
ReturnCurve to_return_curve(const TrueCurve& curve);

/// Empirical chi(u): Pr(F_Y(Y) > u | F_X(X) > u) on rank-transformed
/// margins.
double chi_u(const BivariateSample& sample, double u);

}  // namespace retcurve

#endif  // RETCURVE_COPULAS_HPP_

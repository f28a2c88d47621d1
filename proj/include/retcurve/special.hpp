#ifndef RETCURVE_SPECIAL_HPP_
#define RETCURVE_SPECIAL_HPP_

namespace retcurve {

double normal_cdf(double z);
double normal_quantile(double p);
double normal_pdf(double z);

double student_t_cdf(double t, double nu);
double student_t_quantile(double p, double nu);

/// Pr(Z1 > a, Z2 > b) for standard bivariate normal with correlation rho,
/// by adaptive quadrature of the conditional normal over one coordinate.
/// Absolute accuracy ~1e-8.
double bvn_upper(double a, double b, double rho);

/// Pr(T1 > a, T2 > b) for the bivariate t with correlation rho and
/// degrees of freedom nu. Absolute accuracy ~1e-7.
double bvt_upper(double a, double b, double rho, double nu);

}  // namespace retcurve

#endif  // RETCURVE_SPECIAL_HPP_

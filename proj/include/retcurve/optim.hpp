#ifndef RETCURVE_OPTIM_HPP_
#define RETCURVE_OPTIM_HPP_

#include <functional>
#include <vector>

namespace retcurve {

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int evaluations = 0;
};

struct SimplexOptions {
    int max_evaluations = 20000;
    double f_tolerance = 1e-10;
    double x_tolerance = 1e-9;
};

/// Derivative-free Nelder-Mead minimization. The objective may return
/// +inf to reject a point (used for constraint walls).
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> start,
                          std::vector<double> step,
                          const SimplexOptions& options = {});

}  // namespace retcurve

#endif  // RETCURVE_OPTIM_HPP_

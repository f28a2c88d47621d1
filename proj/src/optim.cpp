#include "retcurve/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "retcurve/types.hpp"

namespace retcurve {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> start, std::vector<double> step,
                          const SimplexOptions& options) {
    const std::size_t d = start.size();
    if (d == 0 || step.size() != d) throw data_error("nelder_mead: bad dimensions");

    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<std::vector<double>> simplex(d + 1, start);
    std::vector<double> values(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        simplex[i + 1][i] += (step[i] != 0.0 ? step[i] : 0.1);
    }
    for (std::size_t i = 0; i <= d; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(d + 1);
    std::vector<double> centroid(d), candidate(d);

    SimplexResult result;
    while (evals < options.max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[d];
        const std::size_t second_worst = order[d - 1];

        double spread = std::fabs(values[worst] - values[best]);
        double xspread = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            xspread = std::fmax(xspread, std::fabs(simplex[worst][j] - simplex[best][j]));
        }
        if (std::isfinite(values[best]) && spread < options.f_tolerance &&
            xspread < options.x_tolerance) {
            result.converged = true;
            break;
        }

        for (std::size_t j = 0; j < d; ++j) {
            double c = 0.0;
            for (std::size_t i = 0; i <= d; ++i) {
                if (i != worst) c += simplex[i][j];
            }
            centroid[j] = c / static_cast<double>(d);
        }

        auto blend = [&](double coef) {
            for (std::size_t j = 0; j < d; ++j) {
                candidate[j] = centroid[j] + coef * (centroid[j] - simplex[worst][j]);
            }
        };

        blend(kReflect);
        std::vector<double> reflected = candidate;
        const double f_reflected = eval(reflected);

        if (f_reflected < values[best]) {
            blend(kExpand);
            const double f_expanded = eval(candidate);
            if (f_expanded < f_reflected) {
                simplex[worst] = candidate;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }

        if (f_reflected < values[worst]) {
            blend(kContract);  // outside contraction
        } else {
            blend(-kContract);  // inside contraction
        }
        const double f_contracted = eval(candidate);
        if (f_contracted < std::fmin(f_reflected, values[worst])) {
            simplex[worst] = candidate;
            values[worst] = f_contracted;
            continue;
        }

        for (std::size_t i = 0; i <= d; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < d; ++j) {
                simplex[i][j] = simplex[best][j] + kShrink * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= d; ++i) {
        if (values[i] < values[best]) best = i;
    }
    result.x = simplex[best];
    result.value = values[best];
    result.evaluations = evals;
    return result;
}

}  // namespace retcurve

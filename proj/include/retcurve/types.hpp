#ifndef RETCURVE_TYPES_HPP_
#define RETCURVE_TYPES_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace retcurve {

/// Margin conventions a variable (or curve coordinate) can live on.
/// Conversions among the standard conventions are exact closed forms;
/// `native` requires a fitted MarginalModel.
enum class Margin { native, uniform, exponential, laplace, frechet };

std::string margin_name(Margin m);
Margin margin_from_name(const std::string& name);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Paired observations stored column-wise so the hot loops can stream
/// over contiguous arrays.
struct BivariateSample {
    std::vector<double> x;
    std::vector<double> y;

    BivariateSample() = default;
    BivariateSample(std::vector<double> xs, std::vector<double> ys);

    std::size_t size() const { return x.size(); }
    bool empty() const { return x.empty(); }
    void push_back(double xi, double yi) {
        x.push_back(xi);
        y.push_back(yi);
    }
};

/// Malformed or inconsistent input data (CSV parse failures, size
/// mismatches, empty inputs).
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: optimizer non-convergence, root not bracketed,
/// quadrature breakdown.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace retcurve

#endif  // RETCURVE_TYPES_HPP_

#include "retcurve/types.hpp"

#include <utility>

namespace retcurve {

std::string margin_name(Margin m) {
    switch (m) {
        case Margin::native: return "native";
        case Margin::uniform: return "uniform";
        case Margin::exponential: return "exponential";
        case Margin::laplace: return "laplace";
        case Margin::frechet: return "frechet";
    }
    return "unknown";
}

Margin margin_from_name(const std::string& name) {
    if (name == "native") return Margin::native;
    if (name == "uniform") return Margin::uniform;
    if (name == "exponential") return Margin::exponential;
    if (name == "laplace") return Margin::laplace;
    if (name == "frechet") return Margin::frechet;
    throw data_error("unknown margin name: " + name);
}

BivariateSample::BivariateSample(std::vector<double> xs, std::vector<double> ys)
    : x(std::move(xs)), y(std::move(ys)) {
    if (x.size() != y.size()) throw data_error("BivariateSample: column size mismatch");
}

}  // namespace retcurve

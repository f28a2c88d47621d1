#include "retcurve/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "retcurve/types.hpp"

namespace retcurve {

double sorted_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw data_error("quantile of empty sample");
    if (!(q > 0.0 && q < 1.0)) throw data_error("quantile level must be in (0,1)");
    const std::size_t n = sorted.size();
    const double h = q * static_cast<double>(n + 1);
    if (h <= 1.0) return sorted[0];
    if (h >= static_cast<double>(n)) return sorted[n - 1];
    const auto lo = static_cast<std::size_t>(h);  // 1-based index of lower order stat
    const double frac = h - static_cast<double>(lo);
    return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

double empirical_quantile(std::span<const double> values, double q) {
    std::vector<double> s = sorted_copy(values);
    return sorted_quantile(s, q);
}

double quantile_inplace(std::vector<double>& values, double q) {
    const std::size_t n = values.size();
    if (n == 0) throw data_error("quantile of empty sample");
    if (!(q > 0.0 && q < 1.0)) throw data_error("quantile level must be in (0,1)");
    const double h = q * static_cast<double>(n + 1);
    if (h <= 1.0) return *std::min_element(values.begin(), values.end());
    if (h >= static_cast<double>(n)) return *std::max_element(values.begin(), values.end());
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    auto nth = values.begin() + static_cast<std::ptrdiff_t>(lo - 1);
    std::nth_element(values.begin(), nth, values.end());
    const double lower = *nth;
    const double upper = *std::min_element(nth + 1, values.end());
    return lower + frac * (upper - lower);
}

double mean(std::span<const double> values) {
    if (values.empty()) throw data_error("mean of empty sample");
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / static_cast<double>(values.size());
}

double variance(std::span<const double> values) {
    if (values.size() < 2) throw data_error("variance needs at least 2 values");
    const double m = mean(values);
    double acc = 0.0;
    for (double v : values) acc += (v - m) * (v - m);
    return acc / static_cast<double>(values.size() - 1);
}

std::vector<double> sorted_copy(std::span<const double> values) {
    std::vector<double> s(values.begin(), values.end());
    std::sort(s.begin(), s.end());
    return s;
}

std::vector<std::size_t> leq_ranks(std::span<const double> values) {
    std::vector<double> s = sorted_copy(values);
    std::vector<std::size_t> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        ranks[i] = static_cast<std::size_t>(
            std::upper_bound(s.begin(), s.end(), values[i]) - s.begin());
    }
    return ranks;
}

std::vector<double> autocorrelations(std::span<const double> values, int max_lag) {
    const std::size_t n = values.size();
    if (n < 2 || max_lag < 1) return {};
    const double m = mean(values);
    double c0 = 0.0;
    for (double v : values) c0 += (v - m) * (v - m);
    std::vector<double> acf;
    acf.reserve(static_cast<std::size_t>(max_lag));
    for (int k = 1; k <= max_lag && static_cast<std::size_t>(k) < n; ++k) {
        double ck = 0.0;
        for (std::size_t i = 0; i + static_cast<std::size_t>(k) < n; ++i) {
            ck += (values[i] - m) * (values[i + static_cast<std::size_t>(k)] - m);
        }
        acf.push_back(c0 > 0.0 ? ck / c0 : 0.0);
    }
    return acf;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    unsigned int w = workers > 0 ? static_cast<unsigned int>(workers)
                                 : std::max(1u, std::thread::hardware_concurrency());
    w = static_cast<unsigned int>(std::min<std::size_t>(w, n));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned int t = 0; t < w; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace retcurve

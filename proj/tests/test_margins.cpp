#include <doctest.h>

#include <cmath>
#include <vector>

#include "retcurve/margins.hpp"
#include "retcurve/rng.hpp"
#include "retcurve/stats.hpp"

using namespace retcurve;

namespace {

std::vector<double> exponential_sample(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = rng.exponential();
    return v;
}

MarginalModel synthetic_model(double u, double sigma, double xi, double exceed_prob) {
    // tiny placeholder sample; the GPD branch is what these tests exercise
    GpdModel gpd{u, sigma, xi, exceed_prob};
    std::vector<double> sample;
    for (int i = 1; i <= 19; ++i) {
        sample.push_back(u * static_cast<double>(i) / 19.0);
    }
    return MarginalModel(sample, gpd);
}

}  // namespace

TEST_CASE("gpd excess cdf closed forms") {
    // unit-parameter check: G(1) with sigma=1, xi=1 is 1 - 1/2
    CHECK(gpd_excess_cdf(1.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    // exponential branch: sigma=2, xi=0 at x=2
    CHECK(gpd_excess_cdf(2.0, 2.0, 0.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    // bounded tail: beyond the upper endpoint the cdf saturates
    CHECK(gpd_excess_cdf(11.0, 1.0, -0.1) == 1.0);
}

TEST_CASE("gpd fit recovers unit-exponential parameters on a large sample") {
    const auto excesses = exponential_sample(100000, 20240601);
    const GpdFit fit = gpd_fit(excesses);
    CHECK(fit.converged);
    CHECK(std::fabs(fit.sigma - 1.0) < 0.03);
    CHECK(std::fabs(fit.xi - 0.0) < 0.03);
    CHECK(std::isfinite(fit.loglik));
}

TEST_CASE("gpd fit is scale equivariant") {
    const auto excesses = exponential_sample(5000, 7);
    const GpdFit base = gpd_fit(excesses);
    std::vector<double> scaled = excesses;
    for (double& z : scaled) z *= 13.0;
    const GpdFit big = gpd_fit(scaled);
    CHECK(big.sigma == doctest::Approx(13.0 * base.sigma).epsilon(1e-4));
    CHECK(big.xi == doctest::Approx(base.xi).epsilon(1e-3));
}

TEST_CASE("gpd fit input validation") {
    CHECK_THROWS_AS(gpd_fit(std::vector<double>{}), data_error);
    CHECK_THROWS_AS(gpd_fit(std::vector<double>{1.0, -0.5}), data_error);
    CHECK_THROWS_AS(gpd_fit(std::vector<double>{1.0, 0.0}), data_error);
}

TEST_CASE("rank transform below the threshold") {
    GpdModel gpd{10.0, 1.0, 0.0, 1.0 / 4.0};
    // {1,2,3} with u=10 never reaches the tail in these checks
    gpd.exceed_prob = 0.2;
    MarginalModel model({1.0, 2.0, 3.0}, gpd);
    CHECK(model.cdf(2.0) == doctest::Approx(2.0 / 4.0));
    CHECK(model.cdf(2.5) == doctest::Approx(2.0 / 4.0));
    CHECK(model.cdf(3.0) == doctest::Approx(3.0 / 4.0));
    // below the sample the value stays strictly positive
    CHECK(model.cdf(-100.0) > 0.0);
    CHECK(model.cdf(-100.0) < 1.0 / 4.0);
}

TEST_CASE("cdf branches agree at the threshold and tail arithmetic holds") {
    const auto model = synthetic_model(0.0, 1.0, 0.0, 0.05);
    // exponential tail: 1 - 0.05/10 at x = ln 10 above u = 0
    CHECK(model.cdf(std::log(10.0)) == doctest::Approx(0.995).epsilon(1e-12));

    const auto data = exponential_sample(5000, 99);
    const MarginalModel fitted = MarginalModel::fit(data, 0.95);
    const double u = fitted.gpd().threshold_u;
    const double below = fitted.cdf(u);
    const double above = fitted.cdf(u + 1e-12);
    CHECK(below == doctest::Approx(fitted.cdf_at_threshold()).epsilon(1e-12));
    CHECK(above == doctest::Approx(below).epsilon(1e-9));
}

TEST_CASE("quantile inverts the cdf in the tail") {
    const auto data = exponential_sample(20000, 3);
    const MarginalModel model = MarginalModel::fit(data, 0.95);
    for (double q : {0.96, 0.99, 0.999, 0.9999}) {
        CHECK(std::fabs(model.cdf(model.quantile(q)) - q) < 1e-9);
    }
    // exponential-margin special case for the curve boundary
    CHECK(margin_fn::quantile(Margin::exponential, 1.0 - 1e-3) ==
          doctest::Approx(6.907755278982137).epsilon(1e-12));

    const auto unit = synthetic_model(0.0, 1.0, 0.0, 1.0 - 1e-12);
    // with the whole distribution in the tail this is the exponential inverse
    CHECK(unit.quantile(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK_THROWS_AS(unit.quantile(0.0), data_error);
    CHECK_THROWS_AS(unit.quantile(1.0), data_error);
}

TEST_CASE("cdf is nondecreasing on a random grid") {
    const auto data = exponential_sample(3000, 5);
    const MarginalModel model = MarginalModel::fit(data, 0.95);
    Rng rng(17);
    std::vector<double> grid(500);
    for (double& g : grid) g = 12.0 * rng.uniform() - 1.0;
    std::sort(grid.begin(), grid.end());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(model.cdf(grid[i - 1]) <= model.cdf(grid[i]));
    }
    for (double g : grid) {
        const double v = model.cdf(g);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("standard margin conversions") {
    CHECK(convert_margin(0.5, Margin::uniform, Margin::laplace) == doctest::Approx(0.0));
    CHECK(convert_margin(std::log(2.0), Margin::exponential, Margin::uniform) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(convert_margin(std::log(2.0), Margin::exponential, Margin::laplace) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(convert_margin(6.907755278982137, Margin::exponential, Margin::uniform) ==
          doctest::Approx(0.999).epsilon(1e-12));
    CHECK_THROWS_AS(convert_margin(-1.0, Margin::exponential, Margin::uniform), data_error);
    CHECK_THROWS_AS(convert_margin(0.5, Margin::native, Margin::uniform), data_error);
}

TEST_CASE("margin conversion round trips") {
    Rng rng(23);
    const Margin kinds[] = {Margin::uniform, Margin::exponential, Margin::laplace,
                            Margin::frechet};
    for (int i = 0; i < 200; ++i) {
        const double u = rng.uniform_pos();
        for (Margin from : kinds) {
            const double v = margin_fn::quantile(from, u);
            for (Margin to : kinds) {
                const double w = convert_margin(v, from, to);
                const double back = convert_margin(w, to, from);
                CHECK(back == doctest::Approx(v).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("fitted threshold matches the configured empirical quantile") {
    const auto data = exponential_sample(4000, 8);
    const MarginalModel model = MarginalModel::fit(data, 0.95);
    CHECK(model.gpd().threshold_u ==
          doctest::Approx(empirical_quantile(data, 0.95)).epsilon(1e-12));
    CHECK(model.gpd().exceed_prob == doctest::Approx(0.05).epsilon(0.1));
}

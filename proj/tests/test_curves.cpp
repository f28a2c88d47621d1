#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "retcurve/curves.hpp"
#include "retcurve/rng.hpp"

using namespace retcurve;

namespace {

ReturnCurve make_curve(double p, std::vector<Point> pts, bool enforced = false) {
    ReturnCurve c;
    c.p = p;
    c.margin = Margin::exponential;
    c.points = std::move(pts);
    c.enforced = enforced;
    return c;
}

bool same_points(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].x != b[i].x || a[i].y != b[i].y) return false;
    }
    return true;
}

ReturnCurve random_raw_curve(Rng& rng, double p) {
    const double scale = -std::log(p) * 1.4;
    const std::size_t n = 1 + rng.below(40);
    std::vector<Point> pts(n);
    for (Point& q : pts) {
        q.x = scale * rng.uniform();
        q.y = scale * rng.uniform();
    }
    return make_curve(p, std::move(pts));
}

}  // namespace

TEST_CASE("angle grid formula") {
    const AngleGrid g3 = angle_grid(3);
    REQUIRE(g3.angles.size() == 3);
    CHECK(g3.angles[0] == doctest::Approx(3.0 * M_PI / 8.0).epsilon(1e-15));
    CHECK(g3.angles[1] == doctest::Approx(M_PI / 4.0).epsilon(1e-15));
    CHECK(g3.angles[2] == doctest::Approx(M_PI / 8.0).epsilon(1e-15));

    const AngleGrid g1 = angle_grid(1);
    REQUIRE(g1.angles.size() == 1);
    CHECK(g1.angles[0] == doctest::Approx(M_PI / 4.0).epsilon(1e-15));

    const AngleGrid g150 = angle_grid(150);
    REQUIRE(g150.angles.size() == 150);
    CHECK(g150.angles.front() == doctest::Approx(1.56039).epsilon(1e-5));
    CHECK(g150.angles.back() == doctest::Approx(0.0104027).epsilon(1e-5));
    for (std::size_t j = 1; j < g150.angles.size(); ++j) {
        CHECK(g150.angles[j] < g150.angles[j - 1]);
        CHECK(g150.angles[j] > 0.0);
        CHECK(g150.angles[j] < M_PI_2);
    }
    CHECK_THROWS_AS(angle_grid(0), data_error);
}

TEST_CASE("enforcement clamps, adds boundary points and sweeps monotone") {
    const double p = std::exp(-4.0);  // x_p = y_p = 4
    const ReturnCurve out = enforce_properties(make_curve(p, {{1.0, 6.0}, {2.0, 3.0}}));
    REQUIRE(out.points.size() == 4);
    CHECK(out.points[0].x == 0.0);
    CHECK(out.points[0].y == doctest::Approx(4.0));
    CHECK(out.points[1].x == doctest::Approx(1.0));
    CHECK(out.points[1].y == doctest::Approx(4.0));
    CHECK(out.points[2].x == doctest::Approx(2.0));
    CHECK(out.points[2].y == doctest::Approx(3.0));
    CHECK(out.points[3].x == doctest::Approx(4.0));
    CHECK(out.points[3].y == 0.0);
    CHECK(out.enforced);
}

TEST_CASE("enforcement is idempotent and never raises a coordinate") {
    Rng rng(404);
    for (int rep = 0; rep < 1000; ++rep) {
        const double p = std::exp(-2.0 - 6.0 * rng.uniform());
        const ReturnCurve raw = random_raw_curve(rng, p);
        const ReturnCurve once = enforce_properties(raw);
        const ReturnCurve twice = enforce_properties(once);
        CHECK(same_points(once.points, twice.points));

        const double xp = -std::log(p);
        // every input point maps to something no larger coordinatewise
        for (const Point& q : once.points) {
            CHECK(q.x <= xp + 1e-12);
            CHECK(q.y <= xp + 1e-12);
        }
        // monotone: x nondecreasing, y nonincreasing
        for (std::size_t i = 1; i < once.points.size(); ++i) {
            CHECK(once.points[i].x >= once.points[i - 1].x);
            CHECK(once.points[i].y <= once.points[i - 1].y);
        }
        CHECK(once.points.front().x == 0.0);
        CHECK(once.points.front().y == doctest::Approx(xp));
        CHECK(once.points.back().x == doctest::Approx(xp));
        CHECK(once.points.back().y == 0.0);
    }
}

TEST_CASE("already valid curves are fixed points up to endpoint insertion") {
    const double p = 1e-3;
    const double xp = -std::log(p);
    std::vector<Point> diagonal;
    for (int i = 0; i <= 20; ++i) {
        const double x = xp * static_cast<double>(i) / 20.0;
        diagonal.push_back({x, xp - x});
    }
    const ReturnCurve out = enforce_properties(make_curve(p, diagonal));
    REQUIRE(out.points.size() == diagonal.size());
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
        CHECK(out.points[i].x == doctest::Approx(diagonal[i].x));
        CHECK(out.points[i].y == doctest::Approx(diagonal[i].y));
    }
}

TEST_CASE("ray intersection on a simple segment") {
    const ReturnCurve curve =
        make_curve(std::exp(-4.0), {{0.0, 4.0}, {4.0, 0.0}}, true);
    const RayHit mid = intersect_ray(curve, M_PI / 4.0, {0.0, 0.0});
    CHECK(mid.point.x == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mid.point.y == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mid.distance == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

    const RayHit steep = intersect_ray(curve, std::atan(3.0), {0.0, 0.0});
    CHECK(steep.point.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(steep.point.y == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(steep.distance == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("ray through the corner of an L-shaped curve") {
    const double c = 6.907755278982137;  // -log(1e-3)
    const ReturnCurve curve = make_curve(1e-3, {{0.0, c}, {c, c}, {c, 0.0}}, true);
    const RayHit hit = intersect_ray(curve, M_PI / 4.0, {0.0, 0.0});
    CHECK(hit.point.x == doctest::Approx(c).epsilon(1e-12));
    CHECK(hit.point.y == doctest::Approx(c).epsilon(1e-12));
    CHECK(hit.distance == doctest::Approx(std::sqrt(2.0) * c).epsilon(1e-12));
    CHECK(hit.distance == doctest::Approx(9.769).epsilon(1e-4));
}

TEST_CASE("offset rays intersect on native-like scales") {
    const ReturnCurve curve =
        make_curve(1e-2, {{10.0, 50.0}, {20.0, 40.0}, {30.0, 20.0}}, true);
    const RayHit hit = intersect_ray(curve, M_PI / 4.0, {10.0, 15.0});
    // ray y = x + 5 crosses the segment (20,40)-(30,20)
    CHECK(hit.point.y == doctest::Approx(hit.point.x + 5.0).epsilon(1e-12));
    CHECK(hit.point.x > 20.0);
    CHECK(hit.point.x < 30.0);
}

TEST_CASE("every grid ray crosses an enforced random curve exactly once") {
    Rng rng(606);
    const AngleGrid grid = angle_grid(150);
    for (int rep = 0; rep < 40; ++rep) {
        const double p = std::exp(-3.0 - 5.0 * rng.uniform());
        const ReturnCurve curve = enforce_properties(random_raw_curve(rng, p));
        for (double theta : grid.angles) {
            const RayHit hit = intersect_ray(curve, theta, {0.0, 0.0});
            CHECK(std::isfinite(hit.distance));
            CHECK(hit.distance > 0.0);

            // count geometrically distinct crossings over all segments
            int distinct = 0;
            Point last{-1.0, -1.0};
            for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
                const Point& a = curve.points[i];
                const Point& b = curve.points[i + 1];
                const double dx = b.x - a.x;
                const double dy = b.y - a.y;
                if (dx == 0.0 && dy == 0.0) continue;
                const double det = std::sin(theta) * dx - std::cos(theta) * dy;
                if (det == 0.0) continue;
                const double s = (std::cos(theta) * a.y - std::sin(theta) * a.x) / det;
                const double r = (dx * a.y - dy * a.x) / det;
                if (s >= 0.0 && s <= 1.0 && r > 0.0) {
                    const Point q{a.x + s * dx, a.y + s * dy};
                    if (std::hypot(q.x - last.x, q.y - last.y) > 1e-9) {
                        ++distinct;
                        last = q;
                    }
                }
            }
            CHECK(distinct == 1);
        }
    }
}

TEST_CASE("intersection requires an enforced curve and reports misses") {
    const ReturnCurve raw = make_curve(1e-2, {{0.0, 1.0}, {1.0, 0.0}}, false);
    CHECK_THROWS_AS(intersect_ray(raw, M_PI / 4.0, {0.0, 0.0}), data_error);
    const ReturnCurve curve = make_curve(1e-2, {{0.0, 1.0}, {1.0, 0.0}}, true);
    CHECK_THROWS_AS(intersect_ray(curve, M_PI / 4.0, {5.0, 5.0}), numeric_error);
    CHECK_THROWS_AS(intersect_ray(curve, 0.0, {0.0, 0.0}), data_error);
    CHECK_THROWS_AS(intersect_ray(curve, M_PI_2, {0.0, 0.0}), data_error);
}

TEST_CASE("reference point is the componentwise minimum") {
    BivariateSample s;
    s.push_back(1.0, 5.0);
    s.push_back(2.0, 3.0);
    s.push_back(0.0, 9.0);
    const Point ref = reference_point(s);
    CHECK(ref.x == 0.0);
    CHECK(ref.y == 3.0);

    BivariateSample single;
    single.push_back(4.5, -2.5);
    const Point one = reference_point(single);
    CHECK(one.x == 4.5);
    CHECK(one.y == -2.5);

    CHECK_THROWS_AS(reference_point(BivariateSample{}), data_error);
}

TEST_CASE("enforcement rejects bad inputs") {
    CHECK_THROWS_AS(enforce_properties(make_curve(1e-3, {})), data_error);
    ReturnCurve laplace_curve = make_curve(1e-3, {{0.0, 1.0}});
    laplace_curve.margin = Margin::laplace;
    CHECK_THROWS_AS(enforce_properties(laplace_curve), data_error);
}

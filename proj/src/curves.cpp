#include "retcurve/curves.hpp"

#include <algorithm>
#include <cmath>

namespace retcurve {

AngleGrid angle_grid(int m, Point reference) {
    if (m < 1) throw data_error("angle_grid: m must be >= 1");
    AngleGrid grid;
    grid.m = m;
    grid.reference = reference;
    grid.angles.reserve(static_cast<std::size_t>(m));
    const double denom = 2.0 * static_cast<double>(m + 1);
    for (int j = 1; j <= m; ++j) {
        grid.angles.push_back(M_PI * static_cast<double>(m + 1 - j) / denom);
    }
    return grid;
}

ReturnCurve enforce_properties(ReturnCurve curve) {
    if (curve.points.empty()) throw data_error("enforce_properties: empty point list");
    if (curve.margin != Margin::exponential) {
        throw data_error("enforce_properties: curve must be on exponential margins");
    }
    if (!(curve.p > 0.0 && curve.p < 1.0)) {
        throw data_error("enforce_properties: p outside (0,1)");
    }
    const double xp = -std::log(curve.p);
    const double yp = xp;

    std::vector<Point> pts;
    pts.reserve(curve.points.size() + 2);
    for (const Point& q : curve.points) {
        if (q.x < 0.0 || q.y < 0.0) continue;  // off the exponential support
        pts.push_back({std::fmin(q.x, xp), std::fmin(q.y, yp)});
    }

    auto has_point = [&](double px, double py) {
        return std::any_of(pts.begin(), pts.end(), [&](const Point& q) {
            return q.x == px && q.y == py;
        });
    };
    if (!has_point(0.0, yp)) pts.push_back({0.0, yp});
    if (!has_point(xp, 0.0)) pts.push_back({xp, 0.0});

    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y > b.y;
    });

    // monotone sweep from (0, y_p): y can only step down as x grows
    double prev_y = yp;
    for (Point& q : pts) {
        q.y = std::fmin(q.y, prev_y);
        prev_y = q.y;
    }

    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point& a, const Point& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());

    curve.points = std::move(pts);
    curve.enforced = true;
    return curve;
}

RayHit intersect_ray(const ReturnCurve& curve, double theta, Point reference) {
    if (!curve.enforced) throw data_error("intersect_ray: curve must be enforced");
    if (curve.points.size() < 2) throw data_error("intersect_ray: degenerate curve");
    if (!(theta > 0.0 && theta < M_PI_2)) {
        throw data_error("intersect_ray: theta outside (0, pi/2)");
    }
    const double cx = std::cos(theta);
    const double cy = std::sin(theta);
    constexpr double kSegTol = 1e-12;

    // The curve continues flat beyond its recorded ends (y = y_p below the
    // support of X and x = x_p below the support of Y), so extend the arms
    // to the reference corner before scanning; steep offset rays would
    // otherwise miss a curve whose sampled span starts right of the
    // reference.
    std::vector<Point> pts;
    pts.reserve(curve.points.size() + 2);
    if (reference.x < curve.points.front().x) {
        pts.push_back({reference.x, curve.points.front().y});
    }
    pts.insert(pts.end(), curve.points.begin(), curve.points.end());
    if (reference.y < curve.points.back().y) {
        pts.push_back({curve.points.back().x, reference.y});
    }

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Point& a = pts[i];
        const Point& b = pts[i + 1];
        const double dx = b.x - a.x;
        const double dy = b.y - a.y;
        if (dx == 0.0 && dy == 0.0) continue;
        const double det = cy * dx - cx * dy;
        if (det == 0.0) continue;  // only possible for degenerate segments
        const double bx = a.x - reference.x;
        const double by = a.y - reference.y;
        const double s = (cx * by - cy * bx) / det;
        const double r = (dx * by - dy * bx) / det;
        if (s >= -kSegTol && s <= 1.0 + kSegTol && r > 0.0) {
            const double sc = std::clamp(s, 0.0, 1.0);
            Point hit{a.x + sc * dx, a.y + sc * dy};
            return {hit, std::hypot(hit.x - reference.x, hit.y - reference.y)};
        }
    }
    throw numeric_error("intersect_ray: ray does not cross the curve");
}

Point reference_point(const BivariateSample& sample) {
    if (sample.empty()) throw data_error("reference_point: empty sample");
    double x0 = sample.x[0];
    double y0 = sample.y[0];
    for (std::size_t i = 1; i < sample.size(); ++i) {
        x0 = std::fmin(x0, sample.x[i]);
        y0 = std::fmin(y0, sample.y[i]);
    }
    return {x0, y0};
}

}  // namespace retcurve

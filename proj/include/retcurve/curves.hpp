#ifndef RETCURVE_CURVES_HPP_
#define RETCURVE_CURVES_HPP_

#include <vector>

#include "retcurve/types.hpp"

namespace retcurve {

/// A return-curve estimate: the locus of (x,y) with joint survival
/// probability p, stored as an ordered piecewise-linear point list.
/// When `enforced` is true on exponential margins the curve starts at
/// (0, y_p), ends at (x_p, 0) with x_p = y_p = -log p, stays inside the
/// marginal (1-p)-quantile box and is monotone (x nondecreasing, y
/// nonincreasing).
struct ReturnCurve {
    double p = 0.0;
    Margin margin = Margin::exponential;
    std::vector<Point> points;
    bool enforced = false;
};

/// Decreasing angles pi(m+1-j)/(2(m+1)), j = 1..m, in (0, pi/2), with a
/// reference point for offset rays ((0,0) on standard margins, the
/// componentwise sample minima on native margins).
struct AngleGrid {
    int m = 0;
    std::vector<double> angles;
    Point reference{0.0, 0.0};
};

AngleGrid angle_grid(int m, Point reference = {0.0, 0.0});

/// Imposes the theoretical curve properties on exponential margins:
/// clamps coordinates at the marginal (1-p) quantiles, inserts the two
/// boundary points, sorts by x and sweeps y down to a monotone profile
/// starting from (0, y_p). Idempotent; never increases a coordinate.
ReturnCurve enforce_properties(ReturnCurve curve);

struct RayHit {
    Point point;
    double distance = 0.0;  ///< l2-norm from the ray's reference point
};

/// Unique intersection of the ray from `reference` at angle theta with
/// a monotone piecewise-linear curve. Ties on shared vertices resolve
/// to the first segment in x order.
RayHit intersect_ray(const ReturnCurve& curve, double theta, Point reference);

/// Componentwise sample minima (x0, y0); the case-study reference point.
Point reference_point(const BivariateSample& sample);

}  // namespace retcurve

#endif  // RETCURVE_CURVES_HPP_

#pragma once

#include <array>
#include <vector>

namespace ostc {

using Point2 = std::array<double, 2>;

// Andrew monotone chain; returns the hull counter-clockwise with strictly
// convex corners (collinear boundary points dropped). Fewer than 3 distinct
// non-collinear inputs yield a hull with fewer than 3 vertices.
std::vector<Point2> convex_hull(std::vector<Point2> points);

// Shoelace area of a simple polygon given in order.
double polygon_area(const std::vector<Point2>& polygon);

// Hull area of a point set; throws std::domain_error when the points are
// collinear or fewer than three.
double hull_area(std::vector<Point2> points);

}  // namespace ostc

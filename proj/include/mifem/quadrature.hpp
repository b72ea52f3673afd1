#pragma once

#include "mifem/geometry.hpp"
#include "mifem/interface.hpp"

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace mifem {

/// Points and positive weights; weights sum to the measure of the region.
/// Segment rules also record the parameter of each point along the segment.
struct QuadratureRule {
    std::vector<Point2> points;
    std::vector<double> weights;
    std::vector<double> params;

    std::size_t size() const { return weights.size(); }
    void append(const QuadratureRule& other);
};

/// Symmetric rules of degree 1, 2, 4 and 6 (1, 3, 6 and 12 points).
QuadratureRule triangle_rule(const std::array<Point2, 3>& tri, int degree);

/// Fan triangulation from the first vertex of a convex polygon.
QuadratureRule polygon_rule(std::span<const Point2> poly, int degree);

/// Rules on the plus and minus pieces of a cut element, in that order.
std::pair<QuadratureRule, QuadratureRule> cut_rule(const CutElementGeometry& cut, int degree);

/// Gauss-Legendre with 1, 2 or 3 points on the segment p0 -> p1.
QuadratureRule segment_rule(const Point2& p0, const Point2& p1, int npoints);

/// Gauss-Legendre on [0, t] and [t, 1] of the segment p0 -> p1.
QuadratureRule split_segment_rule(const Point2& p0, const Point2& p1, double t, int npoints);

} // namespace mifem

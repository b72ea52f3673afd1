#include "mifem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace mifem {

namespace {

struct BaryPoint {
    double l1, l2, l3, w;   // barycentric coordinates, weight normalized to sum 1
};

// Orbit of (a, a, 1-2a).
void add_orbit3(std::vector<BaryPoint>& out, double a, double w)
{
    const double b = 1.0 - 2.0 * a;
    out.push_back({a, a, b, w});
    out.push_back({a, b, a, w});
    out.push_back({b, a, a, w});
}

// Orbit of (a, b, 1-a-b) with distinct entries.
void add_orbit6(std::vector<BaryPoint>& out, double a, double b, double w)
{
    const double c = 1.0 - a - b;
    out.push_back({a, b, c, w});
    out.push_back({a, c, b, w});
    out.push_back({b, a, c, w});
    out.push_back({b, c, a, w});
    out.push_back({c, a, b, w});
    out.push_back({c, b, a, w});
}

std::vector<BaryPoint> make_reference_rule(int degree)
{
    std::vector<BaryPoint> r;
    switch (degree) {
    case 1:
        r.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0});
        break;
    case 2:
        add_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
        break;
    case 4:
        add_orbit3(r, 0.44594849091596488632, 0.22338158967801146570);
        add_orbit3(r, 0.09157621350977074346, 0.10995174365532186764);
        break;
    case 6:
        add_orbit3(r, 0.24928674517091065437, 0.11678627572637898343);
        add_orbit3(r, 0.06308901449150217621, 0.05084490637020674230);
        add_orbit6(r, 0.31035245103378421702, 0.05314504984481710642, 0.08285107561837380380);
        break;
    default:
        throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(degree));
    }
    return r;
}

const std::vector<BaryPoint>& reference_rule(int degree)
{
    static const std::vector<BaryPoint> d1 = make_reference_rule(1);
    static const std::vector<BaryPoint> d2 = make_reference_rule(2);
    static const std::vector<BaryPoint> d4 = make_reference_rule(4);
    static const std::vector<BaryPoint> d6 = make_reference_rule(6);
    switch (degree) {
    case 1: return d1;
    case 2: return d2;
    case 4: return d4;
    case 6: return d6;
    default:
        throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(degree));
    }
}

struct GaussPoint {
    double s, w;   // on [0, 1]
};

std::span<const GaussPoint> gauss_legendre(int npoints)
{
    static const GaussPoint g1[] = {{0.5, 1.0}};
    static const double d2 = 0.5 / std::sqrt(3.0);
    static const GaussPoint g2[] = {{0.5 - d2, 0.5}, {0.5 + d2, 0.5}};
    static const double d3 = 0.5 * std::sqrt(0.6);
    static const GaussPoint g3[] = {{0.5 - d3, 5.0 / 18.0}, {0.5, 4.0 / 9.0}, {0.5 + d3, 5.0 / 18.0}};
    switch (npoints) {
    case 1: return g1;
    case 2: return g2;
    case 3: return g3;
    default:
        throw std::invalid_argument("segment_rule: unsupported point count " + std::to_string(npoints));
    }
}

void append_segment(QuadratureRule& rule, const Point2& p0, const Point2& p1, double t0, double t1,
                    int npoints)
{
    const double len = norm(p1 - p0) * (t1 - t0);
    for (const auto& g : gauss_legendre(npoints)) {
        const double t = t0 + g.s * (t1 - t0);
        rule.points.push_back(lerp(p0, p1, t));
        rule.weights.push_back(g.w * len);
        rule.params.push_back(t);
    }
}

} // namespace

void QuadratureRule::append(const QuadratureRule& other)
{
    points.insert(points.end(), other.points.begin(), other.points.end());
    weights.insert(weights.end(), other.weights.begin(), other.weights.end());
    params.insert(params.end(), other.params.begin(), other.params.end());
}

QuadratureRule triangle_rule(const std::array<Point2, 3>& tri, int degree)
{
    const auto& ref = reference_rule(degree);
    const double area = std::abs(signed_area(tri[0], tri[1], tri[2]));
    QuadratureRule rule;
    rule.points.reserve(ref.size());
    rule.weights.reserve(ref.size());
    for (const auto& q : ref) {
        rule.points.push_back(q.l1 * tri[0] + q.l2 * tri[1] + q.l3 * tri[2]);
        rule.weights.push_back(q.w * area);
    }
    return rule;
}

QuadratureRule polygon_rule(std::span<const Point2> poly, int degree)
{
    QuadratureRule rule;
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        // A fan triangle collapses when a cut point lands on a vertex; it holds no area.
        if (!(signed_area(poly[0], poly[k], poly[k + 1]) > 0.0)) {
            continue;
        }
        rule.append(triangle_rule({poly[0], poly[k], poly[k + 1]}, degree));
    }
    return rule;
}

std::pair<QuadratureRule, QuadratureRule> cut_rule(const CutElementGeometry& cut, int degree)
{
    // The quadrilateral is stored starting at D, so the fan splits it along D -> far vertex.
    return {polygon_rule(cut.sub_plus, degree), polygon_rule(cut.sub_minus, degree)};
}

QuadratureRule segment_rule(const Point2& p0, const Point2& p1, int npoints)
{
    QuadratureRule rule;
    append_segment(rule, p0, p1, 0.0, 1.0, npoints);
    return rule;
}

QuadratureRule split_segment_rule(const Point2& p0, const Point2& p1, double t, int npoints)
{
    if (!(t > 0.0 && t < 1.0)) {
        throw std::invalid_argument("split_segment_rule: breakpoint must lie in (0, 1)");
    }
    QuadratureRule rule;
    append_segment(rule, p0, p1, 0.0, t, npoints);
    append_segment(rule, p0, p1, t, 1.0, npoints);
    return rule;
}

} // namespace mifem

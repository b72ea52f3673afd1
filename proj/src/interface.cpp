#include "mifem/interface.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mifem {

namespace {

constexpr double bisection_width = 1e-14;

std::string describe_triangle(const StructuredMesh& mesh, int element)
{
    std::ostringstream os;
    os.precision(17);
    os << "element " << element << " [";
    for (const auto& p : mesh.triangle_points(element)) {
        os << " (" << p.x << ", " << p.y << ")";
    }
    os << " ]";
    return os.str();
}

} // namespace

LevelSetInterface LevelSetInterface::flipped() const
{
    LevelSetInterface f = *this;
    f.orientation = orientation == Orientation::minus_is_negative ? Orientation::minus_is_positive
                                                                   : Orientation::minus_is_negative;
    return f;
}

Side side_of(const LevelSetInterface& iface, const Point2& p)
{
    const double v = iface.oriented_level(p);
    if (std::abs(v) <= iface.snap_tolerance()) {
        return Side::plus;
    }
    return v > 0.0 ? Side::plus : Side::minus;
}

std::vector<Side> classify_vertices(const StructuredMesh& mesh, const LevelSetInterface& iface)
{
    std::vector<Side> sides(mesh.num_vertices());
    for (std::size_t v = 0; v < sides.size(); ++v) {
        sides[v] = side_of(iface, mesh.vertex(static_cast<int>(v)));
    }
    return sides;
}

std::vector<ElementClass> classify_elements(const StructuredMesh& mesh,
                                            const std::vector<Side>& vertex_sides)
{
    std::vector<ElementClass> cls(mesh.num_triangles());
    for (std::size_t t = 0; t < cls.size(); ++t) {
        const auto& tri = mesh.triangle(static_cast<int>(t));
        const Side s0 = vertex_sides[tri[0]];
        if (vertex_sides[tri[1]] != s0 || vertex_sides[tri[2]] != s0) {
            cls[t] = ElementClass::interface;
        } else {
            cls[t] = s0 == Side::plus ? ElementClass::plus : ElementClass::minus;
        }
    }
    return cls;
}

std::vector<ElementClass> classify_elements(const StructuredMesh& mesh,
                                            const LevelSetInterface& iface)
{
    return classify_elements(mesh, classify_vertices(mesh, iface));
}

double segment_intersection(const LevelSetInterface& iface, const Point2& p0, Side s0,
                            const Point2& p1, Side s1)
{
    if (s0 == s1) {
        throw GeometryError("not a cut edge");
    }
    // Interior points use the raw sign so that the root is not shifted by snapping.
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > bisection_width; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Side s = iface.oriented_level(lerp(p0, p1, mid)) >= 0.0 ? Side::plus : Side::minus;
        (s == s0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double edge_intersection(const StructuredMesh& mesh, const LevelSetInterface& iface, int edge)
{
    const auto& e = mesh.edge(edge);
    const Point2& p0 = mesh.vertex(e.endpoints[0]);
    const Point2& p1 = mesh.vertex(e.endpoints[1]);
    return segment_intersection(iface, p0, side_of(iface, p0), p1, side_of(iface, p1));
}

CutElementGeometry cut_geometry(const StructuredMesh& mesh, int element,
                                const std::array<Side, 3>& vs,
                                const std::array<double, 3>& local_edge_t)
{
    int sign_changes = 0;
    for (int k = 0; k < 3; ++k) {
        sign_changes += vs[k] != vs[(k + 1) % 3] ? 1 : 0;
    }
    if (sign_changes != 2) {
        throw GeometryError("unsupported cut topology at " + describe_triangle(mesh, element));
    }
    int lone = 0;
    for (int k = 0; k < 3; ++k) {
        if (vs[(k + 1) % 3] == vs[(k + 2) % 3]) {
            lone = k;
        }
    }
    const int k1 = (lone + 1) % 3;
    const int k2 = (lone + 2) % 3;

    auto cut_point = [&](int local_edge) {
        const int e = mesh.triangle_edge(element, local_edge);
        const double t = local_edge_t[local_edge];
        if (!(t > 0.0 && t < 1.0)) {
            throw GeometryError("missing edge crossing at " + describe_triangle(mesh, element));
        }
        const auto& ed = mesh.edge(e);
        return CutPoint{e, t, lerp(mesh.vertex(ed.endpoints[0]), mesh.vertex(ed.endpoints[1]), t)};
    };

    const auto pts = mesh.triangle_points(element);
    CutElementGeometry g;
    g.element = element;
    g.lone_vertex = lone;
    g.lone_side = vs[lone];
    g.D = cut_point(lone);   // local edge (lone, lone+1)
    g.E = cut_point(k2);     // local edge (lone+2, lone)

    std::vector<Point2> lone_piece{pts[lone], g.D.point, g.E.point};
    std::vector<Point2> other_piece{g.D.point, pts[k1], pts[k2], g.E.point};

    // The lone vertex is left of D->E, so the clockwise rotation points into the quadrilateral.
    const Vec2 de = g.E.point - g.D.point;
    const Vec2 into_quad = (1.0 / norm(de)) * rotate_cw(de);
    g.chord_normal = g.lone_side == Side::minus ? into_quad : -into_quad;

    const double a_lone = polygon_area(lone_piece);
    const double a_other = polygon_area(other_piece);
    if (g.lone_side == Side::plus) {
        g.sub_plus = std::move(lone_piece);
        g.sub_minus = std::move(other_piece);
        g.area_plus = a_lone;
        g.area_minus = a_other;
    } else {
        g.sub_minus = std::move(lone_piece);
        g.sub_plus = std::move(other_piece);
        g.area_minus = a_lone;
        g.area_plus = a_other;
    }
    return g;
}

CutElementGeometry cut_geometry(const StructuredMesh& mesh, const LevelSetInterface& iface,
                                int element)
{
    const auto& tri = mesh.triangle(element);
    std::array<Side, 3> vs{};
    for (int k = 0; k < 3; ++k) {
        vs[k] = side_of(iface, mesh.vertex(tri[k]));
    }
    std::array<double, 3> ts{};
    for (int k = 0; k < 3; ++k) {
        ts[k] = vs[k] != vs[(k + 1) % 3]
                    ? edge_intersection(mesh, iface, mesh.triangle_edge(element, k))
                    : std::numeric_limits<double>::quiet_NaN();
    }
    return cut_geometry(mesh, element, vs, ts);
}

InterfaceDiscretization discretize_interface(const StructuredMesh& mesh,
                                             const LevelSetInterface& iface,
                                             const InterfaceOptions& opts)
{
    InterfaceDiscretization d;
    d.vertex_side = classify_vertices(mesh, iface);
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        if (std::abs(iface.oriented_level(mesh.vertex(static_cast<int>(v)))) <= iface.snap_tolerance()) {
            ++d.snapped_vertices;
        }
    }
    d.element_class = classify_elements(mesh, d.vertex_side);

    d.edge_crossing.assign(mesh.num_edges(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        const auto& ed = mesh.edge(static_cast<int>(e));
        const Side s0 = d.vertex_side[ed.endpoints[0]];
        const Side s1 = d.vertex_side[ed.endpoints[1]];
        if (s0 != s1) {
            d.edge_crossing[e] = segment_intersection(iface, mesh.vertex(ed.endpoints[0]), s0,
                                                      mesh.vertex(ed.endpoints[1]), s1);
        }
    }

    d.cut_index.assign(mesh.num_triangles(), -1);
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        if (d.element_class[t] != ElementClass::interface) {
            continue;
        }
        const int elem = static_cast<int>(t);
        const auto& tri = mesh.triangle(elem);
        std::array<Side, 3> vs{};
        std::array<double, 3> ts{};
        for (int k = 0; k < 3; ++k) {
            vs[k] = d.vertex_side[tri[k]];
            ts[k] = d.edge_crossing[mesh.triangle_edge(elem, k)];
        }
        auto g = cut_geometry(mesh, elem, vs, ts);
        const double area = mesh.triangle_area(elem);
        if (std::min(g.area_plus, g.area_minus) < opts.small_cut_ratio * area) {
            d.element_class[t] = g.area_plus >= g.area_minus ? ElementClass::plus : ElementClass::minus;
            ++d.small_cut_reclassified;
            continue;
        }
        d.cut_index[t] = static_cast<int>(d.cuts.size());
        d.cuts.push_back(std::move(g));
    }
    return d;
}

} // namespace mifem

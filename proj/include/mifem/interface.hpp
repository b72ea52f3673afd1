#pragma once

#include "mifem/geometry.hpp"
#include "mifem/mesh.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mifem {

enum class Side : std::uint8_t { plus, minus };

inline Side opposite(Side s) { return s == Side::plus ? Side::minus : Side::plus; }
inline int side_index(Side s) { return s == Side::plus ? 0 : 1; }
inline const char* to_string(Side s) { return s == Side::plus ? "+" : "-"; }

/// Raised when the interface cannot be represented on the mesh.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Which sign of the level function marks the minus subdomain.
enum class Orientation : std::uint8_t { minus_is_negative, minus_is_positive };

/// Interface given as the zero set of a smooth level function.
struct LevelSetInterface {
    std::function<double(const Point2&)> level;
    std::function<Vec2(const Point2&)> gradient;
    Orientation orientation = Orientation::minus_is_negative;
    double characteristic_scale = 1.0;

    double snap_tolerance() const { return 1e-12 * (1.0 + characteristic_scale); }

    /// Level value with the sign flipped so that positive means the plus side.
    double oriented_level(const Point2& p) const
    {
        const double v = level(p);
        return orientation == Orientation::minus_is_negative ? v : -v;
    }

    LevelSetInterface flipped() const;
};

/// Sign query; values within the snap tolerance of zero report plus.
Side side_of(const LevelSetInterface& iface, const Point2& p);

enum class ElementClass : std::uint8_t { plus, minus, interface };

std::vector<Side> classify_vertices(const StructuredMesh& mesh, const LevelSetInterface& iface);

/// Vertex-sign classification: an element is cut iff its vertex sides differ.
std::vector<ElementClass> classify_elements(const StructuredMesh& mesh,
                                            const LevelSetInterface& iface);
std::vector<ElementClass> classify_elements(const StructuredMesh& mesh,
                                            const std::vector<Side>& vertex_sides);

/// Parametric root t in (0,1) along the edge, measured from endpoints[0].
double edge_intersection(const StructuredMesh& mesh, const LevelSetInterface& iface, int edge);

/// Root of the level function on the segment p0 -> p1 whose end sides differ.
double segment_intersection(const LevelSetInterface& iface, const Point2& p0, Side s0,
                            const Point2& p1, Side s1);

struct CutPoint {
    int edge = -1;      // global edge index
    double t = 0.0;     // parameter from the edge's endpoints[0]
    Point2 point;
};

/// Straight-chord split of an interface triangle.
///
/// The lone vertex is the one whose side differs from the other two; D lies on
/// local edge (lone, lone+1) and E on local edge (lone+2, lone). The lone side
/// piece is the triangle (A_lone, D, E); the other piece is the quadrilateral
/// (D, A_lone+1, A_lone+2, E). Both are counterclockwise.
struct CutElementGeometry {
    int element = -1;
    int lone_vertex = 0;          // local index 0..2
    Side lone_side = Side::plus;
    CutPoint D;
    CutPoint E;
    Vec2 chord_normal;            // unit, points into the plus piece
    std::vector<Point2> sub_plus;
    std::vector<Point2> sub_minus;
    double area_plus = 0.0;
    double area_minus = 0.0;

    const std::vector<Point2>& piece(Side s) const { return s == Side::plus ? sub_plus : sub_minus; }
    double area(Side s) const { return s == Side::plus ? area_plus : area_minus; }
    /// Side of p relative to the chord DE; points on the chord report plus.
    Side chord_side(const Point2& p) const
    {
        return dot(p - D.point, chord_normal) >= 0.0 ? Side::plus : Side::minus;
    }
};

/// Builds the cut geometry from vertex sides and per-edge crossing parameters.
CutElementGeometry cut_geometry(const StructuredMesh& mesh, int element,
                                const std::array<Side, 3>& vertex_sides,
                                const std::array<double, 3>& local_edge_t);

/// Convenience overload that classifies vertices and locates crossings itself.
CutElementGeometry cut_geometry(const StructuredMesh& mesh, const LevelSetInterface& iface,
                                int element);

struct InterfaceOptions {
    double small_cut_ratio = 1e-10;
};

/// Mesh-wide interface data: vertex sides, element classes after the small-cut
/// guard, crossing parameters on sign-changing edges and cut geometries.
struct InterfaceDiscretization {
    std::vector<Side> vertex_side;
    std::vector<ElementClass> element_class;
    std::vector<double> edge_crossing;        // NaN on edges without a sign change
    std::vector<int> cut_index;               // element -> index into cuts, or -1
    std::vector<CutElementGeometry> cuts;
    std::size_t snapped_vertices = 0;
    std::size_t small_cut_reclassified = 0;

    bool is_cut(int element) const { return cut_index[element] >= 0; }
    const CutElementGeometry& cut(int element) const { return cuts[cut_index[element]]; }
    bool edge_is_crossed(int edge) const { return edge_crossing[edge] == edge_crossing[edge]; }
    /// Side of an uncut element (plus/minus class).
    Side element_side(int element) const
    {
        return element_class[element] == ElementClass::minus ? Side::minus : Side::plus;
    }
    std::size_t num_interface_elements() const { return cuts.size(); }
};

InterfaceDiscretization discretize_interface(const StructuredMesh& mesh,
                                             const LevelSetInterface& iface,
                                             const InterfaceOptions& opts = {});

} // namespace mifem

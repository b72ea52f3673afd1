#pragma once

#include "mifem/functions.hpp"
#include "mifem/geometry.hpp"
#include "mifem/interface.hpp"
#include "mifem/mesh.hpp"

#include <array>
#include <span>
#include <vector>

namespace mifem {

/// Linear function value + grad . (p - origin).
struct LinearPiece {
    double value = 0.0;
    Vec2 grad;
};

enum class BasisKind : std::uint8_t { standard, immersed };

/// Nodal basis on one triangle. Function i belongs to local vertex i. Standard
/// elements use one linear piece per function; immersed elements carry one
/// piece per side, glued continuously along the chord DE with matching
/// beta-weighted normal derivative.
class LocalBasis {
public:
    int element = -1;
    BasisKind kind = BasisKind::standard;
    Point2 origin;
    std::array<std::array<LinearPiece, 3>, 2> pieces{};   // [side_index][function]
    std::array<double, 2> beta{1.0, 1.0};                 // coefficient used per side
    const CutElementGeometry* cut = nullptr;

    bool is_immersed() const { return kind == BasisKind::immersed; }

    const LinearPiece& piece(int i, Side s) const { return pieces[side_index(s)][i]; }
    double value(int i, const Point2& p, Side s) const
    {
        const auto& pc = piece(i, s);
        return pc.value + dot(pc.grad, p - origin);
    }
    const Vec2& gradient(int i, Side s) const { return piece(i, s).grad; }

    /// (a, b, c) with phi = a + b x + c y on side s.
    std::array<double, 3> coefficients(int i, Side s) const;

    /// Piece that owns p: the chord side on immersed elements.
    Side side_at(const Point2& p, Side uncut_side) const
    {
        return cut != nullptr ? cut->chord_side(p) : uncut_side;
    }
};

/// Barycentric functions; throws on a degenerate triangle.
LocalBasis standard_p1(const std::array<Point2, 3>& tri);

/// Flux-jump constrained piecewise-linear functions on a cut triangle.
/// Throws GeometryError if the 6x6 constraint system is singular.
LocalBasis immersed_p1(const std::array<Point2, 3>& tri, const CutElementGeometry& cut,
                       double beta_plus, double beta_minus);

/// Constraint residuals of one immersed basis function, each scaled to be
/// relative (used by tests and the acceptance suite).
struct BasisResiduals {
    double nodal = 0.0;
    double continuity = 0.0;
    double flux = 0.0;
    double partition_of_unity = 0.0;
};
BasisResiduals basis_residuals(const LocalBasis& basis, const std::array<Point2, 3>& tri);

/// The discrete space over a mesh: standard bases on uncut elements (built on
/// demand) and immersed bases on cut elements (built once).
class ImmersedSpace {
public:
    ImmersedSpace(const StructuredMesh& mesh, const InterfaceDiscretization& iface,
                  const PiecewiseFunction& beta);

    const StructuredMesh& mesh() const { return *mesh_; }
    const InterfaceDiscretization& interface() const { return *iface_; }
    std::size_t num_dofs() const { return mesh_->num_vertices(); }

    LocalBasis basis(int element) const;

    /// Coefficient value of the element piece on side s (centroid sampled).
    double piece_beta(int element, Side s) const;

    double value(std::span<const double> coeffs, int element, const Point2& p, Side s) const;
    Vec2 gradient(std::span<const double> coeffs, int element, Side s) const;

private:
    const StructuredMesh* mesh_;
    const InterfaceDiscretization* iface_;
    PiecewiseFunction beta_;
    std::vector<LocalBasis> immersed_;   // indexed like iface.cuts
};

/// Nodal interpolant: vertex values of u taken on each vertex's side.
std::vector<double> interpolate(const ImmersedSpace& space, const PiecewiseFunction& u);

} // namespace mifem

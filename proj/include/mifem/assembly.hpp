#pragma once

#include "mifem/basis.hpp"
#include "mifem/functions.hpp"
#include "mifem/sparse.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mifem {

enum class Scheme { ifem, modified };

const char* to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

struct SchemeOptions {
    Scheme scheme = Scheme::modified;
    int epsilon = -1;         // -1 SIPG, 0 IP, +1 NIPG
    double sigma0 = 0.1;      // penalty, scaled by the local max coefficient
    int volume_degree = 4;
    int edge_points = 2;      // Gauss points per edge sub-segment

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
    bool symmetric() const { return scheme == Scheme::ifem || epsilon == -1; }
};

struct GlobalSystem {
    CsrMatrix matrix;
    std::vector<double> rhs;
    std::vector<std::pair<int, double>> dirichlet;
    SchemeOptions options;

    std::size_t size() const { return rhs.size(); }
    bool symmetric() const { return options.symmetric(); }
};

/// Interior edges touching at least one cut element; the only edges where
/// traces of the discrete space can jump.
std::vector<int> interface_edges(const ImmersedSpace& space);

/// P1 pattern plus the couplings of the two opposite vertices of every edge in `edges`.
CsrMatrix system_pattern(const ImmersedSpace& space, std::span<const int> edges);

/// 3x3 element matrix of the beta-weighted gradient form.
std::array<std::array<double, 3>, 3> element_stiffness(const ImmersedSpace& space,
                                                       const PiecewiseFunction& beta, int element,
                                                       int degree);

/// Local matrix of an interior edge over the union of its two triangles' vertices.
/// Rows are test functions, columns trial functions.
struct EdgeBlock {
    std::array<int, 4> dofs{};
    std::array<std::array<double, 4>, 4> values{};
};

/// Edge contribution with consistency weight (0 disables the flux terms), symmetry
/// flag epsilon and penalty coefficient sigma0 (0 disables the penalty).
EdgeBlock edge_block(const ImmersedSpace& space, const PiecewiseFunction& beta, int edge,
                     double consistency, int epsilon, double sigma0, int npoints);

/// Boundary edges crossed by the interface. Basis functions of interior vertices
/// do not vanish on them, so the modified scheme imposes the boundary data weakly
/// there with the same consistency and penalty terms as on interior edges.
std::vector<int> crossed_boundary_edges(const ImmersedSpace& space);

struct BoundaryEdgeBlock {
    std::array<int, 3> dofs{};
    std::array<std::array<double, 3>, 3> values{};
    std::array<double, 3> rhs{};
};

/// -int beta du/dn v + eps int beta dv/dn (u - g) + sigma/|e| int (u - g) v on a
/// boundary edge, with the g terms returned in rhs.
BoundaryEdgeBlock boundary_edge_block(const ImmersedSpace& space, const PiecewiseFunction& beta,
                                      const PiecewiseFunction& g, int edge, int epsilon, double sigma0,
                                      int npoints);

/// Penalty weight sigma0 * max coefficient over the pieces of both neighbors.
double edge_penalty_weight(const ImmersedSpace& space, int edge, double sigma0);

void assemble_volume(const ImmersedSpace& space, const PiecewiseFunction& beta, int degree,
                     CsrMatrix& matrix);
void assemble_edge_consistency(const ImmersedSpace& space, const PiecewiseFunction& beta, int epsilon,
                               int npoints, CsrMatrix& matrix);
void assemble_penalty(const ImmersedSpace& space, const PiecewiseFunction& beta, double sigma0,
                      int npoints, CsrMatrix& matrix);
std::vector<double> assemble_load(const ImmersedSpace& space, const PiecewiseFunction& source,
                                  int degree);

/// Unconstrained matrix and load for the chosen scheme. The boundary data g enters
/// the modified scheme on crossed boundary edges; apply_dirichlet must still be
/// called with the same data.
GlobalSystem assemble_system(const ImmersedSpace& space, const PiecewiseFunction& beta,
                             const PiecewiseFunction& source, const PiecewiseFunction& g,
                             const SchemeOptions& options);

/// Imposes u = g on boundary vertices. Constrained rows become identity rows and
/// the known columns are moved to the right-hand side, so symmetry is kept.
void apply_dirichlet(GlobalSystem& system, const StructuredMesh& mesh,
                     const std::vector<double>& boundary_values);

/// Boundary values of u taken on each vertex's side.
std::vector<double> boundary_trace(const ImmersedSpace& space, const PiecewiseFunction& u);

} // namespace mifem

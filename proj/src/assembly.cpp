#include "mifem/assembly.hpp"

#include "mifem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mifem {

const char* to_string(Scheme s)
{
    return s == Scheme::ifem ? "ifem" : "modified";
}

Scheme parse_scheme(const std::string& s)
{
    if (s == "ifem") {
        return Scheme::ifem;
    }
    if (s == "modified") {
        return Scheme::modified;
    }
    throw std::invalid_argument("unknown scheme '" + s + "' (expected ifem or modified)");
}

void SchemeOptions::validate() const
{
    if (epsilon < -1 || epsilon > 1) {
        throw std::invalid_argument("epsilon must be -1, 0 or 1");
    }
    if (!(sigma0 >= 0.0)) {
        throw std::invalid_argument("sigma0 must be nonnegative");
    }
    if (volume_degree != 1 && volume_degree != 2 && volume_degree != 4 && volume_degree != 6) {
        throw std::invalid_argument("volume quadrature degree must be 1, 2, 4 or 6");
    }
    if (edge_points < 1 || edge_points > 3) {
        throw std::invalid_argument("edge quadrature points must be 1, 2 or 3");
    }
}

std::vector<int> interface_edges(const ImmersedSpace& space)
{
    const auto& mesh = space.mesh();
    const auto& iface = space.interface();
    std::vector<int> out;
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        const auto& ed = mesh.edge(static_cast<int>(e));
        if (ed.is_interior() && (iface.is_cut(ed.adjacent[0]) || iface.is_cut(ed.adjacent[1]))) {
            out.push_back(static_cast<int>(e));
        }
    }
    return out;
}

namespace {

int opposite_vertex(const StructuredMesh& mesh, int tri, const Edge& ed)
{
    for (int v : mesh.triangle(tri)) {
        if (v != ed.endpoints[0] && v != ed.endpoints[1]) {
            return v;
        }
    }
    throw std::logic_error("opposite_vertex: triangle does not contain edge");
}

} // namespace

CsrMatrix system_pattern(const ImmersedSpace& space, std::span<const int> edges)
{
    const auto& mesh = space.mesh();
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(2 * mesh.num_edges() + 2 * edges.size());
    for (const auto& ed : mesh.edges()) {
        pairs.emplace_back(ed.endpoints[0], ed.endpoints[1]);
        pairs.emplace_back(ed.endpoints[1], ed.endpoints[0]);
    }
    for (int e : edges) {
        const auto& ed = mesh.edge(e);
        const int c = opposite_vertex(mesh, ed.adjacent[0], ed);
        const int d = opposite_vertex(mesh, ed.adjacent[1], ed);
        pairs.emplace_back(c, d);
        pairs.emplace_back(d, c);
    }
    return CsrMatrix::from_pattern(static_cast<int>(mesh.num_vertices()), pairs);
}

std::array<std::array<double, 3>, 3> element_stiffness(const ImmersedSpace& space,
                                                       const PiecewiseFunction& beta, int element,
                                                       int degree)
{
    std::array<std::array<double, 3>, 3> K{};
    const LocalBasis b = space.basis(element);
    auto accumulate = [&](const QuadratureRule& rule, Side s) {
        double bint = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            bint += rule.weights[q] * beta(s, rule.points[q]);
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                K[i][j] += bint * dot(b.gradient(i, s), b.gradient(j, s));
            }
        }
    };
    const auto& iface = space.interface();
    if (iface.is_cut(element)) {
        const auto [rp, rm] = cut_rule(iface.cut(element), degree);
        accumulate(rp, Side::plus);
        accumulate(rm, Side::minus);
    } else {
        accumulate(triangle_rule(space.mesh().triangle_points(element), degree),
                   iface.element_side(element));
    }
    return K;
}

double edge_penalty_weight(const ImmersedSpace& space, int edge, double sigma0)
{
    const auto& ed = space.mesh().edge(edge);
    const auto& iface = space.interface();
    double bmax = 0.0;
    for (int k = 0; k < ed.num_adjacent; ++k) {
        const int t = ed.adjacent[k];
        if (iface.is_cut(t)) {
            bmax = std::max({bmax, space.piece_beta(t, Side::plus), space.piece_beta(t, Side::minus)});
        } else {
            bmax = std::max(bmax, space.piece_beta(t, iface.element_side(t)));
        }
    }
    return sigma0 * bmax;
}

EdgeBlock edge_block(const ImmersedSpace& space, const PiecewiseFunction& beta, int edge,
                     double consistency, int epsilon, double sigma0, int npoints)
{
    const auto& mesh = space.mesh();
    const auto& iface = space.interface();
    const auto& ed = mesh.edge(edge);
    if (!ed.is_interior()) {
        throw std::invalid_argument("edge_block: boundary edge");
    }
    const std::array<int, 2> elems{ed.adjacent[0], ed.adjacent[1]};
    const std::array<LocalBasis, 2> bases{space.basis(elems[0]), space.basis(elems[1])};

    EdgeBlock blk;
    const auto& tri0 = mesh.triangle(elems[0]);
    const auto& tri1 = mesh.triangle(elems[1]);
    blk.dofs = {tri0[0], tri0[1], tri0[2], opposite_vertex(mesh, elems[1], ed)};
    std::array<std::array<int, 3>, 2> pos{};
    for (int i = 0; i < 3; ++i) {
        pos[0][i] = i;
        pos[1][i] = static_cast<int>(std::find(blk.dofs.begin(), blk.dofs.end(), tri1[i]) - blk.dofs.begin());
    }

    const Point2& p0 = mesh.vertex(ed.endpoints[0]);
    const Point2& p1 = mesh.vertex(ed.endpoints[1]);
    const bool crossed = iface.edge_is_crossed(edge);
    const double tstar = crossed ? iface.edge_crossing[edge] : 0.0;
    const QuadratureRule rule =
        crossed ? split_segment_rule(p0, p1, tstar, npoints) : segment_rule(p0, p1, npoints);
    const double penalty = sigma0 > 0.0 ? edge_penalty_weight(space, edge, sigma0) / ed.length : 0.0;
    const Vec2& n = ed.normal;

    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point2& p = rule.points[q];
        const Side vertex_side = iface.vertex_side[ed.endpoints[crossed && rule.params[q] > tstar ? 1 : 0]];
        std::array<std::array<double, 4>, 2> val{};
        std::array<std::array<double, 4>, 2> flux{};
        for (int k = 0; k < 2; ++k) {
            const Side s = iface.is_cut(elems[k]) ? vertex_side : iface.element_side(elems[k]);
            const double bk = beta(s, p);
            for (int i = 0; i < 3; ++i) {
                val[k][pos[k][i]] = bases[k].value(i, p, s);
                flux[k][pos[k][i]] = bk * dot(bases[k].gradient(i, s), n);
            }
        }
        std::array<double, 4> jump{};
        std::array<double, 4> avg{};
        for (int a = 0; a < 4; ++a) {
            jump[a] = val[0][a] - val[1][a];
            avg[a] = 0.5 * (flux[0][a] + flux[1][a]);
        }
        const double w = rule.weights[q];
        for (int a = 0; a < 4; ++a) {
            for (int c = 0; c < 4; ++c) {
                blk.values[a][c] += w * (consistency * (-avg[c] * jump[a] + epsilon * avg[a] * jump[c]) +
                                         penalty * jump[a] * jump[c]);
            }
        }
    }
    return blk;
}

std::vector<int> crossed_boundary_edges(const ImmersedSpace& space)
{
    const auto& mesh = space.mesh();
    const auto& iface = space.interface();
    std::vector<int> out;
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        const int ei = static_cast<int>(e);
        if (!mesh.edge(ei).is_interior() && iface.edge_is_crossed(ei)) {
            out.push_back(ei);
        }
    }
    return out;
}

BoundaryEdgeBlock boundary_edge_block(const ImmersedSpace& space, const PiecewiseFunction& beta,
                                      const PiecewiseFunction& g, int edge, int epsilon, double sigma0,
                                      int npoints)
{
    const auto& mesh = space.mesh();
    const auto& iface = space.interface();
    const auto& ed = mesh.edge(edge);
    if (ed.is_interior()) {
        throw std::invalid_argument("boundary_edge_block: interior edge");
    }
    const int elem = ed.adjacent[0];
    const LocalBasis b = space.basis(elem);
    BoundaryEdgeBlock blk;
    blk.dofs = mesh.triangle(elem);

    const Point2& p0 = mesh.vertex(ed.endpoints[0]);
    const Point2& p1 = mesh.vertex(ed.endpoints[1]);
    const bool crossed = iface.edge_is_crossed(edge);
    const double tstar = crossed ? iface.edge_crossing[edge] : 0.0;
    const QuadratureRule rule =
        crossed ? split_segment_rule(p0, p1, tstar, npoints) : segment_rule(p0, p1, npoints);
    const double penalty = sigma0 > 0.0 ? edge_penalty_weight(space, edge, sigma0) / ed.length : 0.0;

    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point2& p = rule.points[q];
        const Side vertex_side = iface.vertex_side[ed.endpoints[crossed && rule.params[q] > tstar ? 1 : 0]];
        const Side s = iface.is_cut(elem) ? vertex_side : iface.element_side(elem);
        const double bq = beta(s, p);
        std::array<double, 3> val{}, flux{};
        for (int i = 0; i < 3; ++i) {
            val[i] = b.value(i, p, s);
            flux[i] = bq * dot(b.gradient(i, s), ed.normal);
        }
        const double w = rule.weights[q];
        const double gq = g(s, p);
        for (int a = 0; a < 3; ++a) {
            for (int c = 0; c < 3; ++c) {
                blk.values[a][c] += w * (-flux[c] * val[a] + epsilon * flux[a] * val[c] + penalty * val[a] * val[c]);
            }
            blk.rhs[a] += w * (epsilon * flux[a] + penalty * val[a]) * gq;
        }
    }
    return blk;
}

namespace {

void scatter(const EdgeBlock& blk, CsrMatrix& matrix)
{
    for (int a = 0; a < 4; ++a) {
        for (int c = 0; c < 4; ++c) {
            if (blk.values[a][c] != 0.0) {
                matrix.add(blk.dofs[a], blk.dofs[c], blk.values[a][c]);
            }
        }
    }
}

} // namespace

void assemble_volume(const ImmersedSpace& space, const PiecewiseFunction& beta, int degree,
                     CsrMatrix& matrix)
{
    const auto& mesh = space.mesh();
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const int elem = static_cast<int>(t);
        const auto K = element_stiffness(space, beta, elem, degree);
        const auto& tri = mesh.triangle(elem);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                matrix.add(tri[i], tri[j], K[i][j]);
            }
        }
    }
}

void assemble_edge_consistency(const ImmersedSpace& space, const PiecewiseFunction& beta, int epsilon,
                               int npoints, CsrMatrix& matrix)
{
    for (int e : interface_edges(space)) {
        scatter(edge_block(space, beta, e, 1.0, epsilon, 0.0, npoints), matrix);
    }
}

void assemble_penalty(const ImmersedSpace& space, const PiecewiseFunction& beta, double sigma0,
                      int npoints, CsrMatrix& matrix)
{
    if (sigma0 == 0.0) {
        return;
    }
    for (int e : interface_edges(space)) {
        scatter(edge_block(space, beta, e, 0.0, 0, sigma0, npoints), matrix);
    }
}

std::vector<double> assemble_load(const ImmersedSpace& space, const PiecewiseFunction& source,
                                  int degree)
{
    const auto& mesh = space.mesh();
    const auto& iface = space.interface();
    std::vector<double> rhs(mesh.num_vertices(), 0.0);
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const int elem = static_cast<int>(t);
        const LocalBasis b = space.basis(elem);
        const auto& tri = mesh.triangle(elem);
        auto accumulate = [&](const QuadratureRule& rule, Side s) {
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const double fw = rule.weights[q] * source(s, rule.points[q]);
                for (int i = 0; i < 3; ++i) {
                    rhs[tri[i]] += fw * b.value(i, rule.points[q], s);
                }
            }
        };
        if (iface.is_cut(elem)) {
            const auto [rp, rm] = cut_rule(iface.cut(elem), degree);
            accumulate(rp, Side::plus);
            accumulate(rm, Side::minus);
        } else {
            accumulate(triangle_rule(mesh.triangle_points(elem), degree), iface.element_side(elem));
        }
    }
    return rhs;
}

GlobalSystem assemble_system(const ImmersedSpace& space, const PiecewiseFunction& beta,
                             const PiecewiseFunction& source, const PiecewiseFunction& g,
                             const SchemeOptions& options)
{
    options.validate();
    GlobalSystem sys;
    sys.options = options;
    const bool modified = options.scheme == Scheme::modified;
    const std::vector<int> edges = modified ? interface_edges(space) : std::vector<int>{};
    sys.matrix = system_pattern(space, edges);
    assemble_volume(space, beta, options.volume_degree, sys.matrix);
    for (int e : edges) {
        scatter(edge_block(space, beta, e, 1.0, options.epsilon, options.sigma0, options.edge_points),
                sys.matrix);
    }
    sys.rhs = assemble_load(space, source, options.volume_degree);
    if (modified) {
        for (int e : crossed_boundary_edges(space)) {
            const auto blk =
                boundary_edge_block(space, beta, g, e, options.epsilon, options.sigma0, options.edge_points);
            for (int a = 0; a < 3; ++a) {
                for (int c = 0; c < 3; ++c) {
                    sys.matrix.add(blk.dofs[a], blk.dofs[c], blk.values[a][c]);
                }
                sys.rhs[blk.dofs[a]] += blk.rhs[a];
            }
        }
    }
    return sys;
}

void apply_dirichlet(GlobalSystem& system, const StructuredMesh& mesh,
                     const std::vector<double>& boundary_values)
{
    const int n = system.matrix.size();
    if (static_cast<std::size_t>(n) != mesh.num_vertices() || boundary_values.size() != mesh.num_vertices()) {
        throw std::invalid_argument("apply_dirichlet: size mismatch");
    }
    system.dirichlet.clear();
    for (int i = 0; i < n; ++i) {
        const auto cols = system.matrix.row_cols(i);
        auto vals = system.matrix.row_values(i);
        if (mesh.is_boundary_vertex(i)) {
            for (std::size_t k = 0; k < cols.size(); ++k) {
                vals[k] = cols[k] == i ? 1.0 : 0.0;
            }
            system.rhs[i] = boundary_values[i];
            system.dirichlet.emplace_back(i, boundary_values[i]);
            continue;
        }
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (mesh.is_boundary_vertex(cols[k])) {
                system.rhs[i] -= vals[k] * boundary_values[cols[k]];
                vals[k] = 0.0;
            }
        }
    }
}

std::vector<double> boundary_trace(const ImmersedSpace& space, const PiecewiseFunction& u)
{
    const auto& mesh = space.mesh();
    const auto& sides = space.interface().vertex_side;
    std::vector<double> g(mesh.num_vertices(), 0.0);
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (mesh.is_boundary_vertex(static_cast<int>(v))) {
            g[v] = u(sides[v], mesh.vertex(static_cast<int>(v)));
        }
    }
    return g;
}

} // namespace mifem

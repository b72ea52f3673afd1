#include "mifem/basis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mifem {

namespace {

std::string dump_cut(const std::array<Point2, 3>& tri, const CutElementGeometry& cut, double bp,
                     double bm)
{
    std::ostringstream os;
    os.precision(17);
    os << "element " << cut.element << " vertices";
    for (const auto& p : tri) {
        os << " (" << p.x << ", " << p.y << ")";
    }
    os << " lone " << cut.lone_vertex << " side " << to_string(cut.lone_side) << " D (" << cut.D.point.x
       << ", " << cut.D.point.y << ") E (" << cut.E.point.x << ", " << cut.E.point.y << ") beta+ " << bp
       << " beta- " << bm;
    return os.str();
}

} // namespace

std::array<double, 3> LocalBasis::coefficients(int i, Side s) const
{
    const auto& pc = piece(i, s);
    return {pc.value - dot(pc.grad, origin), pc.grad.x, pc.grad.y};
}

LocalBasis standard_p1(const std::array<Point2, 3>& tri)
{
    const double twice_area = cross(tri[1] - tri[0], tri[2] - tri[0]);
    const double scale = std::max({norm(tri[1] - tri[0]), norm(tri[2] - tri[1]), norm(tri[0] - tri[2])});
    if (!(std::abs(twice_area) > 1e-14 * scale * scale)) {
        throw std::invalid_argument("standard_p1: degenerate triangle");
    }
    LocalBasis b;
    b.kind = BasisKind::standard;
    b.origin = (1.0 / 3.0) * (tri[0] + tri[1] + tri[2]);
    for (int i = 0; i < 3; ++i) {
        const Point2& p = tri[(i + 1) % 3];
        const Point2& q = tri[(i + 2) % 3];
        // gradient of the barycentric coordinate of vertex i
        const Vec2 g{(p.y - q.y) / twice_area, (q.x - p.x) / twice_area};
        b.pieces[0][i] = {1.0 / 3.0, g};
        b.pieces[1][i] = b.pieces[0][i];
    }
    return b;
}

LocalBasis immersed_p1(const std::array<Point2, 3>& tri, const CutElementGeometry& cut,
                       double beta_plus, double beta_minus)
{
    if (!(beta_plus > 0.0) || !(beta_minus > 0.0)) {
        throw std::invalid_argument("immersed_p1: coefficients must be positive");
    }
    LocalBasis b;
    b.kind = BasisKind::immersed;
    b.origin = (1.0 / 3.0) * (tri[0] + tri[1] + tri[2]);
    b.beta = {beta_plus, beta_minus};
    b.cut = &cut;
    b.element = cut.element;

    // Unknowns: (value, scaled gradient) of the plus piece, then of the minus piece,
    // in coordinates xi = (p - origin) / len.
    const double len = std::sqrt(std::abs(cross(tri[1] - tri[0], tri[2] - tri[0])));
    auto local = [&](const Point2& p) { return (1.0 / len) * (p - b.origin); };

    Eigen::Matrix<double, 6, 6> A = Eigen::Matrix<double, 6, 6>::Zero();
    for (int j = 0; j < 3; ++j) {
        const Side s = j == cut.lone_vertex ? cut.lone_side : opposite(cut.lone_side);
        const int off = 3 * side_index(s);
        const Vec2 xi = local(tri[j]);
        A(j, off) = 1.0;
        A(j, off + 1) = xi.x;
        A(j, off + 2) = xi.y;
    }
    int row = 3;
    for (const Point2& p : {cut.D.point, cut.E.point}) {
        const Vec2 xi = local(p);
        A(row, 0) = 1.0;
        A(row, 1) = xi.x;
        A(row, 2) = xi.y;
        A(row, 3) = -1.0;
        A(row, 4) = -xi.x;
        A(row, 5) = -xi.y;
        ++row;
    }
    const double bmax = std::max(beta_plus, beta_minus);
    const Vec2& n = cut.chord_normal;
    A(5, 1) = beta_plus / bmax * n.x;
    A(5, 2) = beta_plus / bmax * n.y;
    A(5, 4) = -beta_minus / bmax * n.x;
    A(5, 5) = -beta_minus / bmax * n.y;

    Eigen::Matrix<double, 6, 3> rhs = Eigen::Matrix<double, 6, 3>::Zero();
    rhs.topRows<3>().setIdentity();

    const Eigen::PartialPivLU<Eigen::Matrix<double, 6, 6>> lu(A);
    const double rcond = lu.rcond();
    const Eigen::Matrix<double, 6, 3> X = lu.solve(rhs);
    if (!(rcond > 1e-16) || !X.allFinite()) {
        throw GeometryError("immersed_p1: singular basis system (rcond " + std::to_string(rcond) +
                            ") at " + dump_cut(tri, cut, beta_plus, beta_minus));
    }
    for (int i = 0; i < 3; ++i) {
        for (int s = 0; s < 2; ++s) {
            b.pieces[s][i] = {X(3 * s, i), {X(3 * s + 1, i) / len, X(3 * s + 2, i) / len}};
        }
    }
    return b;
}

BasisResiduals basis_residuals(const LocalBasis& b, const std::array<Point2, 3>& tri)
{
    BasisResiduals r;
    if (!b.is_immersed()) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                r.nodal = std::max(r.nodal, std::abs(b.value(i, tri[j], Side::plus) - (i == j ? 1.0 : 0.0)));
            }
        }
        return r;
    }
    const auto& cut = *b.cut;
    const double bp = b.beta[0];
    const double bm = b.beta[1];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Side s = j == cut.lone_vertex ? cut.lone_side : opposite(cut.lone_side);
            r.nodal = std::max(r.nodal, std::abs(b.value(i, tri[j], s) - (i == j ? 1.0 : 0.0)));
        }
        for (const Point2& p : {cut.D.point, cut.E.point}) {
            const double vp = b.value(i, p, Side::plus);
            const double vm = b.value(i, p, Side::minus);
            r.continuity = std::max(r.continuity, std::abs(vp - vm) / std::max({1.0, std::abs(vp), std::abs(vm)}));
        }
        const Vec2& gp = b.gradient(i, Side::plus);
        const Vec2& gm = b.gradient(i, Side::minus);
        const double scale = std::max(bp, bm) * std::max(norm(gp), norm(gm));
        const double jump = bp * dot(gp, cut.chord_normal) - bm * dot(gm, cut.chord_normal);
        if (scale > 0.0) {
            r.flux = std::max(r.flux, std::abs(jump) / scale);
        }
    }
    const double len = std::sqrt(std::abs(cross(tri[1] - tri[0], tri[2] - tri[0])));
    for (Side s : {Side::plus, Side::minus}) {
        // Sum checked where the piece lives; at the element origin a thin
        // piece extrapolates to large values and only relative digits survive.
        for (const Point2& p : cut.piece(s)) {
            double v = 0.0;
            double vscale = 1.0;
            for (int i = 0; i < 3; ++i) {
                v += b.value(i, p, s);
                vscale = std::max(vscale, std::abs(b.value(i, p, s)));
            }
            r.partition_of_unity = std::max(r.partition_of_unity, std::abs(v - 1.0) / vscale);
        }
        Vec2 g;
        double gscale = 0.0;
        for (int i = 0; i < 3; ++i) {
            g += b.gradient(i, s);
            gscale = std::max(gscale, norm(b.gradient(i, s)));
        }
        r.partition_of_unity = std::max(r.partition_of_unity, norm(g) / std::max(gscale, 1.0 / len));
    }
    return r;
}

ImmersedSpace::ImmersedSpace(const StructuredMesh& mesh, const InterfaceDiscretization& iface,
                             const PiecewiseFunction& beta)
    : mesh_(&mesh), iface_(&iface), beta_(beta)
{
    immersed_.reserve(iface.cuts.size());
    for (const auto& cut : iface.cuts) {
        const double bp = beta_(Side::plus, polygon_centroid(cut.sub_plus));
        const double bm = beta_(Side::minus, polygon_centroid(cut.sub_minus));
        immersed_.push_back(immersed_p1(mesh.triangle_points(cut.element), cut, bp, bm));
    }
}

LocalBasis ImmersedSpace::basis(int element) const
{
    const int ci = iface_->cut_index[element];
    if (ci >= 0) {
        return immersed_[ci];
    }
    LocalBasis b = standard_p1(mesh_->triangle_points(element));
    b.element = element;
    const double beta = piece_beta(element, iface_->element_side(element));
    b.beta = {beta, beta};
    return b;
}

double ImmersedSpace::piece_beta(int element, Side s) const
{
    const int ci = iface_->cut_index[element];
    if (ci >= 0) {
        return immersed_[ci].beta[side_index(s)];
    }
    const auto p = mesh_->triangle_points(element);
    return beta_(s, (1.0 / 3.0) * (p[0] + p[1] + p[2]));
}

double ImmersedSpace::value(std::span<const double> coeffs, int element, const Point2& p, Side s) const
{
    const LocalBasis b = basis(element);
    const auto& tri = mesh_->triangle(element);
    double v = 0.0;
    for (int i = 0; i < 3; ++i) {
        v += coeffs[tri[i]] * b.value(i, p, s);
    }
    return v;
}

Vec2 ImmersedSpace::gradient(std::span<const double> coeffs, int element, Side s) const
{
    const LocalBasis b = basis(element);
    const auto& tri = mesh_->triangle(element);
    Vec2 g;
    for (int i = 0; i < 3; ++i) {
        g += coeffs[tri[i]] * b.gradient(i, s);
    }
    return g;
}

std::vector<double> interpolate(const ImmersedSpace& space, const PiecewiseFunction& u)
{
    const auto& mesh = space.mesh();
    const auto& sides = space.interface().vertex_side;
    std::vector<double> c(mesh.num_vertices());
    for (std::size_t v = 0; v < c.size(); ++v) {
        c[v] = u(sides[v], mesh.vertex(static_cast<int>(v)));
    }
    return c;
}

} // namespace mifem

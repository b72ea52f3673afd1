#include "mifem/error_norms.hpp"

#include "mifem/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace mifem {

ExactSolution ExactSolution::zero()
{
    return {PiecewiseFunction::constant(0.0, 0.0),
            {[](const Point2&) { return Vec2{}; }, [](const Point2&) { return Vec2{}; }}};
}

double ErrorNorms::triple_from_parts() const
{
    return std::sqrt(beta_l2 * beta_l2 + beta_grad * beta_grad + edge_jump * edge_jump +
                     edge_flux * edge_flux);
}

ErrorNorms compute_errors(const ImmersedSpace& space, const LevelSetInterface& level_set,
                          const PiecewiseFunction& beta, const ExactSolution& exact,
                          std::span<const double> coeffs, const ErrorOptions& opts)
{
    const auto& mesh = space.mesh();
    const auto& iface = space.interface();
    const double h = mesh.h();

    double l2_sq = 0.0, grad_sq = 0.0, linf = 0.0, bl2_sq = 0.0, bgrad_sq = 0.0;

    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const int elem = static_cast<int>(t);
        const LocalBasis b = space.basis(elem);
        const auto& tri = mesh.triangle(elem);
        auto accumulate = [&](const QuadratureRule& rule, Side s) {
            Vec2 gh;
            for (int i = 0; i < 3; ++i) {
                gh += coeffs[tri[i]] * b.gradient(i, s);
            }
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Point2& p = rule.points[q];
                double uh = 0.0;
                for (int i = 0; i < 3; ++i) {
                    uh += coeffs[tri[i]] * b.value(i, p, s);
                }
                const Side st = side_of(level_set, p);
                const double e = exact.value(st, p) - uh;
                const Vec2 ge = exact.gradient(st, p) - gh;
                const double w = rule.weights[q];
                const double bq = beta(st, p);
                l2_sq += w * e * e;
                grad_sq += w * dot(ge, ge);
                bl2_sq += w * bq * e * e;
                bgrad_sq += w * bq * dot(ge, ge);
                linf = std::max(linf, std::abs(e));
            }
        };
        if (iface.is_cut(elem)) {
            const auto [rp, rm] = cut_rule(iface.cut(elem), opts.volume_degree);
            accumulate(rp, Side::plus);
            accumulate(rm, Side::minus);
        } else {
            accumulate(triangle_rule(mesh.triangle_points(elem), opts.volume_degree),
                       iface.element_side(elem));
        }
    }
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        const Point2& p = mesh.vertex(static_cast<int>(v));
        linf = std::max(linf, std::abs(exact.value(iface.vertex_side[v], p) - coeffs[v]));
    }

    double trace_sq = 0.0, normal_sq = 0.0, jump_sq = 0.0, flux_sq = 0.0;
    for (std::size_t ei = 0; ei < mesh.num_edges(); ++ei) {
        const int e = static_cast<int>(ei);
        const auto& ed = mesh.edge(e);
        if (!ed.is_interior()) {
            continue;
        }
        const std::array<int, 2> elems{ed.adjacent[0], ed.adjacent[1]};
        const std::array<LocalBasis, 2> bases{space.basis(elems[0]), space.basis(elems[1])};
        const Point2& p0 = mesh.vertex(ed.endpoints[0]);
        const Point2& p1 = mesh.vertex(ed.endpoints[1]);
        const bool crossed = iface.edge_is_crossed(e);
        const double tstar = crossed ? iface.edge_crossing[e] : 0.0;
        const QuadratureRule rule = crossed ? split_segment_rule(p0, p1, tstar, opts.edge_points)
                                            : segment_rule(p0, p1, opts.edge_points);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point2& p = rule.points[q];
            const Side vs = iface.vertex_side[ed.endpoints[crossed && rule.params[q] > tstar ? 1 : 0]];
            const Side st = side_of(level_set, p);
            const double u = exact.value(st, p);
            const double du = dot(exact.gradient(st, p), ed.normal);
            std::array<double, 2> err{}, derr{}, sb{};
            for (int k = 0; k < 2; ++k) {
                const Side s = iface.is_cut(elems[k]) ? vs : iface.element_side(elems[k]);
                const auto& tri = mesh.triangle(elems[k]);
                double uh = 0.0;
                Vec2 gh;
                for (int i = 0; i < 3; ++i) {
                    uh += coeffs[tri[i]] * bases[k].value(i, p, s);
                    gh += coeffs[tri[i]] * bases[k].gradient(i, s);
                }
                err[k] = u - uh;
                derr[k] = du - dot(gh, ed.normal);
                sb[k] = std::sqrt(beta(s, p));
            }
            const double w = rule.weights[q];
            trace_sq += w * 0.5 * (err[0] * err[0] + err[1] * err[1]);
            normal_sq += w * 0.5 * (derr[0] * derr[0] + derr[1] * derr[1]);
            const double jump = sb[0] * err[0] - sb[1] * err[1];
            const double avg = 0.5 * (sb[0] * derr[0] + sb[1] * derr[1]);
            jump_sq += w / h * jump * jump;
            flux_sq += w * h * avg * avg;
        }
    }

    ErrorNorms r;
    r.l2 = std::sqrt(l2_sq);
    r.h1_semi = std::sqrt(grad_sq);
    r.h1 = std::sqrt(l2_sq + grad_sq);
    r.linf = linf;
    r.edge_trace = std::sqrt(trace_sq);
    r.edge_normal = std::sqrt(normal_sq);
    r.edge_jump = std::sqrt(jump_sq);
    r.edge_flux = std::sqrt(flux_sq);
    r.beta_l2 = std::sqrt(bl2_sq);
    r.beta_grad = std::sqrt(bgrad_sq);
    r.triple = std::sqrt(bl2_sq + bgrad_sq + jump_sq + flux_sq);
    return r;
}

namespace {

PiecewiseFunction unit_beta() { return PiecewiseFunction::constant(1.0, 1.0); }

} // namespace

double l2_error(const ImmersedSpace& space, const LevelSetInterface& level_set, const ExactSolution& exact,
                std::span<const double> coeffs, const ErrorOptions& opts)
{
    return compute_errors(space, level_set, unit_beta(), exact, coeffs, opts).l2;
}

double h1_broken_error(const ImmersedSpace& space, const LevelSetInterface& level_set,
                       const ExactSolution& exact, std::span<const double> coeffs, const ErrorOptions& opts)
{
    return compute_errors(space, level_set, unit_beta(), exact, coeffs, opts).h1;
}

double linf_error(const ImmersedSpace& space, const LevelSetInterface& level_set, const ExactSolution& exact,
                  std::span<const double> coeffs, const ErrorOptions& opts)
{
    return compute_errors(space, level_set, unit_beta(), exact, coeffs, opts).linf;
}

std::optional<double> compute_eoc(double coarse, double fine)
{
    if (!(coarse > 0.0) || !(fine > 0.0) || !std::isfinite(coarse) || !std::isfinite(fine)) {
        return std::nullopt;
    }
    return std::log2(coarse / fine);
}

double norm_value(const ErrorReport& r, Norm which)
{
    switch (which) {
    case Norm::l2: return r.l2;
    case Norm::h1: return r.h1;
    case Norm::h1_semi: return r.h1_semi;
    case Norm::linf: return r.linf;
    case Norm::edge_jump: return r.edge_jump;
    case Norm::edge_flux: return r.edge_flux;
    case Norm::edge_trace: return r.edge_trace;
    case Norm::edge_normal: return r.edge_normal;
    case Norm::triple: return r.triple;
    }
    return 0.0;
}

std::optional<double> ConvergenceReport::eoc(std::size_t i, Norm which) const
{
    if (i == 0 || i >= levels.size()) {
        return std::nullopt;
    }
    const auto& coarse = levels[i - 1];
    const auto& fine = levels[i];
    if (!coarse.ok() || !fine.ok() || fine.n != coarse.n + 1) {
        return std::nullopt;
    }
    return compute_eoc(norm_value(coarse, which), norm_value(fine, which));
}

} // namespace mifem

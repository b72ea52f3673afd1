#include "mifem/cases.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mifem {

namespace {

using Scalar = std::function<double(const Point2&)>;
using Vector = std::function<Vec2(const Point2&)>;

// u = L / beta with constant beta per side: f = -Laplace(L) on both sides.
BenchmarkCase constant_coefficient_case(std::string name, Scalar level, Vector grad, Scalar laplacian,
                                        LevelSetInterface geometry, double beta_minus, double beta_plus)
{
    if (!(beta_minus > 0.0) || !(beta_plus > 0.0)) {
        throw std::invalid_argument("coefficients must be positive");
    }
    BenchmarkCase c;
    c.name = std::move(name);
    c.interface = std::move(geometry);
    c.beta = PiecewiseFunction::constant(beta_plus, beta_minus);
    c.constant_beta = true;
    c.beta_plus = beta_plus;
    c.beta_minus = beta_minus;
    c.exact.value = {[level, beta_plus](const Point2& p) { return level(p) / beta_plus; },
                     [level, beta_minus](const Point2& p) { return level(p) / beta_minus; }};
    c.exact.gradient = {[grad, beta_plus](const Point2& p) { return (1.0 / beta_plus) * grad(p); },
                        [grad, beta_minus](const Point2& p) { return (1.0 / beta_minus) * grad(p); }};
    c.source = PiecewiseFunction::same([laplacian](const Point2& p) { return -laplacian(p); });
    return c;
}

BenchmarkCase cubic_case(double beta_minus, double beta_plus)
{
    auto cubic = [](double x) { return 3.0 * x * (x - 0.3) * (x - 0.8); };
    Scalar L = [cubic](const Point2& p) { return p.y - cubic(p.x) - 0.34; };
    Vector G = [](const Point2& p) { return Vec2{-(9.0 * p.x * p.x - 6.6 * p.x + 0.72), 1.0}; };
    Scalar lap = [](const Point2& p) { return -(18.0 * p.x - 6.6); };
    LevelSetInterface geom{L, G, Orientation::minus_is_negative, 1.0};
    auto c = constant_coefficient_case("cubic", L, G, lap, geom, beta_minus, beta_plus);
    c.interface_point = [cubic](double s) {
        const double x = -0.46 + 1.46 * s;
        return Point2{x, cubic(x) + 0.34};
    };
    return c;
}

BenchmarkCase corner_case(double beta_minus, double beta_plus)
{
    // tan(45 deg) = 1. The raw cubic also vanishes on two branches for x > 0.6;
    // the geometric level set keeps only the closed loop.
    Scalar L = [](const Point2& p) {
        const double d = p.x - 0.6;
        return -p.y * p.y + d * d * (p.x + 0.4);
    };
    Vector G = [](const Point2& p) {
        const double d = p.x - 0.6;
        return Vec2{2.0 * d * (p.x + 0.4) + d * d, -2.0 * p.y};
    };
    Scalar lap = [](const Point2& p) { return 6.0 * p.x - 3.6; };
    Scalar loop = [](const Point2& p) {
        const double d = p.x - 0.6;
        return -p.y * p.y - d * std::abs(d) * (p.x + 0.4);
    };
    Vector loop_grad = [G](const Point2& p) {
        if (p.x <= 0.6) {
            return G(p);
        }
        const Vec2 g = G(p);
        return Vec2{-g.x, g.y};
    };
    LevelSetInterface geom{loop, loop_grad, Orientation::minus_is_positive, 1.0};
    auto c = constant_coefficient_case("corner", L, G, lap, geom, beta_minus, beta_plus);
    c.corner = Point2{0.6, 0.0};
    c.interface_point = [](double s) {
        const double r = 2.0 * s;
        const bool upper = r < 1.0;
        const double x = -0.4 + (upper ? r : r - 1.0);
        const double y = (0.6 - x) * std::sqrt(x + 0.4);
        return Point2{x, upper ? y : -y};
    };
    return c;
}

BenchmarkCase ellipse_case()
{
    constexpr double a2 = 0.81;
    constexpr double b2 = 0.25;
    BenchmarkCase c;
    c.name = "ellipse";
    Scalar L = [](const Point2& p) { return p.x * p.x / a2 + p.y * p.y / b2 - 1.0; };
    Vector G = [](const Point2& p) { return Vec2{2.0 * p.x / a2, 2.0 * p.y / b2}; };
    c.interface = LevelSetInterface{L, G, Orientation::minus_is_negative, 1.0};
    // beta- = g^2 with g = x^2 + y^2 - 1
    auto g = [](const Point2& p) { return p.x * p.x + p.y * p.y - 1.0; };
    c.beta = {[](const Point2&) { return 1.0; }, [g](const Point2& p) { return g(p) * g(p); }};
    c.constant_beta = false;
    c.beta_plus = 1.0;
    c.beta_minus = std::nan("");
    c.exact.value = {L, [L, g](const Point2& p) {
                         const double gv = g(p);
                         return L(p) / (gv * gv);
                     }};
    c.exact.gradient = {G, [L, G, g](const Point2& p) {
                            const double gv = g(p);
                            const Vec2 dg{2.0 * p.x, 2.0 * p.y};
                            return (1.0 / (gv * gv)) * G(p) - (2.0 * L(p) / (gv * gv * gv)) * dg;
                        }};
    constexpr double lap = 2.0 / a2 + 2.0 / b2;
    // -div(beta grad(L / beta)) = -Laplace(L) + div(L grad(beta) / beta)
    c.source = {[](const Point2&) { return -lap; }, [L, g](const Point2& p) {
                    const double gv = g(p);
                    const double lv = L(p);
                    return -lap + 8.0 * (lv * gv + gv - lv) / (gv * gv);
                }};
    c.interface_point = [](double s) {
        const double th = 2.0 * std::numbers::pi * s;
        return Point2{0.9 * std::cos(th), 0.5 * std::sin(th)};
    };
    return c;
}

} // namespace

BenchmarkCase straight_line_case(double x0, double beta_minus, double beta_plus)
{
    Scalar L = [x0](const Point2& p) { return p.x - x0; };
    Vector G = [](const Point2&) { return Vec2{1.0, 0.0}; };
    Scalar lap = [](const Point2&) { return 0.0; };
    LevelSetInterface geom{L, G, Orientation::minus_is_negative, 1.0};
    auto c = constant_coefficient_case("line", L, G, lap, geom, beta_minus, beta_plus);
    c.interface_point = [x0](double s) { return Point2{x0, -1.0 + 2.0 * s}; };
    return c;
}

BenchmarkCase builtin_case(const std::string& name)
{
    if (name == "cubic") return cubic_case(1.0, 10.0);
    if (name == "corner") return corner_case(10.0, 1.0);
    if (name == "ellipse") return ellipse_case();
    if (name == "line") return straight_line_case(0.31, 1.0, 10.0);
    throw std::invalid_argument("unknown case '" + name + "'");
}

BenchmarkCase builtin_case(const std::string& name, double beta_minus, double beta_plus)
{
    if (name == "cubic") return cubic_case(beta_minus, beta_plus);
    if (name == "corner") return corner_case(beta_minus, beta_plus);
    if (name == "line") return straight_line_case(0.31, beta_minus, beta_plus);
    if (name == "ellipse") {
        throw std::invalid_argument("the ellipse case has a fixed variable coefficient");
    }
    throw std::invalid_argument("unknown case '" + name + "'");
}

std::vector<std::string> builtin_case_names()
{
    return {"cubic", "corner", "ellipse", "line"};
}

std::size_t corner_element_count(const BenchmarkCase& c, const StructuredMesh& mesh,
                                 const InterfaceDiscretization& iface)
{
    if (!c.corner) {
        return 0;
    }
    const Point2 p = *c.corner;
    const double tol = 1e-12 * mesh.h() * mesh.h();
    std::size_t count = 0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto v = mesh.triangle_points(static_cast<int>(t));
        const bool inside = signed_area(v[0], v[1], p) >= -tol && signed_area(v[1], v[2], p) >= -tol &&
                            signed_area(v[2], v[0], p) >= -tol;
        if (inside && !iface.is_cut(static_cast<int>(t))) {
            ++count;
        }
    }
    return count;
}

} // namespace mifem

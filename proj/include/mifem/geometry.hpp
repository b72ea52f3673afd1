#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace mifem {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

using Point2 = Vec2;

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
/// Rotates by -90 degrees; for a counterclockwise boundary this is the outward normal direction.
inline Vec2 rotate_cw(const Vec2& a) { return {a.y, -a.x}; }

inline Vec2 lerp(const Vec2& a, const Vec2& b, double t) { return a + t * (b - a); }

inline double signed_area(const Point2& a, const Point2& b, const Point2& c)
{
    return 0.5 * cross(b - a, c - a);
}

/// Shoelace formula; positive for counterclockwise vertex order. Measured from
/// the first vertex to avoid cancellation far from the origin.
inline double polygon_area(std::span<const Point2> poly)
{
    double s = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        s += cross(poly[i] - poly[0], poly[i + 1] - poly[0]);
    }
    return 0.5 * s;
}

inline Point2 polygon_centroid(std::span<const Point2> poly)
{
    double a = 0.0;
    Vec2 c;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        const double w = cross(p, q);
        a += w;
        c += w * (p + q);
    }
    return (1.0 / (3.0 * a)) * c;
}

} // namespace mifem

#pragma once

#include "mifem/geometry.hpp"
#include "mifem/interface.hpp"

#include <functional>

namespace mifem {

/// Scalar field given separately on the plus and minus subdomains.
struct PiecewiseFunction {
    std::function<double(const Point2&)> plus;
    std::function<double(const Point2&)> minus;

    double operator()(Side s, const Point2& p) const { return s == Side::plus ? plus(p) : minus(p); }

    static PiecewiseFunction constant(double plus_value, double minus_value)
    {
        return {[plus_value](const Point2&) { return plus_value; },
                [minus_value](const Point2&) { return minus_value; }};
    }
    static PiecewiseFunction same(std::function<double(const Point2&)> f)
    {
        return {f, f};
    }
};

struct PiecewiseVectorFunction {
    std::function<Vec2(const Point2&)> plus;
    std::function<Vec2(const Point2&)> minus;

    Vec2 operator()(Side s, const Point2& p) const { return s == Side::plus ? plus(p) : minus(p); }
};

} // namespace mifem

#pragma once

#include "mifem/error_norms.hpp"
#include "mifem/functions.hpp"
#include "mifem/interface.hpp"
#include "mifem/mesh.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mifem {

/// A manufactured interface problem: -div(beta grad u) = f on each side with
/// u = L / beta, so both interface jump conditions hold wherever L = 0.
struct BenchmarkCase {
    std::string name;
    Rectangle domain;
    LevelSetInterface interface;
    PiecewiseFunction beta;
    ExactSolution exact;
    PiecewiseFunction source;
    bool constant_beta = true;
    double beta_plus = 1.0;     // meaningful when constant_beta
    double beta_minus = 1.0;
    /// Point where the interface is not smooth, if any.
    std::optional<Point2> corner;
    /// Parametrization of the interface for s in [0, 1).
    std::function<Point2(double)> interface_point;

    /// Dirichlet trace g = u on the boundary.
    const PiecewiseFunction& boundary_data() const { return exact.value; }
};

/// "cubic" (beta- = 1, beta+ = 10), "corner" (beta- = 10, beta+ = 1),
/// "ellipse" (variable beta-) and "line" (straight interface x = 0.31).
BenchmarkCase builtin_case(const std::string& name);

/// Same as builtin_case with the constant coefficients replaced. Throws for
/// the variable-coefficient ellipse.
BenchmarkCase builtin_case(const std::string& name, double beta_minus, double beta_plus);

std::vector<std::string> builtin_case_names();

BenchmarkCase straight_line_case(double x0, double beta_minus, double beta_plus);

/// Number of mesh triangles containing the case's corner point that were not
/// treated as interface elements.
std::size_t corner_element_count(const BenchmarkCase& c, const StructuredMesh& mesh,
                                 const InterfaceDiscretization& iface);

} // namespace mifem

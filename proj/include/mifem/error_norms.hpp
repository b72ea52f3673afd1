#pragma once

#include "mifem/basis.hpp"
#include "mifem/functions.hpp"
#include "mifem/interface.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mifem {

struct ExactSolution {
    PiecewiseFunction value;
    PiecewiseVectorFunction gradient;

    static ExactSolution zero();
};

struct ErrorOptions {
    int volume_degree = 6;
    int edge_points = 3;
};

/// All error measures of one discrete function against an exact solution.
///
/// The exact solution is evaluated on the side given by the true level set;
/// the discrete function on the chord side of cut elements.
struct ErrorNorms {
    double l2 = 0.0;
    double h1_semi = 0.0;        // broken gradient seminorm
    double h1 = 0.0;             // broken norm (l2^2 + h1_semi^2)^(1/2)
    double linf = 0.0;           // over quadrature points and vertices
    double edge_trace = 0.0;     // (sum_e ||u - u_h||_{0,e}^2)^(1/2), traces averaged over both sides
    double edge_normal = 0.0;    // (sum_e ||d(u - u_h)/dn||_{0,e}^2)^(1/2)
    double edge_jump = 0.0;      // (sum_e h^-1 ||[sqrt(beta) (u - u_h)]||^2)^(1/2)
    double edge_flux = 0.0;      // (sum_e h ||{sqrt(beta) grad(u - u_h) . n}||^2)^(1/2)
    double beta_l2 = 0.0;        // ||sqrt(beta) (u - u_h)||
    double beta_grad = 0.0;      // ||sqrt(beta) grad(u - u_h)||, broken
    double triple = 0.0;         // mesh-dependent energy norm

    /// Square root of the sum of the four squared constituents.
    double triple_from_parts() const;
};

ErrorNorms compute_errors(const ImmersedSpace& space, const LevelSetInterface& level_set,
                          const PiecewiseFunction& beta, const ExactSolution& exact,
                          std::span<const double> coeffs, const ErrorOptions& opts = {});

double l2_error(const ImmersedSpace& space, const LevelSetInterface& level_set,
                const ExactSolution& exact, std::span<const double> coeffs, const ErrorOptions& opts = {});
double h1_broken_error(const ImmersedSpace& space, const LevelSetInterface& level_set,
                       const ExactSolution& exact, std::span<const double> coeffs,
                       const ErrorOptions& opts = {});
double linf_error(const ImmersedSpace& space, const LevelSetInterface& level_set,
                  const ExactSolution& exact, std::span<const double> coeffs, const ErrorOptions& opts = {});

/// Experimental order under mesh halving, log2(coarse / fine); undefined unless
/// both errors are positive and finite.
std::optional<double> compute_eoc(double coarse, double fine);

/// One row of a convergence study.
struct ErrorReport {
    int n = 0;
    double inv_h = 0.0;
    std::size_t dofs = 0;
    double l2 = 0.0;
    double h1 = 0.0;
    double h1_semi = 0.0;
    double linf = 0.0;
    double edge_jump = 0.0;
    double edge_flux = 0.0;
    double edge_trace = 0.0;
    double edge_normal = 0.0;
    double triple = 0.0;
    int iterations = 0;
    double ms = 0.0;
    double solver_residual = 0.0;
    std::string solver_method;
    std::size_t interface_elements = 0;
    std::size_t snapped_vertices = 0;
    std::size_t small_cut_reclassified = 0;
    std::size_t cusp_elements = 0;
    std::string failure;   // empty when the level succeeded

    bool ok() const { return failure.empty(); }
};

enum class Norm { l2, h1, h1_semi, linf, edge_jump, edge_flux, edge_trace, edge_normal, triple };

double norm_value(const ErrorReport& r, Norm which);

struct ConvergenceReport {
    std::vector<ErrorReport> levels;

    /// EOC between level i-1 and level i; undefined for i == 0, for
    /// non-consecutive refinement levels, or when either level failed.
    std::optional<double> eoc(std::size_t i, Norm which) const;
};

} // namespace mifem

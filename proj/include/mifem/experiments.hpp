#pragma once

#include "mifem/assembly.hpp"
#include "mifem/basis.hpp"
#include "mifem/cases.hpp"
#include "mifem/error_norms.hpp"
#include "mifem/interface.hpp"
#include "mifem/mesh.hpp"
#include "mifem/solver.hpp"

#include <json.hpp>

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mifem {

struct RunConfig {
    std::string case_name = "cubic";
    std::optional<double> beta_minus;   // override for constant-coefficient cases
    std::optional<double> beta_plus;
    SchemeOptions scheme;
    int n_min = 4;
    int n_max = 9;
    SolverOptions solver;
    ErrorOptions errors;
    InterfaceOptions interface;

    /// Throws std::invalid_argument; levels must lie in [3, 10].
    void validate() const;

    nlohmann::json to_json() const;
    /// Missing keys keep their defaults.
    static RunConfig from_json(const nlohmann::json& j);
};

BenchmarkCase make_case(const RunConfig& config);

/// Everything produced for one refinement level.
struct LevelSolution {
    std::unique_ptr<StructuredMesh> mesh;
    std::unique_ptr<InterfaceDiscretization> iface;
    std::unique_ptr<ImmersedSpace> space;
    std::vector<double> solution;
    ErrorReport report;
};

/// mesh -> interface -> basis -> assembly -> solve -> norms for level n.
/// Throws GeometryError or SolverError.
LevelSolution solve_level(const BenchmarkCase& c, const RunConfig& config, int n);

/// Sweeps n_min..n_max. A level whose solver fails is recorded with its failure
/// message and the sweep continues. `finest`, when given, receives the last
/// successful level.
ConvergenceReport run_convergence(const RunConfig& config, LevelSolution* finest = nullptr);

/// Columns: n, inv_h, dofs, l2, l2_eoc, h1, h1_eoc, linf, linf_eoc, edge_jump,
/// edge_flux, triple, iters, ms. Undefined orders are empty fields.
void write_csv(const ConvergenceReport& report, std::ostream& os);
ConvergenceReport read_csv(std::istream& is);

/// Error/order column pairs in the layout of a convergence table.
void write_markdown(const ConvergenceReport& report, std::ostream& os, const std::string& title = {});
/// Both schemes stacked as two blocks of one table.
void write_comparison_markdown(const ConvergenceReport& ifem, const ConvergenceReport& modified,
                               std::ostream& os, const std::string& title = {});

/// Vertex dump: x, y, u_h, u_exact, side.
void write_fields(const LevelSolution& level, const BenchmarkCase& c, std::ostream& os);

nlohmann::json make_manifest(const RunConfig& config, const ConvergenceReport& report);

std::string library_version();

} // namespace mifem

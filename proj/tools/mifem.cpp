// Command line driver: single solves, convergence sweeps and scheme comparisons.

#include "mifem/experiments.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int exit_solver_failure = 2;
constexpr int exit_geometry_failure = 3;

struct Flags {
    std::string config_path;
    std::string case_name;
    std::string scheme;
    int eps = -1;
    double sigma0 = 0.1;
    int n = 6;
    int n_min = 4;
    int n_max = 9;
    double tol = 1e-10;
    int max_iter = 0;
    std::string method;
    double beta_minus = 1.0;
    double beta_plus = 1.0;
    std::string format = "csv";
    std::string out;
    std::string fields;
    std::string manifest;
    std::string matrix;
};

void add_problem_options(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--config", f.config_path, "JSON configuration; flags override it")->check(CLI::ExistingFile);
    cmd->add_option("--case", f.case_name, "cubic, corner, ellipse or line");
    cmd->add_option("--scheme", f.scheme, "ifem or modified");
    cmd->add_option("--eps", f.eps, "-1 symmetric, 0 incomplete, 1 nonsymmetric")->check(CLI::IsMember({-1, 0, 1}));
    cmd->add_option("--sigma0", f.sigma0, "edge penalty")->check(CLI::NonNegativeNumber);
    cmd->add_option("--beta-minus", f.beta_minus, "coefficient on the minus side")->check(CLI::PositiveNumber);
    cmd->add_option("--beta-plus", f.beta_plus, "coefficient on the plus side")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", f.tol, "relative residual tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", f.max_iter, "iteration cap (0: number of unknowns)");
    cmd->add_option("--solver", f.method, "auto, cg, nonsym or direct");
}

void add_sweep_options(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--n-min", f.n_min, "coarsest level");
    cmd->add_option("--n-max", f.n_max, "finest level");
    cmd->add_option("--format", f.format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
    cmd->add_option("--out", f.out, "output file (default: stdout)");
    cmd->add_option("--manifest", f.manifest, "JSON run manifest");
}

bool given(const CLI::App* cmd, const std::string& name)
{
    const auto* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

mifem::RunConfig build_config(const CLI::App* cmd, const Flags& f)
{
    mifem::RunConfig c;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        c = mifem::RunConfig::from_json(nlohmann::json::parse(in));
    }
    if (given(cmd, "--case")) c.case_name = f.case_name;
    if (given(cmd, "--scheme")) c.scheme.scheme = mifem::parse_scheme(f.scheme);
    if (given(cmd, "--eps")) c.scheme.epsilon = f.eps;
    if (given(cmd, "--sigma0")) c.scheme.sigma0 = f.sigma0;
    if (given(cmd, "--beta-minus")) c.beta_minus = f.beta_minus;
    if (given(cmd, "--beta-plus")) c.beta_plus = f.beta_plus;
    if (given(cmd, "--tol")) c.solver.tolerance = f.tol;
    if (given(cmd, "--max-iter")) c.solver.max_iterations = f.max_iter;
    if (given(cmd, "--solver")) c.solver.method = mifem::parse_solver_method(f.method);
    if (given(cmd, "--n")) c.n_min = c.n_max = f.n;
    if (given(cmd, "--n-min")) c.n_min = f.n_min;
    if (given(cmd, "--n-max")) c.n_max = f.n_max;
    c.validate();
    return c;
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn)
{
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open " + path);
    }
    fn(os);
}

void emit(const mifem::ConvergenceReport& report, const Flags& f, const std::string& title)
{
    with_output(f.out, [&](std::ostream& os) {
        if (f.format == "md") {
            mifem::write_markdown(report, os, title);
        } else {
            mifem::write_csv(report, os);
        }
    });
}

void write_manifest(const std::string& path, const nlohmann::json& m)
{
    if (!path.empty()) {
        with_output(path, [&](std::ostream& os) { os << m.dump(2) << '\n'; });
    }
}

int failed_levels(const mifem::ConvergenceReport& report)
{
    int failed = 0;
    for (const auto& r : report.levels) {
        if (!r.ok()) {
            std::cerr << "level " << r.n << ": " << r.failure << '\n';
            ++failed;
        }
    }
    return failed;
}

int run_solve(const CLI::App* cmd, const Flags& f)
{
    const auto config = build_config(cmd, f);
    const auto c = mifem::make_case(config);
    const int n = config.n_max;
    auto level = mifem::solve_level(c, config, n);

    if (!f.matrix.empty()) {
        auto sys = mifem::assemble_system(*level.space, c.beta, c.source, c.exact.value, config.scheme);
        mifem::apply_dirichlet(sys, *level.mesh, mifem::boundary_trace(*level.space, c.exact.value));
        with_output(f.matrix, [&](std::ostream& os) { sys.matrix.write_coordinate(os); });
    }
    if (!f.fields.empty()) {
        with_output(f.fields, [&](std::ostream& os) { mifem::write_fields(level, c, os); });
    }
    mifem::ConvergenceReport report;
    report.levels.push_back(level.report);
    emit(report, f, {});
    write_manifest(f.manifest, mifem::make_manifest(config, report));
    return 0;
}

int run_converge(const CLI::App* cmd, const Flags& f)
{
    const auto config = build_config(cmd, f);
    mifem::LevelSolution finest;
    const auto report = mifem::run_convergence(config, f.fields.empty() ? nullptr : &finest);
    emit(report, f, config.case_name + ", " + mifem::to_string(config.scheme.scheme));
    if (!f.fields.empty() && finest.mesh) {
        with_output(f.fields, [&](std::ostream& os) { mifem::write_fields(finest, mifem::make_case(config), os); });
    }
    write_manifest(f.manifest, mifem::make_manifest(config, report));
    return failed_levels(report) > 0 ? exit_solver_failure : 0;
}

int run_compare(const CLI::App* cmd, const Flags& f)
{
    auto modified = build_config(cmd, f);
    modified.scheme.scheme = mifem::Scheme::modified;
    auto ifem = modified;
    ifem.scheme.scheme = mifem::Scheme::ifem;
    const auto r_ifem = mifem::run_convergence(ifem);
    const auto r_mod = mifem::run_convergence(modified);
    with_output(f.out, [&](std::ostream& os) {
        if (f.format == "md") {
            mifem::write_comparison_markdown(r_ifem, r_mod, os, modified.case_name);
        } else {
            os << "# scheme: ifem\n";
            mifem::write_csv(r_ifem, os);
            os << "# scheme: modified\n";
            mifem::write_csv(r_mod, os);
        }
    });
    if (!f.manifest.empty()) {
        nlohmann::json m;
        m["ifem"] = mifem::make_manifest(ifem, r_ifem);
        m["modified"] = mifem::make_manifest(modified, r_mod);
        write_manifest(f.manifest, m);
    }
    return failed_levels(r_ifem) + failed_levels(r_mod) > 0 ? exit_solver_failure : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Immersed finite element solver for planar interface problems"};
    app.set_version_flag("--version", mifem::library_version());
    app.require_subcommand(1);
    Flags f;

    auto* solve = app.add_subcommand("solve", "solve on one mesh level");
    add_problem_options(solve, f);
    solve->add_option("--n", f.n, "refinement level (2^n intervals per side)");
    solve->add_option("--format", f.format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
    solve->add_option("--out", f.out, "output file (default: stdout)");
    solve->add_option("--fields", f.fields, "vertex field dump");
    solve->add_option("--manifest", f.manifest, "JSON run manifest");
    solve->add_option("--matrix", f.matrix, "coordinate dump of the constrained matrix");

    auto* converge = app.add_subcommand("converge", "convergence sweep over levels");
    add_problem_options(converge, f);
    add_sweep_options(converge, f);
    converge->add_option("--fields", f.fields, "vertex field dump of the finest level");

    auto* compare = app.add_subcommand("compare", "sweep with both schemes");
    add_problem_options(compare, f);
    add_sweep_options(compare, f);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(solve, f);
        if (converge->parsed()) return run_converge(converge, f);
        return run_compare(compare, f);
    } catch (const mifem::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return exit_solver_failure;
    } catch (const mifem::GeometryError& e) {
        std::cerr << "geometry failure: " << e.what() << '\n';
        return exit_geometry_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

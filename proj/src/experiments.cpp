#include "mifem/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mifem {

namespace {

const char* const csv_header = "n,inv_h,dofs,l2,l2_eoc,h1,h1_eoc,linf,linf_eoc,edge_jump,edge_flux,triple,iters,ms";

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_optional(const std::optional<double>& v)
{
    return v ? format_double(*v) : std::string{};
}

std::string sci(double v)
{
    if (!std::isfinite(v)) {
        return "-";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string order(const std::optional<double>& v)
{
    if (!v) {
        return "";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_double(const std::string& s)
{
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) {
        throw std::invalid_argument("read_csv: bad number '" + s + "'");
    }
    return v;
}

} // namespace

std::string library_version()
{
    return "0.1.0";
}

void RunConfig::validate() const
{
    scheme.validate();
    if (n_min < 3 || n_max > 10 || n_min > n_max) {
        throw std::invalid_argument("refinement levels must satisfy 3 <= n_min <= n_max <= 10");
    }
    if (!(solver.tolerance > 0.0)) {
        throw std::invalid_argument("solver tolerance must be positive");
    }
    if (errors.volume_degree != 1 && errors.volume_degree != 2 && errors.volume_degree != 4 &&
        errors.volume_degree != 6) {
        throw std::invalid_argument("error quadrature degree must be 1, 2, 4 or 6");
    }
    if (errors.edge_points < 1 || errors.edge_points > 3) {
        throw std::invalid_argument("error edge points must be 1, 2 or 3");
    }
}

nlohmann::json RunConfig::to_json() const
{
    nlohmann::json j;
    j["case"] = case_name;
    j["beta_minus"] = beta_minus ? nlohmann::json(*beta_minus) : nlohmann::json(nullptr);
    j["beta_plus"] = beta_plus ? nlohmann::json(*beta_plus) : nlohmann::json(nullptr);
    j["scheme"] = to_string(scheme.scheme);
    j["eps"] = scheme.epsilon;
    j["sigma0"] = scheme.sigma0;
    j["volume_degree"] = scheme.volume_degree;
    j["edge_points"] = scheme.edge_points;
    j["n_min"] = n_min;
    j["n_max"] = n_max;
    j["tol"] = solver.tolerance;
    j["max_iter"] = solver.max_iterations;
    j["method"] = to_string(solver.method);
    j["error_degree"] = errors.volume_degree;
    j["error_edge_points"] = errors.edge_points;
    j["small_cut_ratio"] = interface.small_cut_ratio;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j)
{
    RunConfig c;
    auto opt_double = [&](const char* key, std::optional<double>& out) {
        if (j.contains(key) && !j.at(key).is_null()) {
            out = j.at(key).get<double>();
        }
    };
    if (j.contains("case")) c.case_name = j.at("case").get<std::string>();
    opt_double("beta_minus", c.beta_minus);
    opt_double("beta_plus", c.beta_plus);
    if (j.contains("scheme")) c.scheme.scheme = parse_scheme(j.at("scheme").get<std::string>());
    if (j.contains("eps")) c.scheme.epsilon = j.at("eps").get<int>();
    if (j.contains("sigma0")) c.scheme.sigma0 = j.at("sigma0").get<double>();
    if (j.contains("volume_degree")) c.scheme.volume_degree = j.at("volume_degree").get<int>();
    if (j.contains("edge_points")) c.scheme.edge_points = j.at("edge_points").get<int>();
    if (j.contains("n")) c.n_min = c.n_max = j.at("n").get<int>();
    if (j.contains("n_min")) c.n_min = j.at("n_min").get<int>();
    if (j.contains("n_max")) c.n_max = j.at("n_max").get<int>();
    if (j.contains("tol")) c.solver.tolerance = j.at("tol").get<double>();
    if (j.contains("max_iter")) c.solver.max_iterations = j.at("max_iter").get<int>();
    if (j.contains("method")) c.solver.method = parse_solver_method(j.at("method").get<std::string>());
    if (j.contains("error_degree")) c.errors.volume_degree = j.at("error_degree").get<int>();
    if (j.contains("error_edge_points")) c.errors.edge_points = j.at("error_edge_points").get<int>();
    if (j.contains("small_cut_ratio")) c.interface.small_cut_ratio = j.at("small_cut_ratio").get<double>();
    return c;
}

BenchmarkCase make_case(const RunConfig& config)
{
    if (config.beta_minus || config.beta_plus) {
        const auto base = builtin_case(config.case_name);
        return builtin_case(config.case_name, config.beta_minus.value_or(base.beta_minus),
                            config.beta_plus.value_or(base.beta_plus));
    }
    return builtin_case(config.case_name);
}

LevelSolution solve_level(const BenchmarkCase& c, const RunConfig& config, int n)
{
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    LevelSolution lvl;
    lvl.mesh = std::make_unique<StructuredMesh>(build_uniform_mesh(c.domain, n));
    lvl.iface = std::make_unique<InterfaceDiscretization>(
        discretize_interface(*lvl.mesh, c.interface, config.interface));
    lvl.space = std::make_unique<ImmersedSpace>(*lvl.mesh, *lvl.iface, c.beta);

    GlobalSystem sys = assemble_system(*lvl.space, c.beta, c.source, c.exact.value, config.scheme);
    apply_dirichlet(sys, *lvl.mesh, boundary_trace(*lvl.space, c.exact.value));
    SolveReport sol = solve(sys, config.solver);
    lvl.solution = std::move(sol.solution);

    const ErrorNorms e = compute_errors(*lvl.space, c.interface, c.beta, c.exact, lvl.solution, config.errors);
    const auto stop = clock::now();

    ErrorReport& r = lvl.report;
    r.n = n;
    r.inv_h = 1.0 / lvl.mesh->h();
    r.dofs = lvl.space->num_dofs();
    r.l2 = e.l2;
    r.h1 = e.h1;
    r.h1_semi = e.h1_semi;
    r.linf = e.linf;
    r.edge_jump = e.edge_jump;
    r.edge_flux = e.edge_flux;
    r.edge_trace = e.edge_trace;
    r.edge_normal = e.edge_normal;
    r.triple = e.triple;
    r.iterations = sol.iterations;
    r.solver_residual = sol.relative_residual;
    r.solver_method = to_string(sol.method);
    r.ms = std::chrono::duration<double, std::milli>(stop - start).count();
    r.interface_elements = lvl.iface->num_interface_elements();
    r.snapped_vertices = lvl.iface->snapped_vertices;
    r.small_cut_reclassified = lvl.iface->small_cut_reclassified;
    r.cusp_elements = corner_element_count(c, *lvl.mesh, *lvl.iface);
    return lvl;
}

ConvergenceReport run_convergence(const RunConfig& config, LevelSolution* finest)
{
    config.validate();
    const BenchmarkCase c = make_case(config);
    ConvergenceReport report;
    for (int n = config.n_min; n <= config.n_max; ++n) {
        try {
            LevelSolution lvl = solve_level(c, config, n);
            report.levels.push_back(lvl.report);
            if (finest != nullptr) {
                *finest = std::move(lvl);
            }
        } catch (const SolverError& err) {
            ErrorReport r;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            r.n = n;
            r.inv_h = std::ldexp(1.0, n) / c.domain.width();
            r.dofs = static_cast<std::size_t>((1 << n) + 1) * static_cast<std::size_t>((1 << n) + 1);
            r.l2 = r.h1 = r.h1_semi = r.linf = nan;
            r.edge_jump = r.edge_flux = r.edge_trace = r.edge_normal = r.triple = nan;
            r.iterations = static_cast<int>(err.residual_history.size());
            r.failure = err.what();
            report.levels.push_back(r);
        }
    }
    return report;
}

void write_csv(const ConvergenceReport& report, std::ostream& os)
{
    os << csv_header << '\n';
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
        const auto& r = report.levels[i];
        os << r.n << ',' << format_double(r.inv_h) << ',' << r.dofs << ',' << format_double(r.l2) << ','
           << format_optional(report.eoc(i, Norm::l2)) << ',' << format_double(r.h1) << ','
           << format_optional(report.eoc(i, Norm::h1)) << ',' << format_double(r.linf) << ','
           << format_optional(report.eoc(i, Norm::linf)) << ',' << format_double(r.edge_jump) << ','
           << format_double(r.edge_flux) << ',' << format_double(r.triple) << ',' << r.iterations << ','
           << format_double(r.ms) << '\n';
    }
}

ConvergenceReport read_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != csv_header) {
        throw std::invalid_argument("read_csv: unexpected header");
    }
    ConvergenceReport report;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 14) {
            throw std::invalid_argument("read_csv: expected 14 fields, got " + std::to_string(f.size()));
        }
        ErrorReport r;
        r.n = std::stoi(f[0]);
        r.inv_h = parse_double(f[1]);
        r.dofs = static_cast<std::size_t>(std::stoull(f[2]));
        r.l2 = parse_double(f[3]);
        r.h1 = parse_double(f[5]);
        r.linf = parse_double(f[7]);
        r.edge_jump = parse_double(f[9]);
        r.edge_flux = parse_double(f[10]);
        r.triple = parse_double(f[11]);
        r.iterations = std::stoi(f[12]);
        r.ms = parse_double(f[13]);
        if (std::isnan(r.l2)) {
            r.failure = "failed";
        }
        report.levels.push_back(r);
    }
    return report;
}

namespace {

void markdown_rows(const ConvergenceReport& report, std::ostream& os, const std::string& label)
{
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
        const auto& r = report.levels[i];
        char inv[32];
        std::snprintf(inv, sizeof inv, "%g", r.inv_h);
        os << "| " << (i == 0 ? label : std::string{}) << " | " << inv << " | " << sci(r.l2) << " | "
           << order(report.eoc(i, Norm::l2)) << " | " << sci(r.h1) << " | " << order(report.eoc(i, Norm::h1))
           << " | " << sci(r.linf) << " | " << order(report.eoc(i, Norm::linf)) << " |\n";
    }
}

const char* const markdown_header =
    "|  | 1/h | L2 error | order | broken H1 error | order | Linf error | order |\n"
    "|---|---:|---:|---:|---:|---:|---:|---:|\n";

} // namespace

void write_markdown(const ConvergenceReport& report, std::ostream& os, const std::string& title)
{
    if (!title.empty()) {
        os << "### " << title << "\n\n";
    }
    os << markdown_header;
    markdown_rows(report, os, "");
    for (const auto& r : report.levels) {
        if (!r.ok()) {
            os << "\nlevel " << r.n << " failed: " << r.failure << '\n';
        }
    }
}

void write_comparison_markdown(const ConvergenceReport& ifem, const ConvergenceReport& modified,
                               std::ostream& os, const std::string& title)
{
    if (!title.empty()) {
        os << "### " << title << "\n\n";
    }
    os << markdown_header;
    markdown_rows(ifem, os, "P1-IFEM");
    markdown_rows(modified, os, "Modified P1-IFEM");
}

void write_fields(const LevelSolution& level, const BenchmarkCase& c, std::ostream& os)
{
    const auto& mesh = *level.mesh;
    const auto& sides = level.iface->vertex_side;
    os << "x,y,u_h,u_exact,side\n";
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        const Point2& p = mesh.vertex(static_cast<int>(v));
        os << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(level.solution[v]) << ','
           << format_double(c.exact.value(sides[v], p)) << ',' << to_string(sides[v]) << '\n';
    }
}

nlohmann::json make_manifest(const RunConfig& config, const ConvergenceReport& report)
{
    nlohmann::json m;
    m["config"] = config.to_json();
    m["version"] = library_version();
#if defined(__clang__)
    m["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    m["compiler"] = std::string("gcc ") + __VERSION__;
#else
    m["compiler"] = "unknown";
#endif
    m["cxx_standard"] = static_cast<long>(__cplusplus);
    m["conventions"] = {
        {"snap_tolerance", "1e-12 * (1 + characteristic scale); snapped vertices count as plus"},
        {"small_cut_ratio", config.interface.small_cut_ratio},
        {"basis_side_attribution", "chord DE"},
        {"exact_side_attribution", "level set sign"},
        {"variable_beta_in_basis", "sampled at sub-polygon centroids"},
        {"linf_sampling", "volume quadrature points and vertices"},
        {"edge_set", "interior edges touching a cut element; boundary edges crossed by the interface"},
        {"penalty", "sigma0 * max piece coefficient / edge length"},
        {"dirichlet", "exact solution at boundary vertices"},
        {"eoc", "log2(coarse / fine)"},
    };
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
        const auto& r = report.levels[i];
        nlohmann::json l;
        l["n"] = r.n;
        l["inv_h"] = r.inv_h;
        l["dofs"] = r.dofs;
        l["ok"] = r.ok();
        if (!r.ok()) {
            l["failure"] = r.failure;
        } else {
            l["l2"] = r.l2;
            l["h1"] = r.h1;
            l["h1_semi"] = r.h1_semi;
            l["linf"] = r.linf;
            l["edge_trace"] = r.edge_trace;
            l["edge_normal"] = r.edge_normal;
            l["edge_jump"] = r.edge_jump;
            l["edge_flux"] = r.edge_flux;
            l["triple"] = r.triple;
            l["solver_method"] = r.solver_method;
            l["solver_residual"] = r.solver_residual;
        }
        l["iterations"] = r.iterations;
        l["ms"] = r.ms;
        l["interface_elements"] = r.interface_elements;
        l["snapped_vertices"] = r.snapped_vertices;
        l["small_cut_reclassified"] = r.small_cut_reclassified;
        l["cusp_elements"] = r.cusp_elements;
        levels.push_back(std::move(l));
    }
    m["levels"] = std::move(levels);
    return m;
}

} // namespace mifem

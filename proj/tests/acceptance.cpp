// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented below.
// Exit status is nonzero if any criterion fails.

#include "mifem/experiments.hpp"
#include "mifem/quadrature.hpp"
#include "oracles.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace mifem;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what)
    {
        pass = pass && ok;
        details.push_back((ok ? "ok   " : "FAIL ") + what);
    }
    void note(const std::string& what) { details.push_back("info " + what); }
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string list(const std::vector<double>& v, const char* f = "%.3f")
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + fmt(f, v[i]);
    }
    return s + "]";
}

RunConfig sweep_config(const std::string& name, Scheme scheme, int n_min, int n_max)
{
    RunConfig c;
    c.case_name = name;
    c.scheme.scheme = scheme;
    c.n_min = n_min;
    c.n_max = n_max;
    return c;
}

// Orders between consecutive levels whose finer level lies in [n_lo, n_hi].
std::vector<double> orders(const ConvergenceReport& r, Norm which, int n_lo, int n_hi)
{
    std::vector<double> out;
    for (std::size_t i = 1; i < r.levels.size(); ++i) {
        if (r.levels[i].n < n_lo || r.levels[i].n > n_hi) {
            continue;
        }
        const auto e = r.eoc(i, which);
        out.push_back(e ? *e : std::nan(""));
    }
    return out;
}

bool within(const std::vector<double>& v, double lo, double hi)
{
    if (v.empty()) {
        return false;
    }
    for (double x : v) {
        if (!(x >= lo && x <= hi)) {
            return false;
        }
    }
    return true;
}

void require_levels_ok(Outcome& o, const ConvergenceReport& r, const std::string& label)
{
    for (const auto& l : r.levels) {
        if (!l.ok()) {
            o.require(false, label + " level " + std::to_string(l.n) + " failed: " + l.failure);
        }
    }
}

void window(Outcome& o, const ConvergenceReport& r, Norm which, const char* name, double lo, double hi,
            int n_lo, int n_hi)
{
    const auto v = orders(r, which, n_lo, n_hi);
    o.require(within(v, lo, hi), std::string(name) + " orders " + list(v) + " in [" + fmt("%.2f", lo) + ", " +
                                     fmt("%.2f", hi) + "]");
}

// Soft, non-gating comparison of magnitudes against published errors.
void magnitudes(Outcome& o, const ConvergenceReport& r, Norm which, const char* name,
                const std::map<int, double>& published)
{
    for (const auto& l : r.levels) {
        const auto it = published.find(static_cast<int>(l.inv_h));
        if (it == published.end() || !l.ok()) {
            continue;
        }
        const double ratio = norm_value(l, which) / it->second;
        o.note(std::string(name) + " at 1/h = " + std::to_string(static_cast<int>(l.inv_h)) + ": " +
               fmt("%.3e", norm_value(l, which)) + " vs published " + fmt("%.3e", it->second) + " (ratio " +
               fmt("%.2f", ratio) + (ratio <= 3.0 && ratio >= 1.0 / 3.0 ? ", within factor 3)" : ", outside factor 3)"));
    }
}

struct Sweeps {
    std::map<std::string, ConvergenceReport> cache;
    std::map<std::string, double> seconds;

    const ConvergenceReport& get(const std::string& key, const RunConfig& c)
    {
        auto it = cache.find(key);
        if (it != cache.end()) {
            return it->second;
        }
        const auto t0 = std::chrono::steady_clock::now();
        auto r = run_convergence(c);
        seconds[key] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return cache.emplace(key, std::move(r)).first->second;
    }
};

Outcome criterion1(Sweeps& s)
{
    Outcome o;
    const auto& r = s.get("cubic-mod", sweep_config("cubic", Scheme::modified, 4, 9));
    require_levels_ok(o, r, "cubic");
    window(o, r, Norm::l2, "L2", 1.85, 2.15, 7, 9);
    window(o, r, Norm::h1, "broken H1", 0.90, 1.10, 7, 9);
    window(o, r, Norm::linf, "Linf", 1.7, 2.1, 7, 9);
    o.require(s.seconds["cubic-mod"] <= 300.0, "sweep n = 4..9 took " + fmt("%.1f", s.seconds["cubic-mod"]) + " s (limit 300 s)");
    magnitudes(o, r, Norm::l2, "L2", {{64, 2.094e-4}, {128, 5.286e-5}, {256, 1.328e-5}});
    return o;
}

Outcome criterion2(Sweeps& s)
{
    Outcome o;
    auto c = sweep_config("cubic", Scheme::modified, 5, 9);
    c.beta_plus = 1000.0;
    const auto& r = s.get("cubic1000-mod", c);
    require_levels_ok(o, r, "cubic 1000");
    window(o, r, Norm::l2, "L2", 1.85, 2.15, 7, 9);
    window(o, r, Norm::h1, "broken H1", 0.90, 1.10, 7, 9);
    window(o, r, Norm::linf, "Linf", 1.7, 2.1, 7, 9);
    magnitudes(o, r, Norm::l2, "L2", {{64, 2.068e-4}, {128, 5.199e-5}, {256, 1.302e-5}});
    return o;
}

Outcome criterion3(Sweeps& s)
{
    Outcome o;
    auto c10 = sweep_config("corner", Scheme::modified, 5, 9);
    c10.beta_minus = 1.0;
    c10.beta_plus = 10.0;
    const auto& a = s.get("corner-1-10", c10);
    require_levels_ok(o, a, "corner 1/10");
    o.details.push_back("     beta- = 1, beta+ = 10:");
    window(o, a, Norm::l2, "L2", 1.85, 2.15, 7, 9);
    window(o, a, Norm::h1, "broken H1", 0.90, 1.10, 7, 9);
    const auto& b = s.get("corner-10-1", sweep_config("corner", Scheme::modified, 5, 9));
    require_levels_ok(o, b, "corner 10/1");
    o.details.push_back("     beta- = 10, beta+ = 1:");
    window(o, b, Norm::l2, "L2", 1.85, 2.15, 7, 9);
    window(o, b, Norm::h1, "broken H1", 0.90, 1.10, 7, 9);
    const auto linf = orders(b, Norm::linf, 9, 9);
    o.require(within(linf, 1.95, 10.0), "Linf order at the finest pair " + list(linf) + " >= 1.95");
    o.note("cusp elements at n = 9: " + std::to_string(b.levels.back().cusp_elements));
    return o;
}

Outcome criterion4(Sweeps& s)
{
    Outcome o;
    const auto& r = s.get("ellipse-mod", sweep_config("ellipse", Scheme::modified, 5, 9));
    require_levels_ok(o, r, "ellipse");
    const auto l2 = orders(r, Norm::l2, 9, 9);
    const auto h1 = orders(r, Norm::h1, 9, 9);
    o.require(within(l2, 1.85, 10.0), "L2 order at the finest pair " + list(l2) + " >= 1.85");
    o.require(within(h1, 0.90, 10.0), "broken H1 order at the finest pair " + list(h1) + " >= 0.90");
    magnitudes(o, r, Norm::l2, "L2", {{128, 5.585e-4}, {256, 1.437e-4}});
    return o;
}

Outcome criterion5(Sweeps& s, bool long_run)
{
    Outcome o;
    const auto& ifem = s.get("cubic-ifem", sweep_config("cubic", Scheme::ifem, 4, 9));
    require_levels_ok(o, ifem, "unmodified");
    const auto ci = orders(ifem, Norm::l2, 9, 9);
    o.require(within(ci, -10.0, 1.75), "unmodified L2 order 128 -> 256 " + list(ci) + " <= 1.75");
    o.note("unmodified L2 orders n = 5..9 " + list(orders(ifem, Norm::l2, 5, 9)));
    if (!long_run) {
        o.note("256 -> 512 pair not run; pass --long");
        return o;
    }
    const auto& ifem_long = s.get("cubic-ifem-long", sweep_config("cubic", Scheme::ifem, 9, 10));
    const auto& mod_long = s.get("cubic-mod-long", sweep_config("cubic", Scheme::modified, 9, 10));
    require_levels_ok(o, ifem_long, "unmodified");
    require_levels_ok(o, mod_long, "modified");
    const auto u = orders(ifem_long, Norm::l2, 10, 10);
    const auto m = orders(mod_long, Norm::l2, 10, 10);
    o.require(within(u, -10.0, 1.5), "unmodified L2 order 256 -> 512 " + list(u) + " <= 1.5");
    o.require(within(m, 1.9, 10.0), "modified L2 order 256 -> 512 " + list(m) + " >= 1.9");
    o.note("n = 9..10 sweeps took " + fmt("%.0f", s.seconds["cubic-ifem-long"]) + " s and " +
           fmt("%.0f", s.seconds["cubic-mod-long"]) + " s");
    return o;
}

Outcome criterion6()
{
    Outcome o;
    RunConfig cfg;
    cfg.case_name = "line";
    const auto c = make_case(cfg);
    for (int n : {4, 6}) {
        const auto level = solve_level(c, cfg, n);
        double worst = 0.0;
        for (std::size_t v = 0; v < level.mesh->num_vertices(); ++v) {
            const Point2 x = level.mesh->vertex(static_cast<int>(v));
            worst = std::max(worst, std::abs(level.solution[v] - c.exact.value(level.iface->vertex_side[v], x)));
        }
        o.require(worst <= 1e-8, "n = " + std::to_string(n) + ": max vertex error " + fmt("%.2e", worst) + " <= 1e-8");
    }
    return o;
}

Outcome criterion7()
{
    Outcome o;
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> ut(1e-3, 1.0 - 1e-3);
    std::uniform_real_distribution<double> ulog(-3.0, 3.0);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    std::uniform_int_distribution<int> ui(0, 2);
    std::uniform_int_distribution<int> ub(0, 1);
    BasisResiduals worst;
    int cases = 0;
    while (cases < 10000) {
        // Random rectangle so that triangle shapes and positions vary.
        const double x0 = ux(rng);
        const double y0 = ux(rng);
        const Rectangle box{x0, x0 + 0.05 + std::abs(ux(rng)), y0, y0 + 0.05 + std::abs(ux(rng))};
        const auto mesh = build_uniform_mesh(box, 0);
        const int elem = ub(rng);
        const int lone = ui(rng);
        const Side lone_side = ub(rng) ? Side::plus : Side::minus;
        std::array<Side, 3> vs{};
        for (int k = 0; k < 3; ++k) {
            vs[k] = k == lone ? lone_side : opposite(lone_side);
        }
        const auto cut = cut_geometry(mesh, elem, vs, {ut(rng), ut(rng), ut(rng)});
        const double bp = std::pow(10.0, ulog(rng));
        const double bm = bp * std::pow(10.0, ulog(rng));
        if (bm / bp < 1e-3 || bm / bp > 1e3) {
            continue;
        }
        const auto tri = mesh.triangle_points(elem);
        const auto r = basis_residuals(immersed_p1(tri, cut, bp, bm), tri);
        worst.nodal = std::max(worst.nodal, r.nodal);
        worst.continuity = std::max(worst.continuity, r.continuity);
        worst.flux = std::max(worst.flux, r.flux);
        worst.partition_of_unity = std::max(worst.partition_of_unity, r.partition_of_unity);
        ++cases;
    }
    o.note(std::to_string(cases) + " random cuts, coefficient ratios in [1e-3, 1e3]");
    o.require(worst.flux <= 1e-12, "flux-jump residual " + fmt("%.2e", worst.flux));
    o.require(worst.continuity <= 1e-12, "continuity at D, E " + fmt("%.2e", worst.continuity));
    o.require(worst.nodal <= 1e-12, "nodal Kronecker " + fmt("%.2e", worst.nodal));
    o.require(worst.partition_of_unity <= 1e-12, "partition of unity " + fmt("%.2e", worst.partition_of_unity));
    return o;
}

Outcome criterion8()
{
    Outcome o;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double tri_err = 0.0;
    int triangles = 0;
    while (triangles < 100) {
        std::array<Point2, 3> t{Point2{u(rng), u(rng)}, Point2{u(rng), u(rng)}, Point2{u(rng), u(rng)}};
        if (cross(t[1] - t[0], t[2] - t[0]) < 0.0) {
            std::swap(t[1], t[2]);
        }
        const double area = 0.5 * cross(t[1] - t[0], t[2] - t[0]);
        if (area < 1e-3) {
            continue;
        }
        ++triangles;
        for (int deg : {1, 2, 4, 6}) {
            const auto q = triangle_rule(t, deg);
            for (int a = 0; a <= deg; ++a) {
                for (int b = 0; a + b <= deg; ++b) {
                    double got = 0.0;
                    for (std::size_t k = 0; k < q.size(); ++k) {
                        got += q.weights[k] * std::pow(q.points[k].x, a) * std::pow(q.points[k].y, b);
                    }
                    double mx = 0.0;
                    for (const auto& p : t) {
                        mx = std::max(mx, std::pow(std::abs(p.x), a) * std::pow(std::abs(p.y), b));
                    }
                    const double exact = static_cast<double>(oracle::triangle_moment(t, a, b));
                    tri_err = std::max(tri_err, std::abs(got - exact) / (area * mx));
                }
            }
        }
    }
    double seg_err = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Point2 a{u(rng), u(rng)};
        const Point2 b{u(rng), u(rng)};
        for (int np : {1, 2, 3}) {
            const auto q = segment_rule(a, b, np);
            for (int k = 0; k <= 2 * np - 1; ++k) {
                double got = 0.0;
                for (std::size_t i = 0; i < q.size(); ++i) {
                    got += q.weights[i] * std::pow(q.points[i].x, k);
                }
                const double exact = static_cast<double>(oracle::segment_moment(a, b, k));
                const double scale = norm(b - a) * std::pow(std::max(std::abs(a.x), std::abs(b.x)), k);
                seg_err = std::max(seg_err, std::abs(got - exact) / scale);
            }
        }
    }
    double area_err = 0.0;
    std::uniform_real_distribution<double> ut(1e-6, 1.0 - 1e-6);
    std::uniform_int_distribution<int> ui(0, 2);
    const auto mesh = build_uniform_mesh({-1.0, 1.0, -1.0, 1.0}, 5);
    for (int trial = 0; trial < 1000; ++trial) {
        const int elem = trial % static_cast<int>(mesh.num_triangles());
        std::array<Side, 3> vs{Side::plus, Side::plus, Side::plus};
        vs[ui(rng)] = Side::minus;
        const auto cut = cut_geometry(mesh, elem, vs, {ut(rng), ut(rng), ut(rng)});
        const auto [qp, qm] = cut_rule(cut, 4);
        double sum = 0.0;
        for (double w : qp.weights) {
            sum += w;
        }
        for (double w : qm.weights) {
            sum += w;
        }
        const double area = mesh.triangle_area(elem);
        area_err = std::max(area_err, std::abs(sum - area) / area);
        area_err = std::max(area_err, std::abs(cut.area_plus + cut.area_minus - area) / area);
    }
    o.require(tri_err <= 1e-13, "triangle rules, degrees 1/2/4/6 on 100 random triangles: " + fmt("%.2e", tri_err));
    o.require(seg_err <= 1e-13, "segment rules, 1-3 points on 100 random segments: " + fmt("%.2e", seg_err));
    o.require(area_err <= 1e-13, "cut-rule area additivity on 1000 cuts at h = 1/16: " + fmt("%.2e", area_err));
    return o;
}

Outcome criterion9(Sweeps& s)
{
    Outcome o;
    for (const auto& name : {"cubic", "corner", "ellipse"}) {
        const auto c = builtin_case(name);
        double worst = 0.0;
        bool dofs_ok = true;
        for (int n = 3; n <= 9; ++n) {
            const auto mesh = build_uniform_mesh(c.domain, n);
            const auto iface = discretize_interface(mesh, c.interface);
            const ImmersedSpace space(mesh, iface, c.beta);
            for (auto scheme : {Scheme::ifem, Scheme::modified}) {
                SchemeOptions opts;
                opts.scheme = scheme;
                auto sys = assemble_system(space, c.beta, c.source, c.exact.value, opts);
                apply_dirichlet(sys, mesh, boundary_trace(space, c.exact.value));
                worst = std::max(worst, sys.matrix.max_asymmetry() / sys.matrix.max_abs());
                dofs_ok = dofs_ok && static_cast<std::size_t>(sys.matrix.size()) == mesh.num_vertices();
            }
        }
        o.require(worst <= 1e-12, std::string(name) + ": max |A - A^T| / max |A| over n = 3..9 " + fmt("%.2e", worst));
        o.require(dofs_ok, std::string(name) + ": unknowns equal vertices for both schemes");
    }
    // Every sweep level so far was solved by CG to the default tolerance.
    int checked = 0;
    bool cg_ok = true;
    for (const auto& [key, r] : s.cache) {
        for (const auto& l : r.levels) {
            if (l.n > 9 || !l.ok()) {
                continue;
            }
            ++checked;
            cg_ok = cg_ok && l.solver_method == "cg" && l.solver_residual <= 1e-10 &&
                    static_cast<std::size_t>(l.iterations) <= l.dofs;
        }
    }
    o.require(cg_ok && checked > 0, "CG reached 1e-10 within dofs iterations on " + std::to_string(checked) +
                                        " solved levels with n <= 9");
    return o;
}

// Published tables: errors and orders, rows 1/h = 8..512, columns L2, H1, Linf.
struct PublishedBlock {
    const char* label;
    std::array<std::array<const char*, 6>, 7> rows;   // err, order per column
};

const PublishedBlock published[] = {
    {"cubic 1/10 unmodified",
     {{{"1.344e-2", "", "3.315e-1", "", "2.761e-2", ""},
       {"3.453e-3", "1.961", "1.709e-1", "0.955", "8.715e-3", "1.663"},
       {"8.9002-4", "1.956", "8.727e-3", "0.970", "3.069e-3", "1.506"},
       {"2.161e-4", "2.043", "4.507e-2", "0.953", "1.295e-3", "1.245"},
       {"5.541e-5", "1.963", "2.347e-2", "0.941", "5.786e-4", "1.162"},
       {"1.851e-5", "1.582", "1.288e-2", "0.865", "3.598e-4", "0.686"},
       {"8.193e-6", "1.176", "7.297e-3", "0.820", "1.776e-4", "1.018"}}}},
    {"cubic 1/10 modified",
     {{{"1.233e-2", "", "3.306e-1", "", "2.345e-2", ""},
       {"3.260e-3", "1.919", "1.694e-1", "0.965", "6.765e-3", "1.793"},
       {"8.269e-4", "1.979", "8.554e-2", "0.986", "1.775e-3", "1.931"},
       {"2.094e-4", "1.982", "4.300e-2", "0.992", "4.621e-4", "1.941"},
       {"5.286e-5", "1.986", "2.156e-2", "0.996", "1.185e-4", "1.964"},
       {"1.328e-5", "1.993", "1.078e-2", "0.999", "2.991e-5", "1.986"},
       {"3.308e-6", "2.005", "5.399e-3", "0.998", "7.557e-6", "1.985"}}}},
    {"cubic 1/1000 unmodified",
     {{{"1.923e-2", "", "3.530e-1", "", "5.617e-2", ""},
       {"4.002e-3", "2.264", "1.716e-1", "1.040", "1.470e-2", "1.934"},
       {"9.196e-4", "2.122", "8.453e-2", "1.022", "3.854e-3", "1.932"},
       {"2.291e-4", "2.005", "4.221e-2", "1.002", "1.288e-3", "1.582"},
       {"5.408e-5", "2.083", "2.105e-2", "1.004", "2.836e-4", "2.183"},
       {"1.337e-5", "2.016", "1.056e-2", "0.995", "1.159e-4", "1.291"},
       {"3.336e-6", "2.002", "5.304e-3", "0.994", "5.258e-5", "1.141"}}}},
    {"cubic 1/1000 modified",
     {{{"1.266e-2", "", "3.216e-1", "", "2.470e-2", ""},
       {"3.205e-3", "1.982", "1.643e-1", "0.969", "6.836e-3", "1.854"},
       {"8.163e-4", "1.973", "8.293e-2", "0.986", "1.784e-3", "1.938"},
       {"2.068e-4", "1.981", "4.172e-2", "0.991", "4.642e-4", "1.943"},
       {"5.199e-5", "1.992", "2.093e-2", "0.996", "1.185e-4", "1.970"},
       {"1.302e-5", "1.998", "1.048e-2", "0.998", "3.009e-5", "1.977"},
       {"3.259e-6", "1.998", "5.243e-3", "0.999", "7.564e-6", "1.992"}}}},
    {"corner 1/10 unmodified",
     {{{"3.359e-3", "", "7.958e-2", "", "1.036e-2", ""},
       {"9.014e-4", "1.898", "4.185e-3", "0.927", "4.118e-3", "1.332"},
       {"2.219e-4", "2.022", "2.161e-3", "0.954", "1.958e-3", "1.073"},
       {"5.686e-5", "1.965", "1.197e-3", "0.852", "9.568e-4", "1.033"},
       {"1.463e-5", "1.958", "6.573e-3", "0.865", "5.063e-4", "0.918"},
       {"6.070e-6", "1.269", "3.967e-3", "0.728", "2.462e-4", "1.040"},
       {"2.942e-6", "1.045", "2.439e-3", "0.702", "1.241e-4", "0.988"}}}},
    {"corner 1/10 modified",
     {{{"3.056e-3", "", "7.817e-2", "", "9.005e-3", ""},
       {"7.441e-4", "2.038", "3.956e-2", "0.983", "2.316e-3", "1.959"},
       {"1.930e-4", "1.947", "1.990e-2", "0.991", "6.221e-4", "1.896"},
       {"4.716e-5", "2.033", "1.000e-2", "0.993", "1.608e-4", "1.952"},
       {"1.216e-5", "1.956", "5.015e-3", "0.996", "4.090e-5", "1.975"},
       {"3.010e-6", "2.014", "2.510e-3", "0.999", "1.031e-5", "1.989"},
       {"7.621e-7", "1.982", "1.256e-3", "0.999", "2.633e-6", "1.968"}}}},
    {"corner 10/1 unmodified",
     {{{"1.238e-2", "", "3.013e-1", "", "1.613e-2", ""},
       {"3.159e-3", "1.971", "1.513e-1", "0.994", "4.327e-3", "1.899"},
       {"7.949e-4", "1.991", "7.572e-2", "0.998", "1.174e-3", "1.882"},
       {"2.030e-4", "1.969", "3.821e-2", "0.987", "7.475e-4", "0.651"},
       {"5.366e-5", "1.920", "1.933e-2", "0.983", "4.704e-4", "0.668"},
       {"1.528e-5", "1.812", "9.919e-3", "0.963", "2.452e-4", "0.940"},
       {"4.898e-6", "1.642", "5.155e-3", "0.944", "1.199e-4", "1.033"}}}},
    {"corner 10/1 modified",
     {{{"1.238e-2", "", "3.010e-1", "", "1.610e-2", ""},
       {"3.094e-3", "2.000", "1.507e-1", "0.998", "4.107e-3", "1.971"},
       {"7.787e-4", "1.990", "7.543e-2", "0.999", "1.037e-3", "1.986"},
       {"1.947e-4", "2.000", "3.773e-2", "0.999", "2.605e-4", "1.993"},
       {"4.876e-5", "1.998", "1.887e-2", "1.000", "6.528e-5", "1.997"},
       {"1.219e-5", "2.000", "9.435e-3", "1.000", "1.634e-5", "1.998"},
       {"3.051e-6", "1.998", "4.718e-3", "1.000", "4.087e-6", "1.999"}}}},
    {"ellipse unmodified",
     {{{"8.550e-2", "", "1.585e-0", "", "2.415e-1", ""},
       {"2.931e-2", "1.544", "9.840e-1", "0.688", "1.025e-1", "1.237"},
       {"7.954e-3", "1.882", "5.538e-1", "0.829", "4.174e-2", "1.295"},
       {"2.002e-3", "1.990", "3.033e-1", "0.869", "1.568e-2", "1.413"},
       {"4.825e-4", "2.053", "1.665e-1", "0.865", "8.471e-3", "0.888"},
       {"1.206e-4", "2.000", "8.948e-2", "0.896", "4.393e-3", "0.947"},
       {"3.461e-5", "1.802", "5.063e-2", "0.822", "2.132e-3", "1.043"}}}},
    {"ellipse modified",
     {{{"8.652e-2", "", "1.572e-0", "", "2.150e-1", ""},
       {"2.867e-2", "1.593", "9.704e-1", "0.696", "9.448e-2", "1.187"},
       {"8.049e-3", "1.833", "5.368e-1", "0.854", "3.656e-2", "1.370"},
       {"2.195e-3", "1.874", "2.889e-1", "0.894", "1.097e-2", "1.736"},
       {"5.585e-4", "1.975", "1.485e-1", "0.959", "3.055e-3", "1.845"},
       {"1.437e-4", "1.958", "7.550e-2", "0.976", "8.386e-4", "1.865"},
       {"3.649e-5", "1.978", "3.809e-2", "0.987", "2.209e-4", "1.925"}}}},
};

// Printed errors that are malformed or off by a power of ten; the neighbouring
// orders confirm each correction.
const std::map<std::string, double> corrections{
    {"8.9002-4", 8.9002e-4},
};
const std::set<std::pair<std::string, int>> exponent_typos{
    {"cubic 1/10 unmodified", 2 * 10 + 1},   // row 32, H1: 8.727e-3 for 8.727e-2
    {"corner 1/10 unmodified", 1 * 10 + 1},   // rows 16..64, H1: e-3 for e-2
    {"corner 1/10 unmodified", 2 * 10 + 1},
    {"corner 1/10 unmodified", 3 * 10 + 1},
};

std::optional<double> parse(const std::string& s)
{
    std::istringstream in(s);
    double v = 0.0;
    in >> v;
    if (!in || !in.eof()) {
        return std::nullopt;
    }
    return v;
}

Outcome criterion10()
{
    Outcome o;
    int verbatim = 0;
    int corrected = 0;
    int mismatched = 0;
    double worst = 0.0;
    for (const auto& block : published) {
        for (int row = 1; row < 7; ++row) {
            for (int col = 0; col < 3; ++col) {
                auto value = [&](int r, bool& fixed) {
                    const std::string text = block.rows[r][2 * col];
                    auto v = parse(text);
                    if (!v) {
                        fixed = true;
                        return corrections.at(text);
                    }
                    if (exponent_typos.count({block.label, r * 10 + col})) {
                        fixed = true;
                        return *v * 10.0;
                    }
                    return *v;
                };
                bool fixed = false;
                const double coarse = value(row - 1, fixed);
                const double fine = value(row, fixed);
                const double printed = *parse(block.rows[row][2 * col + 1]);
                const auto eoc = compute_eoc(coarse, fine);
                const double diff = eoc ? std::abs(*eoc - printed) : INFINITY;
                worst = std::max(worst, diff);
                if (diff > 0.002) {
                    ++mismatched;
                    o.details.push_back("FAIL " + std::string(block.label) + " row " + std::to_string(8 << row) +
                                        " column " + std::to_string(col) + ": printed " + fmt("%.3f", printed) +
                                        ", computed " + fmt("%.3f", eoc.value_or(NAN)));
                } else if (fixed) {
                    ++corrected;
                } else {
                    ++verbatim;
                }
            }
        }
    }
    o.pass = o.pass && mismatched == 0;
    o.require(mismatched == 0, std::to_string(verbatim + corrected) + " of " +
                                   std::to_string(verbatim + corrected + mismatched) + " printed orders within 0.002 (worst " +
                                   fmt("%.4f", worst) + ")");
    o.note(std::to_string(verbatim) + " from the printed errors as they stand, " + std::to_string(corrected) +
           " after correcting 5 misprinted errors (one missing 'e', four exponents off by one)");
    const auto example = compute_eoc(5.286e-5, 1.328e-5);
    o.require(example && std::abs(*example - 1.993) <= 0.002, "5.286e-5 -> 1.328e-5 gives " + fmt("%.3f", example.value_or(NAN)));
    return o;
}

Outcome criterion11(Sweeps& s)
{
    Outcome o;
    auto c = sweep_config("cubic", Scheme::modified, 5, 8);
    c.scheme.sigma0 = 0.0;
    c.scheme.epsilon = 0;
    const auto& r = s.get("cubic-sigma0", c);
    require_levels_ok(o, r, "sigma0 = 0");
    const auto v = orders(r, Norm::l2, 7, 8);
    o.require(within(v, 1.8, 10.0), "L2 orders over n = 6..8 " + list(v) + " >= 1.8");
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    bool long_run = false;
    std::vector<int> only;
    app.add_flag("--long", long_run, "include the 1/h = 512 runs");
    app.add_option("--only", only, "criteria to run (default: all)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    Sweeps sweeps;
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"orders, cubic 1/10, modified", [&] { return criterion1(sweeps); }},
        {"orders, cubic 1/1000, modified", [&] { return criterion2(sweeps); }},
        {"orders, corner, both orientations", [&] { return criterion3(sweeps); }},
        {"orders, ellipse with variable coefficient", [&] { return criterion4(sweeps); }},
        {"degradation of the unmodified scheme", [&] { return criterion5(sweeps, long_run); }},
        {"straight-interface patch test", [] { return criterion6(); }},
        {"immersed basis constraints on random cuts", [] { return criterion7(); }},
        {"quadrature exactness", [] { return criterion8(); }},
        {"matrix structure and CG convergence", [&] { return criterion9(sweeps); }},
        {"orders reproduced from published errors", [] { return criterion10(); }},
        {"zero penalty, incomplete variant", [&] { return criterion11(sweeps); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) {
            continue;
        }
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %2d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, sec);
        for (const auto& d : o.details) {
            std::printf("       %s\n", d.c_str());
        }
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}

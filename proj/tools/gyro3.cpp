// gyro3 command line: euler, lagrange, stability, integrate, appendixb, sweep.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <gyro3/appendixb.hpp>
#include <gyro3/euler.hpp>
#include <gyro3/integrator.hpp>
#include <gyro3/lagrange.hpp>
#include <gyro3/stability.hpp>
#include <gyro3/sweep.hpp>

using namespace gyro3;
using nlohmann::json;

namespace {

enum class Format { table, json, csv };

struct Common {
    bool as_json = false, as_csv = false;
    Format fmt() const { return as_json ? Format::json : as_csv ? Format::csv : Format::table; }
};

void add_format(CLI::App* sc, Common& c)
{
    auto* j = sc->add_flag("--json", c.as_json, "JSON output");
    auto* k = sc->add_flag("--csv", c.as_csv, "CSV output");
    j->excludes(k);
}

std::string num(double x)
{
    char b[64];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

json params_to_json(const SystemParams& p)
{
    return {{"m0", p.m0}, {"m1", p.m1}, {"m2", p.m2}, {"G", p.G}, {"A0", p.A0}, {"C0", p.C0}, {"A1", p.A1},
            {"C1", p.C1}, {"A2", p.A2}, {"C2", p.C2}, {"l", p.l}};
}

SystemParams params_from_json(const json& j)
{
    SystemParams p;
    p.m0 = j.value("m0", p.m0); p.m1 = j.value("m1", p.m1); p.m2 = j.value("m2", p.m2);
    p.G = j.value("G", p.G); p.l = j.value("l", p.l);
    p.A0 = j.value("A0", p.A0); p.C0 = j.value("C0", p.C0);
    p.A1 = j.value("A1", p.A1); p.C1 = j.value("C1", p.C1);
    p.A2 = j.value("A2", p.A2); p.C2 = j.value("C2", p.C2);
    return p;
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    return json::parse(in);
}

json state_json(const SystemParams& p, const EquilibriumSolution& s)
{
    return {{"params", params_to_json(p)}, {"state", s.z.to_array()}, {"kind", s.kind}, {"omega0", s.omega0},
            {"field_residual", s.field_residual}, {"torque_residual", s.torque_residual}};
}

// Parameters: --params file first, then individual flags on top.
struct ParamFlags {
    std::string file;
    std::vector<double> masses;
    std::vector<double> inertia;  // A0 C0 A1 C1 A2 C2
    double G = 1, l = 0;
    bool G_set = false, l_set = false;

    void add(CLI::App* sc)
    {
        sc->add_option("--params", file, "JSON file with m0 m1 m2 G A0 C0 A1 C1 A2 C2 l");
        sc->add_option("--masses", masses, "m0,m1,m2")->delimiter(',')->expected(3);
        sc->add_option("--inertia", inertia, "A0,C0,A1,C1,A2,C2")->delimiter(',')->expected(6);
        sc->add_option("--G", G, "gravitational constant")->each([this](const std::string&) { G_set = true; });
        sc->add_option("--l", l, "gyrostatic momentum")->each([this](const std::string&) { l_set = true; });
    }

    SystemParams build() const
    {
        SystemParams p = file.empty() ? SystemParams{} : params_from_json(read_json(file));
        if (masses.size() == 3) { p.m0 = masses[0]; p.m1 = masses[1]; p.m2 = masses[2]; }
        if (inertia.size() == 6) {
            p.A0 = inertia[0]; p.C0 = inertia[1]; p.A1 = inertia[2];
            p.C1 = inertia[3]; p.A2 = inertia[4]; p.C2 = inertia[5];
        }
        if (G_set) p.G = G;
        if (l_set) p.l = l;
        return p;
    }
};

std::vector<SweepAxis> parse_axes(const std::vector<std::string>& specs)
{
    std::vector<SweepAxis> out;
    for (auto& s : specs) {
        std::stringstream ss(s);
        std::string name, lo, hi, n;
        if (!std::getline(ss, name, ':') || !std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') || !std::getline(ss, n))
            throw DomainError("sweep axis must be NAME:LO:HI:N, got " + s);
        out.push_back({name, std::stod(lo), std::stod(hi), std::stoi(n)});
    }
    return out;
}

int emit_sweep(const SweepSpec& spec, Format f)
{
    auto pts = run_sweep(spec);
    bool all_ok = true;
    if (f == Format::json) {
        json arr = json::array();
        for (auto& p : pts) {
            json v;
            for (auto& [k, x] : p.values) v[k] = x;
            arr.push_back({{"index", p.index}, {"values", v}, {"count", p.count}, {"label", p.label}, {"ok", p.ok},
                           {"error", p.error}});
            all_ok &= p.ok;
        }
        std::cout << json{{"problem", spec.problem}, {"config", config_name(spec.config)}, {"points", arr}}.dump(2) << "\n";
    } else {
        std::cout << "index";
        for (auto& a : spec.axes) std::cout << (f == Format::csv ? "," : "\t") << a.name;
        std::cout << (f == Format::csv ? ",count,label,ok\n" : "\tcount\tlabel\tok\n");
        for (auto& p : pts) {
            const char* sep = f == Format::csv ? "," : "\t";
            std::cout << p.index;
            for (auto& [k, x] : p.values) std::cout << sep << num(x);
            std::cout << sep << p.count << sep << p.label << sep << (p.ok ? 1 : 0) << "\n";
            all_ok &= p.ok;
        }
    }
    if (!all_ok)
        for (auto& p : pts)
            if (!p.ok) std::cerr << "grid point " << p.index << " failed: " << p.error << "\n";
    return all_ok ? 0 : 1;
}

// ---- euler ----------------------------------------------------------------

struct EulerOpts {
    Common c;
    ParamFlags pf;
    std::string config = "c";
    double beta1 = 0, beta2 = 0, k = 0, a = 1;
    bool b1_set = false, b2_set = false, k_set = false;
    double mass_ratio = -1;
    std::vector<std::string> sweep;
    std::string emit_state;
};

int run_euler(const EulerOpts& o)
{
    auto cfg = parse_config(o.config);
    if (!cfg) throw DomainError("--config must be a, b or c");
    if (!o.sweep.empty()) {
        SweepSpec s;
        s.problem = o.mass_ratio >= 0 ? "euler" : "euler-full";
        s.config = *cfg;
        s.axes = parse_axes(o.sweep);
        SystemParams p = o.pf.build();
        s.fixed = {{"m0", p.m0}, {"m1", p.m1}, {"m2", p.m2}, {"a", o.a}, {"beta2", o.beta2}};
        if (o.mass_ratio >= 0) s.fixed["mass_ratio"] = o.mass_ratio;
        if (o.k_set) s.fixed["k"] = o.k;
        else s.fixed["beta1"] = o.beta1;
        return emit_sweep(s, o.c.fmt());
    }
    if (o.mass_ratio >= 0) {
        // Restricted limit: count from Sturm, clause from the R1 thresholds.
        double k = o.k_set ? o.k : (o.beta2 != 0 ? o.beta1 / o.beta2 : 0.0);
        auto r = classify_bifurcation(o.mass_ratio, k, o.beta2, o.a, *cfg);
        std::string label;
        for (auto& c : r.clauses) label += (label.empty() ? "" : "|") + c.label;
        if (o.c.fmt() == Format::json) {
            json cl = json::array();
            for (auto& c : r.clauses)
                cl.push_back({{"label", c.label}, {"stated_count", c.stated_count}, {"evaluable", c.evaluable}, {"note", c.note}});
            json j{{"config", config_name(*cfg)}, {"mass_ratio", o.mass_ratio}, {"k", k}, {"beta2", o.beta2}, {"a", o.a},
                   {"count", r.count}, {"rho", r.roots}, {"clauses", cl}};
            if (r.xi1) j["xi1"] = *r.xi1;
            if (r.xi2) j["xi2"] = *r.xi2;
            if (r.k0) j["k0"] = *r.k0;
            std::cout << j.dump(2) << "\n";
        } else if (o.c.fmt() == Format::csv) {
            std::cout << "config,rho,count,regime\n";
            for (double x : r.roots) std::cout << config_name(*cfg) << "," << num(x) << "," << r.count << "," << label << "\n";
        } else {
            std::cout << "config " << config_name(*cfg) << "  count " << r.count << "  regime " << (label.empty() ? "-" : label) << "\n";
            if (r.xi1) std::cout << "xi1 (R1 at local max) " << num(*r.xi1) << "\n";
            if (r.xi2) std::cout << "xi2 (R1 at local min) " << num(*r.xi2) << "\n";
            if (r.k0) std::cout << "k0 " << num(*r.k0) << "\n";
            for (double x : r.roots) std::cout << "rho " << num(x) << "\n";
        }
        return 0;
    }
    SystemParams p = o.pf.build();
    double b2 = o.b2_set ? o.beta2 : p.beta2();
    double b1 = o.k_set ? o.k * b2 : (o.b1_set ? o.beta1 : p.beta1());
    p.C1 = p.A1 + b1 / 1.5;
    p.C2 = p.A2 + b2 / 1.5;
    p.validate();
    auto br = solve_euler(p, o.a, *cfg);
    std::string regime = std::to_string(br.rho.size()) + " equilibria";
    if (o.c.fmt() == Format::json) {
        json eq = json::array(), rej = json::array();
        for (size_t i = 0; i < br.rho.size(); ++i) eq.push_back({{"rho", br.rho[i]}, {"omega2", br.omega2[i]}});
        for (size_t i = 0; i < br.rejected_rho.size(); ++i)
            rej.push_back({{"rho", br.rejected_rho[i]}, {"omega2", br.rejected_omega2[i]}});
        std::cout << json{{"config", config_name(*cfg)}, {"a", o.a}, {"params", params_to_json(p)}, {"equilibria", eq},
                          {"rejected", rej}, {"regime", regime}}.dump(2) << "\n";
    } else {
        const char* sep = o.c.fmt() == Format::csv ? "," : "\t";
        std::cout << "config" << sep << "rho" << sep << "omega2" << sep << "status" << sep << "regime\n";
        for (size_t i = 0; i < br.rho.size(); ++i)
            std::cout << config_name(*cfg) << sep << num(br.rho[i]) << sep << num(br.omega2[i]) << sep << "ok" << sep << regime << "\n";
        for (size_t i = 0; i < br.rejected_rho.size(); ++i)
            std::cout << config_name(*cfg) << sep << num(br.rejected_rho[i]) << sep << num(br.rejected_omega2[i]) << sep
                      << "rejected" << sep << regime << "\n";
    }
    if (!o.emit_state.empty()) {
        if (br.rho.empty()) throw DomainError("no equilibrium to emit");
        std::ofstream(o.emit_state) << state_json(p, build_euler_equilibrium(p, br.rho.front(), o.a, *cfg)).dump(2) << "\n";
    }
    return 0;
}

// ---- lagrange ---------------------------------------------------------------

struct LagrangeOpts {
    Common c;
    ParamFlags pf;
    double Z = 1, beta1 = 0, beta2 = 0;
    bool from_params = false;
    std::vector<std::string> sweep;
    std::string emit_state;
    int sign = 1;
};

int run_lagrange(const LagrangeOpts& o)
{
    if (!o.sweep.empty()) {
        SweepSpec s;
        s.problem = "lagrange";
        s.axes = parse_axes(o.sweep);
        s.fixed = {{"Z", o.Z}, {"beta1", o.beta1}, {"beta2", o.beta2}};
        return emit_sweep(s, o.c.fmt());
    }
    SystemParams p = o.pf.build();
    double b1 = o.beta1, b2 = o.beta2;
    if (o.from_params) { b1 = quintic_parameter(p, 1); b2 = quintic_parameter(p, 2); }
    auto sol = lagrange_system_solve(o.Z, b1, b2);
    auto cl = classify_lagrange(o.Z, b1, b2);
    auto x2y2 = [&](const TriangleSolution& t) {
        return std::pair{lagrange_x2(p, t.Z, t.X, t.Y), lagrange_y2(t.Z, t.X, t.Y)};
    };
    if (o.c.fmt() == Format::json) {
        json arr = json::array(), rej = json::array();
        for (auto& t : sol.solutions) {
            auto [x2, y2] = x2y2(t);
            arr.push_back({{"X", t.X}, {"Y", t.Y}, {"shape", shape_name(t.shape)}, {"x2", x2}, {"y2", y2},
                           {"x_branch", t.x_branch}, {"y_branch", t.y_branch}});
        }
        for (auto& t : sol.rejected) rej.push_back({{"X", t.X}, {"Y", t.Y}, {"shape", shape_name(t.shape)}});
        std::cout << json{{"Z", o.Z}, {"beta1", b1}, {"beta2", b2}, {"clause", cl.clause}, {"stated_count", cl.stated_count},
                          {"count", cl.count}, {"mirror_count", cl.mirror_count}, {"solutions", arr}, {"rejected", rej}}.dump(2)
                  << "\n";
    } else {
        const char* sep = o.c.fmt() == Format::csv ? "," : "\t";
        std::cout << "Z" << sep << "X" << sep << "Y" << sep << "shape" << sep << "x2" << sep << "y2" << sep << "clause" << sep
                  << "count\n";
        for (auto& t : sol.solutions) {
            auto [x2, y2] = x2y2(t);
            std::cout << num(o.Z) << sep << num(t.X) << sep << num(t.Y) << sep << shape_name(t.shape) << sep << num(x2) << sep
                      << num(y2) << sep << cl.clause << sep << cl.count << "\n";
        }
        if (o.c.fmt() == Format::table)
            std::cout << "clause " << cl.clause << "  stated " << cl.stated_count << "  found " << cl.count
                      << "  (with reflections " << cl.mirror_count << ")\n";
    }
    if (!o.emit_state.empty()) {
        if (sol.solutions.empty()) throw DomainError("no equilibrium to emit");
        SystemParams q = p;
        // Keep the state consistent with the quintic parameters that produced it.
        q.C1 = q.A1 + b1 * q.m1 / 1.5;
        q.C2 = q.A2 + b2 * q.m2 / 1.5;
        std::ofstream(o.emit_state) << state_json(q, build_lagrange_equilibrium(q, sol.solutions.front(), o.sign)).dump(2) << "\n";
    }
    return 0;
}

// ---- stability --------------------------------------------------------------

int run_stability(const std::string& path, Format f)
{
    json in = read_json(path);
    SystemParams p = params_from_json(in.at("params"));
    auto z = ReducedState::from_array(in.at("state").get<std::array<double, 21>>());
    std::string kind = in.value("kind", std::string());
    StabilityVerdict v = kind.rfind("lagrange", 0) == 0 ? lagrange_stability(p, z) : spectral_verdict(p, z);
    json ev = json::array(), led = json::array();
    for (auto e : v.eigenvalues) ev.push_back({e.real(), e.imag()});
    for (auto& c : v.ledger) led.push_back({{"name", c.name}, {"value", c.value}, {"pass", c.pass}, {"marginal", c.marginal}});
    json out{{"kind", kind},
             {"classification", classification_name(v.classification)},
             {"max_real_part", v.max_real_part},
             {"marginal", v.marginal},
             {"char_poly", v.char_poly.coeffs()},
             {"eigenvalues", ev},
             {"zero_algebraic", v.zero.algebraic},
             {"zero_geometric", v.zero.geometric},
             {"zero_jordan", v.zero.jordan},
             {"ledger", led},
             {"notes", v.notes}};
    if (kind.rfind("euler:", 0) == 0) {
        // mu = ((1+rho) m2 + rho m1)/M2 lambda
        double rho = (z.mu.x() / z.lambda.x() * p.M2() - p.m2) / p.M2();
        try {
            auto c = euler_spherical_coefficients(p, rho, z.lambda.norm());
            out["appendix"] = {{"omega2", c.omega2}, {"p", c.p}, {"q", c.q}, {"r", c.r}, {"r_alt", c.r_alt}, {"a", c.a}};
        } catch (const DomainError&) {
        }
    }
    if (f == Format::table) {
        std::cout << "classification " << out["classification"].get<std::string>() << "  max Re " << num(v.max_real_part)
                  << "  zero alg/geo " << v.zero.algebraic << "/" << v.zero.geometric << (v.zero.jordan ? " (Jordan)" : "")
                  << "\n";
        for (auto& c : v.ledger) std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " = " << num(c.value) << "\n";
        for (auto& n : v.notes) std::cout << "note: " << n << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

// ---- integrate --------------------------------------------------------------

int run_integrate(const std::string& path, double t_end, double dt, const std::string& method, int every)
{
    json in = read_json(path);
    SystemParams p = params_from_json(in.at("params"));
    auto z = ReducedState::from_array(in.at("state").get<std::array<double, 21>>());
    Method m = method == "rk87" ? Method::rk87 : Method::rk4;
    if (method != "rk4" && method != "rk87") throw DomainError("--method must be rk4 or rk87");
    auto rep = integrate(p, z, t_end, dt, m, every);
    static const char* names[] = {"Pi1", "Pi2", "Pi0", "lambda", "p_lambda", "mu", "p_mu"};
    std::cout << "t";
    for (auto n : names)
        for (auto c : {"x", "y", "z"}) std::cout << "," << n << "_" << c;
    std::cout << ",dH,dL0sq,dPi1sq,dPi2sq,dL,dpi0_3\n";
    for (size_t i = 0; i < rep.samples.size(); ++i) {
        std::cout << num(rep.samples[i].t);
        for (double x : rep.samples[i].z.to_array()) std::cout << "," << num(x);
        auto& d = rep.drift[i];
        for (double x : {d.H, d.half_L0_sq, d.half_Pi1_sq, d.half_Pi2_sq, d.L, d.pi0_3}) std::cout << "," << num(x);
        std::cout << "\n";
    }
    if (rep.aborted) {
        std::cerr << rep.message << "\n";
        return 1;
    }
    return 0;
}

// ---- appendixb --------------------------------------------------------------

int run_appendixb(const std::string& catalog, Format f)
{
    auto rows = appendixb_report(resolve_catalog(catalog));
    static const char* cols[] = {"none", "S2", "S2+S1"};
    bool ok = true;
    auto flag = [](const AppendixBRow& r, int c) {
        double lim = r.system == "Mars-Phobos" ? 0.015 : 0.0005;
        return std::abs(r.rel_error(c)) <= lim ? "ok" : "flagged";
    };
    if (f == Format::json) {
        json arr = json::array();
        for (auto& r : rows) {
            for (int c = 0; c < 3; ++c)
                arr.push_back({{"row", r.label}, {"config", config_name(r.config)}, {"column", cols[c]},
                               {"printed_km", r.printed_km[c]}, {"computed_km", r.computed_km[c]},
                               {"delta_km", r.computed_km[c] - r.printed_km[c]}, {"rel_error", r.rel_error(c)},
                               {"flag", r.converged ? flag(r, c) : "failed"}});
            ok &= r.converged;
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        const char* sep = f == Format::csv ? "," : "\t";
        std::cout << "row" << sep << "config" << sep << "column" << sep << "printed_km" << sep << "computed_km" << sep
                  << "delta_km" << sep << "rel_error" << sep << "flag\n";
        for (auto& r : rows) {
            for (int c = 0; c < 3; ++c) {
                char buf[256];
                std::snprintf(buf, sizeof buf, "%s%s%s%s%s%s%.3f%s%.3f%s%.3f%s%.3e%s%s", r.label.c_str(), sep,
                              config_name(r.config).c_str(), sep, cols[c], sep, r.printed_km[c], sep, r.computed_km[c], sep,
                              r.computed_km[c] - r.printed_km[c], sep, r.rel_error(c), sep,
                              r.converged ? flag(r, c) : "failed");
                std::cout << buf << "\n";
            }
            if (!r.converged) std::cerr << r.label << ": " << r.error << "\n";
            ok &= r.converged;
        }
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Relative equilibria of a gyrostat and two axisymmetric bodies"};
    app.require_subcommand(1);

    EulerOpts eo;
    auto* se = app.add_subcommand("euler", "collinear equilibria");
    add_format(se, eo.c);
    eo.pf.add(se);
    se->add_option("--config", eo.config, "a (S0S2S1), b (S2S0S1) or c (S2S1S0)");
    se->add_option("--beta1", eo.beta1)->each([&](const std::string&) { eo.b1_set = true; });
    se->add_option("--beta2", eo.beta2)->each([&](const std::string&) { eo.b2_set = true; });
    se->add_option("--k", eo.k, "beta1 = k beta2")->each([&](const std::string&) { eo.k_set = true; });
    se->add_option("--a", eo.a, "|lambda|");
    se->add_option("--mass-ratio", eo.mass_ratio, "restricted limit m0 -> 0 with m1/(m1+m2) given");
    se->add_option("--sweep", eo.sweep, "NAME:LO:HI:N grid axis (repeatable)");
    se->add_option("--emit-state", eo.emit_state, "write the first equilibrium as JSON");

    LagrangeOpts lo;
    auto* sl = app.add_subcommand("lagrange", "triangular equilibria");
    add_format(sl, lo.c);
    lo.pf.add(sl);
    sl->add_option("--Z", lo.Z, "|lambda|");
    sl->add_option("--beta1", lo.beta1, "quintic parameter of S1");
    sl->add_option("--beta2", lo.beta2, "quintic parameter of S2");
    sl->add_flag("--from-params", lo.from_params, "take beta_i / m_i from the inertia of the bodies");
    sl->add_option("--sweep", lo.sweep, "NAME:LO:HI:N grid axis (repeatable)");
    sl->add_option("--emit-state", lo.emit_state, "write the first equilibrium as JSON");
    sl->add_option("--sign", lo.sign, "+1 or -1 for y2");

    Common stc;
    std::string st_path;
    auto* ss = app.add_subcommand("stability", "verdict for an equilibrium JSON");
    add_format(ss, stc);
    ss->add_option("equilibrium", st_path, "JSON with params and 21-number state")->required();

    std::string in_path, method = "rk4";
    double t_end = 1, dt = 1e-3;
    int every = 1;
    auto* si = app.add_subcommand("integrate", "integrate the reduced flow, CSV on stdout");
    si->add_option("state", in_path, "JSON with params and 21-number state")->required();
    si->add_option("--t-end", t_end);
    si->add_option("--dt", dt);
    si->add_option("--method", method, "rk4 or rk87");
    si->add_option("--every", every, "keep every N-th step");

    Common ac;
    std::string cat_path;
    auto* sa = app.add_subcommand("appendixb", "collinear distances for Earth-Moon and Mars-Phobos");
    add_format(sa, ac);
    sa->add_option("--catalog", cat_path, "catalog JSON (default: $GYRO3_CATALOG or built-in)");

    Common swc;
    std::string spec_path;
    auto* sw = app.add_subcommand("sweep", "grid classification from a JSON spec");
    add_format(sw, swc);
    sw->add_option("--spec", spec_path, "sweep spec JSON")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*se) return run_euler(eo);
        if (*sl) return run_lagrange(lo);
        if (*ss) return run_stability(st_path, stc.fmt());
        if (*si) return run_integrate(in_path, t_end, dt, method, every);
        if (*sa) return run_appendixb(cat_path, ac.fmt());
        if (*sw) return emit_sweep(sweep_spec_from_json(read_json(spec_path)), swc.fmt());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#pragma once

// Collinear (Eulerian) relative equilibria.  Along the line,
//   mu - (m2/M2) lambda = rho lambda,   mu + (m1/M2) lambda = (1 + rho) lambda.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "equilibrium.hpp"
#include "model.hpp"
#include "polyroot.hpp"

namespace gyro3 {

enum class EulerConfig { S2S1S0, S2S0S1, S0S2S1 };

// sgn(0) = -1.
inline double sgn(double x) { return x > 0 ? 1.0 : -1.0; }

struct ConfigSigns {
    double s0;  // sgn(rho)
    double s1;  // sgn(1 + rho)
};

inline ConfigSigns config_signs(EulerConfig c)
{
    switch (c) {
    case EulerConfig::S2S1S0: return {1, 1};
    case EulerConfig::S2S0S1: return {-1, 1};
    default: return {-1, -1};
    }
}

inline std::pair<double, double> config_interval(EulerConfig c)
{
    const double inf = std::numeric_limits<double>::infinity();
    switch (c) {
    case EulerConfig::S2S1S0: return {0.0, inf};
    case EulerConfig::S2S0S1: return {-1.0, 0.0};
    default: return {-inf, -1.0};
    }
}

inline bool in_config(EulerConfig c, double rho)
{
    auto [lo, hi] = config_interval(c);
    return rho > lo && rho < hi;
}

inline std::optional<EulerConfig> config_of(double rho)
{
    if (rho > 0) return EulerConfig::S2S1S0;
    if (rho > -1 && rho < 0) return EulerConfig::S2S0S1;
    if (rho < -1) return EulerConfig::S0S2S1;
    return std::nullopt;
}

inline std::string config_name(EulerConfig c)
{
    switch (c) {
    case EulerConfig::S2S1S0: return "S2S1S0";
    case EulerConfig::S2S0S1: return "S2S0S1";
    default: return "S0S2S1";
    }
}

// Interval letters: a) rho < -1, b) -1 < rho < 0, c) rho > 0.
inline char config_letter(EulerConfig c)
{
    switch (c) {
    case EulerConfig::S2S1S0: return 'c';
    case EulerConfig::S2S0S1: return 'b';
    default: return 'a';
    }
}

inline std::optional<EulerConfig> parse_config(const std::string& s)
{
    if (s == "c" || s == "S2S1S0") return EulerConfig::S2S1S0;
    if (s == "b" || s == "S2S0S1") return EulerConfig::S2S0S1;
    if (s == "a" || s == "S0S2S1") return EulerConfig::S0S2S1;
    return std::nullopt;
}

// mu = c(rho) lambda on the line.
inline double collinear_weight(const MassTriple& m, double rho)
{
    return ((1 + rho) * m.m2 + rho * m.m1) / (m.m1 + m.m2);
}

// Weight as printed in the sufficient-condition statement, kept for comparison.
inline double collinear_weight_swapped(const MassTriple& m, double rho)
{
    return ((1 + rho) * m.m1 + rho * m.m2) / (m.m1 + m.m2);
}

struct HValues {
    double h1, h2;
};

inline HValues h_functions(const MassTriple& m, double G, double beta1, double beta2, double rho, double a)
{
    if (rho == 0 || rho == -1) throw DomainError("rho at a pole of h1, h2");
    if (!(a > 0)) throw DomainError("|lambda| must be positive");
    double M2 = m.m1 + m.m2, u = 1 + rho, a2 = a * a, a3 = a2 * a;
    double s0 = sgn(rho), s1 = sgn(u);
    double t2 = m.m2 / (u * u) + beta2 / (u * u * u * u * a2);
    double t1 = m.m1 / (rho * rho) + beta1 / (rho * rho * rho * rho * a2);
    double h1 = G * m.m1 * m.m2 / a3 + G * m.m0 * m.m1 * s1 / (M2 * a3) * t2 - G * m.m0 * m.m2 * s0 / (M2 * a3) * t1;
    double h2 = G * m.m0 * s1 / a3 * t2 + G * m.m0 * s0 / a3 * t1;
    return {h1, h2};
}

inline HValues h_functions(const SystemParams& p, double rho, double a)
{
    return h_functions(p.masses(), p.G, p.beta1(), p.beta2(), rho, a);
}

// Residual of the collinear equilibrium condition.
inline double euler_condition(const MassTriple& m, double G, double beta1, double beta2, double rho, double a)
{
    auto h = h_functions(m, G, beta1, beta2, rho, a);
    double M2 = m.m1 + m.m2, M1 = M2 + m.m0;
    return m.m0 * M2 * ((1 + rho) * m.m2 + rho * m.m1) * h.h1 - m.m1 * m.m2 * M1 * h.h2;
}

inline double euler_condition(const SystemParams& p, double rho, double a)
{
    return euler_condition(p.masses(), p.G, p.beta1(), p.beta2(), rho, a);
}

// Same condition with the swapped mass weight.
inline double euler_condition_swapped_weight(const SystemParams& p, double rho, double a)
{
    auto h = h_functions(p, rho, a);
    return p.m0 * p.M2() * ((1 + rho) * p.m1 + rho * p.m2) * h.h1 - p.m1 * p.m2 * p.M1() * h.h2;
}

// Quintic for spherical S1, S2 with the sign constants of the configuration.
inline RealPoly spherical_quintic(const MassTriple& m, EulerConfig c)
{
    auto [s0, s1] = config_signs(c);
    double m0 = m.m0, m1 = m.m1, m2 = m.m2;
    return RealPoly({-(m0 * s0 + m1 * s0),
                     -(3 * s0 * m0 + 2 * s0 * m1),
                     m2 - m2 * s1 - m1 * s0 - 3 * m0 * s0,
                     3 * m2 + m1 + m0 * (s1 - s0),
                     3 * m2 + 2 * m1,
                     m1 + m2});
}

inline RealPoly spherical_quintic(const SystemParams& p, EulerConfig c, double tol = 1e-12)
{
    if (std::abs(p.C1 - p.A1) > tol * p.A1 || std::abs(p.C2 - p.A2) > tol * p.A2)
        throw DomainError("spherical_quintic requires C1 = A1 and C2 = A2");
    return spherical_quintic(p.masses(), c);
}

// Quintics exactly as listed case by case for spherical bodies.  Only the
// S2S1S0 case agrees with spherical_quintic.
inline RealPoly listed_case_quintic(const MassTriple& m, EulerConfig c)
{
    double m0 = m.m0, m1 = m.m1, m2 = m.m2;
    switch (c) {
    case EulerConfig::S2S1S0:
        return RealPoly({-(m0 + m1), -(3 * m0 + 2 * m1), -(3 * m0 + m1), 3 * m2 + m1, 3 * m2 + 2 * m1, m1 + m2});
    case EulerConfig::S2S0S1:
        return RealPoly({m0 + m1, 3 * m0 + 2 * m1, 3 * m0 + 2 * m2 + m1, 3 * m2 + m1, 3 * m2 + 2 * m1, m1 + m2});
    default:
        return RealPoly({m0 + m1, 3 * m0 + 2 * m1, 3 * m0 + m1, 2 * m0 + 3 * m2 + m1, 3 * m1 + 2 * m2, m1 + m2});
    }
}

// (omega_0)^2 = M2 h1 / (m1 m2).
inline double omega_squared_general(const MassTriple& m, double G, double beta1, double beta2, double rho, double a)
{
    return (m.m1 + m.m2) * h_functions(m, G, beta1, beta2, rho, a).h1 / (m.m1 * m.m2);
}

// Spherical-body form with the configuration's sign pattern.
inline double omega_squared_spherical(const MassTriple& m, double G, double rho, double a)
{
    double M2 = m.m1 + m.m2, u = 1 + rho;
    return G * M2 / (a * a * a) * (1 + m.m0 / M2 * (sgn(u) / (u * u) - sgn(rho) / (rho * rho)));
}

struct OmegaSquared {
    double value = 0;
    double spherical_value = std::numeric_limits<double>::quiet_NaN();
    bool positive = false;
};

inline OmegaSquared omega_squared(const SystemParams& p, double rho, double a, EulerConfig c)
{
    if (!in_config(c, rho)) throw DomainError("rho outside the interval of configuration " + config_name(c));
    OmegaSquared w;
    w.value = omega_squared_general(p.masses(), p.G, p.beta1(), p.beta2(), rho, a);
    w.positive = w.value > 0;
    if (p.beta1() == 0 && p.beta2() == 0) {
        w.spherical_value = omega_squared_spherical(p.masses(), p.G, rho, a);
        double d = std::abs(w.value - w.spherical_value);
        if (d > 1e-10 * std::max(std::abs(w.value), std::abs(w.spherical_value)))
            throw DomainError("omega^2 formulas disagree; configuration tag inconsistent");
    }
    return w;
}

namespace detail {
inline RealPoly rho_poly() { return RealPoly({0.0, 1.0}); }
inline RealPoly u_poly() { return RealPoly({1.0, 1.0}); }
} // namespace detail

// Collinear condition multiplied through by rho^4 (1+rho)^4 a^5 / (G m0),
// assembled term by term from h1, h2.  m0 = 0 gives the restricted limit.
inline RealPoly cleared_euler_condition(const MassTriple& m, double beta1, double beta2, double a, EulerConfig c)
{
    using detail::rho_poly;
    using detail::u_poly;
    auto [s0, s1] = config_signs(c);
    double M2 = m.m1 + m.m2, M1 = M2 + m.m0, a2 = a * a;
    RealPoly r = rho_poly(), u = u_poly();
    RealPoly r2 = r.pow(2), r4 = r.pow(4), u2 = u.pow(2), u4 = u.pow(4);
    // a^5 rho^4 u^4 h1 / G and a^5 rho^4 u^4 h2 / (G m0)
    RealPoly t2 = m.m2 * a2 * r4 * u2 + beta2 * r4;  // rho^4 u^4 (m2 a^2/u^2 + beta2/u^4)
    RealPoly t1 = m.m1 * a2 * r2 * u4 + beta1 * u4;  // rho^4 u^4 (m1 a^2/rho^2 + beta1/rho^4)
    RealPoly H1 = m.m1 * m.m2 * a2 * r4 * u4 + (m.m0 * m.m1 * s1 / M2) * t2 - (m.m0 * m.m2 * s0 / M2) * t1;
    RealPoly H2 = s1 * t2 + s0 * t1;
    RealPoly w = m.m2 * u + m.m1 * r;  // (1+rho) m2 + rho m1
    return M2 * w * H1 - (m.m1 * m.m2 * M1) * H2;
}

// Degree-nine form  beta2 q(rho) - m1 m2 a^2 rho^2 (1+rho)^2 p(rho).
inline RealPoly nine_degree_poly(const MassTriple& m, double beta1, double beta2, double a, EulerConfig c)
{
    double M2 = m.m1 + m.m2;
    return cleared_euler_condition(m, beta1, beta2, a, c) * (-1.0 / M2);
}

inline RealPoly nine_degree_poly(const SystemParams& p, double a, EulerConfig c)
{
    return nine_degree_poly(p.masses(), p.beta1(), p.beta2(), a, c);
}

// k-form with beta1 = k beta2.
inline RealPoly nine_degree_poly_k(const MassTriple& m, double k, double beta2, double a, EulerConfig c)
{
    return nine_degree_poly(m, k * beta2, beta2, a, c);
}

// q(rho) extracted from the cleared condition: coefficient of beta2 when beta1 = k beta2.
inline RealPoly derived_q(const MassTriple& m, double k, double a, EulerConfig c)
{
    return nine_degree_poly(m, k, 1.0, a, c) - nine_degree_poly(m, 0.0, 0.0, a, c);
}

// q(rho) as printed next to the degree-nine equation.
inline RealPoly printed_q(const MassTriple& m, double k, EulerConfig c)
{
    auto [s0, s1] = config_signs(c);
    double m0 = m.m0, m1 = m.m1, m2 = m.m2;
    return RealPoly({k * s0 * m2 * (m0 + m1),
                     k * s0 * m2 * (4 * m1 + 5 * m0),
                     2 * k * s0 * (3 * m1 + 5 * m0),
                     2 * k * s0 * (2 * m1 + 5 * m0),
                     m2 * (s1 * m1 + 5 * s0 * m0 * k + k * m1 * s0),
                     m0 * (k * s0 * m2 - s1 * m1)});
}

// ---- restricted limit m0 -> 0, units with m1 + m2 = 1 ------------------

inline MassTriple restricted_masses(double mass_ratio) { return {0.0, mass_ratio, 1.0 - mass_ratio}; }

// p1 from the quintic at m0 = 0, m1 = mass_ratio, m2 = 1 - mass_ratio.
inline RealPoly p1_poly(double mass_ratio, EulerConfig c)
{
    return spherical_quintic(restricted_masses(mass_ratio), c);
}

// p1 as printed, in terms of its own parameter mu_p.  Equals p1_poly(1 - mu_p).
inline RealPoly printed_p1(double mu_p, EulerConfig c)
{
    auto [s0, s1] = config_signs(c);
    double mu = mu_p;
    return RealPoly({-(1 - mu) * s0, -2 * s0 * (1 - mu), mu - mu * s1 - (1 - mu) * s0, 1 + 2 * mu, 2 + mu, 1.0});
}

inline RealPoly q1_poly(double k, EulerConfig c)
{
    auto [s0, s1] = config_signs(c);
    return RealPoly({s0 * k, 4 * s0 * k, 6 * s0 * k, 4 * s0 * k, s1 + s0 * k});
}

inline RealPoly r1_numerator(double mass_ratio, double a, EulerConfig c)
{
    RealPoly r = detail::rho_poly(), u = detail::u_poly();
    return (a * a) * r.pow(2) * u.pow(2) * p1_poly(mass_ratio, c);
}

inline double r1_value(double mass_ratio, double k, double a, EulerConfig c, double rho)
{
    return r1_numerator(mass_ratio, a, c)(rho) / q1_poly(k, c)(rho);
}

// Polynomial whose roots in the configuration interval are the restricted equilibria.
inline RealPoly restricted_poly(double mass_ratio, double k, double beta2, double a, EulerConfig c)
{
    return r1_numerator(mass_ratio, a, c) - beta2 * q1_poly(k, c);
}

struct R1Critical {
    double rho;
    double value;
    bool is_max;
};

inline std::vector<R1Critical> r1_critical_points(double mass_ratio, double k, double a, EulerConfig c)
{
    RealPoly N = r1_numerator(mass_ratio, a, c), D = q1_poly(k, c);
    RealPoly dN = N.derivative() * D - N * D.derivative();
    auto [lo, hi] = config_interval(c);
    auto rep = isolate_and_refine(dN, lo, hi, 1e-15);
    std::vector<R1Critical> out;
    for (auto& r : rep.roots) {
        double x = r.value;
        if (std::abs(x) < 1e-9 || std::abs(1 + x) < 1e-9) continue;
        if (std::abs(D(x)) < 1e-14 * D.max_abs_coeff()) continue;
        if (r.multiplicity % 2 == 0) continue;  // inflection, not an extremum
        // Sign of R1' changes from + to - at a maximum; R1' has the sign of dN / D^2.
        double h = 1e-6 * std::max(1.0, std::abs(x));
        double left = dN(x - h), right = dN(x + h);
        out.push_back({x, N(x) / D(x), left > 0 && right < 0});
    }
    return out;
}

// Value of k at which p1 and q1 share the root in the configuration interval.
inline std::optional<double> k0_value(double mass_ratio, EulerConfig c)
{
    auto [lo, hi] = config_interval(c);
    auto rep = isolate_and_refine(p1_poly(mass_ratio, c), lo, hi, 1e-15);
    if (rep.roots.empty()) return std::nullopt;
    double r0 = rep.roots.front().value;
    auto [s0, s1] = config_signs(c);
    return -s1 * std::pow(r0, 4) / (s0 * std::pow(1 + r0, 4));
}

// Roots of a polynomial strictly inside the configuration interval.
inline std::vector<RefinedRoot> roots_in_config(const RealPoly& p, EulerConfig c, double tol = 1e-15)
{
    auto [lo, hi] = config_interval(c);
    auto rep = isolate_and_refine(p, lo, hi, tol);
    std::vector<RefinedRoot> out;
    for (auto& r : rep.roots)
        if (in_config(c, r.value)) out.push_back(r);
    return out;
}

// Newton on a polynomial starting from x0; used to follow a simple root under small perturbations.
inline double polish_root(const RealPoly& p, double x0, int iters = 60)
{
    auto dp = p.derivative();
    double x = x0;
    for (int i = 0; i < iters; ++i) {
        double d = dp(x);
        if (d == 0) break;
        double dx = p(x) / d;
        x -= dx;
        if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

// Restricted root continuing the spherical one as oblateness is switched on.
inline double restricted_continuation_root(double mass_ratio, double beta1, double beta2, double a, EulerConfig c)
{
    auto sph = roots_in_config(p1_poly(mass_ratio, c), c);
    if (sph.size() != 1) throw DomainError("spherical restricted quintic lacks a unique root in " + config_name(c));
    RealPoly full = nine_degree_poly(restricted_masses(mass_ratio), beta1, beta2, a, c);
    return polish_root(full, sph.front().value);
}

// ---- full-regime branch -------------------------------------------------

struct EulerBranch {
    EulerConfig config;
    double a = 1;
    std::vector<double> rho;
    std::vector<double> omega2;
    std::vector<double> rejected_rho;  // roots with omega^2 <= 0
    std::vector<double> rejected_omega2;
};

inline EulerBranch solve_euler(const SystemParams& p, double a, EulerConfig c)
{
    EulerBranch b{c, a, {}, {}, {}, {}};
    bool spherical = p.beta1() == 0 && p.beta2() == 0;
    RealPoly poly = spherical ? spherical_quintic(p.masses(), c) : nine_degree_poly(p, a, c);
    for (auto& r : roots_in_config(poly, c)) {
        double w2 = omega_squared_general(p.masses(), p.G, p.beta1(), p.beta2(), r.value, a);
        if (w2 > 0) {
            b.rho.push_back(r.value);
            b.omega2.push_back(w2);
        } else {
            b.rejected_rho.push_back(r.value);
            b.rejected_omega2.push_back(w2);
        }
    }
    return b;
}

// Full state of the collinear equilibrium with lambda along x and rotation about z.
// Body spins default to the orbital rate.
inline EquilibriumSolution build_euler_equilibrium(const SystemParams& p, double rho, double a, EulerConfig c,
                                                   std::optional<double> omega1 = std::nullopt,
                                                   std::optional<double> omega2 = std::nullopt)
{
    auto w2 = omega_squared(p, rho, a, c);
    if (!w2.positive) throw DomainError("omega^2 <= 0: no real rotation rate for this root");
    double w = std::sqrt(w2.value);
    double mue = collinear_weight(p.masses(), rho) * a;
    EquilibriumSolution s;
    s.z.lambda = Vec3(a, 0, 0);
    s.z.mu = Vec3(mue, 0, 0);
    s.z.p_lambda = Vec3(0, p.g1() * w * a, 0);
    s.z.p_mu = Vec3(0, p.g2() * w * mue, 0);
    s.z.Pi0 = Vec3(0, 0, p.C0 * w + p.l);
    s.z.Pi1 = Vec3(0, 0, p.C1 * omega1.value_or(w));
    s.z.Pi2 = Vec3(0, 0, p.C2 * omega2.value_or(w));
    s.kind = "euler:" + config_name(c);
    s.omega0 = w;
    fill_residuals(p, s);
    return s;
}

// Third component of the total angular momentum at a collinear equilibrium.
inline double euler_total_momentum(const SystemParams& p, double a, double mue, double w0, double w1, double w2)
{
    return p.C2 * w2 + p.C1 * w1 + p.C0 * w0 + p.l + p.g1() * w0 * a * a + p.g2() * w0 * mue * mue;
}

// ---- bifurcation clauses ------------------------------------------------

struct ClauseMatch {
    std::string label;
    int stated_count = -1;  // count asserted by the clause
    bool evaluable = true;  // thresholds the clause needs exist
    std::string note;
};

struct BifurcationResult {
    EulerConfig config;
    int count = 0;  // distinct roots in the configuration interval (Sturm)
    std::vector<double> roots;
    std::optional<double> xi1, xi2;  // R1 at local max / local min
    std::optional<double> k0;
    std::vector<ClauseMatch> clauses;
    bool mirrored = false;  // S0S2S1 clauses read through the 1<->2 relabelling
};

namespace detail {

inline bool near(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(y)); }

struct Thresholds {
    std::optional<double> xi1, xi2, k0;
};

inline Thresholds thresholds(double mass_ratio, double k, double a, EulerConfig c)
{
    Thresholds t;
    t.k0 = k0_value(mass_ratio, c);
    for (auto& cp : r1_critical_points(mass_ratio, k, a, c)) {
        if (cp.is_max && !t.xi1) t.xi1 = cp.value;
        if (!cp.is_max && !t.xi2) t.xi2 = cp.value;
    }
    return t;
}

// Clauses for S2S1S0 (first bifurcation statement).
inline std::vector<ClauseMatch> clauses_s2s1s0(double k, double b, const Thresholds& t, double tol)
{
    std::vector<ClauseMatch> out;
    auto need = [&](std::string label, int n, bool ok, std::string note = {}) {
        out.push_back({std::move(label), n, ok, std::move(note)});
    };
    double k0 = t.k0.value_or(std::numeric_limits<double>::quiet_NaN());
    if (k > 0) {
        if (b > 0) need("a)4", 1, true);
        else if (b < 0) {
            if (!t.xi2) need("a)1-3", -1, false, "no local minimum of R1");
            else if (near(b, *t.xi2, tol)) need("a)2", 1, true);
            else if (b < *t.xi2) need("a)1", 0, true);
            else need("a)3", 2, true);
        }
    } else if (k < 0 && t.k0) {
        if (k > k0) {
            if (b < 0) need("c)1", 1, true);
            else if (b > 0) {
                if (!t.xi1 || !t.xi2) need("b)1-4", -1, false, "R1 lacks a local max/min pair");
                else {
                    bool at1 = near(b, *t.xi1, tol), at2 = near(b, *t.xi2, tol);
                    if (at1 || at2) need("b)2", 1, true);
                    else if (b > *t.xi1 && b < *t.xi2) need("b)1", 0, true);
                    else if (b > *t.xi2) need("b)3", 2, true);
                    else if (b < *t.xi1) need("b)4", 2, true);
                    else need("b)?", -1, false, "xi1 >= xi2");
                }
            }
        } else if (k < k0) {
            if (b > 0) need("d)1", 2, true);
            else if (b < 0) need("e)1", 1, true);
        }
    }
    return out;
}

// Clauses for S2S0S1 (second bifurcation statement).
inline std::vector<ClauseMatch> clauses_s2s0s1(double k, double b, const Thresholds& t, double tol)
{
    std::vector<ClauseMatch> out;
    auto need = [&](std::string label, int n, bool ok, std::string note = {}) {
        out.push_back({std::move(label), n, ok, std::move(note)});
    };
    if (k > 0) {
        if (b > 0) need("a)4", 1, true);
        else if (b < 0) {
            if (!t.xi2) need("a)1-3", -1, false, "no local minimum of R1");
            else if (near(b, *t.xi2, tol)) need("a)2", 2, true);
            else if (b < *t.xi2) need("a)1", 1, true);
            else need("a)3", 3, true);
        }
    } else if (k < 0) {
        if (b > 0) {
            // b) items
            if (!t.xi1 || !t.xi2) {
                if (t.xi1 && b < *t.xi1 && !near(b, *t.xi1, tol)) need("b)4", 2, true);
                else need("b)1-3", -1, false, "R1 lacks a local max/min pair");
            } else {
                bool at1 = near(b, *t.xi1, tol), at2 = near(b, *t.xi2, tol);
                if (at1 || at2) need("b)2", 1, true);
                else if (b > *t.xi1 && b < *t.xi2) need("b)1", 0, true);
                else if (b > *t.xi2) need("b)3", 2, true);
                else if (b < *t.xi1) need("b)4", 2, true);
                else need("b)?", -1, false, "xi1 >= xi2");
            }
            // c)4-6, stated for positive beta2 with the local maximum value
            if (!t.xi1) need("c)4-6", -1, false, "no local maximum of R1");
            else if (near(b, *t.xi1, tol)) need("c)5", 1, true);
            else if (b < *t.xi1) need("c)4", 2, true);
            else need("c)6", 0, true);
        } else if (b < 0) {
            if (!t.xi2) need("c)1-3", -1, false, "no local minimum of R1");
            else if (near(b, *t.xi2, tol)) need("c)2", 1, true);
            else if (b > *t.xi2) need("c)1", 2, true);
            else need("c)3", 0, true);
        }
    }
    return out;
}

} // namespace detail

// Restricted-limit classification: root count from Sturm, clause from thresholds.
// S0S2S1 is handled by relabelling the bodies, which maps it onto S2S1S0.
inline BifurcationResult classify_bifurcation(double mass_ratio, double k, double beta2, double a, EulerConfig c,
                                              double tol = 1e-9)
{
    BifurcationResult res;
    res.config = c;
    auto poly = restricted_poly(mass_ratio, k, beta2, a, c);
    for (auto& r : roots_in_config(poly, c)) res.roots.push_back(r.value);
    res.count = int(res.roots.size());
    if (c == EulerConfig::S0S2S1) {
        res.mirrored = true;
        if (k == 0) return res;
        double mr = 1 - mass_ratio, kk = 1 / k, bb = k * beta2;
        auto t = detail::thresholds(mr, kk, a, EulerConfig::S2S1S0);
        res.xi1 = t.xi1; res.xi2 = t.xi2; res.k0 = t.k0;
        res.clauses = detail::clauses_s2s1s0(kk, bb, t, tol);
        return res;
    }
    auto t = detail::thresholds(mass_ratio, k, a, c);
    res.xi1 = t.xi1; res.xi2 = t.xi2; res.k0 = t.k0;
    res.clauses = c == EulerConfig::S2S1S0 ? detail::clauses_s2s1s0(k, beta2, t, tol)
                                           : detail::clauses_s2s0s1(k, beta2, t, tol);
    return res;
}

// Full-regime count (m0 > 0) from the degree-nine polynomial.
inline int count_euler_roots(const MassTriple& m, double beta1, double beta2, double a, EulerConfig c)
{
    if (beta1 == 0 && beta2 == 0) return int(roots_in_config(spherical_quintic(m, c), c).size());
    return int(roots_in_config(nine_degree_poly(m, beta1, beta2, a, c), c).size());
}

} // namespace gyro3

#pragma once

// Triangular (Lagrangian) relative equilibria.  Side lengths
//   Z = |lambda|, X = |mu - (m2/M2) lambda|, Y = |mu + (m1/M2) lambda|.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "equilibrium.hpp"
#include "model.hpp"
#include "polyroot.hpp"

namespace gyro3 {

// X^5 - Z^3 X^2 - b Z^3
inline RealPoly lagrange_quintic(double Z, double b)
{
    double Z3 = Z * Z * Z;
    return RealPoly({-b * Z3, 0.0, -Z3, 0.0, 0.0, 1.0});
}

// Closed form of its discriminant.
inline double lagrange_discriminant_closed(double Z, double b)
{
    return b * std::pow(Z, 12) * (3125 * b * b * b + 108 * std::pow(Z, 6));
}

// Double-root threshold and degenerate-triangle threshold.
inline double beta_double_root(double Z) { return -3.0 * std::cbrt(20.0) / 25.0 * Z * Z; }
inline double beta_degenerate(double Z) { return -7.0 * Z * Z / 32.0; }

// With the potential used here the quintic parameter for body i is beta_i / m_i.
inline double quintic_parameter(const SystemParams& p, int body)
{
    return body == 1 ? p.beta1() / p.m1 : p.beta2() / p.m2;
}

inline std::vector<RefinedRoot> lagrange_quintic_roots(double Z, double b)
{
    if (!(Z > 0)) throw DomainError("Z must be positive");
    auto rep = isolate_and_refine(lagrange_quintic(Z, b), 0.0, std::numeric_limits<double>::infinity(), 1e-15);
    std::vector<RefinedRoot> out;
    for (auto& r : rep.roots)
        if (r.value > 0) out.push_back(r);
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.value > b.value; });
    return out;
}

enum class TriangleShape { equilateral, isosceles, scalene, degenerate };

inline std::string shape_name(TriangleShape s)
{
    switch (s) {
    case TriangleShape::equilateral: return "equilateral";
    case TriangleShape::isosceles: return "isosceles";
    case TriangleShape::scalene: return "scalene";
    default: return "degenerate";
    }
}

struct TriangleSolution {
    double Z = 1, X = 1, Y = 1;
    TriangleShape shape = TriangleShape::equilateral;
    int x_branch = 0, y_branch = 0;  // 0 = largest root of the quintic
    bool double_x = false, double_y = false;
};

inline double triangle_radicand(double Z, double X, double Y)
{
    return (Z + X + Y) * (Z + X - Y) * (Z + Y - X) * (X + Y - Z);
}

struct LagrangeSolveResult {
    std::vector<TriangleSolution> solutions;
    std::vector<TriangleSolution> rejected;  // degenerate or not realizable
    std::vector<RefinedRoot> x_roots, y_roots;
};

inline LagrangeSolveResult lagrange_system_solve(double Z, double b1, double b2, double tol = 1e-12)
{
    LagrangeSolveResult res;
    res.x_roots = lagrange_quintic_roots(Z, b1);
    res.y_roots = lagrange_quintic_roots(Z, b2);
    for (size_t i = 0; i < res.x_roots.size(); ++i) {
        for (size_t j = 0; j < res.y_roots.size(); ++j) {
            TriangleSolution t;
            t.Z = Z;
            t.X = res.x_roots[i].value;
            t.Y = res.y_roots[j].value;
            t.x_branch = int(i);
            t.y_branch = int(j);
            t.double_x = res.x_roots[i].multiplicity > 1;
            t.double_y = res.y_roots[j].multiplicity > 1;
            bool eqXY = std::abs(t.X - t.Y) <= tol * Z;
            bool eqXZ = std::abs(t.X - Z) <= tol * Z;
            double rad = triangle_radicand(Z, t.X, t.Y);
            if (rad <= tol * std::pow(Z, 4)) {
                t.shape = TriangleShape::degenerate;
                res.rejected.push_back(t);
                continue;
            }
            if (eqXY && eqXZ) t.shape = TriangleShape::equilateral;
            else if (eqXY || eqXZ || std::abs(t.Y - Z) <= tol * Z) t.shape = TriangleShape::isosceles;
            else t.shape = TriangleShape::scalene;
            res.solutions.push_back(t);
        }
    }
    return res;
}

struct LagrangeClassification {
    std::string clause;
    int stated_count = -1;         // families asserted by the matched clause
    int stated_isosceles = -1;     // isosceles part for the equal-parameter statement
    int stated_scalene = -1;
    int count = 0;                 // realizable (X, Y) pairs found
    int isosceles = 0, scalene = 0, equilateral = 0;
    int mirror_count = 0;          // counting the two reflections separately
    bool boundary = false;
};

namespace detail {

enum class BetaBand { positive, zero, upper, at_degenerate, lower, at_double, below };

inline BetaBand beta_band(double Z, double b, double tol)
{
    double bd = beta_degenerate(Z), bs = beta_double_root(Z), s = tol * Z * Z;
    if (std::abs(b) <= s) return BetaBand::zero;
    if (b > 0) return BetaBand::positive;
    if (std::abs(b - bd) <= s) return BetaBand::at_degenerate;
    if (b > bd) return BetaBand::upper;
    if (std::abs(b - bs) <= s) return BetaBand::at_double;
    if (b > bs) return BetaBand::lower;
    return BetaBand::below;
}

inline void equal_clause(LagrangeClassification& c, BetaBand b)
{
    switch (b) {
    case BetaBand::positive: c.clause = "1"; c.stated_isosceles = 1; c.stated_scalene = 0; break;
    case BetaBand::zero: c.clause = "equilateral"; c.stated_isosceles = 1; c.stated_scalene = 0; break;
    case BetaBand::upper: c.clause = "2.a1"; c.stated_isosceles = 1; c.stated_scalene = 2; break;
    case BetaBand::lower: c.clause = "2.a2"; c.stated_isosceles = 2; c.stated_scalene = 4; break;
    case BetaBand::at_double: c.clause = "2.b"; c.stated_isosceles = 1; c.stated_scalene = 0; break;
    case BetaBand::below: c.clause = "2.c"; c.stated_isosceles = 0; c.stated_scalene = 0; break;
    case BetaBand::at_degenerate: c.clause = "2.a1|2.a2"; c.boundary = true; break;
    }
    if (c.stated_isosceles >= 0) c.stated_count = c.stated_isosceles + c.stated_scalene;
}

inline void unequal_clause(LagrangeClassification& c, BetaBand b1, BetaBand b2)
{
    using B = BetaBand;
    auto set = [&](std::string s, int n) { c.clause = std::move(s); c.stated_count = n; c.stated_scalene = n; };
    bool p1 = b1 == B::positive, p2 = b2 == B::positive;
    if (b1 == B::at_degenerate || b2 == B::at_degenerate || b1 == B::zero || b2 == B::zero) {
        c.clause = "boundary";
        c.boundary = true;
        return;
    }
    if (p1 && p2) return set("1", 1);
    if (p1 || p2) {
        B n = p1 ? b2 : b1;
        std::string pre = p1 ? "3." : "2.";
        if (n == B::upper) return set(pre + "a1", 2);
        if (n == B::lower) return set(pre + "a2", 4);
        if (n == B::at_double) return set(pre + "b", 1);
        return set(pre + "c", 0);
    }
    if (b1 == B::upper && b2 == B::upper) return set("4.b1", 4);
    if ((b1 == B::upper && b2 == B::lower) || (b1 == B::lower && b2 == B::upper)) return set("4.b2", 6);
    if (b1 == B::lower && b2 == B::lower) return set("4.b3", 8);
    if ((b1 == B::at_double && b2 == B::lower) || (b2 == B::at_double && b1 == B::lower)) return set("4.b4", 2);
    if ((b1 == B::at_double && b2 == B::below) || (b2 == B::at_double && b1 == B::below)) return set("4.b5", 0);
    if (b1 == B::below || b2 == B::below) {
        c.clause = "none";  // no clause covers it; the quintic of the other body has no root
        return;
    }
    c.clause = "unlisted";
}

} // namespace detail

inline LagrangeClassification classify_lagrange(double Z, double b1, double b2, double tol = 1e-9)
{
    LagrangeClassification c;
    auto sol = lagrange_system_solve(Z, b1, b2);
    c.count = int(sol.solutions.size());
    c.mirror_count = 2 * c.count;
    for (auto& s : sol.solutions) {
        if (s.shape == TriangleShape::equilateral) ++c.equilateral;
        else if (s.shape == TriangleShape::isosceles) ++c.isosceles;
        else ++c.scalene;
    }
    auto band1 = detail::beta_band(Z, b1, tol), band2 = detail::beta_band(Z, b2, tol);
    if (std::abs(b1 - b2) <= tol * Z * Z) detail::equal_clause(c, band1);
    else detail::unequal_clause(c, band1, band2);
    return c;
}

struct NecessaryResiduals {
    double a12 = 0;        // A12
    double balance = 0;    // g2 A11 - g1 A22
    double omega_mismatch = 0;  // |Omega0|^2 - A11 / g1
};

// omega0_sq is the rotation rate squared carried by the candidate state.
inline NecessaryResiduals necessary_conditions_residual(const SystemParams& p, const ReducedState& z, double omega0_sq)
{
    auto A = a_coefficients(p, z.lambda, z.mu);
    NecessaryResiduals r;
    r.a12 = A.A12;
    r.balance = p.g2() * A.A11 - p.g1() * A.A22;
    r.omega_mismatch = omega0_sq - A.A11 / p.g1();
    return r;
}

inline NecessaryResiduals necessary_conditions_residual(const SystemParams& p, const ReducedState& z)
{
    double w = (p.I0().inverse() * (z.Pi0 - p.lr())).z();
    return necessary_conditions_residual(p, z, w * w);
}

// x2 of mu in the frame with lambda = (Z, 0, 0), solved from
// |mu - (m2/M2) lambda| = X and |mu + (m1/M2) lambda| = Y.
inline double lagrange_x2(const SystemParams& p, double Z, double X, double Y)
{
    return (p.m2 * (Y * Y + Z * Z - X * X) - p.m1 * (X * X + Z * Z - Y * Y)) / (2 * p.M2() * Z);
}

// x2 exactly as printed for the scalene case (X and Y exchanged relative to the above).
inline double lagrange_x2_printed(const SystemParams& p, double Z, double X, double Y)
{
    return (p.m2 * (X * X + Z * Z - Y * Y) - p.m1 * (Y * Y + Z * Z - X * X)) / (2 * p.M2() * Z);
}

inline double lagrange_y2(double Z, double X, double Y)
{
    double rad = triangle_radicand(Z, X, Y);
    if (rad <= 0) throw DomainError("degenerate triangle: radicand <= 0");
    return std::sqrt(rad) / (2 * Z);
}

inline double lagrange_y2_isosceles(double Z, double X)
{
    double rad = 4 * X * X - Z * Z;
    if (rad <= 0) throw DomainError("degenerate isosceles triangle: 4X^2 - Z^2 <= 0");
    return std::sqrt(rad) / 2;
}

inline EquilibriumSolution build_lagrange_equilibrium(const SystemParams& p, const TriangleSolution& tri, int sign = 1,
                                                      std::optional<double> omega1 = std::nullopt,
                                                      std::optional<double> omega2 = std::nullopt)
{
    if (tri.shape == TriangleShape::degenerate) throw DomainError("degenerate triangle");
    double Z = tri.Z;
    double x2 = lagrange_x2(p, Z, tri.X, tri.Y);
    double y2 = (sign >= 0 ? 1.0 : -1.0) * lagrange_y2(Z, tri.X, tri.Y);
    double w = std::sqrt(p.G * p.M1() / (Z * Z * Z));
    EquilibriumSolution s;
    s.z.lambda = Vec3(Z, 0, 0);
    s.z.p_lambda = p.g1() * w * Vec3(0, Z, 0);
    s.z.mu = Vec3(x2, y2, 0);
    s.z.p_mu = p.g2() * w * Vec3(-y2, x2, 0);
    s.z.Pi0 = Vec3(0, 0, p.C0 * w + p.l);
    s.z.Pi1 = Vec3(0, 0, p.C1 * omega1.value_or(w));
    s.z.Pi2 = Vec3(0, 0, p.C2 * omega2.value_or(w));
    s.kind = "lagrange:" + shape_name(tri.shape);
    s.omega0 = w;
    fill_residuals(p, s);
    return s;
}

inline double lagrange_total_momentum(const SystemParams& p, const EquilibriumSolution& s, double w1, double w2)
{
    double w = s.omega0;
    return p.C2 * w2 + p.C1 * w1 + p.C0 * w + p.l
         + w * (p.g1() * s.z.lambda.head<2>().squaredNorm() + p.g2() * s.z.mu.head<2>().squaredNorm());
}

struct NearSphere {
    double X, Y, x2, y2;
};

// Second-order series in beta1, beta2 as printed.  m1, m2 enter only through x2's zeroth order.
inline NearSphere near_sphere_expansion(double Z, double beta1, double beta2, double m1 = 0.5, double m2 = 0.5)
{
    double Z3 = Z * Z * Z, r3 = std::sqrt(3.0);
    NearSphere n;
    n.X = Z + beta1 / (3 * Z) - beta1 * beta1 / (3 * Z3);
    n.Y = Z + beta2 / (3 * Z) - beta2 * beta2 / (3 * Z3);
    n.x2 = (m2 - m1) * Z / (2 * (m2 + m1)) - beta1 / (3 * Z) + beta2 / (3 * Z) + 5 * beta1 * beta1 / (18 * Z3)
         - 5 * beta2 * beta2 / (18 * Z3);
    n.y2 = r3 * Z / 2 + r3 / 9 * (beta1 + beta2)
         - (23 * r3 * beta1 * beta1 / (162 * Z3) - 4 * r3 * beta1 * beta2 / (81 * Z3) + 23 * r3 * beta2 * beta2 / (162 * Z3));
    return n;
}

} // namespace gyro3

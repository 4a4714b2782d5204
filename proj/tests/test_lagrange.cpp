#include <gtest/gtest.h>

#include <gyro3/lagrange.hpp>

#include "support.hpp"

using namespace gyro3;
using namespace gyro3::testing;

namespace {

// Positive roots of X^5 - Z^3 X^2 - b Z^3 by sign scan and bisection, no Sturm.
std::vector<double> scan_roots(double Z, double b)
{
    auto f = [&](double x) { return std::pow(x, 5) - Z * Z * Z * x * x - b * Z * Z * Z; };
    std::vector<double> out;
    int n = 200000;
    double hi = 3 * Z, h = hi / n;
    for (int i = 0; i < n; ++i) {
        double a = i * h + 1e-12, c = a + h;
        if (f(a) == 0) { out.push_back(a); continue; }
        if ((f(a) > 0) != (f(c) > 0)) {
            for (int k = 0; k < 100; ++k) {
                double m = 0.5 * (a + c);
                if ((f(m) > 0) == (f(a) > 0)) a = m;
                else c = m;
            }
            out.push_back(0.5 * (a + c));
        }
    }
    return out;
}

int oracle_count(double Z, double b1, double b2)
{
    int n = 0;
    for (double X : scan_roots(Z, b1))
        for (double Y : scan_roots(Z, b2))
            if (X + Y > Z && X + Z > Y && Y + Z > X) ++n;
    return n;
}

SystemParams masses(double m0, double m1, double m2)
{
    SystemParams p;
    p.m0 = m0; p.m1 = m1; p.m2 = m2;
    p.A0 = 0.5; p.C0 = 0.8; p.l = 0.05;
    return p;
}

} // namespace

TEST(Quintic, Thresholds)
{
    EXPECT_NEAR(beta_double_root(1.0), -0.325731, 1e-6);
    EXPECT_DOUBLE_EQ(beta_degenerate(2.0), -7.0 * 4 / 32);
    // X = Z/2 is a root exactly at the degenerate threshold.
    for (double Z : {0.5, 1.0, 3.0}) EXPECT_NEAR(lagrange_quintic(Z, beta_degenerate(Z))(Z / 2), 0.0, 1e-13 * std::pow(Z, 5));
}

TEST(Quintic, RootsMatchScan)
{
    for (double b : {0.2, 0.0, -0.1, -0.3, -0.35}) {
        auto r = lagrange_quintic_roots(1.0, b);
        auto s = scan_roots(1.0, b);
        ASSERT_EQ(r.size(), s.size()) << b;
        std::sort(s.rbegin(), s.rend());
        for (size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(r[i].value, s[i], 1e-10);
    }
}

TEST(Quintic, ParameterIsBetaOverMass)
{
    auto p = SystemParams::with_betas(0.2, 0.4, 0.6, -0.03, 0.06, 1.0);
    EXPECT_NEAR(quintic_parameter(p, 1), -0.03 / 0.4, 1e-15);
    EXPECT_NEAR(quintic_parameter(p, 2), 0.06 / 0.6, 1e-15);
}

TEST(Solve, SphericalIsEquilateral)
{
    auto r = lagrange_system_solve(1.7, 0.0, 0.0);
    ASSERT_EQ(r.solutions.size(), 1u);
    EXPECT_EQ(r.solutions[0].shape, TriangleShape::equilateral);
    EXPECT_NEAR(r.solutions[0].X, 1.7, 1e-14);
}

TEST(Solve, DegenerateBoundary)
{
    double b = beta_degenerate(1.0);
    auto r = lagrange_system_solve(1.0, b, b);
    bool found = false;
    for (auto& t : r.rejected)
        if (std::abs(t.X - 0.5) < 1e-12 && std::abs(t.Y - 0.5) < 1e-12) found = true;
    EXPECT_TRUE(found);
    EXPECT_NEAR(triangle_radicand(1.0, 0.5, 0.5), 0.0, 1e-15);
}

TEST(Solve, BelowDoubleRootIsEmpty)
{
    double b = beta_double_root(1.0) - 1e-4;
    EXPECT_TRUE(lagrange_system_solve(1.0, b, b).solutions.empty());
}

TEST(Classify, EqualUpperBand)
{
    auto c = classify_lagrange(1.0, -0.1, -0.1);
    EXPECT_EQ(c.clause, "2.a1");
    EXPECT_EQ(c.isosceles, 1);
    EXPECT_EQ(c.scalene, 2);
    EXPECT_EQ(c.count, c.stated_count);
}

TEST(Classify, OnePositiveOneUpper)
{
    auto c = classify_lagrange(1.0, -0.1, 0.1);
    EXPECT_EQ(c.clause, "2.a1");
    EXPECT_EQ(c.scalene, 2);
    EXPECT_EQ(c.count, 2);
}

TEST(Classify, BothLowerBand)
{
    // Four realizable (X, Y) pairs; with both reflections y2 -> -y2 that is eight triangles.
    auto c = classify_lagrange(1.0, -0.3, -0.25);
    EXPECT_EQ(c.clause, "4.b3");
    EXPECT_EQ(c.scalene, 4);
    EXPECT_EQ(c.mirror_count, 8);
    EXPECT_EQ(c.stated_count, 8);
}

TEST(Classify, CountsAgreeWithScanOracle)
{
    std::mt19937_64 g(31);
    std::uniform_real_distribution<double> u(-0.36, 0.1);
    for (int n = 0; n < 40; ++n) {
        double b1 = u(g), b2 = u(g);
        EXPECT_EQ(classify_lagrange(1.0, b1, b2).count, oracle_count(1.0, b1, b2)) << b1 << " " << b2;
    }
}

TEST(Classify, ScaleInvariance)
{
    // Counts depend on beta / Z^2 only.
    for (double Z : {0.5, 2.0}) {
        auto a = classify_lagrange(1.0, -0.2, -0.3), b = classify_lagrange(Z, -0.2 * Z * Z, -0.3 * Z * Z);
        EXPECT_EQ(a.count, b.count);
        EXPECT_EQ(a.clause, b.clause);
    }
}

TEST(Necessary, EquilateralSphericalAllZero)
{
    auto p = masses(0.3, 0.2, 0.5);
    auto r = lagrange_system_solve(1.2, 0.0, 0.0);
    auto s = build_lagrange_equilibrium(p, r.solutions.at(0));
    auto n = necessary_conditions_residual(p, s.z);
    EXPECT_NEAR(n.a12, 0.0, 1e-12);
    EXPECT_NEAR(n.balance, 0.0, 1e-12);
    EXPECT_NEAR(n.omega_mismatch, 0.0, 1e-12);
}

TEST(Necessary, ScaleneAndNegativeControl)
{
    double b1 = -0.1, b2 = -0.15;
    auto p = SystemParams::with_betas(0.3, 0.2, 0.5, b1 * 0.2, b2 * 0.5, 1.0);
    p.A0 = 0.5; p.C0 = 0.8;
    auto r = lagrange_system_solve(1.0, b1, b2);
    for (auto& t : r.solutions) {
        auto s = build_lagrange_equilibrium(p, t);
        auto n = necessary_conditions_residual(p, s.z);
        EXPECT_LE(std::abs(n.a12), 1e-10);
        EXPECT_LE(std::abs(n.balance), 1e-10);
        EXPECT_LE(std::abs(n.omega_mismatch), 1e-10);
        EXPECT_LT(s.field_residual, 1e-10 * s.scale);
        auto z = s.z;
        z.mu.y() *= 1.2;
        auto m = necessary_conditions_residual(p, z, s.omega0 * s.omega0);
        EXPECT_GT(std::max({std::abs(m.a12), std::abs(m.balance), std::abs(m.omega_mismatch)}), 1e-3);
    }
}

TEST(Build, EquilateralPosition)
{
    auto p = masses(0.3, 0.2, 0.5);
    double Z = 1.4;
    auto r = lagrange_system_solve(Z, 0.0, 0.0);
    for (int sg : {1, -1}) {
        auto s = build_lagrange_equilibrium(p, r.solutions.at(0), sg);
        EXPECT_NEAR(s.z.mu.x(), Z * (p.m2 - p.m1) / (2 * p.M2()), 1e-14);
        EXPECT_NEAR(s.z.mu.y(), sg * std::sqrt(3.0) * Z / 2, 1e-14);
        EXPECT_LT(s.field_residual, 1e-12 * s.scale);
    }
}

TEST(Build, IsoscelesSpecialization)
{
    auto p = masses(0.3, 0.2, 0.5);
    double Z = 1.1, X = 0.9;
    EXPECT_NEAR(lagrange_x2(p, Z, X, X), Z * (p.m2 - p.m1) / (2 * p.M2()), 1e-15);
    EXPECT_NEAR(lagrange_y2(Z, X, X), lagrange_y2_isosceles(Z, X), 1e-15);
}

TEST(Build, SeparationsReproduceSides)
{
    auto p = masses(0.3, 0.2, 0.5);
    double Z = 1.0, X = 0.8, Y = 0.65;
    Vec3 l(Z, 0, 0), m(lagrange_x2(p, Z, X, Y), lagrange_y2(Z, X, Y), 0);
    auto s = separations(p, l, m);
    EXPECT_NEAR(s.d1.norm(), X, 1e-14);
    EXPECT_NEAR(s.d2.norm(), Y, 1e-14);
    // The printed x2 swaps the two sides.
    Vec3 mp(lagrange_x2_printed(p, Z, X, Y), lagrange_y2(Z, X, Y), 0);
    auto sp = separations(p, l, mp);
    EXPECT_NEAR(sp.d1.norm(), Y, 1e-14);
    EXPECT_NEAR(sp.d2.norm(), X, 1e-14);
}

TEST(Build, ScaleneIsStationary)
{
    double b1 = -0.3, b2 = -0.25;
    auto p = SystemParams::with_betas(0.1, 0.4, 0.6, b1 * 0.4, b2 * 0.6, 1.0);
    p.A0 = 0.5; p.C0 = 0.7; p.l = -0.05;
    for (auto& t : lagrange_system_solve(1.0, b1, b2).solutions) {
        auto s = build_lagrange_equilibrium(p, t, -1);
        EXPECT_LT(s.field_residual, 1e-10 * s.scale);
    }
}

TEST(NearSphere, ZerothOrder)
{
    auto n = near_sphere_expansion(1.3, 0.0, 0.0, 0.2, 0.5);
    EXPECT_DOUBLE_EQ(n.X, 1.3);
    EXPECT_NEAR(n.x2, 1.3 * 0.3 / (2 * 0.7), 1e-15);
    EXPECT_NEAR(n.y2, std::sqrt(3.0) * 1.3 / 2, 1e-15);
}

TEST(NearSphere, ThirdOrderError)
{
    double e1 = 0, e2 = 0;
    for (double b : {1e-3, 5e-4}) {
        double X = lagrange_quintic_roots(1.0, b).at(0).value;
        double err = std::abs(near_sphere_expansion(1.0, b, 0.0).X - X);
        (b == 1e-3 ? e1 : e2) = err;
    }
    double slope = std::log2(e1 / e2);
    EXPECT_NEAR(slope, 3.0, 0.2);
}

TEST(NearSphere, PositionAgreesWithExactConstruction)
{
    auto p = masses(0.3, 0.5, 0.5);
    for (double b : {2e-3, 1e-3}) {
        double X = lagrange_quintic_roots(1.0, b).at(0).value, Y = lagrange_quintic_roots(1.0, -b).at(0).value;
        auto n = near_sphere_expansion(1.0, b, -b, p.m1, p.m2);
        EXPECT_LT(std::abs(n.x2 - lagrange_x2(p, 1.0, X, Y)), 10 * b * b * b);
        EXPECT_LT(std::abs(n.y2 - lagrange_y2(1.0, X, Y)), 10 * b * b * b);
    }
}

TEST(NearSphere, IsoscelesY2)
{
    double b = 1e-3;
    auto n = near_sphere_expansion(1.0, b, b);
    EXPECT_LT(std::abs(n.y2 - lagrange_y2_isosceles(1.0, n.X)), 10 * b * b * b);
}

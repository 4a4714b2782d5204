#include <gtest/gtest.h>

#include <gyro3/model.hpp>

#include "support.hpp"

using namespace gyro3;
using namespace gyro3::testing;

namespace {

// Potential written out component by component, separate from the library path.
double potential_oracle(const SystemParams& p, const Vec3& l, const Vec3& m)
{
    double M2 = p.m1 + p.m2;
    double d1x = m.x() - p.m2 / M2 * l.x(), d1y = m.y() - p.m2 / M2 * l.y(), d1z = m.z() - p.m2 / M2 * l.z();
    double d2x = m.x() + p.m1 / M2 * l.x(), d2y = m.y() + p.m1 / M2 * l.y(), d2z = m.z() + p.m1 / M2 * l.z();
    double r = std::sqrt(l.x() * l.x() + l.y() * l.y() + l.z() * l.z());
    double r1 = std::sqrt(d1x * d1x + d1y * d1y + d1z * d1z);
    double r2 = std::sqrt(d2x * d2x + d2y * d2y + d2z * d2z);
    double V = -p.G * p.m1 * p.m2 / r;
    V -= p.G * p.m0 * p.m1 / r1;
    V -= p.G * p.m0 * p.m2 / r2;
    double f1 = p.A1 * (d1x * d1x + d1y * d1y) + p.C1 * d1z * d1z;
    double f2 = p.A2 * (d2x * d2x + d2y * d2y) + p.C2 * d2z * d2z;
    V -= p.G * p.m0 / 2 * ((2 * p.A1 + p.C1) / (r1 * r1 * r1) - 3 * f1 / std::pow(r1, 5));
    V -= p.G * p.m0 / 2 * ((2 * p.A2 + p.C2) / (r2 * r2 * r2) - 3 * f2 / std::pow(r2, 5));
    return V;
}

double hamiltonian_oracle(const SystemParams& p, const ReducedState& z)
{
    double H = potential_oracle(p, z.lambda, z.mu);
    double g1 = p.m1 * p.m2 / (p.m1 + p.m2), g2 = p.m0 * (p.m1 + p.m2) / (p.m0 + p.m1 + p.m2);
    for (int i = 0; i < 3; ++i) {
        H += z.p_lambda[i] * z.p_lambda[i] / (2 * g1) + z.p_mu[i] * z.p_mu[i] / (2 * g2);
        double a0 = i < 2 ? p.A0 : p.C0, a1 = i < 2 ? p.A1 : p.C1, a2 = i < 2 ? p.A2 : p.C2;
        H += z.Pi0[i] * z.Pi0[i] / (2 * a0) + z.Pi1[i] * z.Pi1[i] / (2 * a1) + z.Pi2[i] * z.Pi2[i] / (2 * a2);
    }
    return H - p.l * z.Pi0.z() / p.C0;
}

} // namespace

TEST(Potential, SphericalBodiesReduceToPointMasses)
{
    std::mt19937_64 g(1);
    auto p = rand_params(g, true);
    auto z = rand_state(g, p);
    auto s = separations(p, z.lambda, z.mu);
    double v1 = -p.G * (p.m1 * p.m2 / z.lambda.norm() + p.m0 * p.m1 / s.d1.norm() + p.m0 * p.m2 / s.d2.norm());
    EXPECT_NEAR(potential(p, z.lambda, z.mu), v1, 1e-13 * std::abs(v1));
}

TEST(Potential, UnitMassesMatchTermByTermOracle)
{
    SystemParams p;
    p.A0 = 0.7; p.C0 = 0.9; p.A1 = 0.4; p.C1 = 0.6; p.A2 = 1.1; p.C2 = 0.8;
    Vec3 l(1, 0, 0), m(0, 1, 0);
    double v = potential(p, l, m);
    EXPECT_NEAR(v, potential_oracle(p, l, m), 1e-14 * std::abs(v));
}

TEST(Potential, RandomPointsMatchOracle)
{
    std::mt19937_64 g(2);
    for (int i = 0; i < 50; ++i) {
        auto p = rand_params(g);
        auto z = rand_state(g, p);
        EXPECT_LT(rel_err(potential(p, z.lambda, z.mu), potential_oracle(p, z.lambda, z.mu)), 1e-13);
    }
}

TEST(Potential, RelabelingBodiesWithLambdaFlip)
{
    std::mt19937_64 g(3);
    auto p = rand_params(g);
    auto z = rand_state(g, p);
    SystemParams q = p;
    std::swap(q.m1, q.m2);
    std::swap(q.A1, q.A2);
    std::swap(q.C1, q.C2);
    EXPECT_NEAR(potential(p, z.lambda, z.mu), potential(q, -z.lambda, z.mu), 1e-13);
}

TEST(Potential, CollisionIsRejected)
{
    SystemParams p;
    EXPECT_THROW(potential(p, Vec3(1, 0, 0), Vec3(0.5, 0, 0)), DomainError);
    EXPECT_THROW(potential(p, Vec3(0, 0, 0), Vec3(0.5, 1, 0)), DomainError);
}

TEST(GradPotential, CentralDifferences)
{
    std::mt19937_64 g(4);
    for (int n = 0; n < 20; ++n) {
        auto p = rand_params(g);
        auto z = rand_state(g, p);
        auto gr = grad_potential(p, z.lambda, z.mu);
        double scale = std::max(z.lambda.norm(), z.mu.norm());
        double h = 1e-6 * scale;
        for (int i = 0; i < 3; ++i) {
            Vec3 e = Vec3::Unit(i) * h;
            double fl = (potential(p, z.lambda + e, z.mu) - potential(p, z.lambda - e, z.mu)) / (2 * h);
            double fm = (potential(p, z.lambda, z.mu + e) - potential(p, z.lambda, z.mu - e)) / (2 * h);
            EXPECT_NEAR(gr.d_lambda[i], fl, 1e-6 * std::max(1.0, gr.d_lambda.norm()));
            EXPECT_NEAR(gr.d_mu[i], fm, 1e-6 * std::max(1.0, gr.d_mu.norm()));
        }
    }
}

TEST(GradPotential, SphericalIsThreePointMasses)
{
    std::mt19937_64 g(5);
    auto p = rand_params(g, true);
    auto z = rand_state(g, p);
    auto s = separations(p, z.lambda, z.mu);
    auto k = [&](double c, const Vec3& d) -> Vec3 { return c * d / std::pow(d.norm(), 3); };
    Vec3 g1 = k(p.G * p.m0 * p.m1, s.d1), g2 = k(p.G * p.m0 * p.m2, s.d2);
    Vec3 gl = k(p.G * p.m1 * p.m2, z.lambda) - p.m2 / p.M2() * g1 + p.m1 / p.M2() * g2;
    auto gr = grad_potential(p, z.lambda, z.mu);
    EXPECT_LT((gr.d_lambda - gl).norm(), 1e-13);
    EXPECT_LT((gr.d_mu - g1 - g2).norm(), 1e-13);
}

TEST(HessPotential, MatchesDifferencedGradient)
{
    std::mt19937_64 g(6);
    auto p = rand_params(g);
    auto z = rand_state(g, p);
    auto H = hess_potential(p, z.lambda, z.mu);
    double h = 1e-6;
    for (int i = 0; i < 3; ++i) {
        Vec3 e = Vec3::Unit(i) * h;
        auto a = grad_potential(p, z.lambda + e, z.mu), b = grad_potential(p, z.lambda - e, z.mu);
        auto c = grad_potential(p, z.lambda, z.mu + e), d = grad_potential(p, z.lambda, z.mu - e);
        EXPECT_LT((H.ll.col(i) - (a.d_lambda - b.d_lambda) / (2 * h)).norm(), 1e-6);
        EXPECT_LT((H.lm.row(i).transpose() - (c.d_lambda - d.d_lambda) / (2 * h)).norm(), 1e-6);
        EXPECT_LT((H.mm.col(i) - (c.d_mu - d.d_mu) / (2 * h)).norm(), 1e-6);
    }
}

TEST(ACoefficients, SymmetricAndReconstructGradient)
{
    std::mt19937_64 g(7);
    for (int n = 0; n < 20; ++n) {
        auto p = rand_params(g);
        auto z = rand_state(g, p);
        // Planar configuration: the decomposition is exact in the equatorial plane.
        z.lambda.z() = 0;
        z.mu.z() = 0;
        auto s = separations(p, z.lambda, z.mu);
        if (s.d1.norm() < 0.3 || s.d2.norm() < 0.3 || z.lambda.norm() < 0.3) continue;
        auto a = a_coefficients(p, z.lambda, z.mu);
        EXPECT_EQ(a.A12, a.A21);
        auto gr = grad_potential(p, z.lambda, z.mu);
        EXPECT_LT((a.A11 * z.lambda + a.A12 * z.mu - gr.d_lambda).norm(), 1e-12 * std::max(1.0, gr.d_lambda.norm()));
        EXPECT_LT((a.A21 * z.lambda + a.A22 * z.mu - gr.d_mu).norm(), 1e-12 * std::max(1.0, gr.d_mu.norm()));
    }
}

TEST(ACoefficients, EquilateralSphericalGivesZeroA12)
{
    SystemParams p;
    p.m0 = 0.3; p.m1 = 0.5; p.m2 = 0.2;
    double Z = 1.3;
    Vec3 l(Z, 0, 0);
    Vec3 m(Z * (p.m2 - p.m1) / (2 * p.M2()), std::sqrt(3.0) * Z / 2, 0);
    EXPECT_NEAR(a_coefficients(p, l, m).A12, 0.0, 1e-15);
}

TEST(Hamiltonian, ZeroMomentaGivesPotential)
{
    std::mt19937_64 g(8);
    auto p = rand_params(g);
    p.l = 0;
    auto z = rand_state(g, p);
    z.Pi0 = z.Pi1 = z.Pi2 = z.p_lambda = z.p_mu = Vec3::Zero();
    EXPECT_DOUBLE_EQ(hamiltonian(p, z), potential(p, z.lambda, z.mu));
}

TEST(Hamiltonian, GyrostaticTermShift)
{
    std::mt19937_64 g(9);
    auto p = rand_params(g);
    auto z = rand_state(g, p);
    SystemParams q = p;
    q.l = 0;
    EXPECT_NEAR(hamiltonian(p, z) - hamiltonian(q, z), -p.l * z.Pi0.z() / p.C0, 1e-14);
}

TEST(Hamiltonian, TermByTermOracle)
{
    std::mt19937_64 g(10);
    for (int n = 0; n < 20; ++n) {
        auto p = rand_params(g);
        auto z = rand_state(g, p);
        EXPECT_LT(rel_err(hamiltonian(p, z), hamiltonian_oracle(p, z)), 1e-13);
    }
}

TEST(Hamiltonian, GradientByDifferences)
{
    std::mt19937_64 g(11);
    auto p = rand_params(g);
    auto z = rand_state(g, p);
    Vec21 x = z.to_vector(), gr = grad_hamiltonian(p, z);
    for (int i = 0; i < 21; ++i) {
        Vec21 e = Vec21::Zero();
        e[i] = 1e-6;
        double fd = (hamiltonian(p, ReducedState::from_vector(x + e)) - hamiltonian(p, ReducedState::from_vector(x - e))) / 2e-6;
        EXPECT_NEAR(gr[i], fd, 1e-6 * std::max(1.0, std::abs(gr[i])));
    }
}

TEST(PoissonTensor, Antisymmetric)
{
    std::mt19937_64 g(12);
    auto p = rand_params(g);
    auto B = poisson_tensor(rand_state(g, p));
    EXPECT_EQ((B + B.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(PoissonTensor, CasimirGradientsInKernel)
{
    std::mt19937_64 g(13);
    for (int n = 0; n < 10; ++n) {
        auto p = rand_params(g);
        auto z = rand_state(g, p);
        auto B = poisson_tensor(z);
        for (auto& c : casimir_gradients(z)) EXPECT_LT((B * c).norm(), 1e-13);
    }
}

TEST(PoissonTensor, JacobiIdentity)
{
    // {f,g}(z) = grad f . B(z) grad g.  Brackets of quadratics are cubics, so the
    // five-point derivative below is exact up to rounding.
    std::mt19937_64 g(14);
    std::normal_distribution<double> n(0, 1);
    struct Quad {
        Mat21 Q;
        Vec21 c;
        Vec21 grad(const Vec21& z) const { return Q * z + c; }
    };
    auto make = [&] {
        Quad q;
        for (int i = 0; i < 21; ++i)
            for (int j = 0; j < 21; ++j) q.Q(i, j) = n(g);
        q.Q = 0.5 * (q.Q + q.Q.transpose()).eval();
        for (int i = 0; i < 21; ++i) q.c[i] = n(g);
        return q;
    };
    Quad f = make(), h = make(), k = make();
    auto bracket = [](const Quad& a, const Quad& b, const Vec21& z) {
        return a.grad(z).dot(poisson_tensor(z) * b.grad(z));
    };
    auto grad_bracket = [&](const Quad& a, const Quad& b, const Vec21& z) {
        Vec21 out;
        double s = 1e-2;
        for (int i = 0; i < 21; ++i) {
            Vec21 e = Vec21::Zero();
            e[i] = s;
            out[i] = (-bracket(a, b, z + 2 * e) + 8 * bracket(a, b, z + e) - 8 * bracket(a, b, z - e) + bracket(a, b, z - 2 * e))
                   / (12 * s);
        }
        return out;
    };
    Vec21 z;
    for (int i = 0; i < 21; ++i) z[i] = n(g);
    auto B = poisson_tensor(z);
    double t1 = f.grad(z).dot(B * grad_bracket(h, k, z)), t2 = h.grad(z).dot(B * grad_bracket(k, f, z)),
           t3 = k.grad(z).dot(B * grad_bracket(f, h, z));
    double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
    ASSERT_GT(scale, 1.0);
    EXPECT_LT(std::abs(t1 + t2 + t3), 1e-11 * scale);
}

TEST(VectorField, ClosedFormMatchesPoissonForm)
{
    std::mt19937_64 g(15);
    for (int n = 0; n < 50; ++n) {
        auto p = rand_params(g);
        Vec21 x = rand_state(g, p).to_vector();
        Vec21 a = vector_field(p, x), b = vector_field_poisson(p, x);
        EXPECT_LT((a - b).norm(), 1e-12 * std::max(1.0, a.norm()));
    }
}

TEST(VectorField, AngularMomentumRate)
{
    // Chain rule through the field gives dL/dt = L0 x W0 + Pi1 x W1 + Pi2 x W2.
    std::mt19937_64 g(16);
    for (int n = 0; n < 10; ++n) {
        auto p = rand_params(g);
        auto z = rand_state(g, p);
        auto d = vector_field(p, z);
        Vec3 dL = d.Pi0 + d.Pi1 + d.Pi2 + d.lambda.cross(z.p_lambda) + z.lambda.cross(d.p_lambda)
                + d.mu.cross(z.p_mu) + z.mu.cross(d.p_mu);
        Vec3 L0 = z.Pi0 + z.lambda.cross(z.p_lambda) + z.mu.cross(z.p_mu);
        Vec3 W0 = p.I0().inverse() * (z.Pi0 - p.lr());
        Vec3 rate = L0.cross(W0) + z.Pi1.cross(p.I1().inverse() * z.Pi1) + z.Pi2.cross(p.I2().inverse() * z.Pi2);
        EXPECT_LT((dL - rate).norm(), 1e-13 * std::max(1.0, d.to_vector().norm()));
    }
}

TEST(VectorField, AngularMomentumConstantInThePlane)
{
    // Positions and momenta in xy, every spin along z: the rate above vanishes.
    std::mt19937_64 g(18);
    for (int n = 0; n < 10; ++n) {
        auto p = rand_params(g);
        auto z = rand_state(g, p);
        for (Vec3* v : {&z.lambda, &z.mu, &z.p_lambda, &z.p_mu}) v->z() = 0;
        for (Vec3* v : {&z.Pi0, &z.Pi1, &z.Pi2}) v->head<2>().setZero();
        auto s = separations(p, z.lambda, z.mu);
        if (s.d1.norm() < 0.3 || s.d2.norm() < 0.3 || z.lambda.norm() < 0.3) continue;
        auto d = vector_field(p, z);
        Vec3 dL = d.Pi0 + d.Pi1 + d.Pi2 + d.lambda.cross(z.p_lambda) + z.lambda.cross(d.p_lambda)
                + d.mu.cross(z.p_mu) + z.mu.cross(d.p_mu);
        EXPECT_LT(dL.norm(), 1e-13 * std::max(1.0, d.to_vector().norm()));
    }
}

TEST(VectorField, ThirdGyrostatComponentIsConstant)
{
    std::mt19937_64 g(19);
    for (int n = 0; n < 10; ++n) {
        auto p = rand_params(g);
        auto z = rand_state(g, p);
        EXPECT_LT(std::abs(vector_field(p, z).Pi0.z()), 1e-13);
    }
}

TEST(Casimirs, ZeroState)
{
    auto c = casimirs(ReducedState{});
    EXPECT_EQ(c.half_L0_sq, 0.0);
    EXPECT_EQ(c.half_Pi1_sq, 0.0);
    EXPECT_EQ(c.half_Pi2_sq, 0.0);
    EXPECT_EQ(c.L.norm(), 0.0);
    EXPECT_EQ(c.pi0_3, 0.0);
}

TEST(Casimirs, L0TwoWays)
{
    std::mt19937_64 g(17);
    auto p = rand_params(g);
    auto z = rand_state(g, p);
    auto c = casimirs(z);
    Vec3 L0 = c.L - z.Pi1 - z.Pi2;
    EXPECT_NEAR(0.5 * L0.squaredNorm(), c.half_L0_sq, 1e-14 * std::max(1.0, c.half_L0_sq));
}

TEST(Params, ValidateRejectsBadInput)
{
    SystemParams p;
    p.m1 = 0;
    EXPECT_THROW(p.validate(), DomainError);
    p = SystemParams{};
    p.C2 = -1;
    EXPECT_THROW(p.validate(), DomainError);
    p = SystemParams{};
    p.G = 0;
    EXPECT_THROW(p.validate(), DomainError);
}

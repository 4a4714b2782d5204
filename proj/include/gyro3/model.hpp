#pragma once

// Reduced Poisson model of a gyrostat S0 interacting with two axisymmetric
// rigid bodies S1, S2.  State layout z = (Pi1, Pi2, Pi0, lambda, p_lambda, mu, p_mu).

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "linalg.hpp"

namespace gyro3 {

using Vec21 = Eigen::Matrix<double, 21, 1>;
using Mat21 = Eigen::Matrix<double, 21, 21>;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct MassTriple {
    double m0 = 0, m1 = 0, m2 = 0;
};

struct SystemParams {
    double m0 = 1, m1 = 1, m2 = 1;
    double G = 1;
    double A0 = 1, C0 = 1, A1 = 1, C1 = 1, A2 = 1, C2 = 1;
    double l = 0;
    double collision_eps = 1e-9;

    double M2() const { return m1 + m2; }
    double M1() const { return m0 + m1 + m2; }
    double g1() const { return m1 * m2 / M2(); }
    double g2() const { return m0 * M2() / M1(); }
    double beta1() const { return 1.5 * (C1 - A1); }
    double beta2() const { return 1.5 * (C2 - A2); }
    double alpha1() const { return 2 * A1 + C1; }
    double alpha2() const { return 2 * A2 + C2; }
    Mat3 I0() const { return diag3(A0, C0); }
    Mat3 I1() const { return diag3(A1, C1); }
    Mat3 I2() const { return diag3(A2, C2); }
    Vec3 lr() const { return {0.0, 0.0, l}; }
    MassTriple masses() const { return {m0, m1, m2}; }

    void validate() const
    {
        if (!(m0 > 0 && m1 > 0 && m2 > 0))
            throw DomainError("masses must be strictly positive");
        if (!(G > 0))
            throw DomainError("G must be positive");
        if (!(A0 > 0 && C0 > 0 && A1 > 0 && C1 > 0 && A2 > 0 && C2 > 0))
            throw DomainError("moments of inertia must be positive");
    }

    // Bodies with C_i - A_i chosen so that beta_i takes the requested value.
    static SystemParams with_betas(double m0, double m1, double m2, double beta1, double beta2,
                                   double A = 1.0)
    {
        SystemParams p;
        p.m0 = m0; p.m1 = m1; p.m2 = m2;
        p.A1 = A; p.C1 = A + beta1 / 1.5;
        p.A2 = A; p.C2 = A + beta2 / 1.5;
        return p;
    }
};

struct ReducedState {
    Vec3 Pi1 = Vec3::Zero(), Pi2 = Vec3::Zero(), Pi0 = Vec3::Zero();
    Vec3 lambda = Vec3::Zero(), p_lambda = Vec3::Zero();
    Vec3 mu = Vec3::Zero(), p_mu = Vec3::Zero();

    static constexpr int size = 21;

    Vec21 to_vector() const
    {
        Vec21 z;
        z << Pi1, Pi2, Pi0, lambda, p_lambda, mu, p_mu;
        return z;
    }

    static ReducedState from_vector(const Vec21& z)
    {
        ReducedState s;
        s.Pi1 = z.segment<3>(0);
        s.Pi2 = z.segment<3>(3);
        s.Pi0 = z.segment<3>(6);
        s.lambda = z.segment<3>(9);
        s.p_lambda = z.segment<3>(12);
        s.mu = z.segment<3>(15);
        s.p_mu = z.segment<3>(18);
        return s;
    }

    std::array<double, 21> to_array() const
    {
        std::array<double, 21> a{};
        Vec21 z = to_vector();
        for (int i = 0; i < 21; ++i) a[i] = z[i];
        return a;
    }

    static ReducedState from_array(const std::array<double, 21>& a)
    {
        Vec21 z;
        for (int i = 0; i < 21; ++i) z[i] = a[i];
        return from_vector(z);
    }
};

struct CasimirValues {
    double half_L0_sq = 0, half_Pi1_sq = 0, half_Pi2_sq = 0;
    Vec3 L = Vec3::Zero();
    double pi0_3 = 0;
};

// S0-S1 and S0-S2 separation vectors.
struct Separations {
    Vec3 d1, d2;
};

inline Separations separations(const SystemParams& p, const Vec3& lambda, const Vec3& mu)
{
    return {mu - (p.m2 / p.M2()) * lambda, mu + (p.m1 / p.M2()) * lambda};
}

namespace detail {

inline void check_collision(const SystemParams& p, const Vec3& lambda, const Separations& s)
{
    if (lambda.norm() < p.collision_eps)
        throw DomainError("collision between S1 and S2 (|lambda| below epsilon)");
    if (s.d1.norm() < p.collision_eps)
        throw DomainError("collision between S0 and S1");
    if (s.d2.norm() < p.collision_eps)
        throw DomainError("collision between S0 and S2");
}

// Gradient with respect to d of -(G m0 / 2)(alpha/r^3 - 3 d.I.d / r^5).
inline Vec3 grad_v2_term(double Gm0, double alpha, const Mat3& I, const Vec3& d)
{
    double r2 = d.squaredNorm(), r = std::sqrt(r2);
    double r5 = r2 * r2 * r, r7 = r5 * r2;
    double f = d.dot(I * d);
    return -0.5 * Gm0 * (-3 * alpha * d / r5 - 6 * (I * d) / r5 + 15 * f * d / r7);
}

inline Mat3 hess_v2_term(double Gm0, double alpha, const Mat3& I, const Vec3& d)
{
    double r2 = d.squaredNorm(), r = std::sqrt(r2);
    double r5 = r2 * r2 * r, r7 = r5 * r2, r9 = r7 * r2;
    Vec3 Id = I * d;
    double f = d.dot(Id);
    Mat3 E = Mat3::Identity();
    Mat3 ddT = d * d.transpose();
    Mat3 h = -3 * alpha * (E / r5 - 5 * ddT / r7)
           - 6 * (I / r5 - 5 * Id * d.transpose() / r7)
           + 15 * ((2 * d * Id.transpose() + f * E) / r7 - 7 * f * ddT / r9);
    return -0.5 * Gm0 * h;
}

// Gradient and Hessian with respect to d of -c/|d|.
inline Vec3 grad_kepler(double c, const Vec3& d)
{
    double r = d.norm();
    return c * d / (r * r * r);
}

inline Mat3 hess_kepler(double c, const Vec3& d)
{
    double r2 = d.squaredNorm(), r = std::sqrt(r2);
    return c * (Mat3::Identity() / (r2 * r) - 3 * d * d.transpose() / (r2 * r2 * r));
}

} // namespace detail

inline double potential(const SystemParams& p, const Vec3& lambda, const Vec3& mu)
{
    auto s = separations(p, lambda, mu);
    detail::check_collision(p, lambda, s);
    double r = lambda.norm(), r1 = s.d1.norm(), r2 = s.d2.norm();
    double v1 = -(p.G * p.m1 * p.m2 / r + p.G * p.m1 * p.m0 / r1 + p.G * p.m2 * p.m0 / r2);
    double f1 = s.d1.dot(p.I1() * s.d1);
    double f2 = s.d2.dot(p.I2() * s.d2);
    double Gm0 = p.G * p.m0;
    double v2 = -0.5 * (Gm0 * p.alpha1() / std::pow(r1, 3) + Gm0 * p.alpha2() / std::pow(r2, 3)
                        - 3 * Gm0 * f1 / std::pow(r1, 5) - 3 * Gm0 * f2 / std::pow(r2, 5));
    return v1 + v2;
}

struct PotentialGradient {
    Vec3 d_lambda, d_mu;
};

inline PotentialGradient grad_potential(const SystemParams& p, const Vec3& lambda, const Vec3& mu)
{
    auto s = separations(p, lambda, mu);
    detail::check_collision(p, lambda, s);
    double c1 = p.m2 / p.M2(), c2 = p.m1 / p.M2();
    double Gm0 = p.G * p.m0;
    Vec3 g1 = detail::grad_kepler(p.G * p.m1 * p.m0, s.d1) + detail::grad_v2_term(Gm0, p.alpha1(), p.I1(), s.d1);
    Vec3 g2 = detail::grad_kepler(p.G * p.m2 * p.m0, s.d2) + detail::grad_v2_term(Gm0, p.alpha2(), p.I2(), s.d2);
    Vec3 gl = detail::grad_kepler(p.G * p.m1 * p.m2, lambda);
    return {gl - c1 * g1 + c2 * g2, g1 + g2};
}

struct PotentialHessian {
    Mat3 ll, lm, mm;  // lm = d^2 V / d lambda d mu
};

inline PotentialHessian hess_potential(const SystemParams& p, const Vec3& lambda, const Vec3& mu)
{
    auto s = separations(p, lambda, mu);
    detail::check_collision(p, lambda, s);
    double c1 = p.m2 / p.M2(), c2 = p.m1 / p.M2();
    double Gm0 = p.G * p.m0;
    Mat3 h1 = detail::hess_kepler(p.G * p.m1 * p.m0, s.d1) + detail::hess_v2_term(Gm0, p.alpha1(), p.I1(), s.d1);
    Mat3 h2 = detail::hess_kepler(p.G * p.m2 * p.m0, s.d2) + detail::hess_v2_term(Gm0, p.alpha2(), p.I2(), s.d2);
    Mat3 hl = detail::hess_kepler(p.G * p.m1 * p.m2, lambda);
    return {hl + c1 * c1 * h1 + c2 * c2 * h2, -c1 * h1 + c2 * h2, h1 + h2};
}

struct ACoefficients {
    double A11, A12, A21, A22;
};

// Coefficients of grad V in the (lambda, mu) basis.  Exact when the
// separations lie in the bodies' equatorial plane (or the bodies are spheres).
inline ACoefficients a_coefficients(const SystemParams& p, const Vec3& lambda, const Vec3& mu)
{
    auto s = separations(p, lambda, mu);
    detail::check_collision(p, lambda, s);
    double M2 = p.M2();
    double X = s.d1.norm(), Y = s.d2.norm(), Z = lambda.norm();
    double S1 = p.m1 / std::pow(X, 3) + p.beta1() / std::pow(X, 5);
    double S2 = p.m2 / std::pow(Y, 3) + p.beta2() / std::pow(Y, 5);
    double Gm0 = p.G * p.m0;
    double A11 = p.G * p.m1 * p.m2 / std::pow(Z, 3) + Gm0 * p.m2 * p.m2 / (M2 * M2) * S1
               + Gm0 * p.m1 * p.m1 / (M2 * M2) * S2;
    double A12 = Gm0 * p.m1 / M2 * S2 - Gm0 * p.m2 / M2 * S1;
    double A22 = Gm0 * (S1 + S2);
    return {A11, A12, A12, A22};
}

inline double hamiltonian(const SystemParams& p, const ReducedState& z)
{
    Vec3 i0 = Vec3(1 / p.A0, 1 / p.A0, 1 / p.C0);
    Vec3 i1 = Vec3(1 / p.A1, 1 / p.A1, 1 / p.C1);
    Vec3 i2 = Vec3(1 / p.A2, 1 / p.A2, 1 / p.C2);
    double t = z.p_lambda.squaredNorm() / (2 * p.g1()) + z.p_mu.squaredNorm() / (2 * p.g2());
    t += 0.5 * z.Pi0.dot(i0.cwiseProduct(z.Pi0)) - p.lr().dot(i0.cwiseProduct(z.Pi0));
    t += 0.5 * z.Pi1.dot(i1.cwiseProduct(z.Pi1)) + 0.5 * z.Pi2.dot(i2.cwiseProduct(z.Pi2));
    return t + potential(p, z.lambda, z.mu);
}

inline Vec21 grad_hamiltonian(const SystemParams& p, const ReducedState& z)
{
    auto g = grad_potential(p, z.lambda, z.mu);
    ReducedState d;
    d.Pi1 = p.I1().inverse() * z.Pi1;
    d.Pi2 = p.I2().inverse() * z.Pi2;
    d.Pi0 = p.I0().inverse() * (z.Pi0 - p.lr());
    d.lambda = g.d_lambda;
    d.p_lambda = z.p_lambda / p.g1();
    d.mu = g.d_mu;
    d.p_mu = z.p_mu / p.g2();
    return d.to_vector();
}

inline Mat21 hess_hamiltonian(const SystemParams& p, const ReducedState& z)
{
    Mat21 h = Mat21::Zero();
    auto hv = hess_potential(p, z.lambda, z.mu);
    h.block<3, 3>(0, 0) = p.I1().inverse();
    h.block<3, 3>(3, 3) = p.I2().inverse();
    h.block<3, 3>(6, 6) = p.I0().inverse();
    h.block<3, 3>(9, 9) = hv.ll;
    h.block<3, 3>(9, 15) = hv.lm;
    h.block<3, 3>(15, 9) = hv.lm.transpose();
    h.block<3, 3>(15, 15) = hv.mm;
    h.block<3, 3>(12, 12) = Mat3::Identity() / p.g1();
    h.block<3, 3>(18, 18) = Mat3::Identity() / p.g2();
    return h;
}

inline Mat21 poisson_tensor(const ReducedState& z)
{
    Mat21 B = Mat21::Zero();
    Mat3 E = Mat3::Identity();
    B.block<3, 3>(0, 0) = hat(z.Pi1);
    B.block<3, 3>(3, 3) = hat(z.Pi2);
    B.block<3, 3>(6, 6) = hat(z.Pi0);
    B.block<3, 3>(6, 9) = hat(z.lambda);
    B.block<3, 3>(6, 12) = hat(z.p_lambda);
    B.block<3, 3>(6, 15) = hat(z.mu);
    B.block<3, 3>(6, 18) = hat(z.p_mu);
    B.block<3, 3>(9, 6) = hat(z.lambda);
    B.block<3, 3>(9, 12) = E;
    B.block<3, 3>(12, 6) = hat(z.p_lambda);
    B.block<3, 3>(12, 9) = -E;
    B.block<3, 3>(15, 6) = hat(z.mu);
    B.block<3, 3>(15, 18) = E;
    B.block<3, 3>(18, 6) = hat(z.p_mu);
    B.block<3, 3>(18, 15) = -E;
    return B;
}

inline Mat21 poisson_tensor(const Vec21& z) { return poisson_tensor(ReducedState::from_vector(z)); }

// Closed-form equations of motion.
inline ReducedState vector_field(const SystemParams& p, const ReducedState& z)
{
    auto g = grad_potential(p, z.lambda, z.mu);
    Vec3 W0 = p.I0().inverse() * (z.Pi0 - p.lr());
    Vec3 W1 = p.I1().inverse() * z.Pi1;
    Vec3 W2 = p.I2().inverse() * z.Pi2;
    ReducedState d;
    d.Pi0 = z.Pi0.cross(W0) + z.lambda.cross(g.d_lambda) + z.mu.cross(g.d_mu);
    d.lambda = z.p_lambda / p.g1() + z.lambda.cross(W0);
    d.p_lambda = z.p_lambda.cross(W0) - g.d_lambda;
    d.mu = z.p_mu / p.g2() + z.mu.cross(W0);
    d.p_mu = z.p_mu.cross(W0) - g.d_mu;
    d.Pi1 = z.Pi1.cross(W1);
    d.Pi2 = z.Pi2.cross(W2);
    return d;
}

inline Vec21 vector_field(const SystemParams& p, const Vec21& z)
{
    return vector_field(p, ReducedState::from_vector(z)).to_vector();
}

// Same field assembled as B(z) grad H(z).
inline Vec21 vector_field_poisson(const SystemParams& p, const Vec21& z)
{
    auto s = ReducedState::from_vector(z);
    return poisson_tensor(s) * grad_hamiltonian(p, s);
}

inline Vec3 total_angular_momentum(const ReducedState& z)
{
    return z.Pi2 + z.Pi1 + z.Pi0 + z.lambda.cross(z.p_lambda) + z.mu.cross(z.p_mu);
}

inline CasimirValues casimirs(const ReducedState& z)
{
    CasimirValues c;
    Vec3 L0 = z.Pi0 + z.lambda.cross(z.p_lambda) + z.mu.cross(z.p_mu);
    c.half_L0_sq = 0.5 * L0.squaredNorm();
    c.half_Pi1_sq = 0.5 * z.Pi1.squaredNorm();
    c.half_Pi2_sq = 0.5 * z.Pi2.squaredNorm();
    c.L = total_angular_momentum(z);
    c.pi0_3 = z.Pi0.z();
    return c;
}

// Gradients of |L0|^2/2, |Pi1|^2/2, |Pi2|^2/2 in z.
inline std::array<Vec21, 3> casimir_gradients(const ReducedState& z)
{
    Vec3 L0 = z.Pi0 + z.lambda.cross(z.p_lambda) + z.mu.cross(z.p_mu);
    ReducedState g0;
    g0.Pi0 = L0;
    g0.lambda = z.p_lambda.cross(L0);
    g0.p_lambda = L0.cross(z.lambda);
    g0.mu = z.p_mu.cross(L0);
    g0.p_mu = L0.cross(z.mu);
    ReducedState g1, g2;
    g1.Pi1 = z.Pi1;
    g2.Pi2 = z.Pi2;
    return {g0.to_vector(), g1.to_vector(), g2.to_vector()};
}

} // namespace gyro3

#pragma once

// Tangent flow at relative equilibria, characteristic polynomials and the
// spectral classification.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "equilibrium.hpp"
#include "lagrange.hpp"
#include "model.hpp"
#include "polyroot.hpp"

namespace gyro3 {

using cplx = std::complex<double>;
using MatX = Eigen::MatrixXd;
using MatXc = Eigen::MatrixXcd;

namespace idx {
constexpr int Pi1 = 0, Pi2 = 3, Pi0 = 6, lam = 9, plam = 12, mu = 15, pmu = 18;
}

// Analytic Jacobian of the closed-form field at any admissible z.
inline Mat21 jacobian_unchecked(const SystemParams& p, const ReducedState& z)
{
    auto g = grad_potential(p, z.lambda, z.mu);
    auto h = hess_potential(p, z.lambda, z.mu);
    Mat3 I0i = p.I0().inverse(), I1i = p.I1().inverse(), I2i = p.I2().inverse();
    Vec3 W0 = I0i * (z.Pi0 - p.lr()), W1 = I1i * z.Pi1, W2 = I2i * z.Pi2;
    Mat3 E = Mat3::Identity();
    Mat3 hml = h.lm.transpose();

    Mat21 J = Mat21::Zero();
    J.block<3, 3>(idx::Pi1, idx::Pi1) = hat(z.Pi1) * I1i - hat(W1);
    J.block<3, 3>(idx::Pi2, idx::Pi2) = hat(z.Pi2) * I2i - hat(W2);

    J.block<3, 3>(idx::Pi0, idx::Pi0) = hat(z.Pi0) * I0i - hat(W0);
    J.block<3, 3>(idx::Pi0, idx::lam) = -hat(g.d_lambda) + hat(z.lambda) * h.ll + hat(z.mu) * hml;
    J.block<3, 3>(idx::Pi0, idx::mu) = hat(z.lambda) * h.lm - hat(g.d_mu) + hat(z.mu) * h.mm;

    J.block<3, 3>(idx::lam, idx::Pi0) = hat(z.lambda) * I0i;
    J.block<3, 3>(idx::lam, idx::lam) = -hat(W0);
    J.block<3, 3>(idx::lam, idx::plam) = E / p.g1();

    J.block<3, 3>(idx::plam, idx::Pi0) = hat(z.p_lambda) * I0i;
    J.block<3, 3>(idx::plam, idx::lam) = -h.ll;
    J.block<3, 3>(idx::plam, idx::plam) = -hat(W0);
    J.block<3, 3>(idx::plam, idx::mu) = -h.lm;

    J.block<3, 3>(idx::mu, idx::Pi0) = hat(z.mu) * I0i;
    J.block<3, 3>(idx::mu, idx::mu) = -hat(W0);
    J.block<3, 3>(idx::mu, idx::pmu) = E / p.g2();

    J.block<3, 3>(idx::pmu, idx::Pi0) = hat(z.p_mu) * I0i;
    J.block<3, 3>(idx::pmu, idx::lam) = -hml;
    J.block<3, 3>(idx::pmu, idx::mu) = -h.mm;
    J.block<3, 3>(idx::pmu, idx::pmu) = -hat(W0);
    return J;
}

// Same matrix assembled as B Hess(H) + (dB/dz_j) grad H column by column.
// B is affine in z, so dB/dz_j = B(e_j) - B(0).
inline Mat21 jacobian_poisson(const SystemParams& p, const ReducedState& z)
{
    Vec21 grad = grad_hamiltonian(p, z);
    Mat21 J = poisson_tensor(z) * hess_hamiltonian(p, z);
    Mat21 B0 = poisson_tensor(Vec21(Vec21::Zero()));
    for (int j = 0; j < 21; ++j) {
        Vec21 e = Vec21::Zero();
        e[j] = 1;
        J.col(j) += (poisson_tensor(e) - B0) * grad;
    }
    return J;
}

// Central differences of the closed-form field, step h = 1e-6 (1 + |z_j|).
inline Mat21 jacobian_fd(const SystemParams& p, const ReducedState& z, double rel = 1e-6)
{
    Vec21 x = z.to_vector();
    Mat21 J;
    for (int j = 0; j < 21; ++j) {
        double h = rel * (1 + std::abs(x[j]));
        Vec21 a = x, b = x;
        a[j] += h;
        b[j] -= h;
        J.col(j) = (vector_field(p, a) - vector_field(p, b)) / (2 * h);
    }
    return J;
}

// Requires z to be an equilibrium.
inline Mat21 jacobian(const SystemParams& p, const ReducedState& z, double tol = 1e-8)
{
    double res = vector_field(p, z).to_vector().cwiseAbs().maxCoeff();
    if (res > tol * state_scale(z)) throw DomainError("jacobian: state is not an equilibrium (residual " + std::to_string(res) + ")");
    return jacobian_unchecked(p, z);
}

// det(x I - A) by the Faddeev-LeVerrier recurrence.
inline RealPoly char_poly(const MatX& A)
{
    const int n = int(A.rows());
    if (A.cols() != n) throw DomainError("char_poly needs a square matrix");
    if (!A.allFinite()) throw DomainError("char_poly: non-finite entries");
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1;
    MatX M = MatX::Zero(n, n), I = MatX::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        M = A * M + c[n - k + 1] * I;
        c[n - k] = -(A * M).trace() / k;
    }
    return RealPoly(std::move(c));
}

inline std::vector<cplx> eigenvalues(const MatX& A)
{
    if (!A.allFinite()) throw DomainError("eigenvalues: non-finite entries");
    Eigen::EigenSolver<MatX> es(A, false);
    if (es.info() != Eigen::Success) throw DomainError("eigenvalue iteration did not converge");
    std::vector<cplx> out;
    for (int i = 0; i < A.rows(); ++i) out.push_back(es.eigenvalues()[i]);
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
    });
    return out;
}

inline cplx eval_poly(const RealPoly& p, cplx x)
{
    cplx s = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

template <class M>
int numeric_rank(const M& A, double rel_tol = 1e-9)
{
    Eigen::JacobiSVD<M> svd(A);
    auto s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s[i] > rel_tol * s[0]) ++r;
    return r;
}

struct ZeroStructure {
    int algebraic = 0;  // dimension of the generalized kernel
    int geometric = 0;  // n - rank(U)
    bool jordan = false;  // algebraic > geometric, i.e. rank(U^2) < rank(U)
};

// Generalized kernel grown one chain link at a time: K_{k+1} = {x : U x in K_k}.
// Every rank decision is made at the scale of |U|, never of |U|^k, so a small
// nonzero rotation rate is not mistaken for a zero.
inline ZeroStructure zero_structure(const MatX& U, double rel_tol = 1e-9)
{
    const int n = int(U.rows());
    ZeroStructure z;
    double tol = rel_tol * std::max(1.0, U.norm());
    auto kernel = [&](const MatX& A) {
        Eigen::JacobiSVD<MatX> svd(A, Eigen::ComputeFullV);
        auto s = svd.singularValues();
        int r = 0;
        for (int i = 0; i < s.size(); ++i)
            if (s[i] > tol) ++r;
        return MatX(svd.matrixV().rightCols(n - r));
    };
    MatX K = kernel(U);
    z.geometric = int(K.cols());
    while (K.cols() > 0 && K.cols() < n) {
        MatX P = MatX::Identity(n, n) - K * K.transpose();
        MatX next = kernel(P * U);
        if (next.cols() <= K.cols()) break;
        K = next;
    }
    z.algebraic = int(K.cols());
    z.jordan = z.algebraic > z.geometric;
    return z;
}

// Groups eigenvalues whose distance is below radius.
struct EigenCluster {
    cplx center;
    int size = 0;
};

inline std::vector<EigenCluster> cluster_eigenvalues(const std::vector<cplx>& ev, double radius)
{
    std::vector<EigenCluster> out;
    std::vector<bool> used(ev.size(), false);
    for (size_t i = 0; i < ev.size(); ++i) {
        if (used[i]) continue;
        EigenCluster c;
        cplx sum = 0;
        for (size_t j = i; j < ev.size(); ++j) {
            if (!used[j] && std::abs(ev[j] - ev[i]) <= radius) {
                used[j] = true;
                sum += ev[j];
                ++c.size;
            }
        }
        c.center = sum / double(c.size);
        out.push_back(c);
    }
    return out;
}

// Greedy one-to-one matching of two multisets; returns the largest pairing distance
// or infinity when sizes differ or some element stays unmatched within tol.
inline double match_multisets(std::vector<cplx> a, std::vector<cplx> b, double tol)
{
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0;
    std::vector<bool> used(b.size(), false);
    // Match the most constrained elements first: sort by modulus.
    std::sort(a.begin(), a.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
    for (auto x : a) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < b.size(); ++j)
            if (!used[j] && std::abs(x - b[j]) < bd) { bd = std::abs(x - b[j]); best = int(j); }
        if (best < 0 || bd > tol) return std::numeric_limits<double>::infinity();
        used[best] = true;
        worst = std::max(worst, bd);
    }
    return worst;
}

// Eigenvalue pair(s) from a value of lambda^2.
inline std::vector<cplx> pair_from_square(cplx x2)
{
    cplx r = std::sqrt(x2);
    return {r, -r};
}

// Phi_i = ((C_i - A_i) omega_i + l_i) / A_i, l only for the gyrostat.
inline std::array<double, 3> phi_values(const SystemParams& p, const ReducedState& z)
{
    double w0 = (p.I0().inverse() * (z.Pi0 - p.lr())).z();
    double w1 = z.Pi1.z() / p.C1, w2 = z.Pi2.z() / p.C2;
    return {((p.C0 - p.A0) * w0 + p.l) / p.A0, (p.C1 - p.A1) * w1 / p.A1, (p.C2 - p.A2) * w2 / p.A2};
}

// Printed formula applied with l also in the body terms (for comparison).
inline std::array<double, 3> phi_values_with_l(const SystemParams& p, const ReducedState& z)
{
    double w0 = (p.I0().inverse() * (z.Pi0 - p.lr())).z();
    double w1 = z.Pi1.z() / p.C1, w2 = z.Pi2.z() / p.C2;
    return {((p.C0 - p.A0) * w0 + p.l) / p.A0, ((p.C1 - p.A1) * w1 + p.l) / p.A1, ((p.C2 - p.A2) * w2 + p.l) / p.A2};
}

// ---- spherical Eulerian coefficients (S0S2S1) ---------------------------

struct EulerSphericalCoefficients {
    double sigma = 0;  // -1 - rho > 0
    double omega2 = 0, p = 0, q = 0;
    double r = 0;      // numerator a1 s^4 + a2 s^4 + a3 s^2 + a4 s + a5, as printed
    double r_alt = 0;  // a2 s^3 reading
    std::array<double, 5> a{};
};

inline std::array<double, 5> euler_a_coefficients(double m0, double m1, double m2)
{
    auto P = [](double x, int k) { return std::pow(x, k); };
    double a1 = -42 * P(m2, 7) * m1 - 48 * P(m2, 7) * m0 - 147 * P(m2, 6) * P(m1, 2) - 336 * P(m2, 6) * m1 * m0
              - 129 * P(m2, 6) * P(m0, 2) - 207 * P(m2, 5) * P(m1, 3) - 782 * P(m2, 5) * P(m1, 2) * m0
              - 673 * P(m2, 5) * m1 * P(m0, 2) - 81 * P(m2, 5) * P(m0, 3) - 150 * P(m2, 4) * P(m1, 4)
              - 869 * P(m2, 4) * P(m1, 3) * m0 - 1325 * P(m2, 4) * P(m1, 2) * P(m0, 2) - 378 * P(m2, 4) * m1 * P(m0, 4)
              - 64 * P(m2, 3) * P(m1, 5) - 513 * P(m2, 3) * P(m1, 4) * m0 - 1270 * P(m2, 3) * P(m1, 3) * P(m0, 2)
              - 702 * P(m2, 3) * P(m1, 2) * P(m0, 3) - 14 * P(m2, 2) * P(m1, 6) - 165 * P(m2, 2) * P(m1, 5) * m0
              - 610 * P(m2, 2) * P(m1, 4) * P(m0, 2) - 648 * P(m2, 2) * P(m1, 3) * P(m0, 3) - 24 * m2 * P(m1, 6) * m0
              - 119 * m2 * P(m1, 5) * P(m0, 2) - 297 * m2 * P(m1, 4) * P(m0, 3) + 2 * P(m1, 6) * P(m0, 2)
              - 54 * P(m1, 5) * P(m0, 3);
    double a2 = -60 * P(m2, 7) * m1 - 54 * P(m2, 7) * m0 - 243 * P(m2, 6) * P(m1, 2) - 474 * P(m2, 6) * m1 * m0
              - 173 * P(m2, 6) * P(m0, 2) - 399 * P(m2, 5) * P(m1, 3) - 1345 * P(m2, 5) * P(m1, 2) * m0
              - 999 * P(m2, 5) * m1 * P(m0, 2) - 135 * P(m2, 5) * P(m0, 3) - 329 * P(m2, 4) * P(m1, 4)
              - 1846 * P(m2, 4) * P(m1, 3) * m0 - 2223 * P(m2, 4) * P(m1, 2) * P(m0, 2) - 648 * P(m2, 4) * m1 * P(m0, 3)
              - 138 * P(m2, 3) * P(m1, 5) - 1364 * P(m2, 3) * P(m1, 4) * m0 - 2506 * P(m2, 3) * P(m1, 3) * P(m0, 2)
              - 1242 * P(m2, 3) * P(m1, 2) * P(m0, 3) - 24 * P(m2, 2) * P(m1, 6) - 536 * P(m2, 2) * P(m1, 5) * m0
              - 1530 * P(m2, 2) * P(m1, 4) * P(m0, 2) - 1188 * P(m2, 2) * P(m1, 3) * P(m0, 3) - 90 * m2 * P(m1, 6) * m0
              - 477 * m2 * P(m1, 5) * P(m0, 2) - 567 * m2 * P(m1, 4) * P(m0, 3) - 56 * P(m1, 6) * P(m0, 2)
              - 108 * P(m1, 5) * P(m0, 3);
    double a3 = -42 * P(m2, 7) * m1 - 36 * P(m2, 7) * m0 - 183 * P(m2, 6) * P(m1, 2) - 342 * P(m2, 6) * m1 * m0
              - 93 * P(m2, 6) * P(m0, 2) - 349 * P(m2, 5) * P(m1, 3) - 1097 * P(m2, 5) * P(m1, 2) * m0
              - 630 * P(m2, 5) * m1 * P(m0, 2) - 81 * P(m2, 5) * P(m0, 3) - 358 * P(m2, 4) * P(m1, 4)
              - 1776 * P(m2, 4) * P(m1, 3) * m0 - 166 * P(m2, 4) * P(m1, 2) * P(m0, 2) - 405 * P(m2, 4) * m1 * P(m0, 3)
              - 189 * P(m2, 3) * P(m1, 5) - 1614 * P(m2, 3) * P(m1, 4) * m0 - 2256 * P(m2, 3) * P(m1, 3) * P(m0, 2)
              - 810 * P(m2, 3) * P(m1, 2) * P(m0, 3) - 31 * P(m2, 2) * P(m1, 6) - 827 * P(m2, 2) * P(m1, 5) * m0
              - 1683 * P(m2, 2) * P(m1, 4) * P(m0, 2) - 810 * P(m2, 2) * P(m1, 3) * P(m0, 3) - 6 * m2 * P(m1, 7)
              - 228 * m2 * P(m1, 6) * m0 - 666 * m2 * P(m1, 5) * P(m0, 2) - 405 * m2 * P(m1, 4) * P(m0, 3)
              - 30 * P(m1, 7) * m0 - 81 * P(m1, 5) * P(m0, 3) - 111 * P(m1, 6) * P(m0, 2);
    double a4 = -12 * P(m2, 7) * m1 - 12 * P(m2, 7) * m0 - 56 * P(m2, 6) * P(m1, 2) - 114 * P(m2, 6) * m1 * m0
              - 24 * P(m2, 6) * P(m0, 2) - 130 * P(m2, 5) * P(m1, 3) - 387 * P(m2, 5) * P(m1, 2) * m0
              - 162 * P(m2, 5) * m1 * P(m0, 2) - 179 * P(m2, 4) * P(m1, 4) - 687 * P(m2, 4) * P(m1, 3) * m0
              - 432 * P(m2, 4) * P(m1, 2) * P(m0, 2) - 140 * P(m2, 3) * P(m1, 5) - 693 * P(m2, 3) * P(m1, 4) * m0
              - 588 * P(m2, 3) * P(m1, 3) * P(m0, 2) - 52 * P(m2, 2) * P(m1, 6) - 387 * P(m2, 2) * P(m1, 5) * m0
              - 432 * P(m2, 2) * P(m1, 4) * P(m0, 2) - 6 * m2 * P(m1, 7) - 108 * m2 * P(m1, 6) * m0
              - 162 * m2 * P(m1, 5) * P(m0, 2) - 12 * P(m1, 7) * m0 - 24 * P(m1, 6) * P(m0, 2);
    double a5 = -(m0 + m2)
              * (18 * m0 * P(m2, 6) + 12 * m1 * P(m2, 6) + 94 * P(m2, 5) * m0 * m1 + 36 * P(m1, 2) * P(m2, 5)
                 + 81 * P(m2, 4) * P(m0, 2) * m1 + 168 * P(m2, 4) * m0 * P(m1, 2) + 42 * P(m2, 4) * P(m1, 3)
                 + 128 * P(m2, 3) * m0 * P(m1, 3) + 27 * P(m2, 3) * P(m1, 4) + 15 * P(m2, 2) * P(m1, 5)
                 + 31 * P(m2, 2) * m0 * P(m1, 4) + 126 * P(m2, 2) * P(m0, 2) * P(m1, 3) + 18 * P(m0, 2) * P(m2, 5)
                 + 54 * m2 * P(m0, 2) * P(m1, 4) + 12 * m2 * m0 * P(m1, 5) + 5 * m2 * P(m1, 6) + 7 * P(m1, 6) * m0
                 + 9 * P(m0, 2) * P(m1, 5) + 144 * P(m2, 3) * P(m0, 2) * P(m1, 2));
    return {a1, a2, a3, a4, a5};
}

// Printed closed forms in terms of sigma = -1 - rho and lambda_e = a.
inline EulerSphericalCoefficients euler_spherical_coefficients(const SystemParams& pr, double rho, double a)
{
    if (!(rho < -1)) throw DomainError("euler_spherical_coefficients: configuration S0S2S1 needs rho < -1");
    if (std::abs(pr.C1 - pr.A1) > 1e-12 * pr.A1 || std::abs(pr.C2 - pr.A2) > 1e-12 * pr.A2)
        throw DomainError("euler_spherical_coefficients: bodies must be spherical");
    double m0 = pr.m0, m1 = pr.m1, m2 = pr.m2, G = pr.G, s = -1 - rho;
    auto P = [](double x, int k) { return std::pow(x, k); };
    EulerSphericalCoefficients c;
    c.sigma = s;
    c.omega2 = G * ((m2 + m1) * P(s, 4) + (2 * m1 + 2 * m2) * P(s, 3) + (m2 + m1) * P(s, 2) - 2 * m0 * s - m0)
             / (P(a, 3) * P(1 + s, 2) * P(s, 2));
    c.p = G * ((m2 + 4 * m0 + m1) * P(s, 3) + (3 * m2 + 6 * m0) * P(s, 2) + (4 * m0 + 3 * m2) * s + m0 + m2)
        / (P(1 + s, 3) * P(s, 3) * P(a, 3));
    c.q = G * (-2 * m1 * P(s, 4) * m2 + (-2 * m0 * m1 + m1 * m1 + m2 * m2 - 2 * m1 * m2 - 2 * m0 * m2) * P(s, 3)
               + (3 * m2 * m2 + m1 * m2 - 6 * m0 * m1) * P(s, 2) + (-m1 * m2 + 3 * m2 * m2 + 2 * m0 * m2 - 4 * m0 * m1) * s
               + m2 * m2 - m0 * m1 + m0 * m2 - m1 * m2)
        / (P(1 + s, 3) * P(s, 3) * P(a, 3));
    c.a = euler_a_coefficients(m0, m1, m2);
    double den = P(1 + s, 8) * P(s, 8) * P(a, 9);
    auto& A = c.a;
    c.r = G * G * (A[0] * P(s, 4) + A[1] * P(s, 4) + A[2] * P(s, 2) + A[3] * s + A[4]) / den;
    c.r_alt = G * G * (A[0] * P(s, 4) + A[1] * P(s, 3) + A[2] * P(s, 2) + A[3] * s + A[4]) / den;
    return c;
}

// ---- verdicts -----------------------------------------------------------

enum class Classification { unstable, spectrally_stable, linearly_stable };

inline std::string classification_name(Classification c)
{
    switch (c) {
    case Classification::unstable: return "unstable";
    case Classification::spectrally_stable: return "spectrally_stable";
    default: return "linearly_stable";
    }
}

struct ConditionEntry {
    std::string name;
    double value = 0;
    bool pass = false;
    bool marginal = false;
};

struct StabilityVerdict {
    RealPoly char_poly;
    std::vector<cplx> eigenvalues;
    ZeroStructure zero;
    Classification classification = Classification::unstable;
    double max_real_part = 0;
    bool marginal = false;
    std::vector<ConditionEntry> ledger;
    std::vector<std::string> notes;
};

namespace detail {

inline ConditionEntry condition(std::string name, double value, bool strict, double scale)
{
    ConditionEntry e;
    e.name = std::move(name);
    e.value = value;
    double tol = 1e-9 * std::max(1.0, scale);
    e.marginal = std::abs(value) <= tol;
    e.pass = strict ? value > tol : value >= -tol;
    return e;
}

// Semisimplicity of the imaginary-axis clusters other than zero.
inline bool imaginary_clusters_semisimple(const MatX& U, const std::vector<EigenCluster>& cl, double rel_tol)
{
    const int n = int(U.rows());
    double nrm = U.norm();
    for (auto& c : cl) {
        if (c.size < 2 || std::abs(c.center) < 1e-6 * nrm) continue;
        MatXc A = U.cast<cplx>() - c.center * MatXc::Identity(n, n);
        Eigen::JacobiSVD<MatXc> s1(A), s2(A * A);
        int r1 = 0, r2 = 0;
        for (int i = 0; i < n; ++i) {
            if (s1.singularValues()[i] > rel_tol * nrm) ++r1;
            if (s2.singularValues()[i] > rel_tol * nrm * nrm) ++r2;
        }
        if (r2 < r1) return false;
    }
    return true;
}

} // namespace detail

// Spectrum-only verdict of any equilibrium.
inline StabilityVerdict spectral_verdict(const SystemParams& p, const ReducedState& z)
{
    StabilityVerdict v;
    Mat21 J = jacobian(p, z);
    MatX U = J;
    v.char_poly = char_poly(U);
    v.eigenvalues = eigenvalues(U);
    v.zero = zero_structure(U);
    double scale = std::max(1.0, U.norm());
    for (auto e : v.eigenvalues) v.max_real_part = std::max(v.max_real_part, e.real());
    if (v.max_real_part > 1e-8 * scale) {
        v.classification = Classification::unstable;
    } else {
        auto cl = cluster_eigenvalues(v.eigenvalues, 1e-7 * scale);
        bool ok = !v.zero.jordan && detail::imaginary_clusters_semisimple(U, cl, 1e-8);
        v.classification = ok ? Classification::linearly_stable : Classification::spectrally_stable;
        if (v.zero.jordan) v.notes.push_back("zero eigenvalue carries a Jordan block: rank(U^2) < rank(U)");
        v.marginal = v.max_real_part > 1e-10 * scale;
    }
    return v;
}

// Quartic x^2 + w^2 x + q in x = lambda^2 of the spherical triangular case.
struct LagrangeQuartic {
    double omega2 = 0, q = 0;
    double disc = 0;  // w^4 - 4q
};

inline LagrangeQuartic lagrange_quartic(const SystemParams& p, double Z)
{
    LagrangeQuartic L;
    double Z3 = Z * Z * Z;
    L.omega2 = p.G * p.M1() / Z3;
    L.q = 27 * p.G * p.G * (p.m1 * p.m0 + p.m2 * p.m0 + p.m1 * p.m2) / (4 * Z3 * Z3);
    L.disc = L.omega2 * L.omega2 - 4 * L.q;
    return L;
}

// (m0+m1+m2)^2 - 27 (m0 m1 + m0 m2 + m1 m2)
inline double routh_margin(double m0, double m1, double m2)
{
    double M = m0 + m1 + m2;
    return M * M - 27 * (m1 * m0 + m2 * m0 + m1 * m2);
}

// Expected eigenvalue multiset of the spherical triangular factorization.
inline std::vector<cplx> lagrange_spherical_expected(const SystemParams& p, const ReducedState& z, double Z)
{
    auto L = lagrange_quartic(p, Z);
    auto phi = phi_values(p, z);
    std::vector<cplx> e(5, cplx(0));
    for (double f : phi)
        for (auto x : pair_from_square(-f * f)) e.push_back(x);
    for (int k = 0; k < 3; ++k)
        for (auto x : pair_from_square(-L.omega2)) e.push_back(x);
    cplx sd = std::sqrt(cplx(L.disc));
    for (cplx x2 : {(-L.omega2 + sd) / 2.0, (-L.omega2 - sd) / 2.0})
        for (auto x : pair_from_square(x2)) e.push_back(x);
    return e;
}

// Same for the collinear S0S2S1 case with the printed p, q and r.
inline std::vector<cplx> euler_spherical_expected(const SystemParams& p, const ReducedState& z, double rho, double a,
                                                  bool alt_r = false)
{
    auto c = euler_spherical_coefficients(p, rho, a);
    auto phi = phi_values(p, z);
    std::vector<cplx> e(5, cplx(0));
    for (double f : phi)
        for (auto x : pair_from_square(-f * f)) e.push_back(x);
    for (int k = 0; k < 2; ++k)
        for (auto x : pair_from_square(-c.omega2)) e.push_back(x);
    for (auto x : pair_from_square(-c.p)) e.push_back(x);
    double r = alt_r ? c.r_alt : c.r;
    cplx sd = std::sqrt(cplx(c.q * c.q - 4 * r));
    for (cplx x2 : {(-c.q + sd) / 2.0, (-c.q - sd) / 2.0})
        for (auto x : pair_from_square(x2)) e.push_back(x);
    return e;
}

// Values of lambda^2 left after removing zeros, the Phi pairs and the given
// known squares.  Each pair contributes one value.
inline std::vector<cplx> residual_squares(const std::vector<cplx>& ev, const std::array<double, 3>& phi,
                                          std::vector<double> known_neg_squares, double tol)
{
    std::vector<cplx> sq;
    for (auto e : ev)
        if (e.imag() > tol || (std::abs(e.imag()) <= tol && e.real() > tol)) sq.push_back(e * e);
    // A quadruple a+-bi, -a+-bi leaves the conjugate pair of squares.
    std::vector<cplx> vals = sq;
    std::vector<bool> used(sq.size(), false);
    for (double f : phi) known_neg_squares.push_back(f * f);
    for (double k : known_neg_squares) {
        if (std::abs(k) <= tol) continue;
        int best = -1;
        double bd = 1e300;
        for (size_t i = 0; i < vals.size(); ++i)
            if (!used[i] && std::abs(vals[i] + k) < bd) { bd = std::abs(vals[i] + k); best = int(i); }
        if (best >= 0 && bd <= 1e-5 * std::max(1.0, std::abs(k))) used[best] = true;
    }
    std::vector<cplx> out;
    for (size_t i = 0; i < vals.size(); ++i)
        if (!used[i]) out.push_back(vals[i]);
    return out;
}

inline StabilityVerdict lagrange_stability(const SystemParams& p, const ReducedState& z)
{
    StabilityVerdict v = spectral_verdict(p, z);
    double Z = z.lambda.norm();
    bool spherical = std::abs(p.C1 - p.A1) <= 1e-12 * p.A1 && std::abs(p.C2 - p.A2) <= 1e-12 * p.A2;
    double s3 = std::pow(Z, 3);
    if (spherical) {
        double M = p.M1();
        v.ledger.push_back(detail::condition("(m0+m1+m2)^2 - 27(m0m1+m0m2+m1m2)", routh_margin(p.m0, p.m1, p.m2), false, M * M));
        auto L = lagrange_quartic(p, Z);
        v.ledger.push_back(detail::condition("omega_e^4 - 4q", L.disc, false, L.omega2 * L.omega2));
        double worst = match_multisets(v.eigenvalues, lagrange_spherical_expected(p, z, Z),
                                       1e-7 * std::max(1.0, MatX(jacobian_unchecked(p, z)).norm()));
        v.notes.push_back(std::isfinite(worst) ? "spectrum matches the spherical factorization"
                                               : "spectrum does not match the spherical factorization");
        return v;
    }
    // Non-spherical: m, n and the octic from the numeric spectrum.
    double we2 = p.G * p.M1() / s3;
    double tol = 1e-7 * std::max(1.0, MatX(jacobian_unchecked(p, z)).norm());
    auto rest = residual_squares(v.eigenvalues, phi_values(p, z), {}, tol);
    if (rest.size() != 6) {
        v.notes.push_back("could not split the spectrum into m, n and the octic (" + std::to_string(rest.size()) + " values)");
        return v;
    }
    std::sort(rest.begin(), rest.end(), [&](cplx a, cplx b) { return std::abs(a + we2) < std::abs(b + we2); });
    double m = -rest[0].real(), n = -rest[1].real();
    // Octic in x = lambda^2: prod (x - x_k) = x^4 + P x^3 + Q x^2 + R x + S.
    std::vector<cplx> c = {1.0};
    for (int k = 2; k < 6; ++k) {
        std::vector<cplx> nc(c.size() + 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            nc[i] += c[i];
            nc[i + 1] -= rest[k] * c[i];
        }
        c = nc;
    }
    double P = c[1].real(), Q = c[2].real(), R = c[3].real(), S = c[4].real();
    double sc2 = we2 * we2;
    v.ledger.push_back(detail::condition("m", m, false, we2));
    v.ledger.push_back(detail::condition("n", n, false, we2));
    v.ledger.push_back(detail::condition("p^2q^2-3rp^3-6p^2s-4q^3+14pqr+16qs-18r^2",
                                         P * P * Q * Q - 3 * R * P * P * P - 6 * P * P * S - 4 * Q * Q * Q + 14 * P * Q * R
                                             + 16 * Q * S - 18 * R * R,
                                         false, std::pow(sc2, 3)));
    v.ledger.push_back(detail::condition("p^2qr-48sr-9sp^3+32pqs-4q^2r+3pr^2",
                                         P * P * Q * R - 48 * S * R - 9 * S * P * P * P + 32 * P * Q * S - 4 * Q * Q * R
                                             + 3 * P * R * R,
                                         false, std::pow(we2, 7)));
    v.ledger.push_back(detail::condition("r", R, false, std::pow(we2, 3)));
    v.ledger.push_back(detail::condition("s", S, false, sc2 * sc2));
    v.ledger.push_back(detail::condition("3p^2-8q", 3 * P * P - 8 * Q, false, sc2));
    v.ledger.push_back(detail::condition("pr-16s", P * R - 16 * S, false, sc2 * sc2));
    double disc = discriminant(RealPoly({S, R, Q, P, 1.0}));
    v.ledger.push_back(detail::condition("discrim(h)", disc, false, std::pow(we2, 12)));
    double s_series = 81 * std::pow(p.G, 4) * p.m0 * p.M1() * p.M1() * (p.beta1() * p.m1 + p.beta2() * p.m2) / 4;
    v.ledger.push_back(detail::condition("s (first-order series)", s_series, false, 1.0));
    v.ledger.push_back(detail::condition("m1(C1-A1)+m2(C2-A2)", p.m1 * (p.C1 - p.A1) + p.m2 * (p.C2 - p.A2), true, 1.0));
    return v;
}

} // namespace gyro3

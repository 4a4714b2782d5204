#pragma once

// Random parameters and states shared by the unit tests and the acceptance run.

#include <random>

#include <gyro3/model.hpp>

namespace gyro3::testing {

inline Vec3 rand_vec(std::mt19937_64& g, double s = 1.0)
{
    std::uniform_real_distribution<double> u(-s, s);
    return {u(g), u(g), u(g)};
}

inline SystemParams rand_params(std::mt19937_64& g, bool spherical = false)
{
    std::uniform_real_distribution<double> m(0.1, 1.0), in(0.5, 1.5), d(-0.2, 0.2);
    SystemParams p;
    p.m0 = m(g); p.m1 = m(g); p.m2 = m(g);
    p.G = in(g);
    p.A0 = in(g); p.C0 = in(g);
    p.A1 = in(g); p.C1 = spherical ? p.A1 : p.A1 + d(g);
    p.A2 = in(g); p.C2 = spherical ? p.A2 : p.A2 + d(g);
    p.l = d(g);
    return p;
}

// Keeps every pairwise separation above 0.5.
inline ReducedState rand_state(std::mt19937_64& g, const SystemParams& p)
{
    ReducedState z;
    for (;;) {
        z.lambda = rand_vec(g, 1.5);
        z.mu = rand_vec(g, 1.5);
        auto s = separations(p, z.lambda, z.mu);
        if (z.lambda.norm() > 0.5 && s.d1.norm() > 0.5 && s.d2.norm() > 0.5) break;
    }
    z.Pi0 = rand_vec(g); z.Pi1 = rand_vec(g); z.Pi2 = rand_vec(g);
    z.p_lambda = rand_vec(g); z.p_mu = rand_vec(g);
    return z;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

} // namespace gyro3::testing

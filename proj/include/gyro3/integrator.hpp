#pragma once

// Time integration of the reduced flow with conservation diagnostics.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "model.hpp"

namespace gyro3 {

enum class Method { rk4, rk87 };

struct Sample {
    double t = 0;
    ReducedState z;
};

// Drift of each monitored quantity relative to its initial value.
struct Drift {
    double H = 0, half_L0_sq = 0, half_Pi1_sq = 0, half_Pi2_sq = 0, L = 0, pi0_3 = 0;

    double max_casimir() const
    {
        return std::max({half_L0_sq, half_Pi1_sq, half_Pi2_sq, L, pi0_3});
    }
};

struct IntegrationReport {
    std::vector<Sample> samples;
    std::vector<Drift> drift;
    bool aborted = false;
    std::string message;
    long steps = 0;

    Drift max_drift() const
    {
        Drift m;
        for (auto& d : drift) {
            m.H = std::max(m.H, d.H);
            m.half_L0_sq = std::max(m.half_L0_sq, d.half_L0_sq);
            m.half_Pi1_sq = std::max(m.half_Pi1_sq, d.half_Pi1_sq);
            m.half_Pi2_sq = std::max(m.half_Pi2_sq, d.half_Pi2_sq);
            m.L = std::max(m.L, d.L);
            m.pi0_3 = std::max(m.pi0_3, d.pi0_3);
        }
        return m;
    }
};

namespace detail {

inline double rel_change(double now, double ref)
{
    double d = std::abs(now - ref);
    return std::abs(ref) < 1e-12 ? d : d / std::abs(ref);
}

struct Monitor {
    double H0;
    CasimirValues c0;

    Drift operator()(const SystemParams& p, const ReducedState& z) const
    {
        auto c = casimirs(z);
        Drift d;
        d.H = rel_change(hamiltonian(p, z), H0);
        d.half_L0_sq = rel_change(c.half_L0_sq, c0.half_L0_sq);
        d.half_Pi1_sq = rel_change(c.half_Pi1_sq, c0.half_Pi1_sq);
        d.half_Pi2_sq = rel_change(c.half_Pi2_sq, c0.half_Pi2_sq);
        double nL = c0.L.norm();
        d.L = nL < 1e-12 ? (c.L - c0.L).norm() : (c.L - c0.L).norm() / nL;
        d.pi0_3 = rel_change(c.pi0_3, c0.pi0_3);
        return d;
    }
};

inline Vec21 rk4_step(const SystemParams& p, const Vec21& x, double h)
{
    Vec21 k1 = vector_field(p, x);
    Vec21 k2 = vector_field(p, Vec21(x + 0.5 * h * k1));
    Vec21 k3 = vector_field(p, Vec21(x + 0.5 * h * k2));
    Vec21 k4 = vector_field(p, Vec21(x + h * k3));
    return x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

} // namespace detail

// sample_every: keep one sample per that many steps (RK4) or per output interval dt (RK8(7)).
inline IntegrationReport integrate(const SystemParams& p, const ReducedState& z0, double t_end, double dt,
                                   Method method = Method::rk4, int sample_every = 1, double atol = 1e-12,
                                   double rtol = 1e-12)
{
    if (!(dt > 0) || !(t_end > 0)) throw DomainError("integrate: dt and t_end must be positive");
    if (sample_every < 1) sample_every = 1;
    IntegrationReport rep;
    detail::Monitor mon{hamiltonian(p, z0), casimirs(z0)};
    auto record = [&](double t, const ReducedState& z) {
        rep.samples.push_back({t, z});
        rep.drift.push_back(mon(p, z));
    };
    record(0.0, z0);

    if (method == Method::rk4) {
        long n = long(std::llround(t_end / dt));
        Vec21 x = z0.to_vector();
        for (long i = 1; i <= n; ++i) {
            try {
                x = detail::rk4_step(p, x, dt);
                ++rep.steps;
                if (i % sample_every == 0 || i == n) record(i * dt, ReducedState::from_vector(x));
            } catch (const DomainError& e) {
                rep.aborted = true;
                rep.message = std::string("aborted at t=") + std::to_string(i * dt) + ": " + e.what();
                break;
            }
        }
        return rep;
    }

    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 21>;
    auto rhs = [&](const State& x, State& dx, double) {
        Eigen::Map<Vec21>(dx.data()) = vector_field(p, Vec21(Eigen::Map<const Vec21>(x.data())));
    };
    State x = z0.to_array();
    auto stepper = ode::make_controlled(atol, rtol, ode::runge_kutta_fehlberg78<State>());
    try {
        rep.steps = long(ode::integrate_const(stepper, rhs, x, 0.0, t_end, dt, [&](const State& s, double t) {
            if (t > 0) record(t, ReducedState::from_array(s));
        }));
    } catch (const DomainError& e) {
        rep.aborted = true;
        rep.message = std::string("aborted: ") + e.what();
    } catch (const std::exception& e) {
        rep.aborted = true;
        rep.message = std::string("step underflow: ") + e.what();
    }
    return rep;
}

} // namespace gyro3

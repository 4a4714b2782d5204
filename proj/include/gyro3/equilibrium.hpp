#pragma once

#include <string>

#include "model.hpp"

namespace gyro3 {

struct EquilibriumSolution {
    ReducedState z;
    std::string kind;   // e.g. "euler:S2S0S1", "lagrange:scalene"
    double omega0 = 0;  // angular velocity of the frame
    double field_residual = 0;   // max |dz/dt| at z
    double torque_residual = 0;  // |lambda x grad_lambda V + mu x grad_mu V|
    double scale = 1;            // reference magnitude for the residuals
};

inline double state_scale(const ReducedState& z)
{
    return std::max(1.0, z.to_vector().cwiseAbs().maxCoeff());
}

inline double torque_residual(const SystemParams& p, const ReducedState& z)
{
    auto g = grad_potential(p, z.lambda, z.mu);
    return (z.lambda.cross(g.d_lambda) + z.mu.cross(g.d_mu)).norm();
}

inline void fill_residuals(const SystemParams& p, EquilibriumSolution& s)
{
    s.field_residual = vector_field(p, s.z).to_vector().cwiseAbs().maxCoeff();
    s.torque_residual = torque_residual(p, s.z);
    s.scale = state_scale(s.z);
}

} // namespace gyro3

#pragma once

// Collinear equilibrium distances for Earth-Moon and Mars-Phobos in the
// restricted limit, next to the tabulated values.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "bodies.hpp"
#include "euler.hpp"

namespace gyro3 {

struct AppendixBRow {
    std::string system;  // catalog system name
    std::string label;   // e.g. "Earth-Moon-S0"
    EulerConfig config;
    std::array<double, 3> printed_km;   // without oblateness, S2 oblate, S2 and S1 oblate
    std::array<double, 3> computed_km{};
    std::array<double, 3> rho{};
    bool converged = true;
    std::string error;

    double rel_error(int col) const { return (computed_km[col] - printed_km[col]) / printed_km[col]; }
};

inline std::vector<AppendixBRow> appendixb_rows()
{
    return {
        {"Earth-Moon", "Earth-Moon-S0", EulerConfig::S2S1S0, {448879.206, 448879.221, 448879.251}},
        {"Mars-Phobos", "Mars-Phobos-S0", EulerConfig::S2S1S0, {9414.945, 9414.958, 9414.958}},
        {"Earth-Moon", "S0-Earth-Moon", EulerConfig::S0S2S1, {381679.691, 381679.763, 381679.763}},
        {"Mars-Phobos", "S0-Mars-Phobos", EulerConfig::S0S2S1, {9310.642, 9310.666, 9310.668}},
        {"Earth-Moon", "Earth-S0-Moon", EulerConfig::S2S0S1, {326409.744, 326409.780, 326409.751}},
        {"Mars-Phobos", "Mars-S0-Phobos", EulerConfig::S2S0S1, {9339.156, 9339.196, 9339.196}},
    };
}

// Distance from the massive primary to the gyrostat: |mu + (m1/M2) lambda| = |1 + rho| a.
inline double primary_distance(double rho, double a) { return std::abs(1 + rho) * a; }

inline void solve_appendixb_row(const Catalog& cat, AppendixBRow& row)
{
    try {
        const auto& sys = cat.system(row.system);
        for (int col = 0; col < 3; ++col) {
            ScenarioConfig sc{cat.body(sys.primary), cat.body(sys.secondary), std::nullopt, sys.separation_km,
                              col >= 1, col >= 2};
            auto nd = nondimensionalize(sc);
            double rho = restricted_continuation_root(nd.mass_ratio, nd.beta1, nd.beta2, 1.0, row.config);
            if (!std::isfinite(rho) || !in_config(row.config, rho)) throw DomainError("continuation left the interval");
            row.rho[col] = rho;
            row.computed_km[col] = nd.to_km(primary_distance(rho, 1.0));
        }
    } catch (const std::exception& e) {
        row.converged = false;
        row.error = e.what();
    }
}

inline std::vector<AppendixBRow> appendixb_report(const Catalog& cat)
{
    auto rows = appendixb_rows();
    for (auto& r : rows) solve_appendixb_row(cat, r);
    return rows;
}

} // namespace gyro3

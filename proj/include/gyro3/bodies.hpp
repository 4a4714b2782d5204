#pragma once

// Physical bodies, J2 / flattening handling and nondimensional units.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "model.hpp"

namespace gyro3 {

inline constexpr double kGravitySI = 6.67430e-11;  // m^3 kg^-1 s^-2

struct BodyRecord {
    std::string name;
    double mass_kg = 0;
    double equatorial_radius_km = 0;
    std::optional<double> polar_radius_km;
    std::optional<double> j2;
    bool observed_j2 = false;  // j2 not tied to the homogeneous-ellipsoid value

    double flattening() const
    {
        if (!polar_radius_km) throw DomainError(name + ": no polar radius");
        return (equatorial_radius_km - *polar_radius_km) / equatorial_radius_km;
    }

    // Homogeneous ellipsoid: J2 = 2 eps / 5.
    double effective_j2() const
    {
        if (j2) return *j2;
        if (polar_radius_km) return 0.4 * flattening();
        throw DomainError(name + ": missing shape data (polar radius or J2)");
    }

    void validate() const
    {
        if (!(mass_kg > 0)) throw DomainError(name + ": mass must be positive");
        if (!(equatorial_radius_km > 0)) throw DomainError(name + ": equatorial radius must be positive");
        if (polar_radius_km && (*polar_radius_km < 0 || *polar_radius_km > equatorial_radius_km))
            throw DomainError(name + ": need e >= p >= 0");
        if (j2 && polar_radius_km && !observed_j2 && std::abs(*j2 - 0.4 * flattening()) > 1e-6)
            throw DomainError(name + ": J2 inconsistent with 2/5 of the flattening");
    }
};

// C - A = weight (e / Z)^2 J2, nondimensional.
inline double cma_from_shape(const BodyRecord& b, double Z_km, double weight)
{
    if (!(Z_km > 0)) throw DomainError("separation must be positive");
    double r = b.equatorial_radius_km / Z_km;
    return weight * r * r * b.effective_j2();
}

struct SystemRecord {
    std::string name;
    std::string primary, secondary;  // S2 (massive), S1
    double separation_km = 0;
};

struct Catalog {
    std::map<std::string, BodyRecord> bodies;
    std::vector<SystemRecord> systems;

    const BodyRecord& body(const std::string& n) const
    {
        auto it = bodies.find(n);
        if (it == bodies.end()) throw DomainError("catalog has no body '" + n + "'");
        return it->second;
    }

    const SystemRecord& system(const std::string& n) const
    {
        for (auto& s : systems)
            if (s.name == n) return s;
        throw DomainError("catalog has no system '" + n + "'");
    }
};

inline Catalog catalog_from_json(const nlohmann::json& j)
{
    Catalog c;
    for (auto& b : j.at("bodies")) {
        BodyRecord r;
        r.name = b.at("name").get<std::string>();
        r.mass_kg = b.at("mass_kg").get<double>();
        r.equatorial_radius_km = b.at("equatorial_radius_km").get<double>();
        if (b.contains("polar_radius_km")) r.polar_radius_km = b["polar_radius_km"].get<double>();
        if (b.contains("j2")) r.j2 = b["j2"].get<double>();
        r.observed_j2 = b.value("observed_j2", false);
        r.validate();
        c.bodies[r.name] = r;
    }
    if (j.contains("systems"))
        for (auto& s : j["systems"])
            c.systems.push_back({s.at("name").get<std::string>(), s.at("primary").get<std::string>(),
                                 s.at("secondary").get<std::string>(), s.at("separation_km").get<double>()});
    return c;
}

inline Catalog load_catalog(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open catalog " + path);
    return catalog_from_json(nlohmann::json::parse(in));
}

// Constants used when no catalog file is given.
inline Catalog default_catalog()
{
    static const char* text = R"({
      "bodies": [
        {"name": "Earth",  "mass_kg": 5.9722e24, "equatorial_radius_km": 6378.137, "polar_radius_km": 6356.752},
        {"name": "Moon",   "mass_kg": 7.346e22,  "equatorial_radius_km": 1738.1,   "polar_radius_km": 1736.0},
        {"name": "Mars",   "mass_kg": 6.4171e23, "equatorial_radius_km": 3396.2,   "polar_radius_km": 3376.2},
        {"name": "Phobos", "mass_kg": 1.0659e16, "equatorial_radius_km": 13.0,     "polar_radius_km": 9.1}
      ],
      "systems": [
        {"name": "Earth-Moon",  "primary": "Earth", "secondary": "Moon",   "separation_km": 384400.0},
        {"name": "Mars-Phobos", "primary": "Mars",  "secondary": "Phobos", "separation_km": 9377.0}
      ]
    })";
    return catalog_from_json(nlohmann::json::parse(text));
}

// Path from an explicit flag, then GYRO3_CATALOG, then the built-in set.
inline Catalog resolve_catalog(const std::string& flag_path = {})
{
    if (!flag_path.empty()) return load_catalog(flag_path);
    if (const char* env = std::getenv("GYRO3_CATALOG"); env && *env) return load_catalog(env);
    return default_catalog();
}

struct ScenarioConfig {
    BodyRecord primary, secondary;   // S2, S1
    std::optional<BodyRecord> gyrostat;  // S0; absent means the restricted limit m0 -> 0
    double separation_km = 0;
    bool oblate_primary = false, oblate_secondary = false;
};

// Units: M2 = m1 + m2 is the mass unit, the separation the length unit, G = 1.
struct NondimScenario {
    MassTriple masses;  // m0 may be exactly zero
    double mass_ratio = 0;  // m1 / M2
    double beta1 = 0, beta2 = 0;
    double cma1 = 0, cma2 = 0;
    double mass_unit_kg = 1, length_unit_km = 1, time_unit_s = 1;

    double to_km(double x) const { return x * length_unit_km; }
    double from_km(double x) const { return x / length_unit_km; }
    double to_kg(double m) const { return m * mass_unit_kg; }
    double from_kg(double m) const { return m / mass_unit_kg; }
    double to_s(double t) const { return t * time_unit_s; }
    double from_s(double t) const { return t / time_unit_s; }
};

inline NondimScenario nondimensionalize(const ScenarioConfig& c)
{
    if (!(c.separation_km > 0)) throw DomainError("separation must be positive");
    NondimScenario n;
    double M2 = c.primary.mass_kg + c.secondary.mass_kg;
    n.mass_unit_kg = M2;
    n.length_unit_km = c.separation_km;
    double L = c.separation_km * 1e3;
    n.time_unit_s = std::sqrt(L * L * L / (kGravitySI * M2));
    n.masses = {c.gyrostat ? c.gyrostat->mass_kg / M2 : 0.0, c.secondary.mass_kg / M2, c.primary.mass_kg / M2};
    n.mass_ratio = n.masses.m1;
    // Each body is weighted by its own mass fraction.
    if (c.oblate_secondary) n.cma1 = cma_from_shape(c.secondary, c.separation_km, n.masses.m1);
    if (c.oblate_primary) n.cma2 = cma_from_shape(c.primary, c.separation_km, n.masses.m2);
    n.beta1 = 1.5 * n.cma1;
    n.beta2 = 1.5 * n.cma2;
    return n;
}

} // namespace gyro3

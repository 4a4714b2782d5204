#pragma once

// Grid sweeps of the root-count classifiers, evaluated by a small worker pool.

#include <algorithm>
#include <atomic>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "euler.hpp"
#include "lagrange.hpp"

namespace gyro3 {

struct SweepAxis {
    std::string name;
    double lo = 0, hi = 0;
    int n = 1;

    double at(int i) const { return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

// problem: "euler" (restricted limit, R1 clauses), "euler-full" (degree-nine count), "lagrange".
struct SweepSpec {
    std::string problem = "euler";
    EulerConfig config = EulerConfig::S2S1S0;
    std::map<std::string, double> fixed;
    std::vector<SweepAxis> axes;
    size_t chunk_begin = 0, chunk_end = size_t(-1);
    unsigned threads = 0;  // 0 = hardware concurrency

    size_t size() const
    {
        size_t n = 1;
        for (auto& a : axes) n *= size_t(std::max(1, a.n));
        return n;
    }
};

struct SweepPoint {
    size_t index = 0;
    std::vector<std::pair<std::string, double>> values;
    int count = 0;
    std::string label;
    bool ok = true;
    std::string error;
};

inline SweepSpec sweep_spec_from_json(const nlohmann::json& j)
{
    SweepSpec s;
    s.problem = j.value("problem", std::string("euler"));
    if (s.problem != "euler" && s.problem != "euler-full" && s.problem != "lagrange")
        throw DomainError("sweep: unknown problem '" + s.problem + "'");
    if (j.contains("config")) {
        auto c = parse_config(j["config"].get<std::string>());
        if (!c) throw DomainError("sweep: bad config");
        s.config = *c;
    }
    if (j.contains("fixed"))
        for (auto& [k, v] : j["fixed"].items()) s.fixed[k] = v.get<double>();
    if (!j.contains("axes") || !j["axes"].is_array() || j["axes"].empty()) throw DomainError("sweep: axes missing");
    for (auto& a : j["axes"]) {
        SweepAxis ax{a.at("name").get<std::string>(), a.at("lo").get<double>(), a.at("hi").get<double>(),
                     a.value("n", 1)};
        if (ax.n < 1) throw DomainError("sweep: axis '" + ax.name + "' needs n >= 1");
        s.axes.push_back(ax);
    }
    if (j.contains("chunk")) {
        s.chunk_begin = j["chunk"].at(0).get<size_t>();
        s.chunk_end = j["chunk"].at(1).get<size_t>();
    }
    s.threads = j.value("threads", 0u);
    return s;
}

namespace detail {

inline double pick(const std::map<std::string, double>& v, const std::string& k, double dflt)
{
    auto it = v.find(k);
    return it == v.end() ? dflt : it->second;
}

inline void evaluate_point(const SweepSpec& s, SweepPoint& pt)
{
    std::map<std::string, double> v = s.fixed;
    for (auto& [k, x] : pt.values) v[k] = x;
    try {
        if (s.problem == "lagrange") {
            double Z = pick(v, "Z", 1.0);
            auto c = classify_lagrange(Z, pick(v, "beta1", 0.0), pick(v, "beta2", 0.0));
            pt.count = c.count;
            pt.label = c.clause;
        } else if (s.problem == "euler") {
            auto r = classify_bifurcation(pick(v, "mass_ratio", 0.3), pick(v, "k", 1.0), pick(v, "beta2", 0.0),
                                          pick(v, "a", 1.0), s.config);
            pt.count = r.count;
            for (auto& c : r.clauses) pt.label += (pt.label.empty() ? "" : "|") + c.label;
        } else {
            MassTriple m{pick(v, "m0", 0.01), pick(v, "m1", 0.3), pick(v, "m2", 0.7)};
            double b2 = pick(v, "beta2", 0.0);
            double b1 = v.count("k") ? v["k"] * b2 : pick(v, "beta1", 0.0);
            pt.count = count_euler_roots(m, b1, b2, pick(v, "a", 1.0), s.config);
            pt.label = config_name(s.config);
        }
    } catch (const std::exception& e) {
        pt.ok = false;
        pt.error = e.what();
    }
}

} // namespace detail

// Results are ordered by grid index; the first axis varies slowest.
inline std::vector<SweepPoint> run_sweep(const SweepSpec& s)
{
    size_t total = s.size();
    size_t b = std::min(s.chunk_begin, total), e = std::min(s.chunk_end, total);
    std::vector<SweepPoint> pts(e > b ? e - b : 0);
    for (size_t i = 0; i < pts.size(); ++i) {
        size_t g = b + i, rem = g;
        pts[i].index = g;
        pts[i].values.resize(s.axes.size());
        for (size_t a = s.axes.size(); a-- > 0;) {
            int n = std::max(1, s.axes[a].n);
            pts[i].values[a] = {s.axes[a].name, s.axes[a].at(int(rem % n))};
            rem /= n;
        }
    }
    unsigned nt = s.threads ? s.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = unsigned(std::min<size_t>(nt, std::max<size_t>(1, pts.size())));
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next.fetch_add(1)) < pts.size();) detail::evaluate_point(s, pts[i]);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return pts;
}

} // namespace gyro3

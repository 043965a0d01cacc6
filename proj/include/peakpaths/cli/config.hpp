#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "peakpaths/analytic_paths.hpp"
#include "peakpaths/cli/table.hpp"
#include "peakpaths/ode.hpp"
#include "peakpaths/wavefield.hpp"

namespace peakpaths::cli {

struct KeyInfo {
    const char* key;
    const char* default_value;
    const char* help;
};

// Every recognised key with its default. "c" for c0 means "equal to the wave speed".
inline const std::vector<KeyInfo>& known_keys() {
    static const std::vector<KeyInfo> keys{
        {"delta", "0.5", "shallowness parameter"},
        {"gamma", "0", "vorticity group"},
        {"c0", "c", "mean bed velocity, or 'c' for the wave speed"},
        {"branch", "1", "wave-speed sign (+1 or -1)"},
        {"perturb_speed", "0", "offset added to the wave speed (negative controls)"},
        {"method", "dopri45", "integrator: dopri45 or rk4"},
        {"step", "0.01", "fixed step for rk4"},
        {"atol", "1e-10", "absolute tolerance (dopri45)"},
        {"rtol", "1e-10", "relative tolerance (dopri45)"},
        {"max_steps", "1000000", "step budget"},
        {"min_step", "1e-14", "smallest adaptive step"},
        {"z_cap", "50", "blow-up guard on the framed height Z"},
        {"frame", "physical", "simulate in physical or framed coordinates"},
        {"start", "point", "initial state: point (x0, z0) or analytic (path at t0)"},
        {"x0", "0", "initial x"},
        {"z0", "0.5", "initial z"},
        {"t0", "0.5", "start time"},
        {"t_end", "5", "end time"},
        {"samples", "0", "resample the trajectory at this many uniform times (0: accepted steps)"},
        {"k1", "0", "horizontal offset of the exact path, or 'aligned'"},
        {"gap", "1e-3", "half-width excluded around t = 0"},
        {"t_window", "5", "analytic path sampled on [-t_window, -gap] and [gap, t_window]"},
        {"n", "200", "analytic samples per branch"},
        {"spacing", "geometric", "analytic time spacing: geometric or uniform"},
        {"residuals", "false", "append residual columns to the analytic path"},
        {"x_min", "0", "field grid"},
        {"x_max", "1", "field grid"},
        {"nx", "11", "field grid"},
        {"z_min", "0", "field grid"},
        {"z_max", "1", "field grid"},
        {"nz", "11", "field grid"},
        {"t_min", "0", "field grid"},
        {"t_max", "0", "field grid"},
        {"nt", "1", "field grid"},
        {"phase_x_min", "-3.141592653589793", "phase portrait X range"},
        {"phase_x_max", "3.141592653589793", "phase portrait X range"},
        {"phase_nx", "25", "phase portrait X samples"},
        {"phase_z_min", "0", "phase portrait Z range"},
        {"phase_z_max", "3", "phase portrait Z range"},
        {"phase_nz", "16", "phase portrait Z samples"},
        {"arrow_scale", "0.8", "arrow length relative to grid spacing"},
        {"kind", "ch", "peakon kind: ch or dp"},
        {"peakon_c", "1", "peakon speed"},
        {"peakon_k", "1", "shock-peakon offset k"},
        {"peakon_t", "0", "time of the peakon profile"},
        {"peakon_x_min", "-5", "profile range"},
        {"peakon_x_max", "5", "profile range"},
        {"peakon_n", "201", "profile samples"},
    };
    return keys;
}

using KeyValues = std::map<std::string, std::string>;

inline bool is_known_key(const std::string& key) {
    for (const auto& k : known_keys()) {
        if (key == k.key) return true;
    }
    return false;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Flat `key = value` text; `#` starts a comment.
inline KeyValues parse_config_text(std::istream& is) {
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (!is_known_key(key)) {
            throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

inline KeyValues load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    return parse_config_text(in);
}

/// Fully resolved scenario: wave, integrator, windows and grids.
struct ScenarioConfig {
    WaveParameters wave;
    ode::IntegratorConfig integrator;
    bool framed = false;
    bool start_on_path = false;
    double x0 = 0.0, z0 = 0.5;
    double t0 = 0.5, t_end = 5.0;
    std::size_t samples = 0;

    std::optional<double> k1;  ///< empty means aligned
    double gap = 1e-3;
    double t_window = 5.0;
    std::size_t n = 200;
    bool geometric = true;
    bool residuals = false;

    GridSpec field_grid;
    AxisSpec phase_x, phase_z;
    double arrow_scale = 0.8;

    std::string kind = "ch";
    double peakon_c = 1.0, peakon_k = 1.0, peakon_t = 0.0;
    AxisSpec peakon_x;

    KeyValues raw;  ///< resolved key/value strings, echoed into output metadata

    double resolved_k1(const PeakonPathParams& base) const {
        return k1 ? *k1 : aligned_k1(base.consts);
    }

    PeakonPathParams path_params() const {
        auto p = PeakonPathParams::make(wave, 0.0);
        p.k1 = resolved_k1(p);
        return p;
    }
};

namespace detail {

inline double as_number(const KeyValues& kv, const std::string& key) {
    try {
        return parse_number(kv.at(key));
    } catch (const UsageError&) {
        throw UsageError("key '" + key + "': expected a number, got '" + kv.at(key) + "'");
    }
}

inline std::size_t as_count(const KeyValues& kv, const std::string& key) {
    const double v = as_number(kv, key);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e12) {
        throw UsageError("key '" + key + "': expected a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

inline bool as_bool(const KeyValues& kv, const std::string& key) {
    const auto& v = kv.at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UsageError("key '" + key + "': expected true or false");
}

inline std::string as_choice(const KeyValues& kv, const std::string& key,
                             std::initializer_list<const char*> choices) {
    const auto& v = kv.at(key);
    for (const char* c : choices) {
        if (v == c) return v;
    }
    throw UsageError("key '" + key + "': unexpected value '" + v + "'");
}

} // namespace detail

/// Defaults, then `file_values`, then `overrides`.
inline ScenarioConfig resolve_config(const KeyValues& file_values, const KeyValues& overrides) {
    KeyValues kv;
    for (const auto& k : known_keys()) kv[k.key] = k.default_value;
    for (const auto* layer : {&file_values, &overrides}) {
        for (const auto& [key, value] : *layer) {
            if (!is_known_key(key)) throw UsageError("unknown key '" + key + "'");
            kv[key] = value;
        }
    }
    using namespace detail;

    ScenarioConfig cfg;
    cfg.raw = kv;
    cfg.wave.delta = as_number(kv, "delta");
    cfg.wave.gamma = as_number(kv, "gamma");
    const double branch = as_number(kv, "branch");
    if (branch != 1.0 && branch != -1.0) throw UsageError("key 'branch': expected 1 or -1");
    cfg.wave.speed_branch = static_cast<int>(branch);
    if (!(cfg.wave.delta > 0.0)) throw UsageError("key 'delta': must be positive");
    cfg.wave.c0 = kv["c0"] == "c" ? wave_speed(cfg.wave.delta, cfg.wave.speed_branch)
                                  : as_number(kv, "c0");
    cfg.wave.speed_offset = as_number(kv, "perturb_speed");
    cfg.wave.validate();

    auto& ic = cfg.integrator;
    ic.method = as_choice(kv, "method", {"dopri45", "rk4"}) == "rk4" ? ode::Method::rk4
                                                                     : ode::Method::dopri45;
    ic.step = as_number(kv, "step");
    ic.atol = as_number(kv, "atol");
    ic.rtol = as_number(kv, "rtol");
    ic.max_steps = as_count(kv, "max_steps");
    ic.min_step = as_number(kv, "min_step");
    const double z_cap = as_number(kv, "z_cap");
    cfg.framed = as_choice(kv, "frame", {"physical", "framed"}) == "framed";
    ic.magnitude_cap = {INFINITY, cfg.framed ? z_cap : z_cap / (two_pi * cfg.wave.delta)};
    ic.validate();

    cfg.start_on_path = as_choice(kv, "start", {"point", "analytic"}) == "analytic";
    cfg.x0 = as_number(kv, "x0");
    cfg.z0 = as_number(kv, "z0");
    cfg.t0 = as_number(kv, "t0");
    cfg.t_end = as_number(kv, "t_end");
    cfg.samples = as_count(kv, "samples");

    if (kv["k1"] != "aligned") cfg.k1 = as_number(kv, "k1");
    cfg.gap = as_number(kv, "gap");
    cfg.t_window = as_number(kv, "t_window");
    cfg.n = as_count(kv, "n");
    cfg.geometric = as_choice(kv, "spacing", {"geometric", "uniform"}) == "geometric";
    cfg.residuals = as_bool(kv, "residuals");

    cfg.field_grid = GridSpec{{as_number(kv, "x_min"), as_number(kv, "x_max"), as_count(kv, "nx")},
                              {as_number(kv, "z_min"), as_number(kv, "z_max"), as_count(kv, "nz")},
                              {as_number(kv, "t_min"), as_number(kv, "t_max"), as_count(kv, "nt")}};
    cfg.phase_x = {as_number(kv, "phase_x_min"), as_number(kv, "phase_x_max"), as_count(kv, "phase_nx")};
    cfg.phase_z = {as_number(kv, "phase_z_min"), as_number(kv, "phase_z_max"), as_count(kv, "phase_nz")};
    cfg.arrow_scale = as_number(kv, "arrow_scale");

    cfg.kind = as_choice(kv, "kind", {"ch", "dp"});
    cfg.peakon_c = as_number(kv, "peakon_c");
    cfg.peakon_k = as_number(kv, "peakon_k");
    cfg.peakon_t = as_number(kv, "peakon_t");
    cfg.peakon_x = {as_number(kv, "peakon_x_min"), as_number(kv, "peakon_x_max"), as_count(kv, "peakon_n")};
    return cfg;
}

/// Scenario parameters echoed into output metadata.
inline Json scenario_meta(const ScenarioConfig& cfg) {
    return Json{{"delta", cfg.wave.delta},
                {"gamma", cfg.wave.gamma},
                {"c0", cfg.wave.c0},
                {"branch", cfg.wave.speed_branch},
                {"c", cfg.wave.speed()}};
}

} // namespace peakpaths::cli

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "peakpaths/analytic_paths.hpp"
#include "peakpaths/cli/config.hpp"
#include "peakpaths/cli/svg.hpp"
#include "peakpaths/cli/table.hpp"
#include "peakpaths/ode.hpp"
#include "peakpaths/particle_dynamics.hpp"
#include "peakpaths/peakons.hpp"
#include "peakpaths/verify.hpp"
#include "peakpaths/wavefield.hpp"

namespace peakpaths::cli {

struct CommandOutput {
    Table table;
    std::optional<std::string> svg;
};

/// Field samples on the configured grid, t-major then x then z.
inline CommandOutput cmd_field(const ScenarioConfig& cfg) {
    const auto& g = cfg.field_grid;
    if (g.empty()) throw UsageError("field: grid must have at least one point per axis");
    CommandOutput out;
    out.table.columns = {"t", "x", "z", "eta", "u", "v", "p"};
    out.table.meta["command"] = "field";
    out.table.meta["parameters"] = scenario_meta(cfg);
    for (std::size_t it = 0; it < g.t.count; ++it) {
        for (std::size_t ix = 0; ix < g.x.count; ++ix) {
            for (std::size_t iz = 0; iz < g.z.count; ++iz) {
                const auto s = field(g.x.at(ix), g.z.at(iz), g.t.at(it), cfg.wave);
                out.table.add_row({s.t, s.x, s.z, s.eta, s.u, s.v, s.p});
            }
        }
    }
    return out;
}

/**
 * Integrate one particle in physical or framed coordinates.
 *
 * Rows are the accepted steps, or `samples` uniform times resampled with
 * Hermite interpolation over the integrated span.
 */
inline CommandOutput cmd_simulate(const ScenarioConfig& cfg) {
    const auto& wave = cfg.wave;
    ParticleState initial{cfg.x0, cfg.z0};
    std::optional<PeakonPathParams> path;
    if (cfg.start_on_path) {
        path = cfg.path_params();
        initial = peakon_path(cfg.t0, *path);
    }
    const auto consts = derived_constants(wave);

    ode::Trajectory tr;
    if (cfg.framed) {
        auto rhs = [&](double, const ode::State& y) {
            const auto v = framed_rhs({y[0], y[1]}, consts, wave);
            return ode::State{v.dX_dt, v.dZ_dt};
        };
        const auto f = to_frame(initial, cfg.t0, wave);
        tr = ode::integrate(rhs, {f.X, f.Z}, cfg.t0, cfg.t_end, cfg.integrator);
    } else {
        auto rhs = [&](double t, const ode::State& y) {
            const auto v = physical_rhs({y[0], y[1]}, t, wave);
            return ode::State{v.dx_dt, v.dz_dt};
        };
        tr = ode::integrate(rhs, {initial.x, initial.z}, cfg.t0, cfg.t_end, cfg.integrator);
    }

    CommandOutput out;
    out.table.columns = cfg.framed ? std::vector<std::string>{"t", "X", "Z"}
                                   : std::vector<std::string>{"t", "x", "z"};
    out.table.meta["command"] = "simulate";
    out.table.meta["parameters"] = scenario_meta(cfg);
    out.table.meta["frame"] = cfg.framed ? "framed" : "physical";
    out.table.meta["method"] = ode::to_string(tr.method);
    out.table.meta["termination"] = ode::to_string(tr.termination);
    out.table.meta["accepted_steps"] = tr.size() - 1;
    if (path) out.table.meta["k1"] = path->k1;

    if (cfg.samples == 0) {
        for (const auto& s : tr.samples) out.table.add_row({s.t, s.y[0], s.y[1]});
    } else {
        const AxisSpec times{tr.front().t, tr.back().t, cfg.samples};
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            const double t = i + 1 == cfg.samples ? tr.back().t : times.at(i);
            const auto y = tr.interpolate(t);
            out.table.add_row({t, y[0], y[1]});
        }
    }
    return out;
}

/// Symmetric sample times on [-window, -gap] ∪ [gap, window], increasing.
inline std::vector<double> analytic_times(double gap, double window, std::size_t n, bool geometric) {
    if (!(gap > 0.0)) throw UsageError("analytic: the window must exclude t = 0 (gap > 0)");
    if (!(window > gap)) throw UsageError("analytic: t_window must exceed gap");
    if (n < 2) throw UsageError("analytic: need at least 2 samples per branch");
    std::vector<double> positive(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(n - 1);
        positive[i] = geometric ? gap * std::pow(window / gap, s) : gap + (window - gap) * s;
    }
    positive.back() = window;
    std::vector<double> times;
    for (auto it = positive.rbegin(); it != positive.rend(); ++it) times.push_back(-*it);
    times.insert(times.end(), positive.begin(), positive.end());
    return times;
}

inline CommandOutput cmd_analytic(const ScenarioConfig& cfg) {
    const auto p = cfg.path_params();
    const auto times = analytic_times(cfg.gap, cfg.t_window, cfg.n, cfg.geometric);

    CommandOutput out;
    out.table.columns = {"t", "x", "z"};
    if (cfg.residuals) {
        out.table.columns.push_back("r_horizontal");
        out.table.columns.push_back("r_vertical");
    }
    out.table.meta["command"] = "analytic";
    out.table.meta["parameters"] = scenario_meta(cfg);
    out.table.meta["k1"] = p.k1;
    out.table.meta["A"] = p.consts.A;
    out.table.meta["gap"] = cfg.gap;

    std::vector<std::pair<double, double>> pts;
    for (double t : times) {
        const auto s = peakon_path(t, p);
        std::vector<double> row{t, s.x, s.z};
        if (cfg.residuals) {
            const auto r = system_residual_of_peakon_path(t, p);
            row.push_back(r.horizontal);
            row.push_back(r.vertical);
        }
        out.table.add_row(std::move(row));
        pts.emplace_back(s.x, s.z);
    }

    SvgPlot plot("Exact particle path", "x", "z");
    const double z_ceiling = parse_number(cfg.raw.at("z_cap")) / (two_pi * cfg.wave.delta);
    plot.fit(pts, 0.0, z_ceiling);
    plot.set_range(plot.x_lo(), plot.x_hi(), 0.0, plot.y_hi());
    plot.vertical_line(p.k1, "vertical-asymptote");
    plot.horizontal_line(0.0, "horizontal-asymptote");
    plot.polyline(pts, "path");
    out.svg = plot.str();
    return out;
}

inline CommandOutput cmd_phase(const ScenarioConfig& cfg) {
    if (cfg.phase_x.count == 0 || cfg.phase_z.count == 0) {
        throw UsageError("phase: grid must have at least one point per axis");
    }
    const auto consts = derived_constants(cfg.wave);
    CommandOutput out;
    out.table.columns = {"X", "Z", "dX_dt", "dZ_dt"};
    out.table.meta["command"] = "phase";
    out.table.meta["parameters"] = scenario_meta(cfg);
    out.table.meta["A"] = consts.A;
    out.table.meta["Omega0"] = consts.Omega0;

    double vmax = 0.0;
    for (std::size_t i = 0; i < cfg.phase_x.count; ++i) {
        for (std::size_t j = 0; j < cfg.phase_z.count; ++j) {
            const FramedState s{cfg.phase_x.at(i), cfg.phase_z.at(j)};
            const auto v = framed_rhs(s, consts, cfg.wave);
            out.table.add_row({s.X, s.Z, v.dX_dt, v.dZ_dt});
            vmax = std::max(vmax, std::hypot(v.dX_dt, v.dZ_dt));
        }
    }

    SvgPlot plot("Framed vector field", "X", "Z");
    plot.set_range(cfg.phase_x.lo, cfg.phase_x.hi, cfg.phase_z.lo, cfg.phase_z.hi);
    const auto spacing = [](const AxisSpec& a) {
        return a.count > 1 ? (a.hi - a.lo) / static_cast<double>(a.count - 1) : 1.0;
    };
    const double cell = std::min(spacing(cfg.phase_x), spacing(cfg.phase_z));
    for (const auto& row : out.table.rows) {
        const double scale = vmax > 0.0 ? cfg.arrow_scale * cell / vmax : 0.0;
        plot.arrow(row[0], row[1], row[0] + scale * row[2], row[1] + scale * row[3]);
    }
    out.svg = plot.str();
    return out;
}

namespace detail {

inline Json jump_json(const JumpReport& j) {
    return Json{{"location", j.location}, {"left", j.left}, {"right", j.right},
                {"jump", j.jump}, {"average", j.average}};
}

} // namespace detail

/// Profile x, u, one-sided u and u_x; at the singular point u is the jump average.
inline CommandOutput cmd_peakon(const ScenarioConfig& cfg) {
    if (cfg.peakon_x.count == 0) throw UsageError("peakon: need at least one sample");
    const double t = cfg.peakon_t;
    CommandOutput out;
    out.table.columns = {"x", "u", "u_left", "u_right", "ux_left", "ux_right"};
    out.table.meta["command"] = "peakon";
    out.table.meta["kind"] = cfg.kind;
    out.table.meta["c"] = cfg.peakon_c;
    out.table.meta["t"] = t;
    std::vector<std::pair<double, double>> pts;

    if (cfg.kind == "ch") {
        const CHPeakon pk{cfg.peakon_c, 0.0};
        const auto jump = ch_ux_jump(t, pk);
        out.table.meta["ux_jump"] = detail::jump_json(jump);
        const auto m = ch_momentum(t, pk);
        Json atoms = Json::array();
        for (const auto& a : m.dirac) atoms.push_back({{"location", a.location}, {"coefficient", a.coefficient}});
        out.table.meta["momentum_atoms"] = atoms;
        for (std::size_t i = 0; i < cfg.peakon_x.count; ++i) {
            const double x = cfg.peakon_x.at(i);
            const double u = ch_u(x, t, pk);
            const bool at_peak = x == jump.location && pk.c != 0.0;
            const double uxl = at_peak ? jump.left : ch_ux(x, t, pk);
            const double uxr = at_peak ? jump.right : uxl;
            out.table.add_row({x, u, u, u, uxl, uxr});
            pts.emplace_back(x, u);
        }
    } else {
        const ShockPeakon sp{cfg.peakon_c, cfg.peakon_k};
        out.table.meta["k"] = sp.k;
        const auto jump = dp_jump(t, sp);
        out.table.meta["u_jump"] = detail::jump_json(jump);
        for (std::size_t i = 0; i < cfg.peakon_x.count; ++i) {
            const double x = cfg.peakon_x.at(i);
            if (x == 0.0) {
                out.table.add_row({x, jump.average, jump.left, jump.right, jump.left, -jump.right});
                pts.emplace_back(x, jump.average);
            } else {
                const double u = dp_u(x, t, sp);
                const double ux = dp_ux(x, t, sp);
                out.table.add_row({x, u, u, u, ux, ux});
                pts.emplace_back(x, u);
            }
        }
    }

    SvgPlot plot(cfg.kind == "ch" ? "CH peakon" : "DP shock-peakon", "x", "u");
    plot.fit(pts);
    plot.polyline(pts, "profile");
    out.svg = plot.str();
    return out;
}

struct VerifyOutcome {
    Json report;
    bool passed = false;
    std::vector<std::string> failures;
};

inline VerifyOutcome cmd_verify(const ScenarioConfig& cfg, const std::string& suite) {
    const auto results = verify::run(suite, verify::Options{cfg.wave.speed_offset});
    VerifyOutcome out;
    out.report["meta"] = Json{{"command", "verify"}, {"suite", suite},
                              {"perturb_speed", cfg.wave.speed_offset}};
    Json suites = Json::array();
    for (const auto& s : results) {
        Json checks = Json::array();
        for (const auto& c : s.checks) {
            checks.push_back(Json{{"name", c.name},
                                  {"value", std::isfinite(c.value) ? Json(c.value) : Json(nullptr)},
                                  {"tolerance", c.tolerance},
                                  {"passed", c.passed()}});
            if (!c.passed()) out.failures.push_back(s.name + ": " + c.name);
        }
        suites.push_back(Json{{"name", s.name}, {"passed", s.passed()}, {"checks", checks}});
    }
    out.report["suites"] = suites;
    out.passed = out.failures.empty();
    out.report["passed"] = out.passed;
    out.report["failures"] = out.failures;
    return out;
}

} // namespace peakpaths::cli

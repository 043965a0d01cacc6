#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "peakpaths/analytic_paths.hpp"
#include "peakpaths/errors.hpp"
#include "peakpaths/ode.hpp"
#include "peakpaths/particle_dynamics.hpp"
#include "peakpaths/peakons.hpp"
#include "peakpaths/wavefield.hpp"

namespace peakpaths::verify {

/// One measured quantity; passes when value ≤ tolerance.
struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed() const { return std::isfinite(value) && value <= tolerance; }
};

struct SuiteResult {
    std::string name;
    std::vector<Check> checks;
    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"linear", "frame", "reduction", "oracle", "peakons"};
    return names;
}

/// Perturbation hook: added to every scenario's wave speed.
struct Options {
    double speed_offset = 0.0;
};

namespace detail {

inline double max_abs(double acc, double v) { return std::max(acc, std::abs(v)); }

inline ode::State framed_state(const FramedState& s) { return {s.X, s.Z}; }

} // namespace detail

inline SuiteResult linear_suite(const Options& opt) {
    SuiteResult r{"linear", {}};
    double worst = 0.0;
    for (double delta : {0.1, 0.5, 1.0}) {
        for (double gamma : {-0.3, 0.0, 0.3}) {
            for (bool comoving : {false, true}) {
                WaveParameters p{delta, gamma, comoving ? wave_speed(delta) : 0.0, 1, opt.speed_offset};
                worst = std::max(worst, verify_linear_system(p, GridSpec::standard(p)).max());
            }
        }
    }
    r.checks.push_back({"linear system residuals (max over 18 scenarios)", worst, 1e-12});
    r.checks.push_back({"shallow limit |c(1e-3) - 1|", std::abs(wave_speed(1e-3) - 1.0), 1e-4});
    double increase = -INFINITY;
    const double deltas[] = {0.01, 0.1, 0.5, 1.0, 2.0};
    for (std::size_t i = 0; i + 1 < std::size(deltas); ++i) {
        increase = std::max(increase, wave_speed(deltas[i + 1]) - wave_speed(deltas[i]));
    }
    // strictly decreasing ⇔ every consecutive difference is negative
    r.checks.push_back({"wave speed monotone (max consecutive increase)", increase, -1e-300});
    return r;
}

inline SuiteResult frame_suite(const Options& opt) {
    SuiteResult r{"frame", {}};
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> zz(0.0, 1.0);
    std::uniform_real_distribution<double> dd(0.05, 1.5);
    double worst = 0.0, round_trip = 0.0;
    for (int i = 0; i < 1000; ++i) {
        WaveParameters p{dd(rng), 0.5 * u(rng), 0.5 * u(rng), u(rng) < 0 ? -1 : 1, opt.speed_offset};
        const auto k = derived_constants(p);
        const ParticleState s{u(rng), zz(rng)};
        const double t = u(rng);
        const auto framed = framed_rhs(to_frame(s, t, p), k, p);
        const auto mapped = to_frame_rate(physical_rhs(s, t, p), p);
        worst = detail::max_abs(worst, framed.dX_dt - mapped.dX_dt);
        worst = detail::max_abs(worst, framed.dZ_dt - mapped.dZ_dt);
        const auto back = from_frame(to_frame(s, t, p), t, p);
        round_trip = detail::max_abs(round_trip, back.x - s.x);
        round_trip = detail::max_abs(round_trip, back.z - s.z);
    }
    r.checks.push_back({"framed vs transformed physical rhs (1000 points)", worst, 1e-12});
    r.checks.push_back({"frame round trip", round_trip, 1e-14});
    return r;
}

inline SuiteResult reduction_suite(const Options& opt) {
    SuiteResult r{"reduction", {}};
    double second = 0.0, cosh_id = 0.0, w_violation = 0.0, law = 0.0, vertical = 0.0, xi = 0.0;
    const std::vector<WaveParameters> waves{
        WaveParameters{0.5, 0.0, wave_speed(0.5), 1, opt.speed_offset},
        WaveParameters{0.5, 0.2, wave_speed(0.5), 1, opt.speed_offset},
        WaveParameters{0.5, -0.5, wave_speed(0.5), 1, opt.speed_offset},
        WaveParameters{0.2, 0.0, 0.1, 1, opt.speed_offset},
        WaveParameters{1.0, 0.3, -0.2, -1, opt.speed_offset}};
    for (const auto& wave : waves) {
        const auto p = PeakonPathParams::aligned(wave);
        for (int i = 0; i < 200; ++i) {
            const double mag = 1e-2 * std::pow(1e3, i / 199.0);
            for (double t : {mag, -mag}) {
                const double w = w_of_t(t, p);
                second = detail::max_abs(second, second_order_residual(t, p));
                w_violation = std::max({w_violation, w <= 0.0 ? 1.0 : 0.0, w >= 1.0 ? 1.0 : 0.0});
                const double Z = framed_height(t, p);
                cosh_id = std::max(cosh_id, std::abs(std::cosh(Z) - (1 + w * w) / (1 - w * w)) /
                                                std::cosh(Z));
                xi = std::max(xi, xi_of_w(w, w_rate(t, p), p.consts));
                if (std::abs(t) >= 0.1) {
                    const auto res = system_residual_of_peakon_path(t, p);
                    law = detail::max_abs(law, res.horizontal - predicted_horizontal_residual(t, p));
                    vertical = detail::max_abs(vertical, res.vertical);
                }
            }
        }
    }
    r.checks.push_back({"second-order residual on xi = 0 branch", second, 1e-10});
    r.checks.push_back({"0 < w < 1 violations", w_violation, 0.0});
    r.checks.push_back({"cosh(Z) = (1+w^2)/(1-w^2) (relative)", cosh_id, 1e-12});
    r.checks.push_back({"xi on the branch", xi, 1e-12});
    r.checks.push_back({"horizontal residual law Gamma z + c0 - c", law, 1e-12});
    r.checks.push_back({"vertical path residual", vertical, 1e-10});
    return r;
}

inline SuiteResult oracle_suite(const Options& opt) {
    SuiteResult r{"oracle", {}};
    WaveParameters wave = WaveParameters::comoving(0.5);
    wave.speed_offset = opt.speed_offset;
    const auto path = PeakonPathParams::aligned(wave);
    auto rhs = [&](double, const ode::State& y) {
        const auto v = framed_rhs({y[0], y[1]}, path.consts, wave);
        return ode::State{v.dX_dt, v.dZ_dt};
    };
    const double t0 = 0.5, t1 = 5.0;
    const auto start = to_frame(peakon_path(t0, path), t0, wave);
    const auto tr = ode::integrate(rhs, detail::framed_state(start), t0, t1,
                                   ode::IntegratorConfig::adaptive(1e-10));
    double err = tr.termination == ode::Termination::reached_end ? 0.0 : INFINITY;
    for (const auto& s : tr.samples) {
        const auto exact = peakon_path(s.t, path);
        const auto got = from_frame({s.y[0], s.y[1]}, s.t, wave);
        err = std::max({err, std::abs(got.x - exact.x), std::abs(got.z - exact.z)});
    }
    r.checks.push_back({"adaptive integration vs exact path on [0.5, 5]", err, 1e-6});

    WaveParameters generic{0.5, 0.3, 0.2, 1, opt.speed_offset};
    const auto consts = derived_constants(generic);
    auto generic_rhs = [&](double, const ode::State& y) {
        const auto v = framed_rhs({y[0], y[1]}, consts, generic);
        return ode::State{v.dX_dt, v.dZ_dt};
    };
    const auto est = ode::measure_order(generic_rhs, {0.4, 0.8}, 0.0, 2.0, 0.1, 4);
    r.checks.push_back({"rk4 order |p - 4|", std::abs(est.order - 4.0), 0.2});
    return r;
}

inline SuiteResult peakon_suite() {
    SuiteResult r{"peakons", {}};
    std::mt19937_64 rng(1993);
    std::uniform_real_distribution<double> cu(-5.0, 5.0);
    std::uniform_real_distribution<double> ku(0.05, 5.0);
    std::uniform_real_distribution<double> xu(-6.0, 6.0);
    double ch_res = 0.0, ch_jump = 0.0, ch_atom = 0.0, dp_res = 0.0, dp_jump_err = 0.0, dp_avg = 0.0;
    for (int i = 0; i < 100; ++i) {
        const CHPeakon pk{cu(rng), 0.0};
        const double t = ku(rng);
        double x = pk.c * t + xu(rng);
        if (x == pk.c * t) x += 0.5;
        ch_res = detail::max_abs(ch_res, ch_classical_residual(x, t, pk));
        ch_jump = detail::max_abs(ch_jump, ch_ux_jump(t, pk).jump + 2.0 * pk.c);
        const auto m = ch_momentum(t, pk);
        ch_atom = detail::max_abs(ch_atom, m.dirac.empty() ? pk.c : m.dirac[0].coefficient - 2.0 * pk.c);

        const ShockPeakon sp{cu(rng), ku(rng)};
        const double xs = xu(rng);
        if (xs != 0.0) dp_res = detail::max_abs(dp_res, dp_classical_residual(xs, t, sp));
        const auto j = dp_jump(t, sp);
        dp_jump_err = detail::max_abs(dp_jump_err, std::abs(j.jump) - 2.0 / (t + sp.k));
        dp_avg = detail::max_abs(dp_avg, j.average - sp.c);
    }
    const ShockPeakon sp{0.7, 2.0};
    const double decay = std::abs(std::abs(dp_jump(sp.k, sp).jump) - 0.5 * std::abs(dp_jump(0.0, sp).jump));
    r.checks.push_back({"CH classical residual off the peak", ch_res, 1e-12});
    r.checks.push_back({"CH u_x jump + 2c", ch_jump, 1e-15});
    r.checks.push_back({"CH momentum atom - 2c", ch_atom, 1e-15});
    r.checks.push_back({"DP classical residual off the jump", dp_res, 1e-12});
    r.checks.push_back({"DP |jump| - 2/(t+k)", dp_jump_err, 1e-15});
    r.checks.push_back({"DP jump average - c", dp_avg, 1e-15});
    r.checks.push_back({"DP jump halves when t + k doubles", decay, 1e-12});
    return r;
}

/// Run one suite by name, or every suite for "all".
inline std::vector<SuiteResult> run(const std::string& selector, const Options& opt = {}) {
    std::vector<SuiteResult> out;
    const bool all = selector == "all";
    if (!all && std::find(suite_names().begin(), suite_names().end(), selector) == suite_names().end()) {
        throw UsageError("unknown suite '" + selector + "'");
    }
    if (all || selector == "linear") out.push_back(linear_suite(opt));
    if (all || selector == "frame") out.push_back(frame_suite(opt));
    if (all || selector == "reduction") out.push_back(reduction_suite(opt));
    if (all || selector == "oracle") out.push_back(oracle_suite(opt));
    if (all || selector == "peakons") out.push_back(peakon_suite());
    return out;
}

} // namespace peakpaths::verify

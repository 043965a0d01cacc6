#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "peakpaths/errors.hpp"

namespace peakpaths::ode {

using State = std::array<double, 2>;

enum class Method {
    rk4,      ///< classical fixed-step Runge–Kutta
    dopri45,  ///< adaptive Dormand–Prince embedded 4(5) pair
};

enum class Termination {
    reached_end,
    blow_up,       ///< a component left its magnitude cap or became non-finite
    min_step,      ///< adaptive step fell below the configured minimum
    step_budget,   ///< max_steps exhausted
};

inline std::string to_string(Method m) {
    return m == Method::rk4 ? "rk4" : "dopri45";
}

inline std::string to_string(Termination r) {
    switch (r) {
    case Termination::reached_end: return "reached_end";
    case Termination::blow_up: return "blow_up";
    case Termination::min_step: return "min_step";
    case Termination::step_budget: return "step_budget";
    }
    return "unknown";
}

struct IntegratorConfig {
    Method method = Method::dopri45;
    double step = 1e-2;  ///< fixed step (rk4)
    double atol = 1e-10;
    double rtol = 1e-10;
    std::size_t max_steps = 1'000'000;
    /// Per-component magnitude caps; the default guards Z in framed coordinates.
    State magnitude_cap{std::numeric_limits<double>::infinity(), 50.0};
    double min_step = 1e-14;

    void validate() const {
        if (!(step > 0.0)) throw UsageError("IntegratorConfig: step must be positive");
        if (!(atol > 0.0) || !(rtol > 0.0)) throw UsageError("IntegratorConfig: tolerances must be positive");
        if (max_steps < 1) throw UsageError("IntegratorConfig: max_steps must be at least 1");
        if (!(magnitude_cap[0] > 0.0) || !(magnitude_cap[1] > 0.0)) {
            throw UsageError("IntegratorConfig: magnitude caps must be positive");
        }
        if (!(min_step > 0.0)) throw UsageError("IntegratorConfig: min_step must be positive");
    }

    static IntegratorConfig fixed(double h) {
        IntegratorConfig c;
        c.method = Method::rk4;
        c.step = h;
        return c;
    }

    static IntegratorConfig adaptive(double tol) {
        IntegratorConfig c;
        c.method = Method::dopri45;
        c.atol = tol;
        c.rtol = tol;
        return c;
    }
};

struct Sample {
    double t = 0.0;
    State y{};
    State dydt{};
};

/// Accepted steps of one integration, in integration order.
class Trajectory {
public:
    std::vector<Sample> samples;
    Termination termination = Termination::reached_end;
    Method method = Method::dopri45;

    const Sample& front() const { return samples.front(); }
    const Sample& back() const { return samples.back(); }
    std::size_t size() const { return samples.size(); }

    /// Cubic Hermite interpolation between the accepted steps bracketing `t`.
    State interpolate(double t) const {
        if (samples.empty()) throw UsageError("Trajectory::interpolate: empty trajectory");
        const double lo = std::min(front().t, back().t);
        const double hi = std::max(front().t, back().t);
        if (t < lo || t > hi) throw DomainError("Trajectory::interpolate: t outside the integrated range");
        if (samples.size() == 1) return front().y;

        const bool forward = back().t > front().t;
        auto it = std::lower_bound(samples.begin(), samples.end(), t,
                                   [forward](const Sample& s, double v) {
                                       return forward ? s.t < v : s.t > v;
                                   });
        if (it == samples.begin()) return it->y;
        if (it == samples.end()) return back().y;
        const Sample& a = *(it - 1);
        const Sample& b = *it;
        const double h = b.t - a.t;
        const double s = (t - a.t) / h;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        State out{};
        for (std::size_t i = 0; i < 2; ++i) {
            out[i] = h00 * a.y[i] + h10 * h * a.dydt[i] + h01 * b.y[i] + h11 * h * b.dydt[i];
        }
        return out;
    }
};

namespace detail {

inline bool within_cap(const State& y, const State& cap) {
    for (std::size_t i = 0; i < 2; ++i) {
        if (!std::isfinite(y[i]) || std::abs(y[i]) > cap[i]) return false;
    }
    return true;
}

inline State axpy(const State& y, double h, const State& k) {
    return State{y[0] + h * k[0], y[1] + h * k[1]};
}

template <class Rhs>
State rk4_step(Rhs& rhs, double t, const State& y, const State& k1, double h) {
    const State k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(t + h, axpy(y, h, k3));
    State out{};
    for (std::size_t i = 0; i < 2; ++i) {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

// Dormand–Prince 5(4) tableau.
struct Dopri {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b − b̂ (fifth minus fourth order weights)
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

struct DopriResult {
    State y;
    State k7;  // derivative at the new point (FSAL)
    double err;
};

template <class Rhs>
DopriResult dopri_step(Rhs& rhs, double t, const State& y, const State& k1, double h,
                       const IntegratorConfig& cfg) {
    using D = Dopri;
    State k2 = rhs(t + D::c2 * h, axpy(y, h * D::a21, k1));
    State y3{}, y4{}, y5{}, y6{}, yn{};
    for (std::size_t i = 0; i < 2; ++i) y3[i] = y[i] + h * (D::a31 * k1[i] + D::a32 * k2[i]);
    State k3 = rhs(t + D::c3 * h, y3);
    for (std::size_t i = 0; i < 2; ++i)
        y4[i] = y[i] + h * (D::a41 * k1[i] + D::a42 * k2[i] + D::a43 * k3[i]);
    State k4 = rhs(t + D::c4 * h, y4);
    for (std::size_t i = 0; i < 2; ++i)
        y5[i] = y[i] + h * (D::a51 * k1[i] + D::a52 * k2[i] + D::a53 * k3[i] + D::a54 * k4[i]);
    State k5 = rhs(t + D::c5 * h, y5);
    for (std::size_t i = 0; i < 2; ++i)
        y6[i] = y[i] + h * (D::a61 * k1[i] + D::a62 * k2[i] + D::a63 * k3[i] + D::a64 * k4[i] +
                            D::a65 * k5[i]);
    State k6 = rhs(t + h, y6);
    for (std::size_t i = 0; i < 2; ++i)
        yn[i] = y[i] + h * (D::b1 * k1[i] + D::b3 * k3[i] + D::b4 * k4[i] + D::b5 * k5[i] +
                            D::b6 * k6[i]);
    State k7 = rhs(t + h, yn);

    double err = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        const double e = h * (D::e1 * k1[i] + D::e3 * k3[i] + D::e4 * k4[i] + D::e5 * k5[i] +
                              D::e6 * k6[i] + D::e7 * k7[i]);
        const double scale = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(yn[i]));
        err = std::max(err, std::abs(e) / scale);
    }
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    return DopriResult{yn, k7, err};
}

template <class Rhs>
double initial_step(Rhs& rhs, double t0, const State& y0, const State& f0, double dir,
                    double span, const IntegratorConfig& cfg) {
    auto scaled_norm = [&](const State& v) {
        double n = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
            n = std::max(n, std::abs(v[i]) / (cfg.atol + cfg.rtol * std::abs(y0[i])));
        }
        return n;
    };
    const double d0 = scaled_norm(y0);
    const double d1 = scaled_norm(f0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    const State f1 = rhs(t0 + dir * h0, axpy(y0, dir * h0, f0));
    const double d2 = scaled_norm(State{f1[0] - f0[0], f1[1] - f0[1]}) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
    return std::max(std::min({100.0 * h0, h1, span}), cfg.min_step);
}

} // namespace detail

/**
 * Integrate dy/dt = rhs(t, y) from t0 to t_end (either direction).
 *
 * `rhs` is any callable `State(double, const State&)`. Only accepted steps are
 * recorded, each with its derivative for Hermite dense output. A state leaving
 * the magnitude cap ends the run without being recorded.
 */
template <class Rhs>
Trajectory integrate(Rhs&& rhs, const State& initial, double t0, double t_end,
                     const IntegratorConfig& config) {
    config.validate();
    if (!(t0 != t_end) || !std::isfinite(t0) || !std::isfinite(t_end)) {
        throw UsageError("integrate: t0 and t_end must be finite and distinct");
    }

    Trajectory traj;
    traj.method = config.method;
    const State f0 = rhs(t0, initial);
    traj.samples.push_back(Sample{t0, initial, f0});
    if (!detail::within_cap(initial, config.magnitude_cap)) {
        traj.termination = Termination::blow_up;
        return traj;
    }

    const double dir = t_end > t0 ? 1.0 : -1.0;
    const double span = std::abs(t_end - t0);
    double t = t0;
    State y = initial;
    State f = f0;
    double h = config.method == Method::rk4
                   ? config.step
                   : detail::initial_step(rhs, t0, initial, f0, dir, span, config);
    bool rejected_last = false;

    for (std::size_t n = 0; n < config.max_steps;) {
        const double remaining = std::abs(t_end - t);
        bool last = false;
        double step = h;
        if (step >= remaining * (1.0 - 1e-12)) {
            step = remaining;
            last = true;
        }
        if (config.method == Method::dopri45 && !last && step < config.min_step) {
            traj.termination = Termination::min_step;
            return traj;
        }

        State y_new{};
        State f_new{};
        if (config.method == Method::rk4) {
            y_new = detail::rk4_step(rhs, t, y, f, dir * step);
            ++n;
        } else {
            const auto r = detail::dopri_step(rhs, t, y, f, dir * step, config);
            ++n;
            if (!(r.err <= 1.0)) {
                const double fac = std::isfinite(r.err) ? 0.9 * std::pow(r.err, -0.2) : 0.2;
                h = step * std::clamp(fac, 0.2, 1.0);
                if (h < config.min_step) {
                    traj.termination = Termination::min_step;
                    return traj;
                }
                rejected_last = true;
                continue;
            }
            y_new = r.y;
            f_new = r.k7;
            const double fac = r.err > 0.0 ? 0.9 * std::pow(r.err, -0.2) : 5.0;
            h = step * std::clamp(fac, 0.2, rejected_last ? 1.0 : 5.0);
            rejected_last = false;
        }

        if (!detail::within_cap(y_new, config.magnitude_cap)) {
            traj.termination = Termination::blow_up;
            return traj;
        }
        const double t_new = last ? t_end : t + dir * step;
        if (config.method == Method::rk4) f_new = rhs(t_new, y_new);
        t = t_new;
        y = y_new;
        f = f_new;
        traj.samples.push_back(Sample{t, y, f});
        if (last) {
            traj.termination = Termination::reached_end;
            return traj;
        }
    }
    traj.termination = Termination::step_budget;
    return traj;
}

struct OrderEstimate {
    std::vector<double> steps;
    std::vector<double> errors;   ///< max-norm end-state error per step size
    std::vector<double> orders;   ///< log2(err(h)/err(h/2)) per halving
    double order = std::numeric_limits<double>::quiet_NaN();
    bool exact = false;           ///< every error is at roundoff level
};

/**
 * Empirical convergence order of `method` on [t0, t_end].
 *
 * Runs base_step, base_step/2, ... (refinements halvings) and compares end
 * states with a dopri45 reference at tolerance 1e-13. For the adaptive
 * method the "step" is used as the tolerance and halved alike.
 */
template <class Rhs>
OrderEstimate measure_order(Rhs&& rhs, const State& initial, double t0, double t_end,
                            double base_step, int refinements, Method method = Method::rk4) {
    if (refinements < 2) throw UsageError("measure_order: refinements must be at least 2");
    if (!(base_step > 0.0)) throw UsageError("measure_order: base step must be positive");

    IntegratorConfig ref_cfg = IntegratorConfig::adaptive(1e-13);
    ref_cfg.min_step = 1e-16;
    ref_cfg.magnitude_cap = {std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity()};
    const auto reference = integrate(rhs, initial, t0, t_end, ref_cfg);
    if (reference.termination != Termination::reached_end) {
        throw DomainError("measure_order: reference integration did not reach t_end");
    }
    const State y_ref = reference.back().y;
    const double floor =
        64.0 * std::numeric_limits<double>::epsilon() *
        std::max({1.0, std::abs(y_ref[0]), std::abs(y_ref[1])});

    OrderEstimate est;
    double h = base_step;
    for (int i = 0; i <= refinements; ++i, h *= 0.5) {
        IntegratorConfig cfg = method == Method::rk4 ? IntegratorConfig::fixed(h)
                                                     : IntegratorConfig::adaptive(h);
        cfg.magnitude_cap = ref_cfg.magnitude_cap;
        cfg.max_steps = 100'000'000;
        const auto run = integrate(rhs, initial, t0, t_end, cfg);
        const State y = run.back().y;
        est.steps.push_back(h);
        est.errors.push_back(std::max(std::abs(y[0] - y_ref[0]), std::abs(y[1] - y_ref[1])));
    }

    est.exact = std::all_of(est.errors.begin(), est.errors.end(),
                            [floor](double e) { return e <= floor; });
    if (est.exact) return est;

    double sum = 0.0;
    int used = 0;
    for (std::size_t i = 0; i + 1 < est.errors.size(); ++i) {
        const double a = est.errors[i], b = est.errors[i + 1];
        if (a <= floor || b <= floor) continue;
        const double p = std::log2(a / b);
        est.orders.push_back(p);
        sum += p;
        ++used;
    }
    if (used > 0) est.order = sum / used;
    return est;
}

} // namespace peakpaths::ode

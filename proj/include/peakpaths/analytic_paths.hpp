#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "peakpaths/errors.hpp"
#include "peakpaths/particle_dynamics.hpp"
#include "peakpaths/wavefield.hpp"

namespace peakpaths {

/// k1 placing the t > 0 half of the path on the line sin X = −sgn(A).
inline double aligned_k1(const DerivedConstants& consts) {
    return consts.A >= 0.0 ? -0.25 : 0.25;
}

struct PeakonPathParams {
    double k1 = 0.0;
    WaveParameters wave;
    DerivedConstants consts;

    static PeakonPathParams make(const WaveParameters& wave, double k1) {
        PeakonPathParams p{k1, wave, derived_constants(wave)};
        if (p.consts.A == 0.0) throw DomainError("PeakonPathParams: A must be non-zero");
        return p;
    }

    static PeakonPathParams aligned(const WaveParameters& wave) {
        const auto consts = derived_constants(wave);
        return make(wave, aligned_k1(consts));
    }
};

namespace detail {

inline void reject_origin(double t, const char* what) {
    if (t == 0.0) {
        throw SingularPointError(std::string(what) + ": t = 0 is the vertical asymptote");
    }
    if (!std::isfinite(t)) throw DomainError(std::string(what) + ": t must be finite");
}

inline double decay_rate(const PeakonPathParams& p) { return std::abs(p.consts.A); }

// 1 − w, accurate for w close to 1.
inline double one_minus_w(double t, const PeakonPathParams& p) {
    return -std::expm1(-decay_rate(p) * std::abs(t));
}

} // namespace detail

/// w(t) = exp(−|A|·|t|), strictly inside (0, 1) for t ≠ 0.
inline double w_of_t(double t, const PeakonPathParams& p) {
    detail::reject_origin(t, "w_of_t");
    return std::exp(-detail::decay_rate(p) * std::abs(t));
}

/// dw/dt = −sgn(t)·|A|·w.
inline double w_rate(double t, const PeakonPathParams& p) {
    const double m = detail::decay_rate(p) * w_of_t(t, p);
    return t > 0.0 ? -m : m;
}

/// d²w/dt² = A²·w.
inline double w_accel(double t, const PeakonPathParams& p) {
    const double a = detail::decay_rate(p);
    return a * a * w_of_t(t, p);
}

/// Z(t) = 2·arctanh(w), evaluated without cancellation near t = 0.
inline double framed_height(double t, const PeakonPathParams& p) {
    const double w = w_of_t(t, p);
    return std::log1p(2.0 * w / detail::one_minus_w(t, p));
}

/**
 * Exact particle path x = ct + k1, z = arctanh(exp(−|A||t|))/(πδ).
 *
 * Symmetric in |t|; z → ∞ as t → 0 and z → 0 as |t| → ∞.
 */
inline ParticleState peakon_path(double t, const PeakonPathParams& p) {
    detail::reject_origin(t, "peakon_path");
    return ParticleState{p.wave.speed() * t + p.k1,
                         framed_height(t, p) / (two_pi * p.wave.delta)};
}

/// Path velocity (dx/dt, dz/dt) from the closed form.
inline Velocity peakon_path_velocity(double t, const PeakonPathParams& p) {
    const double w = w_of_t(t, p);
    const double one_minus_w2 = detail::one_minus_w(t, p) * (1.0 + w);
    return Velocity{p.wave.speed(),
                    w_rate(t, p) / (one_minus_w2 * std::numbers::pi * p.wave.delta)};
}

/**
 * Position on the line where the vertical path equation holds for the
 * half-line containing t.
 *
 * For t > 0 this is peakon_path(t). For t < 0 the path must sit on the
 * mirrored line (sin X of opposite sign), half a wavelength away.
 */
inline ParticleState branch_position(double t, const PeakonPathParams& p) {
    auto s = peakon_path(t, p);
    if (t < 0.0) s.x += 0.5;
    return s;
}

/// sin X recovered from the reduction, (1/(A·w))·dw/dt.
inline double branch_sine(double t, const PeakonPathParams& p) {
    return w_rate(t, p) / (p.consts.A * w_of_t(t, p));
}

/**
 * ξ = sqrt(A²w² − (dw/dt)²).
 *
 * The radicand is formed as (|A||w| − |w'|)(|A||w| + |w'|) so that the ξ = 0
 * branch evaluates to exactly zero.
 */
inline double xi_of_w(double w, double dw_dt, const DerivedConstants& consts) {
    const double aw = std::abs(consts.A * w);
    const double dw = std::abs(dw_dt);
    const double radicand = (aw - dw) * (aw + dw);
    if (radicand < -1e-12) throw DomainError("xi_of_w: A^2 w^2 < (dw/dt)^2");
    return radicand <= 0.0 ? 0.0 : std::sqrt(radicand);
}

/// Left side of the first-order equation in ξ(w).
inline double xi_equation_residual(double w, double xi, double dxi_dw, const PeakonPathParams& p) {
    const double drive = 2.0 * p.consts.Omega0 * std::atanh(w) +
                         two_pi * (p.wave.c0 - p.wave.speed());
    return xi * dxi_dw + 2.0 * w / (1.0 - w * w) * xi * xi + drive * xi;
}

/// Second-order equation in w(t) evaluated on the closed form of w.
inline double second_order_residual(double t, const PeakonPathParams& p) {
    const double w = w_of_t(t, p);
    const double dw = w_rate(t, p);
    const double d2w = w_accel(t, p);
    const double A2 = p.consts.A * p.consts.A;
    const double one_minus_w2 = detail::one_minus_w(t, p) * (1.0 + w);
    const double atanh_w = 0.5 * framed_height(t, p);
    const double drive = 2.0 * p.consts.Omega0 * atanh_w + two_pi * (p.wave.c0 - p.wave.speed());
    return d2w + 2.0 * w / one_minus_w2 * dw * dw - A2 * w * (1.0 + w * w) / one_minus_w2 -
           xi_of_w(w, dw, p.consts) * drive;
}

struct SystemResidual {
    double horizontal = 0.0;  ///< u − dx/dt
    double vertical = 0.0;    ///< v − dz/dt
};

/// Field velocity minus path velocity along the exact path (mirrored for t < 0).
inline SystemResidual system_residual_of_peakon_path(double t, const PeakonPathParams& p) {
    const auto pos = branch_position(t, p);
    const auto s = field(pos.x, pos.z, t, p.wave);
    const auto vel = peakon_path_velocity(t, p);
    return SystemResidual{s.u - vel.dx_dt, s.v - vel.dz_dt};
}

/// The horizontal residual the path must show: Γ·z(t) + (c0 − c).
inline double predicted_horizontal_residual(double t, const PeakonPathParams& p) {
    return p.wave.gamma * peakon_path(t, p).z + (p.wave.c0 - p.wave.speed());
}

struct ReductionDiagnostics {
    std::vector<double> t;
    std::vector<double> w;
    std::vector<double> Z;
    std::vector<double> second_order;
    std::vector<double> horizontal;
    std::vector<double> vertical;
};

inline ReductionDiagnostics reduction_diagnostics(std::span<const double> times,
                                                  const PeakonPathParams& p) {
    ReductionDiagnostics d;
    for (double t : times) {
        const auto r = system_residual_of_peakon_path(t, p);
        d.t.push_back(t);
        d.w.push_back(w_of_t(t, p));
        d.Z.push_back(framed_height(t, p));
        d.second_order.push_back(second_order_residual(t, p));
        d.horizontal.push_back(r.horizontal);
        d.vertical.push_back(r.vertical);
    }
    return d;
}

} // namespace peakpaths

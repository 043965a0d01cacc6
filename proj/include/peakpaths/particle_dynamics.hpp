#pragma once

#include <cmath>

#include "peakpaths/wavefield.hpp"

namespace peakpaths {

/// Particle position in physical coordinates.
struct ParticleState {
    double x = 0.0;
    double z = 0.0;
};

/// Position in the frame moving with the wave: X = 2π(x − ct), Z = 2πδz.
struct FramedState {
    double X = 0.0;
    double Z = 0.0;

    /// Below the bed (Z < 0); the formulas still apply.
    bool nonphysical() const { return Z < 0.0; }
};

struct Velocity {
    double dx_dt = 0.0;
    double dz_dt = 0.0;
};

struct FramedVelocity {
    double dX_dt = 0.0;
    double dZ_dt = 0.0;
};

/// A = 4π²δc/sinh(2πδ), Omega0 = Γ/δ.
struct DerivedConstants {
    double A = 0.0;
    double Omega0 = 0.0;
};

inline DerivedConstants derived_constants(const WaveParameters& params) {
    params.validate();
    const double k = two_pi * params.delta;
    return DerivedConstants{two_pi * k * params.speed() / std::sinh(k),
                            params.gamma / params.delta};
}

inline Velocity physical_rhs(const ParticleState& state, double t, const WaveParameters& params) {
    const auto s = field(state.x, state.z, t, params);
    return Velocity{s.u, s.v};
}

// Autonomous: there is deliberately no time argument.
inline FramedVelocity framed_rhs(const FramedState& state, const DerivedConstants& consts,
                                 const WaveParameters& params) {
    const double drift = two_pi * (params.c0 - params.speed());
    return FramedVelocity{
        consts.A * std::cosh(state.Z) * std::cos(state.X) + consts.Omega0 * state.Z + drift,
        consts.A * std::sinh(state.Z) * std::sin(state.X)};
}

inline FramedState to_frame(const ParticleState& state, double t, const WaveParameters& params) {
    return FramedState{two_pi * (state.x - params.speed() * t), two_pi * params.delta * state.z};
}

inline ParticleState from_frame(const FramedState& state, double t, const WaveParameters& params) {
    return ParticleState{state.X / two_pi + params.speed() * t, state.Z / (two_pi * params.delta)};
}

/// Physical velocity mapped into frame rates: (2π(dx/dt − c), 2πδ·dz/dt).
inline FramedVelocity to_frame_rate(const Velocity& v, const WaveParameters& params) {
    return FramedVelocity{two_pi * (v.dx_dt - params.speed()), two_pi * params.delta * v.dz_dt};
}

} // namespace peakpaths

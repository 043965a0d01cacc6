#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "peakpaths/errors.hpp"

namespace peakpaths {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Speed of the linear wave, c = ±sqrt(tanh(2πδ)/(2πδ)).
inline double wave_speed(double delta, int branch = +1) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw DomainError("wave_speed: delta must be positive and finite");
    }
    if (branch != 1 && branch != -1) {
        throw DomainError("wave_speed: branch must be +1 or -1");
    }
    const double k = two_pi * delta;
    return branch * std::sqrt(std::tanh(k) / k);
}

/**
 * Dimensionless description of a linear wave over constant-vorticity flow.
 *
 * `gamma` is the vorticity group ω0·sqrt(g·h0)/g; use from_dimensional() to
 * build it from the physical inputs. `speed_offset` shifts the wave speed away
 * from the dispersion relation and exists only for negative controls.
 */
struct WaveParameters {
    double delta = 0.5;
    double gamma = 0.0;
    double c0 = 0.0;
    int speed_branch = +1;
    double speed_offset = 0.0;

    /// Wave speed actually used by the field formulas.
    double speed() const { return wave_speed(delta, speed_branch) + speed_offset; }

    void validate() const {
        if (!(delta > 0.0) || !std::isfinite(delta)) {
            throw DomainError("WaveParameters: delta must be positive and finite");
        }
        if (speed_branch != 1 && speed_branch != -1) {
            throw DomainError("WaveParameters: speed_branch must be +1 or -1");
        }
        if (!std::isfinite(gamma) || !std::isfinite(c0) || !std::isfinite(speed_offset)) {
            throw DomainError("WaveParameters: gamma, c0 and speed_offset must be finite");
        }
    }

    /// Scenario with the bottom drift equal to the wave speed (c0 = c).
    static WaveParameters comoving(double delta, double gamma = 0.0, int branch = +1) {
        WaveParameters p{delta, gamma, 0.0, branch, 0.0};
        p.c0 = wave_speed(delta, branch);
        return p;
    }

    /// Γ = ω0·sqrt(g·h0)/g from vorticity ω0, gravity g and depth h0.
    static WaveParameters from_dimensional(double delta, double omega0, double g, double h0,
                                           double c0, int branch = +1) {
        if (!(g > 0.0) || !(h0 > 0.0)) {
            throw DomainError("from_dimensional: g and h0 must be positive");
        }
        WaveParameters p{delta, omega0 * std::sqrt(g * h0) / g, c0, branch, 0.0};
        p.validate();
        return p;
    }
};

struct FieldSample {
    double x = 0.0, z = 0.0, t = 0.0;
    double eta = 0.0, u = 0.0, v = 0.0, p = 0.0;
    bool out_of_domain = false; ///< z outside [0, 1]
};

/// Closed-form partial derivatives of the linear solution.
struct FieldDerivatives {
    double u_t = 0.0, u_x = 0.0, u_z = 0.0;
    double v_t = 0.0, v_x = 0.0, v_z = 0.0;
    double p_x = 0.0, p_z = 0.0;
    double eta_t = 0.0;
};

namespace detail {

// Amplitudes and phase shared by the field and its derivatives.
struct FieldKernel {
    double c, k, phase, cosh_kz, sinh_kz, cos_ph, sin_ph, inv_sinh_k;

    FieldKernel(double x, double z, double t, const WaveParameters& params)
        : c(params.speed()), k(two_pi * params.delta),
          phase(two_pi * (x - c * t)), cosh_kz(std::cosh(k * z)), sinh_kz(std::sinh(k * z)),
          cos_ph(std::cos(phase)), sin_ph(std::sin(phase)), inv_sinh_k(1.0 / std::sinh(k)) {}

    double u_amp() const { return k * c * inv_sinh_k; }           // 2πδc/sinh(2πδ)
    double v_amp() const { return two_pi * c * inv_sinh_k; }      // 2πc/sinh(2πδ)
    double p_amp() const { return k * c * c * inv_sinh_k; }       // 2πδc²/sinh(2πδ)
};

} // namespace detail

/// η(x, t) = cos(2π(x − ct)).
inline double surface_elevation(double x, double t, const WaveParameters& params) {
    return std::cos(two_pi * (x - params.speed() * t));
}

inline FieldSample field(double x, double z, double t, const WaveParameters& params) {
    const detail::FieldKernel f(x, z, t, params);
    FieldSample s;
    s.x = x;
    s.z = z;
    s.t = t;
    s.eta = f.cos_ph;
    s.u = f.u_amp() * f.cosh_kz * f.cos_ph + params.gamma * z + params.c0;
    s.v = f.v_amp() * f.sinh_kz * f.sin_ph;
    s.p = f.p_amp() * f.cosh_kz * f.cos_ph;
    s.out_of_domain = !(z >= 0.0 && z <= 1.0);
    return s;
}

inline FieldDerivatives field_derivatives(double x, double z, double t,
                                          const WaveParameters& params) {
    const detail::FieldKernel f(x, z, t, params);
    const double ua = f.u_amp(), va = f.v_amp(), pa = f.p_amp();
    // d(phase)/dx = 2π, d(phase)/dt = −2πc
    const double wx = two_pi;
    const double wt = -two_pi * f.c;
    FieldDerivatives d;
    d.u_t = -ua * f.cosh_kz * f.sin_ph * wt;
    d.u_x = -ua * f.cosh_kz * f.sin_ph * wx;
    d.u_z = ua * f.k * f.sinh_kz * f.cos_ph + params.gamma;
    d.v_t = va * f.sinh_kz * f.cos_ph * wt;
    d.v_x = va * f.sinh_kz * f.cos_ph * wx;
    d.v_z = va * f.k * f.cosh_kz * f.sin_ph;
    d.p_x = -pa * f.cosh_kz * f.sin_ph * wx;
    d.p_z = pa * f.k * f.sinh_kz * f.cos_ph;
    d.eta_t = -f.sin_ph * wt;
    return d;
}

/// Mean horizontal velocity on the bed over [x, x + 1]; equals c0.
inline double bed_mean_velocity(double x, double t, const WaveParameters& params) {
    using boost::math::quadrature::gauss_kronrod;
    auto integrand = [&](double s) { return field(s, 0.0, t, params).u; };
    return gauss_kronrod<double, 61>::integrate(integrand, x, x + 1.0, 15, 1e-14);
}

/// Uniform sampling of [lo, hi] with `count` points (count == 1 gives lo).
struct AxisSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t count = 1;

    double at(std::size_t i) const {
        if (count <= 1) {
            return lo;
        }
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

struct GridSpec {
    AxisSpec x;
    AxisSpec z;
    AxisSpec t;

    bool empty() const { return x.count == 0 || z.count == 0 || t.count == 0; }

    /// 50×50 over (x, z) ∈ [0,1]², 5 times over two temporal periods.
    static GridSpec standard(const WaveParameters& params) {
        return GridSpec{{0.0, 1.0, 50}, {0.0, 1.0, 50},
                        {0.0, 2.0 / std::abs(params.speed()), 5}};
    }
};

struct ResidualReport {
    std::vector<std::pair<std::string, double>> residuals;
    GridSpec grid;
    WaveParameters params;

    double max() const {
        double m = 0.0;
        for (const auto& [name, value] : residuals) {
            m = std::max(m, value);
        }
        return m;
    }

    double at(const std::string& name) const {
        for (const auto& [n, value] : residuals) {
            if (n == name) {
                return value;
            }
        }
        throw UsageError("ResidualReport: no residual named " + name);
    }
};

namespace residual_names {
inline constexpr const char* horizontal_momentum = "u_t + p_x";
inline constexpr const char* vertical_momentum = "delta^2 v_t + p_z";
inline constexpr const char* continuity = "u_x + v_z";
inline constexpr const char* vorticity = "u_z - delta^2 v_x - gamma";
inline constexpr const char* kinematic_surface = "v - eta_t (z=1)";
inline constexpr const char* dynamic_surface = "p - eta (z=1)";
inline constexpr const char* bed = "v (z=0)";
} // namespace residual_names

/**
 * Maximum absolute residuals of the linearised system over `grid`.
 *
 * Interior equations are sampled on the full grid; the surface conditions use
 * z = 1 and the bed condition z = 0 at every (x, t) node.
 */
inline ResidualReport verify_linear_system(const WaveParameters& params, const GridSpec& grid) {
    if (grid.empty()) {
        throw UsageError("verify_linear_system: grid must be non-empty");
    }
    params.validate();
    const double d2 = params.delta * params.delta;
    double r_hm = 0, r_vm = 0, r_cont = 0, r_vort = 0, r_kin = 0, r_dyn = 0, r_bed = 0;
    auto upd = [](double& acc, double r) { acc = std::max(acc, std::abs(r)); };

    for (std::size_t it = 0; it < grid.t.count; ++it) {
        const double t = grid.t.at(it);
        for (std::size_t ix = 0; ix < grid.x.count; ++ix) {
            const double x = grid.x.at(ix);
            for (std::size_t iz = 0; iz < grid.z.count; ++iz) {
                const double z = grid.z.at(iz);
                const auto d = field_derivatives(x, z, t, params);
                upd(r_hm, d.u_t + d.p_x);
                upd(r_vm, d2 * d.v_t + d.p_z);
                upd(r_cont, d.u_x + d.v_z);
                upd(r_vort, d.u_z - d2 * d.v_x - params.gamma);
            }
            const auto top = field(x, 1.0, t, params);
            const auto top_d = field_derivatives(x, 1.0, t, params);
            upd(r_kin, top.v - top_d.eta_t);
            upd(r_dyn, top.p - top.eta);
            upd(r_bed, field(x, 0.0, t, params).v);
        }
    }

    namespace rn = residual_names;
    return ResidualReport{{{rn::horizontal_momentum, r_hm},
                           {rn::vertical_momentum, r_vm},
                           {rn::continuity, r_cont},
                           {rn::vorticity, r_vort},
                           {rn::kinematic_surface, r_kin},
                           {rn::dynamic_surface, r_dyn},
                           {rn::bed, r_bed}},
                          grid,
                          params};
}

} // namespace peakpaths

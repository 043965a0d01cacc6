#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "peakpaths/errors.hpp"

namespace peakpaths {

/// Camassa–Holm peakon u = c·exp(−|x − ct|); kappa is the linear-dispersion constant.
struct CHPeakon {
    double c = 1.0;
    double kappa = 0.0;
};

/// Degasperis–Procesi shock-peakon u = c·e^{−|x|} − sgn(x)·e^{−|x|}/(t + k).
struct ShockPeakon {
    double c = 1.0;
    double k = 1.0;
};

struct DiracAtom {
    double location = 0.0;
    double coefficient = 0.0;
};

/**
 * Piecewise-smooth part plus point masses.
 *
 * `smooth` is evaluated on either open half-line around `breakpoint`;
 * `dirac` holds δ(x − a) atoms and `dirac_prime` holds δ'(x − a) atoms.
 */
struct DistributionalFunction {
    std::function<double(double)> smooth = [](double) { return 0.0; };
    double breakpoint = 0.0;
    std::vector<DiracAtom> dirac;
    std::vector<DiracAtom> dirac_prime;

    /// Regular distribution from a function with no atoms.
    static DistributionalFunction regular(std::function<double(double)> f, double breakpoint) {
        return DistributionalFunction{std::move(f), breakpoint, {}, {}};
    }

    double smooth_at(double x) const { return smooth(x); }

    /**
     * Action on a test function φ supported in [lo, hi]:
     * ∫ smooth·φ + Σ a·φ(x_a) − Σ b·φ'(x_b).
     */
    double pair(const std::function<double(double)>& phi,
                const std::function<double(double)>& dphi, double lo, double hi) const {
        using boost::math::quadrature::gauss_kronrod;
        auto integrand = [&](double x) { return smooth(x) * phi(x); };
        double total = 0.0;
        if (breakpoint > lo && breakpoint < hi) {
            total += gauss_kronrod<double, 61>::integrate(integrand, lo, breakpoint, 15, 1e-13);
            total += gauss_kronrod<double, 61>::integrate(integrand, breakpoint, hi, 15, 1e-13);
        } else {
            total += gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 15, 1e-13);
        }
        for (const auto& a : dirac) total += a.coefficient * phi(a.location);
        for (const auto& b : dirac_prime) total -= b.coefficient * dphi(b.location);
        return total;
    }

    /// Smooth part plus each δ replaced by a normalised Gaussian of width eps.
    double mollified(double x, double eps) const {
        if (!(eps > 0.0)) throw DomainError("mollified: eps must be positive");
        const double norm = 1.0 / (eps * std::sqrt(2.0 * std::numbers::pi));
        double value = smooth(x);
        for (const auto& a : dirac) {
            const double s = (x - a.location) / eps;
            value += a.coefficient * norm * std::exp(-0.5 * s * s);
        }
        for (const auto& b : dirac_prime) {
            const double s = (x - b.location) / eps;
            value += b.coefficient * norm * (-s / eps) * std::exp(-0.5 * s * s);
        }
        return value;
    }

    friend DistributionalFunction operator-(const DistributionalFunction& a,
                                            const DistributionalFunction& b) {
        DistributionalFunction out;
        out.smooth = [fa = a.smooth, fb = b.smooth](double x) { return fa(x) - fb(x); };
        out.breakpoint = a.breakpoint;
        out.dirac = a.dirac;
        for (auto atom : b.dirac) {
            atom.coefficient = -atom.coefficient;
            out.dirac.push_back(atom);
        }
        out.dirac_prime = a.dirac_prime;
        for (auto atom : b.dirac_prime) {
            atom.coefficient = -atom.coefficient;
            out.dirac_prime.push_back(atom);
        }
        return out;
    }
};

struct JumpReport {
    double location = 0.0;
    double left = 0.0;
    double right = 0.0;
    double jump = 0.0;     ///< right − left
    double average = 0.0;

    static JumpReport at(double location, double left, double right) {
        return JumpReport{location, left, right, right - left, 0.5 * (left + right)};
    }
};

namespace detail {

inline double sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Residual of u_t + a·u·u_x − u_txx − b·u_x·u_xx − u·u_xxx for u = f(t)·exp(−rate·|x − s(t)|),
// given the one-sided derivatives on the half-line selected by `side`.
struct OneSided {
    double u, u_t, u_x, u_xx, u_xxx, u_txx;
};

inline double b_family_residual(const OneSided& d, double a, double b) {
    return d.u_t + a * d.u * d.u_x - d.u_txx - b * d.u_x * d.u_xx - d.u * d.u_xxx;
}

} // namespace detail

// --- Camassa–Holm peakon -------------------------------------------------

inline double ch_u(double x, double t, const CHPeakon& peakon) {
    return peakon.c * std::exp(-std::abs(x - peakon.c * t));
}

/// u_x = −c·sgn(x − ct)·exp(−|x − ct|), undefined at the peak.
inline double ch_ux(double x, double t, const CHPeakon& peakon) {
    const double theta = x - peakon.c * t;
    if (theta == 0.0 && peakon.c != 0.0) {
        throw SingularPointError("ch_ux: u_x is discontinuous at the peak x = ct");
    }
    return -peakon.c * detail::sgn(theta) * std::exp(-std::abs(theta));
}

inline JumpReport ch_ux_jump(double t, const CHPeakon& peakon) {
    return JumpReport::at(peakon.c * t, peakon.c, -peakon.c);
}

/// u_xx = c·exp(−|x − ct|) − 2c·δ(x − ct).
inline DistributionalFunction ch_uxx_distribution(double t, const CHPeakon& peakon) {
    DistributionalFunction d;
    d.smooth = [peakon, t](double x) { return ch_u(x, t, peakon); };
    d.breakpoint = peakon.c * t;
    d.dirac.push_back({peakon.c * t, -2.0 * peakon.c});
    return d;
}

/// m = u − u_xx = 2c·δ(x − ct); no atom for the zero solution.
inline DistributionalFunction ch_momentum(double t, const CHPeakon& peakon) {
    DistributionalFunction m;
    m.breakpoint = peakon.c * t;
    if (peakon.c != 0.0) m.dirac.push_back({peakon.c * t, 2.0 * peakon.c});
    return m;
}

namespace detail {

inline OneSided ch_one_sided(double x, double t, double c, double rate) {
    const double theta = x - c * t;
    const double s = sgn(theta);
    const double e = std::exp(-rate * std::abs(theta));
    const double r2 = rate * rate;
    return OneSided{
        c * e,                    // u
        rate * s * c * c * e,     // u_t
        -rate * s * c * e,        // u_x
        r2 * c * e,               // u_xx
        -r2 * rate * s * c * e,   // u_xxx
        r2 * rate * s * c * c * e // u_txx
    };
}

} // namespace detail

/**
 * CH equation (κ = 0) evaluated classically off the peak. `rate` replaces the
 * unit decay rate of the profile and is only used for negative controls.
 */
inline double ch_classical_residual(double x, double t, const CHPeakon& peakon, double rate = 1.0) {
    if (peakon.kappa != 0.0) {
        throw UnsupportedError("ch_classical_residual: peakons solve the CH equation only for kappa = 0");
    }
    if (x == peakon.c * t && peakon.c != 0.0) {
        throw SingularPointError("ch_classical_residual: x = ct is the peak");
    }
    return detail::b_family_residual(detail::ch_one_sided(x, t, peakon.c, rate), 3.0, 2.0);
}

// --- Degasperis–Procesi shock-peakon -------------------------------------

namespace detail {

inline void check_shock_time(double t, const ShockPeakon& sp) {
    if (!(sp.k > 0.0)) throw DomainError("ShockPeakon: k must be positive");
    if (!(t + sp.k > 0.0)) throw DomainError("ShockPeakon: requires t + k > 0");
}

// Amplitude on the side `s` (= sgn x): c − s/(t + k).
inline double shock_amplitude(double s, double t, const ShockPeakon& sp) {
    return sp.c - s / (t + sp.k);
}

} // namespace detail

inline double dp_u(double x, double t, const ShockPeakon& sp) {
    detail::check_shock_time(t, sp);
    if (x == 0.0) throw SingularPointError("dp_u: u jumps at x = 0");
    const double s = detail::sgn(x);
    return detail::shock_amplitude(s, t, sp) * std::exp(-std::abs(x));
}

/// One-sided u_x of the shock-peakon, x ≠ 0.
inline double dp_ux(double x, double t, const ShockPeakon& sp) {
    return -detail::sgn(x) * dp_u(x, t, sp);
}

inline JumpReport dp_jump(double t, const ShockPeakon& sp) {
    detail::check_shock_time(t, sp);
    return JumpReport::at(0.0, detail::shock_amplitude(-1.0, t, sp),
                          detail::shock_amplitude(+1.0, t, sp));
}

/// u_x as a distribution: classical part plus a δ atom carrying the jump of u.
inline DistributionalFunction dp_ux_distribution(double t, const ShockPeakon& sp) {
    const auto jump = dp_jump(t, sp);
    DistributionalFunction d;
    d.smooth = [sp, t](double x) {
        return x == 0.0 ? std::numeric_limits<double>::quiet_NaN() : dp_ux(x, t, sp);
    };
    d.breakpoint = 0.0;
    if (jump.jump != 0.0) d.dirac.push_back({0.0, jump.jump});
    return d;
}

/// Coefficients of u_t + a·u·u_x − u_txx − b·u_x·u_xx − u·u_xxx; DP is (4, 3).
struct DPCoefficients {
    double nonlinear = 4.0;
    double dispersive = 3.0;
};

inline double dp_classical_residual(double x, double t, const ShockPeakon& sp,
                                    DPCoefficients coeffs = {}) {
    detail::check_shock_time(t, sp);
    if (x == 0.0) throw SingularPointError("dp_classical_residual: x = 0 is the jump");
    const double s = detail::sgn(x);
    const double f = detail::shock_amplitude(s, t, sp);
    const double ft = s / ((t + sp.k) * (t + sp.k));
    const double e = std::exp(-std::abs(x));
    const detail::OneSided d{f * e, ft * e, -s * f * e, f * e, -s * f * e, ft * e};
    return detail::b_family_residual(d, coeffs.nonlinear, coeffs.dispersive);
}

} // namespace peakpaths

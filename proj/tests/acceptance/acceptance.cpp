// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "peakpaths/analytic_paths.hpp"
#include "peakpaths/ode.hpp"
#include "peakpaths/particle_dynamics.hpp"
#include "peakpaths/peakons.hpp"
#include "peakpaths/wavefield.hpp"

using namespace peakpaths;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Outcome linear_exactness() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (double delta : {0.1, 0.5, 1.0}) {
        for (double gamma : {-0.3, 0.0, 0.3}) {
            for (bool comoving : {false, true}) {
                const WaveParameters p{delta, gamma, comoving ? wave_speed(delta) : 0.0, 1, 0.0};
                const auto report = verify_linear_system(p, GridSpec::standard(p));
                if (report.residuals.size() != 7) return {false, "expected seven residuals"};
                worst = std::max(worst, report.max());
            }
        }
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-12 && elapsed < 2.0, fmt("max residual %.3e, %.3f s", worst, elapsed)};
}

Outcome dispersion_limit() {
    const double gap = std::abs(wave_speed(1e-3) - 1.0);
    bool decreasing = true;
    const double deltas[] = {0.01, 0.1, 0.5, 1.0, 2.0};
    for (std::size_t i = 0; i + 1 < std::size(deltas); ++i) {
        decreasing = decreasing && wave_speed(deltas[i + 1]) < wave_speed(deltas[i]);
    }
    return {gap < 1e-4 && decreasing, fmt("|c(1e-3) - 1| = %.3e, decreasing = %.0f", gap, decreasing)};
}

Outcome frame_conjugacy() {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> zz(0.0, 1.0);
    std::uniform_real_distribution<double> dd(0.05, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const WaveParameters p{dd(rng), 0.3 * u(rng), 0.3 * u(rng), u(rng) < 0 ? -1 : 1, 0.0};
        const ParticleState s{u(rng), zz(rng)};
        const double t = u(rng);
        const auto framed = framed_rhs(to_frame(s, t, p), derived_constants(p), p);
        const auto phys = physical_rhs(s, t, p);
        worst = std::max(worst, std::abs(framed.dX_dt - two_pi * (phys.dx_dt - p.speed())));
        worst = std::max(worst, std::abs(framed.dZ_dt - two_pi * p.delta * phys.dz_dt));
    }
    return {worst <= 1e-12, fmt("max disagreement %.3e over 1000 points", worst)};
}

Outcome analytic_oracle() {
    const auto start = Clock::now();
    const auto wave = WaveParameters::comoving(0.5);
    const auto path = PeakonPathParams::aligned(wave);
    auto rhs = [&](double, const ode::State& y) {
        const auto v = framed_rhs({y[0], y[1]}, path.consts, wave);
        return ode::State{v.dX_dt, v.dZ_dt};
    };
    const double t0 = 0.5;
    const auto f0 = to_frame(peakon_path(t0, path), t0, wave);
    const auto tr = ode::integrate(rhs, {f0.X, f0.Z}, t0, 5.0, ode::IntegratorConfig::adaptive(1e-10));
    if (tr.termination != ode::Termination::reached_end) return {false, "integration stopped early"};
    double worst = 0.0;
    // accepted steps plus a dense Hermite sweep
    std::vector<double> times;
    for (const auto& s : tr.samples) times.push_back(s.t);
    for (int i = 0; i <= 450; ++i) times.push_back(0.5 + 0.01 * i);
    for (double t : times) {
        t = std::min(t, 5.0);
        const auto y = tr.interpolate(t);
        const auto got = from_frame({y[0], y[1]}, t, wave);
        const auto exact = peakon_path(t, path);
        worst = std::max({worst, std::abs(got.x - exact.x), std::abs(got.z - exact.z)});
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-6 && elapsed < 1.0, fmt("max error %.3e, %.3f s", worst, elapsed)};
}

Outcome residual_law() {
    const double c = wave_speed(0.5);
    const std::vector<WaveParameters> waves{
        WaveParameters{0.5, 0.2, c, 1, 0.0},
        WaveParameters{0.5, -0.5, c, 1, 0.0},
        WaveParameters{0.5, 0.0, c + 0.15, 1, 0.0},
        WaveParameters{0.5, 0.2, 0.0, 1, 0.0}};
    double law = 0.0, vertical = 0.0;
    for (const auto& wave : waves) {
        const auto p = PeakonPathParams::aligned(wave);
        for (int i = 0; i < 200; ++i) {
            const double mag = 0.05 + (10.0 - 0.05) * (i / 2) / 99.0;
            const double t = i % 2 ? -mag : mag;
            const auto r = system_residual_of_peakon_path(t, p);
            const double expected = wave.gamma * peakon_path(t, p).z + (wave.c0 - wave.speed());
            law = std::max(law, std::abs(r.horizontal - expected));
            vertical = std::max(vertical, std::abs(r.vertical));
        }
    }
    return {law <= 1e-12 && vertical <= 1e-10,
            fmt("law deviation %.3e, vertical residual %.3e", law, vertical)};
}

Outcome reduction_chain() {
    double second = 0.0, cosh_id = 0.0;
    bool bounded = true;
    for (const auto& wave : {WaveParameters::comoving(0.5), WaveParameters{0.5, 0.3, 0.1, 1, 0.0},
                             WaveParameters{0.2, -0.4, 0.0, -1, 0.0}}) {
        const auto p = PeakonPathParams::aligned(wave);
        for (int i = 0; i < 500; ++i) {
            const double mag = 1e-2 * std::pow(1e3, i / 499.0);
            for (double t : {mag, -mag}) {
                second = std::max(second, std::abs(second_order_residual(t, p)));
                const double w = w_of_t(t, p);
                bounded = bounded && w > 0.0 && w < 1.0;
                const double Z = 2.0 * std::atanh(w);
                cosh_id = std::max(cosh_id, std::abs(std::cosh(Z) - (1 + w * w) / (1 - w * w)) / std::cosh(Z));
            }
        }
    }
    return {second <= 1e-10 && bounded && cosh_id <= 1e-12,
            fmt("second-order residual %.3e, cosh identity (relative) %.3e", second, cosh_id)};
}

Outcome integrator_order() {
    const WaveParameters wave{0.5, 0.3, 0.2, 1, 0.0};
    const auto consts = derived_constants(wave);
    auto rhs = [&](double, const ode::State& y) {
        const auto v = framed_rhs({y[0], y[1]}, consts, wave);
        return ode::State{v.dX_dt, v.dZ_dt};
    };
    const auto est = ode::measure_order(rhs, {0.4, 0.8}, 0.0, 2.0, 0.1, 4);
    return {!est.exact && est.order >= 3.8 && est.order <= 4.2, fmt("measured order %.4f", est.order)};
}

Outcome ch_peakon() {
    std::mt19937_64 rng(161803);
    std::uniform_real_distribution<double> cu(-5.0, 5.0);
    std::uniform_real_distribution<double> xu(-6.0, 6.0);
    std::uniform_real_distribution<double> tu(0.0, 4.0);
    double residual = 0.0, jump = 0.0, atom = 0.0;
    for (int i = 0; i < 100; ++i) {
        const CHPeakon pk{cu(rng), 0.0};
        const double t = tu(rng);
        double x = pk.c * t + xu(rng);
        if (x == pk.c * t) x += 0.25;
        residual = std::max(residual, std::abs(ch_classical_residual(x, t, pk)));
        jump = std::max(jump, std::abs(ch_ux_jump(t, pk).jump - (-2.0 * pk.c)));
        const auto m = ch_momentum(t, pk);
        atom = std::max(atom, m.dirac.size() == 1 ? std::abs(m.dirac[0].coefficient - 2.0 * pk.c) : 1.0);
    }
    return {residual <= 1e-12 && jump <= 1e-15 && atom <= 1e-15,
            fmt("residual %.3e, jump/atom deviation %.3e", residual, std::max(jump, atom))};
}

Outcome dp_shock_peakon() {
    std::mt19937_64 rng(141421);
    std::uniform_real_distribution<double> cu(-5.0, 5.0);
    std::uniform_real_distribution<double> ku(0.05, 5.0);
    std::uniform_real_distribution<double> xu(-6.0, 6.0);
    double residual = 0.0, identity = 0.0, decay = 0.0;
    for (int i = 0; i < 100; ++i) {
        const ShockPeakon sp{cu(rng), ku(rng)};
        const double t = ku(rng), x = xu(rng);
        if (x != 0.0) residual = std::max(residual, std::abs(dp_classical_residual(x, t, sp)));
        const auto j = dp_jump(t, sp);
        identity = std::max({identity, std::abs(std::abs(j.jump) - 2.0 / (t + sp.k)), std::abs(j.average - sp.c)});
        decay = std::max(decay, std::abs(std::abs(dp_jump(sp.k, sp).jump) - 0.5 * std::abs(dp_jump(0.0, sp).jump)));
    }
    return {residual <= 1e-12 && identity <= 1e-15 && decay <= 1e-12,
            fmt("residual %.3e, jump identities %.3e", residual, std::max(identity, decay))};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PEAKPATHS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Minimal well-formedness check: balanced, properly nested element tags.
bool well_formed_xml(const std::string& doc) {
    std::vector<std::string> stack;
    std::size_t pos = 0;
    while ((pos = doc.find('<', pos)) != std::string::npos) {
        const auto end = doc.find('>', pos);
        if (end == std::string::npos) return false;
        const std::string tag = doc.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;
        if (tag[0] == '/') {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        if (tag.back() == '/') continue;
        stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
    }
    return stack.empty();
}

Outcome end_to_end() {
    const auto dir = std::filesystem::temp_directory_path() / "peakpaths_acceptance";
    std::filesystem::create_directories(dir);
    const auto start = Clock::now();
    const int verify_code = run_cli("verify --out " + (dir / "verify.json").string());
    const double verify_time = seconds_since(start);
    if (verify_code != 0) return {false, "verify exited " + std::to_string(verify_code)};
    if (verify_time >= 10.0) return {false, fmt("verify took %.2f s", verify_time)};

    const auto svg_path = dir / "figure1.svg";
    if (run_cli("analytic --out " + (dir / "figure1.csv").string() + " --svg " + svg_path.string()) != 0) {
        return {false, "analytic --svg failed"};
    }
    std::ifstream in(svg_path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string svg = ss.str();
    if (svg.rfind("<?xml", 0) != 0 || svg.find("<svg") == std::string::npos || !well_formed_xml(svg)) {
        return {false, "SVG is not well formed"};
    }
    const auto at = svg.find("id=\"path\"");
    if (at == std::string::npos) return {false, "no path polyline"};
    const auto p0 = svg.find("points=\"", at) + 8;
    const auto p1 = svg.find('"', p0);
    std::stringstream pts(svg.substr(p0, p1 - p0));
    std::vector<double> height;  // larger is higher on the page
    std::string pair;
    while (pts >> pair) {
        const auto comma = pair.find(',');
        height.push_back(-std::stod(pair.substr(comma + 1)));
    }
    const std::size_t n = height.size();
    if (n < 4 || n % 2) return {false, "unexpected sample count"};
    const std::size_t mid = n / 2;  // samples mid-1 and mid are nearest t = 0
    bool shape = height[mid - 1] >= *std::max_element(height.begin(), height.end()) &&
                 height[mid] >= *std::max_element(height.begin(), height.end());
    for (std::size_t i = 1; i < mid; ++i) shape = shape && height[i] >= height[i - 1];
    for (std::size_t i = mid + 1; i < n; ++i) shape = shape && height[i] <= height[i - 1];
    return {shape, fmt("verify %.2f s, SVG polyline with %.0f points", verify_time, double(n))};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1  linear-solution exactness", linear_exactness},
        {"2  dispersion limit and monotonicity", dispersion_limit},
        {"3  frame conjugacy", frame_conjugacy},
        {"4  analytic-path oracle", analytic_oracle},
        {"5  residual law exposure", residual_law},
        {"6  reduction-chain identities", reduction_chain},
        {"7  integrator order", integrator_order},
        {"8  CH peakon", ch_peakon},
        {"9  DP shock-peakon", dp_shock_peakon},
        {"10 end-to-end CLI", end_to_end},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %-40s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

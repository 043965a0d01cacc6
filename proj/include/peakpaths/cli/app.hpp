#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "peakpaths/cli/commands.hpp"
#include "peakpaths/cli/config.hpp"

namespace peakpaths::cli {

enum ExitCode : int {
    exit_success = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
    exit_io = 3,
};

namespace detail {

inline void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

} // namespace detail

/// Parse arguments, run one subcommand, and map errors to exit codes.
inline int run(int argc, const char* const* argv, std::ostream& err = std::cerr) {
    CLI::App app{"Particle paths beneath linear water waves, peakon and shock-peakon tools",
                 "peakpaths"};
    app.require_subcommand(1);

    std::string config_path, format_name = "csv", out_path = "-", svg_path, suite = "all";
    std::vector<std::string> sets;
    std::map<std::string, std::string> flag_values;

    app.add_option("--config", config_path, "flat key = value scenario file");
    app.add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path ('-' for stdout)");
    app.add_option("--svg", svg_path, "also write an SVG plot");
    app.add_option("--set", sets, "override a key: --set key=value (repeatable)");
    for (const auto& k : known_keys()) {
        app.add_option(std::string("--") + k.key, flag_values[k.key],
                       std::string(k.help) + " [" + k.default_value + "]");
    }

    auto* field_cmd = app.add_subcommand("field", "sample the linear wave field on a grid");
    auto* sim_cmd = app.add_subcommand("simulate", "integrate a particle path");
    auto* analytic_cmd = app.add_subcommand("analytic", "sample the exact peakon-shaped path");
    auto* phase_cmd = app.add_subcommand("phase", "sample the framed vector field");
    auto* peakon_cmd = app.add_subcommand("peakon", "CH peakon or DP shock-peakon profile");
    auto* verify_cmd = app.add_subcommand("verify", "run residual verification suites");
    verify_cmd->add_option("--suite", suite, "all, linear, frame, reduction, oracle, peakons");
    for (auto* sub : {field_cmd, sim_cmd, analytic_cmd, phase_cmd, peakon_cmd, verify_cmd}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cout, err);
        return exit_usage;
    }

    try {
        KeyValues overrides;
        for (const auto& [key, value] : flag_values) {
            if (app.count(std::string("--") + key) > 0) overrides[key] = value;
        }
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
            overrides[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
        }
        const KeyValues file_values = config_path.empty() ? KeyValues{} : load_config_file(config_path);
        const auto cfg = resolve_config(file_values, overrides);
        const Format format = parse_format(format_name);

        if (verify_cmd->parsed()) {
            const auto outcome = cmd_verify(cfg, suite);
            detail::write_text(out_path, outcome.report.dump(2) + "\n");
            if (!outcome.passed) {
                err << "verification failed:\n";
                for (const auto& f : outcome.failures) err << "  " << f << '\n';
                return exit_verification_failed;
            }
            return exit_success;
        }

        CommandOutput result;
        if (field_cmd->parsed()) result = cmd_field(cfg);
        else if (sim_cmd->parsed()) result = cmd_simulate(cfg);
        else if (analytic_cmd->parsed()) result = cmd_analytic(cfg);
        else if (phase_cmd->parsed()) result = cmd_phase(cfg);
        else result = cmd_peakon(cfg);

        std::ostringstream table_text;
        write_table(table_text, result.table, format);
        detail::write_text(out_path, table_text.str());
        if (!svg_path.empty()) {
            if (!result.svg) throw UsageError("this command has no SVG output");
            detail::write_text(svg_path, *result.svg);
        }
        return exit_success;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return exit_usage;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace peakpaths::cli

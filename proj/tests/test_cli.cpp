#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "peakpaths/cli/app.hpp"

using namespace peakpaths;
using namespace peakpaths::cli;

namespace {

ScenarioConfig config(const KeyValues& overrides = {}) { return resolve_config({}, overrides); }

std::string csv_text(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "peakpaths_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PEAKPATHS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Config, DefaultsDescribeCanonicalScenario) {
    const auto cfg = config();
    EXPECT_EQ(cfg.wave.delta, 0.5);
    EXPECT_EQ(cfg.wave.gamma, 0.0);
    EXPECT_EQ(cfg.wave.c0, wave_speed(0.5));
    ASSERT_TRUE(cfg.k1.has_value());
    EXPECT_EQ(*cfg.k1, 0.0);
    EXPECT_EQ(cfg.gap, 1e-3);
}

TEST(Config, FileParsingAndOverrides) {
    std::istringstream text("# comment\n delta = 0.25  # trailing\ngamma=0.1\n\nk1 = aligned\n");
    const auto kv = parse_config_text(text);
    const auto cfg = resolve_config(kv, {{"gamma", "-0.2"}});
    EXPECT_EQ(cfg.wave.delta, 0.25);
    EXPECT_EQ(cfg.wave.gamma, -0.2);
    EXPECT_FALSE(cfg.k1.has_value());
    EXPECT_EQ(cfg.path_params().k1, -0.25);

    std::istringstream bad("nonsense = 3\n");
    EXPECT_THROW(parse_config_text(bad), UsageError);
    EXPECT_THROW(resolve_config({}, {{"delta", "abc"}}), UsageError);
    EXPECT_THROW(resolve_config({}, {{"delta", "-1"}}), UsageError);
    EXPECT_THROW(resolve_config({}, {{"frame", "polar"}}), UsageError);
}

TEST(CmdField, SinglePointOnBed) {
    const auto out = cmd_field(config({{"nx", "1"}, {"nz", "1"}, {"nt", "1"}, {"x_min", "0"}, {"z_min", "0"}}));
    ASSERT_EQ(out.table.rows.size(), 1u);
    EXPECT_EQ(out.table.rows[0][out.table.column("v")], 0.0);
    const std::string text = csv_text(out.table);
    EXPECT_NE(text.find("\nt,x,z,eta,u,v,p\n"), std::string::npos);
}

TEST(CmdField, RowsMatchLibraryInOrder) {
    const auto cfg = config({{"nx", "3"}, {"nz", "2"}, {"nt", "2"}, {"t_max", "1.5"}, {"gamma", "0.3"}});
    const auto out = cmd_field(cfg);
    ASSERT_EQ(out.table.rows.size(), 12u);
    std::size_t r = 0;
    for (std::size_t it = 0; it < 2; ++it)
        for (std::size_t ix = 0; ix < 3; ++ix)
            for (std::size_t iz = 0; iz < 2; ++iz, ++r) {
                const auto s = field(cfg.field_grid.x.at(ix), cfg.field_grid.z.at(iz),
                                     cfg.field_grid.t.at(it), cfg.wave);
                const auto& row = out.table.rows[r];
                EXPECT_EQ(row[0], s.t);
                EXPECT_EQ(row[1], s.x);
                EXPECT_EQ(row[2], s.z);
                EXPECT_EQ(row[4], s.u);
                EXPECT_EQ(row[5], s.v);
                EXPECT_EQ(row[6], s.p);
            }
}

TEST(Formats, CsvAndJsonCarryTheSamePayload) {
    const auto out = cmd_field(config({{"nx", "4"}, {"nz", "3"}, {"gamma", "0.17"}}));
    std::istringstream csv(csv_text(out.table));
    const Table parsed = read_csv(csv);
    EXPECT_EQ(parsed.columns, out.table.columns);
    EXPECT_EQ(parsed.meta, out.table.meta);

    std::ostringstream js;
    write_json(js, out.table);
    const auto doc = Json::parse(js.str());
    ASSERT_EQ(doc["rows"].size(), out.table.rows.size());
    for (std::size_t i = 0; i < out.table.rows.size(); ++i) {
        const auto& obj = doc["rows"][i];
        ASSERT_EQ(obj.size(), out.table.columns.size());
        for (std::size_t j = 0; j < out.table.columns.size(); ++j) {
            EXPECT_EQ(obj[out.table.columns[j]].get<double>(), out.table.rows[i][j]);
            EXPECT_EQ(parsed.rows[i][j], out.table.rows[i][j]);
        }
    }
}

TEST(Formats, ShortestRoundTripNumbers) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
        EXPECT_EQ(parse_number(format_number(v)), v);
    }
    EXPECT_EQ(format_number(0.1), "0.1");
}

TEST(CmdSimulate, BedIsInvariant) {
    const auto out = cmd_simulate(config({{"z0", "0"}, {"x0", "0.2"}, {"t0", "0"}, {"t_end", "3"}}));
    EXPECT_EQ(out.table.meta["termination"], "reached_end");
    for (const auto& row : out.table.rows) EXPECT_EQ(row[2], 0.0);
}

TEST(CmdSimulate, MatchesAnalyticPath) {
    const KeyValues common{{"k1", "aligned"}};
    auto sim_kv = common;
    sim_kv.insert({{"start", "analytic"}, {"t0", "0.5"}, {"t_end", "5"}, {"samples", "10"}});
    auto ana_kv = common;
    ana_kv.insert({{"gap", "0.5"}, {"t_window", "5"}, {"n", "10"}, {"spacing", "uniform"}});
    const auto sim = cmd_simulate(config(sim_kv)).table;
    const auto ana = cmd_analytic(config(ana_kv)).table;
    ASSERT_EQ(sim.rows.size(), 10u);
    ASSERT_EQ(ana.rows.size(), 20u);
    for (std::size_t i = 0; i < 10; ++i) {
        const auto& s = sim.rows[i];
        const auto& a = ana.rows[10 + i];
        EXPECT_NEAR(s[0], a[0], 1e-12);
        EXPECT_NEAR(s[1], a[1], 1e-6);
        EXPECT_NEAR(s[2], a[2], 1e-6);
    }
}

TEST(CmdSimulate, FramedCoordinatesAndBackwardWindow) {
    const auto out = cmd_simulate(config({{"frame", "framed"}, {"t0", "2"}, {"t_end", "-1"}, {"z0", "0.2"},
                                          {"gamma", "0.2"}, {"c0", "0"}}));
    EXPECT_EQ(out.table.columns, (std::vector<std::string>{"t", "X", "Z"}));
    for (std::size_t i = 1; i < out.table.rows.size(); ++i) {
        EXPECT_LT(out.table.rows[i][0], out.table.rows[i - 1][0]);
    }
    EXPECT_EQ(out.table.rows.back()[0], -1.0);
    EXPECT_NE(csv_text(out.table).find("# termination: \"reached_end\""), std::string::npos);
}

TEST(CmdSimulate, BlowUpIsRecordedNotFatal) {
    // Backwards along the path, through its vertical asymptote at t = 0.
    const auto out = cmd_simulate(config({{"start", "analytic"}, {"k1", "aligned"}, {"t0", "1"}, {"t_end", "-1"}}));
    EXPECT_NE(out.table.meta["termination"], "reached_end");
    EXPECT_GT(out.table.rows.back()[0], -1.0);
    const double cap = 50.0 / (two_pi * 0.5);
    for (const auto& row : out.table.rows) EXPECT_LE(row[2], cap);
}

TEST(CmdAnalytic, SymmetricPositiveSamples) {
    const auto out = cmd_analytic(config());
    ASSERT_EQ(out.table.rows.size(), 400u);
    for (std::size_t i = 0; i < 200; ++i) {
        const auto& neg = out.table.rows[i];
        const auto& pos = out.table.rows[399 - i];
        EXPECT_EQ(neg[0], -pos[0]);
        EXPECT_GT(neg[2], 0.0);
        EXPECT_EQ(neg[2], pos[2]);
    }
    EXPECT_EQ(out.table.rows[199][0], -1e-3);
    EXPECT_EQ(out.table.rows[200][0], 1e-3);
    ASSERT_TRUE(out.svg.has_value());
    EXPECT_NE(out.svg->find("id=\"vertical-asymptote\""), std::string::npos);
}

TEST(CmdAnalytic, RejectsWindowThroughOrigin) {
    EXPECT_THROW(cmd_analytic(config({{"gap", "0"}})), UsageError);
    EXPECT_THROW(cmd_analytic(config({{"gap", "6"}, {"t_window", "5"}})), UsageError);
}

TEST(CmdAnalytic, ResidualColumnsFollowTheLaw) {
    const auto cfg = config({{"residuals", "true"}, {"k1", "aligned"}, {"gamma", "0.3"}, {"c0", "0.1"}, {"gap", "0.1"}});
    const auto out = cmd_analytic(cfg);
    const auto ih = out.table.column("r_horizontal");
    const auto iv = out.table.column("r_vertical");
    for (const auto& row : out.table.rows) {
        EXPECT_NEAR(row[ih], 0.3 * row[2] + 0.1 - cfg.wave.speed(), 1e-12);
        EXPECT_LE(std::abs(row[iv]), 1e-10);
    }
}

TEST(CmdPhase, SpecialRowsAndColumns) {
    const double half_pi = std::numbers::pi / 2;
    const auto cfg = config({{"phase_x_min", format_number(-half_pi)}, {"phase_x_max", format_number(half_pi)},
                             {"phase_nx", "3"}, {"phase_nz", "6"}, {"gamma", "0.4"}, {"c0", "0.2"}});
    const auto out = cmd_phase(cfg);
    ASSERT_EQ(out.table.rows.size(), 18u);
    const auto k = derived_constants(cfg.wave);
    for (const auto& row : out.table.rows) {
        if (row[1] == 0.0) {
            EXPECT_EQ(row[3], 0.0);
        }
        if (row[0] == half_pi) {
            EXPECT_NEAR(row[2], k.Omega0 * row[1] + two_pi * (cfg.wave.c0 - cfg.wave.speed()), 1e-13);
        }
    }
    const auto comoving = cmd_phase(config({{"phase_x_min", format_number(-half_pi)},
                                            {"phase_x_max", format_number(half_pi)}, {"phase_nx", "3"}}));
    for (const auto& row : comoving.table.rows) {
        if (row[0] == half_pi) {
            EXPECT_NEAR(row[2], 0.0, 1e-13);
        }
    }
    EXPECT_NE(out.svg->find("class=\"arrow\""), std::string::npos);
}

TEST(CmdPeakon, CamassaHolmProfile) {
    const auto out = cmd_peakon(config());
    ASSERT_EQ(out.table.rows.size(), 201u);
    EXPECT_EQ(out.table.rows[100][0], 0.0);
    EXPECT_EQ(out.table.rows[100][1], 1.0);
    EXPECT_EQ(out.table.rows[100][4], 1.0);
    EXPECT_EQ(out.table.rows[100][5], -1.0);
    for (std::size_t i = 0; i < 201; ++i) {
        EXPECT_NEAR(out.table.rows[i][1], out.table.rows[200 - i][1], 1e-15);
    }
    EXPECT_EQ(out.table.meta["ux_jump"]["jump"], -2.0);
    EXPECT_EQ(out.table.meta["momentum_atoms"][0]["coefficient"], 2.0);
}

TEST(CmdPeakon, ShockPeakonJumpMetadata) {
    const auto out = cmd_peakon(config({{"kind", "dp"}, {"peakon_c", "0.6"}, {"peakon_k", "2"}, {"peakon_t", "1"}}));
    EXPECT_EQ(out.table.meta["u_jump"]["average"], 0.6);
    EXPECT_NEAR(out.table.meta["u_jump"]["jump"].get<double>(), -2.0 / 3.0, 1e-15);
    EXPECT_THROW(cmd_peakon(config({{"kind", "dp"}, {"peakon_t", "-2"}})), DomainError);
}

TEST(CmdVerify, DefaultPassesAndPerturbationFails) {
    const auto ok = cmd_verify(config(), "all");
    EXPECT_TRUE(ok.passed) << ok.report.dump(2);
    EXPECT_EQ(ok.report["suites"].size(), verify::suite_names().size());

    const auto bad = cmd_verify(config({{"perturb_speed", "1e-3"}}), "all");
    EXPECT_FALSE(bad.passed);
    ASSERT_FALSE(bad.failures.empty());
    EXPECT_EQ(bad.failures.front().rfind("linear:", 0), 0u);

    const auto only = cmd_verify(config(), "peakons");
    ASSERT_EQ(only.report["suites"].size(), 1u);
    EXPECT_EQ(only.report["suites"][0]["name"], "peakons");
    EXPECT_THROW(cmd_verify(config(), "nope"), UsageError);
}

TEST(Reproducibility, IdenticalConfigsGiveIdenticalBytes) {
    const auto cfg = config({{"start", "analytic"}, {"k1", "aligned"}});
    EXPECT_EQ(csv_text(cmd_simulate(cfg).table), csv_text(cmd_simulate(cfg).table));
    EXPECT_EQ(*cmd_analytic(cfg).svg, *cmd_analytic(cfg).svg);
}

TEST(Binary, ExitCodes) {
    const auto out = scratch("verify.json");
    EXPECT_EQ(run_cli("verify --out " + out.string()), 0);
    EXPECT_TRUE(Json::parse(slurp(out))["passed"].get<bool>());
    EXPECT_EQ(run_cli("verify --suite linear --perturb_speed 1e-3"), 1);
    EXPECT_EQ(run_cli("field --set bogus=1"), 2);
    EXPECT_EQ(run_cli("analytic --gap 0"), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    EXPECT_EQ(run_cli("field --out /nonexistent-dir/x.csv"), 3);
    EXPECT_EQ(run_cli("field --config /nonexistent-dir/x.cfg"), 3);
}

TEST(Binary, ConfigFileAndOutputs) {
    const auto cfg = scratch("scenario.cfg");
    std::ofstream(cfg) << "delta = 0.3\nnx = 2\nnz = 2\n";
    const auto csv = scratch("field.csv");
    const auto json = scratch("field.json");
    ASSERT_EQ(run_cli("field --config " + cfg.string() + " --out " + csv.string()), 0);
    ASSERT_EQ(run_cli("field --config " + cfg.string() + " --format json --out " + json.string()), 0);
    std::ifstream in(csv);
    const auto table = read_csv(in);
    EXPECT_EQ(table.rows.size(), 4u);
    EXPECT_EQ(table.meta["parameters"]["delta"], 0.3);
    const auto doc = Json::parse(slurp(json));
    EXPECT_EQ(doc["rows"].size(), 4u);
    EXPECT_EQ(doc["rows"][3]["u"].get<double>(), table.rows[3][4]);

    const auto svg = scratch("path.svg");
    ASSERT_EQ(run_cli("analytic --out " + scratch("path.csv").string() + " --svg " + svg.string()), 0);
    EXPECT_EQ(slurp(svg).rfind("<?xml", 0), 0u);
}

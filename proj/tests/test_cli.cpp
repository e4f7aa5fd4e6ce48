// SPDX-License-Identifier: Apache-2.0
//
// riscov: coverage and energy-efficiency analysis of RIS-assisted mmWave networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

using namespace riscov;

namespace
{
struct CliRun
{
    int code = -1;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "riscov_cli");
    std::vector<char const*> argv;
    for (auto const& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp_file(std::string const& name, std::string const& body)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}
}  // namespace

TEST(SweepTable, CsvLayout)
{
    SweepTable t;
    t.rows.push_back({"n_ris", 64, "P1", "analytic", 0.25, {}, {}, {}});
    t.rows.push_back({"n_ris", 32, "P1", "montecarlo", 0.1, 0.05, 0.15, {}});
    t.rows.push_back({"n_ris", 32, "P1", "analytic", 1.0 / 3.0, {}, {}, {}});
    t.sort();
    EXPECT_EQ(t.to_csv(),
              "sweep_param,sweep_value,metric,engine,value,ci_low,ci_high\n"
              "n_ris,32,P1,analytic,0.3333333333333333,,\n"
              "n_ris,64,P1,analytic,0.25,,\n"
              "n_ris,32,P1,montecarlo,0.1,0.05,0.15\n");
    const std::string jl = t.to_jsonl();
    const auto first = nlohmann::json::parse(jl.substr(0, jl.find('\n')));
    EXPECT_EQ(first["sweep_value"], 32);
    EXPECT_TRUE(first["ci_low"].is_null());
    EXPECT_EQ(t.select("P1", "montecarlo").size(), 1u);
}

TEST(SweepTable, NumberFormatting)
{
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(-10), "-10");
    EXPECT_EQ(format_number(1e-20), "1e-20");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(fixed(0.5, 3), "0.500");
}

TEST(SweepTable, Names)
{
    EXPECT_EQ(parse_sweep_kind("ris-density-tradeoff"), SweepKind::RisDensityTradeoff);
    EXPECT_FALSE(parse_sweep_kind("ris-density"));
    EXPECT_EQ(parse_metric("ASE"), Metric::Ase);
    EXPECT_FALSE(parse_metric("p1"));
    EXPECT_EQ(default_grid(SweepKind::SinrThreshold).size(), 21u);
}

TEST(Sweep, RisSizeRowsAreSortedAndComplete)
{
    SweepOptions o;
    o.metrics = {Metric::P1, Metric::Pt};
    o.grid = {32, 128};
    const SweepTable t = run_sweep(SweepKind::RisSize, NetworkConfig{}, o);
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(t.rows[0].metric, "P1");
    EXPECT_EQ(t.rows[0].sweep_value, 32.0);
    EXPECT_EQ(t.rows[1].sweep_value, 128.0);
    EXPECT_EQ(t.rows[2].metric, "Pt");
    for (auto const& r : t.rows)
    {
        EXPECT_EQ(r.engine, "analytic");
        EXPECT_EQ(r.sweep_param, "n_ris");
    }
    EXPECT_LE(t.rows[0].value, t.rows[1].value);
    EXPECT_EQ(t.rows[2].value, t.rows[3].value);
}

TEST(Cli, GainsDump)
{
    const CliRun r = run_cli({"gains"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["m_bs_dl"].get<double>(), 1.3274787964370067, 1e-12);
    EXPECT_EQ(j["reflected_idle"].get<double>(), 128.0 * j["m_bs_rl"].get<double>() * j["m_u_rl"].get<double>());
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"gains", "--engine", "magic"}).code, 2);
    EXPECT_EQ(run_cli({"gains", "--config", "/nonexistent/x.json"}).code, 2);
    EXPECT_EQ(run_cli({"gains", "--config", temp_file("riscov_bad.json", "{\"beta\": ")}).code, 1);
    EXPECT_EQ(run_cli({"gains", "--config", temp_file("riscov_neg.json", "{\"beta\": -1}")}).code, 1);
    EXPECT_EQ(run_cli({"gains", "--out", "/nonexistent/dir/out.json"}).code, 2);
    EXPECT_EQ(run_cli({"sweep", "--kind", "ris-size", "--metrics", "P7"}).code, 2);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, CoverageWithConfig)
{
    const std::string cfg = temp_file("riscov_nor.json", "{\"lambda_ris\": 0}");
    const CliRun a = run_cli({"coverage", "--config", cfg});
    ASSERT_EQ(a.code, 0) << a.err;
    const CliRun b = run_cli({"coverage", "--config", cfg, "--direct"});
    ASSERT_EQ(b.code, 0) << b.err;
    const auto ja = nlohmann::json::parse(a.out);
    const auto jb = nlohmann::json::parse(b.out);
    EXPECT_NEAR(ja["total"].get<double>(), jb["total"].get<double>(), 1e-12);
    EXPECT_EQ(ja["engine"], "analytic");
}

TEST(Cli, MonteCarloCoverageIsReproducible)
{
    const std::vector<std::string> args{"coverage", "--engine", "montecarlo", "--trials", "200", "--seed", "4"};
    const CliRun a = run_cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, run_cli(args).out);
    const auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["trials"], 200);
    EXPECT_LE(j["ci_low"].get<double>(), j["total"].get<double>());
}

TEST(Cli, SweepWritesFile)
{
    const auto path = (std::filesystem::temp_directory_path() / "riscov_sweep.jsonl").string();
    const CliRun r = run_cli({"sweep", "--kind", "ris-size", "--metrics", "Pd", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    std::string line;
    int rows = 0;
    while (std::getline(in, line))
    {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["metric"], "Pd");
        ++rows;
    }
    EXPECT_EQ(rows, 4);
}

TEST(Cli, ValidateWithoutTrialsSkipsSimulation)
{
    const CliRun r = run_cli({"validate", "--trials", "0", "--deployments", "0"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("[SKIP] 1 "), std::string::npos);
    EXPECT_NE(r.out.find("[PASS] 6 "), std::string::npos);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
}

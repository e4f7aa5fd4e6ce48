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

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <riscov/riscov.hpp>

namespace riscov::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_validation = 1,
    exit_usage = 2,
};

struct Common
{
    std::string config;
    std::uint64_t seed = 1;
    std::string engine = "analytic";
    std::string out = "-";
    long trials = 10000;
    double radius = 0.0;
};

inline void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--config", c.config, "JSON configuration file (defaults when omitted)");
    sub->add_option("--seed", c.seed, "Monte Carlo seed");
    sub->add_option("--engine", c.engine, "analytic, small-beta, montecarlo or both")
        ->check(CLI::IsMember({"analytic", "small-beta", "montecarlo", "both"}));
    sub->add_option("--out", c.out, "output path, - for stdout");
    sub->add_option("--trials", c.trials, "Monte Carlo realizations")->check(CLI::NonNegativeNumber);
    sub->add_option("--radius", c.radius, "Monte Carlo disk radius in m (0: 5 / sqrt(pi lambda_BS))")
        ->check(CLI::NonNegativeNumber);
}

inline NetworkConfig load(Common const& c)
{
    return c.config.empty() ? load_config("") : load_config_file(c.config);
}

inline void write_output(std::string const& path, std::string const& text, std::ostream& out)
{
    if (path.empty() || path == "-")
    {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigIoError("cannot open output file: " + path);
    f << text;
    if (!f)
        throw ConfigIoError("write failed: " + path);
}

inline nlohmann::ordered_json coverage_json(CoverageResult const& r)
{
    nlohmann::ordered_json j;
    j["engine"] = to_string(r.engine);
    j["total"] = r.total;
    nlohmann::ordered_json cases;
    for (LinkKind b : {LinkKind::Los, LinkKind::Nlos})
        for (LinkKind q : {LinkKind::Los, LinkKind::Nlos})
            cases[std::string(to_string(b)) + to_string(q)] = r.by_case[index(b)][index(q)];
    cases["L-"] = r.no_ris[0];
    cases["N-"] = r.no_ris[1];
    j["by_case"] = cases;
    if (r.engine == Engine::MonteCarlo)
    {
        j["trials"] = r.trials;
        j["ci_low"] = r.ci_low;
        j["ci_high"] = r.ci_high;
    }
    else
    {
        j["quad"] = {{"q1", r.quad.q1}, {"q2", r.quad.q2}, {"q3", r.quad.q3}, {"w_alzer", r.quad.w_alzer},
                     {"tolerance", r.quad.tolerance}};
        j["clamped"] = r.clamped;
    }
    return j;
}

/// Runs the command line; returns the process exit code.
inline int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"riscov: coverage, ASE and energy efficiency of RIS-assisted mmWave networks"};
    app.require_subcommand(1);

    Common c_sweep, c_cov, c_ase, c_ee, c_val, c_gains;

    auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV or JSON lines");
    add_common(sweep, c_sweep);
    std::string kind;
    std::string metrics = "P1,P2,Pd,Pt";
    std::string format;
    double sweep_threshold_db = 0.0;
    sweep->add_option("--kind", kind, "sinr-threshold, bs-density, ris-density-fixed-bs, ris-density-tradeoff, ris-size")
        ->required();
    sweep->add_option("--metrics", metrics, "comma-separated subset of P1,P2,Pd,Pt,ASE,EE");
    sweep->add_option("--format", format, "csv or jsonl (default from the output extension)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sweep->add_option("--threshold-db", sweep_threshold_db, "SINR threshold for density and size sweeps");

    double cov_threshold_db = 0.0;
    auto* coverage = app.add_subcommand("coverage", "coverage probability at one threshold");
    add_common(coverage, c_cov);
    coverage->add_option("--threshold-db", cov_threshold_db, "SINR threshold in dB");
    bool cov_direct = false;
    coverage->add_flag("--direct", cov_direct, "direct link only");

    double ase_threshold_db = 0.0;
    auto* ase_cmd = app.add_subcommand("ase", "area spectral efficiency");
    add_common(ase_cmd, c_ase);
    ase_cmd->add_option("--threshold-db", ase_threshold_db, "SINR threshold in dB");

    double ee_threshold_db = 0.0;
    auto* ee_cmd = app.add_subcommand("ee", "energy efficiency");
    add_common(ee_cmd, c_ee);
    ee_cmd->add_option("--threshold-db", ee_threshold_db, "SINR threshold in dB");

    auto* validate = app.add_subcommand("validate", "cross-engine and property checks");
    add_common(validate, c_val);
    long deployments = 100000;
    validate->add_option("--deployments", deployments, "deployments for the association check")
        ->check(CLI::NonNegativeNumber);

    auto* gains = app.add_subcommand("gains", "average beam gains");
    add_common(gains, c_gains);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        std::ostringstream o;
        std::ostringstream e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (sweep->parsed())
        {
            const NetworkConfig cfg = load(c_sweep);
            const auto k = parse_sweep_kind(kind);
            if (!k)
            {
                err << "unknown sweep kind: " << kind << '\n';
                return exit_usage;
            }
            SweepOptions so;
            so.metrics.clear();
            std::stringstream ms(metrics);
            for (std::string m; std::getline(ms, m, ',');)
            {
                const auto mm = parse_metric(m);
                if (!mm)
                {
                    err << "unknown metric: " << m << '\n';
                    return exit_usage;
                }
                so.metrics.push_back(*mm);
            }
            so.analytic = c_sweep.engine == "analytic" || c_sweep.engine == "both";
            so.montecarlo = c_sweep.engine == "montecarlo" || c_sweep.engine == "both";
            if (c_sweep.engine == "small-beta")
            {
                err << "sweep supports the analytic and montecarlo engines\n";
                return exit_usage;
            }
            so.trials = c_sweep.trials;
            so.seed = c_sweep.seed;
            so.mc.radius = c_sweep.radius;
            so.threshold_db = sweep_threshold_db;
            const SweepTable table = run_sweep(*k, cfg, so);
            std::string fmt = format;
            if (fmt.empty())
                fmt = c_sweep.out.size() > 6 && c_sweep.out.ends_with(".jsonl") ? "jsonl" : "csv";
            write_output(c_sweep.out, fmt == "csv" ? table.to_csv() : table.to_jsonl(), out);
            return exit_ok;
        }
        if (coverage->parsed())
        {
            const NetworkConfig cfg = load(c_cov);
            const double t = db_to_linear(cov_threshold_db);
            CoverageResult r;
            if (c_cov.engine == "montecarlo")
            {
                McOptions mc;
                mc.radius = c_cov.radius;
                if (c_cov.trials < 1)
                {
                    err << "montecarlo coverage needs --trials >= 1\n";
                    return exit_usage;
                }
                r = coverage_from_samples(simulate(cfg, c_cov.trials, c_cov.seed, mc), t, cov_direct);
            }
            else if (c_cov.engine == "small-beta")
                r = coverage_small_beta(t, cfg);
            else if (c_cov.engine == "analytic")
                r = cov_direct ? coverage_direct(t, cfg) : coverage_theorem1(t, cfg);
            else
            {
                err << "coverage takes a single engine\n";
                return exit_usage;
            }
            nlohmann::ordered_json j = coverage_json(r);
            j["threshold_db"] = cov_threshold_db;
            write_output(c_cov.out, j.dump(2) + '\n', out);
            return exit_ok;
        }
        if (ase_cmd->parsed() || ee_cmd->parsed())
        {
            Common const& c = ase_cmd->parsed() ? c_ase : c_ee;
            const double db = ase_cmd->parsed() ? ase_threshold_db : ee_threshold_db;
            const NetworkConfig cfg = load(c);
            const double t = db_to_linear(db);
            EfficiencyResult e;
            if (c.engine == "analytic")
                e = energy_efficiency(t, cfg);
            else if (c.engine == "montecarlo")
            {
                McOptions mc;
                mc.radius = c.radius;
                const auto samples = simulate(cfg, std::max(c.trials, 1L), c.seed, mc);
                e.p_active_bs = active_prob_bs(cfg);
                e.p_active_ris = cfg.lambda_ris > 0.0 ? active_prob_ris(cfg) : 0.0;
                e.pd = coverage_from_samples(samples, t, true).total;
                e.p1 = cfg.lambda_ris > 0.0 ? coverage_from_samples(samples, t).total : e.pd;
                e.ase = ase_from_parts(cfg.lambda_bs * e.p_active_bs, cfg.lambda_ris * e.p_active_ris, e.p1, e.pd, t);
                e.power_density = power_density(cfg, e.p_active_bs, e.p_active_ris);
                e.ee = e.power_density > 0.0 ? e.ase / e.power_density : 0.0;
            }
            else
            {
                err << "ase/ee support the analytic and montecarlo engines\n";
                return exit_usage;
            }
            nlohmann::ordered_json j;
            j["engine"] = c.engine;
            j["threshold_db"] = db;
            j["ase"] = e.ase;
            j["power_density"] = e.power_density;
            j["ee"] = e.ee;
            j["p1"] = e.p1;
            j["pd"] = e.pd;
            j["p_active_bs"] = e.p_active_bs;
            j["p_active_ris"] = e.p_active_ris;
            write_output(c.out, j.dump(2) + '\n', out);
            return exit_ok;
        }
        if (validate->parsed())
        {
            const NetworkConfig cfg = load(c_val);
            ValidationOptions vo;
            vo.trials = c_val.trials;
            vo.association_deployments = deployments;
            vo.seed = c_val.seed;
            if (c_val.radius > 0.0)
                vo.coverage_radius = c_val.radius;
            const ValidationReport rep = run_validation(cfg, vo);
            write_output(c_val.out, rep.to_text(), out);
            for (auto const& ck : rep.checks)
                if (ck.skipped)
                    err << "warning: criterion " << ck.criterion << " skipped (zero trial budget)\n";
            return rep.passed() ? exit_ok : exit_validation;
        }
        if (gains->parsed())
        {
            const NetworkConfig cfg = load(c_gains);
            const AverageGains g = average_gains(cfg);
            nlohmann::ordered_json j;
            j["m_bs_dl"] = g.m_bs_dl;
            j["m_u_dl"] = g.m_u_dl;
            j["m_bs_rl"] = g.m_bs_rl;
            j["m_u_rl"] = g.m_u_rl;
            j["m_r_rl"] = g.m_r_rl;
            j["m_r_rl_idle"] = g.m_r_rl_idle;
            j["direct"] = g.direct();
            j["reflected_active"] = g.reflected_active(cfg.n_ris);
            j["reflected_idle"] = g.reflected_idle();
            write_output(c_gains.out, j.dump(2) + '\n', out);
            return exit_ok;
        }
    }
    catch (ConfigIoError const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (ConfigError const& e)
    {
        err << "invalid config: " << e.what() << '\n';
        return exit_validation;
    }
    catch (ConfigParseError const& e)
    {
        err << "invalid config: " << e.what() << '\n';
        return exit_validation;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace riscov::cli

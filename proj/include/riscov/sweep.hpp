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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "analytics.hpp"
#include "config.hpp"
#include "montecarlo.hpp"

namespace riscov
{

enum class SweepKind
{
    SinrThreshold,
    BsDensity,
    RisDensityFixedBs,
    RisDensityTradeoff,
    RisSize,
};

inline char const* to_string(SweepKind k)
{
    switch (k)
    {
    case SweepKind::SinrThreshold:
        return "sinr-threshold";
    case SweepKind::BsDensity:
        return "bs-density";
    case SweepKind::RisDensityFixedBs:
        return "ris-density-fixed-bs";
    case SweepKind::RisDensityTradeoff:
        return "ris-density-tradeoff";
    case SweepKind::RisSize:
        return "ris-size";
    }
    return "unknown";
}

inline std::optional<SweepKind> parse_sweep_kind(std::string_view s)
{
    for (auto k : {SweepKind::SinrThreshold, SweepKind::BsDensity, SweepKind::RisDensityFixedBs,
                   SweepKind::RisDensityTradeoff, SweepKind::RisSize})
        if (s == to_string(k))
            return k;
    return std::nullopt;
}

/// Name of the swept quantity as written in the sweep_param column.
inline char const* sweep_param_name(SweepKind k)
{
    switch (k)
    {
    case SweepKind::SinrThreshold:
        return "threshold_db";
    case SweepKind::BsDensity:
        return "lambda_bs_units";
    case SweepKind::RisDensityFixedBs:
    case SweepKind::RisDensityTradeoff:
        return "lambda_ris_units";
    case SweepKind::RisSize:
        return "n_ris";
    }
    return "value";
}

enum class Metric
{
    P1,
    P2,
    Pd,
    Pt,
    Ase,
    Ee,
};

inline char const* to_string(Metric m)
{
    switch (m)
    {
    case Metric::P1:
        return "P1";
    case Metric::P2:
        return "P2";
    case Metric::Pd:
        return "Pd";
    case Metric::Pt:
        return "Pt";
    case Metric::Ase:
        return "ASE";
    case Metric::Ee:
        return "EE";
    }
    return "unknown";
}

inline std::optional<Metric> parse_metric(std::string_view s)
{
    for (auto m : {Metric::P1, Metric::P2, Metric::Pd, Metric::Pt, Metric::Ase, Metric::Ee})
        if (s == to_string(m))
            return m;
    return std::nullopt;
}

struct SweepRow
{
    std::string sweep_param;
    double sweep_value = 0.0;
    std::string metric;
    std::string engine;
    double value = 0.0;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    /// Error text when the point failed; value is then NaN.
    std::string note;
};

/// Shortest round-trip decimal form; locale independent.
inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

struct SweepTable
{
    std::vector<SweepRow> rows;

    /// Orders rows by (metric, engine, sweep_value).
    void sort()
    {
        std::stable_sort(rows.begin(), rows.end(), [](SweepRow const& a, SweepRow const& b) {
            if (a.metric != b.metric)
                return a.metric < b.metric;
            if (a.engine != b.engine)
                return a.engine < b.engine;
            return a.sweep_value < b.sweep_value;
        });
    }

    std::vector<SweepRow> select(std::string_view metric, std::string_view engine) const
    {
        std::vector<SweepRow> out;
        for (auto const& r : rows)
            if (r.metric == metric && r.engine == engine)
                out.push_back(r);
        return out;
    }

    std::string to_csv() const
    {
        std::string out = "sweep_param,sweep_value,metric,engine,value,ci_low,ci_high\n";
        for (auto const& r : rows)
        {
            out += r.sweep_param + ',' + format_number(r.sweep_value) + ',' + r.metric + ',' + r.engine + ','
                   + format_number(r.value) + ',' + (r.ci_low ? format_number(*r.ci_low) : "") + ','
                   + (r.ci_high ? format_number(*r.ci_high) : "") + '\n';
        }
        return out;
    }

    std::string to_jsonl() const
    {
        std::string out;
        for (auto const& r : rows)
        {
            nlohmann::ordered_json j;
            j["sweep_param"] = r.sweep_param;
            j["sweep_value"] = r.sweep_value;
            j["metric"] = r.metric;
            j["engine"] = r.engine;
            j["value"] = std::isfinite(r.value) ? nlohmann::ordered_json(r.value) : nlohmann::ordered_json(nullptr);
            j["ci_low"] = r.ci_low ? nlohmann::ordered_json(*r.ci_low) : nlohmann::ordered_json(nullptr);
            j["ci_high"] = r.ci_high ? nlohmann::ordered_json(*r.ci_high) : nlohmann::ordered_json(nullptr);
            if (!r.note.empty())
                j["note"] = r.note;
            out += j.dump() + '\n';
        }
        return out;
    }
};

struct SweepOptions
{
    std::vector<Metric> metrics{Metric::P1, Metric::P2, Metric::Pd, Metric::Pt};
    bool analytic = true;
    bool montecarlo = false;
    long trials = 10000;
    std::uint64_t seed = 1;
    McOptions mc{};
    QuadratureSpec quad{};
    AnalyticOptions analytic_options{};
    /// SINR threshold for every sweep except sinr-threshold.
    double threshold_db = 0.0;
    /// Grid override; empty selects the default grid of the sweep.
    std::vector<double> grid;
    /// Blockage parameters of the tradeoff sweep.
    std::vector<double> tradeoff_betas{0.005, 0.01};
    /// Grid points evaluated concurrently; 0 uses the hardware concurrency.
    unsigned workers = 0;
};

inline std::vector<double> default_grid(SweepKind k)
{
    switch (k)
    {
    case SweepKind::SinrThreshold:
    {
        std::vector<double> g;
        for (int db = -10; db <= 30; db += 2)
            g.push_back(db);
        return g;
    }
    case SweepKind::BsDensity:
        return {1, 2, 5, 10, 20, 50, 100, 200};
    case SweepKind::RisDensityFixedBs:
        return {2, 5, 10, 20, 40, 60, 80, 100};
    case SweepKind::RisDensityTradeoff:
        return {10, 20, 30, 40, 50, 60, 70, 80, 90};
    case SweepKind::RisSize:
        return {32, 64, 128, 256};
    }
    return {};
}

namespace detail
{
struct SweepPoint
{
    double value = 0.0;
    NetworkConfig cfg;
    std::string suffix;  // appended to metric names, e.g. "[beta=0.01]"
};

inline void evaluate_point(SweepPoint const& pt, SweepKind kind, SweepOptions const& opts, std::vector<SweepRow>& out)
{
    const char* param = sweep_param_name(kind);
    auto has = [&](Metric m) { return std::find(opts.metrics.begin(), opts.metrics.end(), m) != opts.metrics.end(); };
    std::vector<double> thresholds;
    if (kind == SweepKind::SinrThreshold)
        thresholds.push_back(db_to_linear(pt.value));
    else
        thresholds.push_back(db_to_linear(opts.threshold_db));
    const double t = thresholds.front();

    auto emit = [&](Metric m, Engine e, double v, std::optional<double> lo = {}, std::optional<double> hi = {},
                    std::string note = {}) {
        out.push_back({param, pt.value, std::string(to_string(m)) + pt.suffix, to_string(e), v, lo, hi, note});
    };
    auto fail = [&](Metric m, Engine e, std::exception const& ex) {
        emit(m, e, std::numeric_limits<double>::quiet_NaN(), {}, {}, ex.what());
    };

    NetworkConfig s1 = pt.cfg;
    s1.antenna_scheme = AntennaScheme::Scheme1;
    NetworkConfig s2 = pt.cfg;
    s2.antenna_scheme = AntennaScheme::Scheme2;
    NetworkConfig trad = pt.cfg;
    trad.lambda_ris = 0.0;
    trad.antenna_scheme = AntennaScheme::Scheme1;

    if (opts.analytic)
    {
        const bool need1 = has(Metric::P1) || has(Metric::Pd) || has(Metric::Ase) || has(Metric::Ee);
        if (need1)
        {
            try
            {
                const CoverageEngine eng(s1, opts.quad, opts.analytic_options);
                if (has(Metric::P1))
                    emit(Metric::P1, Engine::Analytic, eng.coverage(t).total);
                if (has(Metric::Pd))
                    emit(Metric::Pd, Engine::Analytic, eng.coverage_direct(t).total);
                if (has(Metric::Ase) || has(Metric::Ee))
                {
                    const EfficiencyResult eff = efficiency(t, eng);
                    if (has(Metric::Ase))
                        emit(Metric::Ase, Engine::Analytic, eff.ase);
                    if (has(Metric::Ee))
                        emit(Metric::Ee, Engine::Analytic, eff.ee);
                }
            }
            catch (std::exception const& ex)
            {
                for (Metric m : {Metric::P1, Metric::Pd, Metric::Ase, Metric::Ee})
                    if (has(m))
                        fail(m, Engine::Analytic, ex);
            }
        }
        if (has(Metric::P2))
        {
            try
            {
                emit(Metric::P2, Engine::Analytic,
                     CoverageEngine(s2, opts.quad, opts.analytic_options).coverage(t).total);
            }
            catch (std::exception const& ex)
            {
                fail(Metric::P2, Engine::Analytic, ex);
            }
        }
        if (has(Metric::Pt))
        {
            try
            {
                emit(Metric::Pt, Engine::Analytic,
                     CoverageEngine(trad, opts.quad, opts.analytic_options).coverage(t).total);
            }
            catch (std::exception const& ex)
            {
                fail(Metric::Pt, Engine::Analytic, ex);
            }
        }
    }

    if (opts.montecarlo && opts.trials > 0)
    {
        auto mc_emit = [&](Metric m, std::vector<SinrSample> const& samples, bool direct) {
            const auto r = coverage_from_samples(samples, t, direct);
            emit(m, Engine::MonteCarlo, r.total, r.ci_low, r.ci_high);
            return r.total;
        };
        try
        {
            if (has(Metric::P1) || has(Metric::Pd) || has(Metric::Ase) || has(Metric::Ee))
            {
                const auto samples = simulate(s1, opts.trials, opts.seed, opts.mc);
                double p1 = coverage_from_samples(samples, t).total;
                double pd = coverage_from_samples(samples, t, true).total;
                if (has(Metric::P1))
                    mc_emit(Metric::P1, samples, false);
                if (has(Metric::Pd))
                    mc_emit(Metric::Pd, samples, true);
                if (has(Metric::Ase) || has(Metric::Ee))
                {
                    const double pa_bs = active_prob_bs(s1);
                    const double pa_r = s1.lambda_ris > 0.0 ? active_prob_ris(s1) : 0.0;
                    const double z = ase_from_parts(s1.lambda_bs * pa_bs, s1.lambda_ris * pa_r,
                                                    s1.lambda_ris > 0.0 ? p1 : pd, pd, t);
                    const double pw = power_density(s1, pa_bs, pa_r);
                    if (has(Metric::Ase))
                        emit(Metric::Ase, Engine::MonteCarlo, z);
                    if (has(Metric::Ee))
                        emit(Metric::Ee, Engine::MonteCarlo, pw > 0.0 ? z / pw : 0.0);
                }
            }
            if (has(Metric::P2))
                mc_emit(Metric::P2, simulate(s2, opts.trials, opts.seed, opts.mc), false);
            if (has(Metric::Pt))
                mc_emit(Metric::Pt, simulate(trad, opts.trials, opts.seed, opts.mc), false);
        }
        catch (std::exception const& ex)
        {
            for (Metric m : opts.metrics)
                fail(m, Engine::MonteCarlo, ex);
        }
    }
}

inline std::vector<SweepPoint> sweep_points(SweepKind kind, NetworkConfig const& cfg, SweepOptions const& opts)
{
    const std::vector<double> grid = opts.grid.empty() ? default_grid(kind) : opts.grid;
    std::vector<SweepPoint> pts;
    for (double v : grid)
    {
        SweepPoint p{v, cfg, {}};
        switch (kind)
        {
        case SweepKind::SinrThreshold:
            break;
        case SweepKind::BsDensity:
            p.cfg.lambda_bs = v * density_unit;
            break;
        case SweepKind::RisDensityFixedBs:
            p.cfg.lambda_ris = v * density_unit;
            break;
        case SweepKind::RisSize:
            p.cfg.n_ris = static_cast<int>(std::lround(v));
            break;
        case SweepKind::RisDensityTradeoff:
            // One BS per 500^2 pi removed for every ten RISs added, starting
            // from the configured BS density.
            for (double beta : opts.tradeoff_betas)
            {
                SweepPoint q{v, cfg, "[beta=" + format_number(beta) + "]"};
                q.cfg.beta = beta;
                q.cfg.lambda_ris = v * density_unit;
                q.cfg.lambda_bs = cfg.lambda_bs - (v / 10.0) * density_unit;
                if (q.cfg.lambda_bs <= 0.0)
                    throw ConfigError("lambda_bs", "tradeoff sweep drives the BS density to zero");
                pts.push_back(q);
            }
            continue;
        }
        pts.push_back(p);
    }
    return pts;
}
}  // namespace detail

/// Evaluates the requested metrics over the sweep grid. Rows come back sorted
/// by (metric, engine, sweep_value) whatever the worker count.
inline SweepTable run_sweep(SweepKind kind, NetworkConfig const& cfg, SweepOptions const& opts = {})
{
    cfg.validate();
    if (!opts.analytic && !opts.montecarlo)
        throw std::invalid_argument("run_sweep: no engine selected");
    if (opts.metrics.empty())
        throw std::invalid_argument("run_sweep: no metric selected");

    std::vector<detail::SweepPoint> pts;
    if (kind == SweepKind::SinrThreshold)
    {
        // One engine serves the whole threshold grid.
        const std::vector<double> grid = opts.grid.empty() ? default_grid(kind) : opts.grid;
        SweepTable table;
        for (double db : grid)
        {
            SweepOptions one = opts;
            one.analytic = false;
            detail::SweepPoint p{db, cfg, {}};
            if (opts.montecarlo)
                detail::evaluate_point(p, kind, one, table.rows);
        }
        if (opts.analytic)
        {
            auto has = [&](Metric m) {
                return std::find(opts.metrics.begin(), opts.metrics.end(), m) != opts.metrics.end();
            };
            NetworkConfig s1 = cfg;
            s1.antenna_scheme = AntennaScheme::Scheme1;
            NetworkConfig s2 = cfg;
            s2.antenna_scheme = AntennaScheme::Scheme2;
            NetworkConfig trad = cfg;
            trad.lambda_ris = 0.0;
            trad.antenna_scheme = AntennaScheme::Scheme1;
            std::optional<CoverageEngine> e1;
            std::optional<CoverageEngine> e2;
            std::optional<CoverageEngine> et;
            if (has(Metric::P1) || has(Metric::Pd) || has(Metric::Ase) || has(Metric::Ee))
                e1.emplace(s1, opts.quad, opts.analytic_options);
            if (has(Metric::P2))
                e2.emplace(s2, opts.quad, opts.analytic_options);
            if (has(Metric::Pt))
                et.emplace(trad, opts.quad, opts.analytic_options);
            const char* param = sweep_param_name(kind);
            auto row = [&](Metric m, double db, double v) {
                table.rows.push_back({param, db, to_string(m), to_string(Engine::Analytic), v, {}, {}, {}});
            };
            for (double db : grid)
            {
                const double t = db_to_linear(db);
                if (e1 && has(Metric::P1))
                    row(Metric::P1, db, e1->coverage(t).total);
                if (e1 && has(Metric::Pd))
                    row(Metric::Pd, db, e1->coverage_direct(t).total);
                if (e1 && (has(Metric::Ase) || has(Metric::Ee)))
                {
                    const EfficiencyResult eff = efficiency(t, *e1);
                    if (has(Metric::Ase))
                        row(Metric::Ase, db, eff.ase);
                    if (has(Metric::Ee))
                        row(Metric::Ee, db, eff.ee);
                }
                if (e2)
                    row(Metric::P2, db, e2->coverage(t).total);
                if (et)
                    row(Metric::Pt, db, et->coverage(t).total);
            }
        }
        table.sort();
        return table;
    }

    pts = detail::sweep_points(kind, cfg, opts);
    std::vector<std::vector<SweepRow>> results(pts.size());
    unsigned workers = opts.workers > 0 ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, pts.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i = next++; i < pts.size(); i = next++)
            detail::evaluate_point(pts[i], kind, opts, results[i]);
    };
    if (workers <= 1)
    {
        work();
    }
    else
    {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < workers; ++k)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    SweepTable table;
    for (auto& r : results)
        table.rows.insert(table.rows.end(), r.begin(), r.end());
    table.sort();
    return table;
}

}  // namespace riscov

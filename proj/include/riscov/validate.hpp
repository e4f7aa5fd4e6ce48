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
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "analytics.hpp"
#include "association.hpp"
#include "beamforming.hpp"
#include "config.hpp"
#include "montecarlo.hpp"
#include "philox.hpp"
#include "sweep.hpp"

namespace riscov
{

struct CheckResult
{
    int criterion = 0;
    std::string name;
    bool passed = false;
    bool skipped = false;
    /// Measured quantities, one per line.
    std::vector<std::string> details;
};

struct ValidationReport
{
    std::vector<CheckResult> checks;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](CheckResult const& c) { return c.passed || c.skipped; });
    }

    CheckResult const* find(int criterion) const
    {
        for (auto const& c : checks)
            if (c.criterion == criterion)
                return &c;
        return nullptr;
    }

    std::string to_text() const
    {
        std::string out = "riscov validation report\n";
        for (auto const& c : checks)
        {
            out += std::string(c.skipped ? "[SKIP] " : c.passed ? "[PASS] " : "[FAIL] ") + std::to_string(c.criterion)
                   + ' ' + c.name + '\n';
            for (auto const& d : c.details)
                out += "    " + d + '\n';
        }
        out += passed() ? "result: PASS\n" : "result: FAIL\n";
        return out;
    }
};

struct ValidationOptions
{
    /// Monte Carlo realizations per cross-engine point; 0 skips those checks.
    long trials = 10000;
    long association_deployments = 100000;
    double association_radius = 2000.0;
    double coverage_radius = 500.0;
    std::uint64_t seed = 1;
    QuadratureSpec quad{};
    AnalyticOptions analytic{};
};

/// Fixed-point decimal with `digits` fractional digits.
inline std::string fixed(double v, int digits = 6)
{
    if (!std::isfinite(v))
        return format_number(v);
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, digits);
    return {buf, res.ptr};
}

/// Same-side probability of two points seen from a line of uniformly random
/// orientation through the RIS, by direct sampling of the orientation.
inline double side_condition_brute_force(double x, double y, double upsilon, long draws, PhiloxStream& rng)
{
    const Vec2 bs{x, 0.0};
    const Vec2 ris{y * std::cos(upsilon), y * std::sin(upsilon)};
    const Vec2 user{0.0, 0.0};
    long same = 0;
    for (long i = 0; i < draws; ++i)
    {
        const double w = numerics::two_pi * rng.uniform();
        const Vec2 n{std::cos(w), std::sin(w)};
        const bool a = dot(user - ris, n) > 0.0;
        const bool b = dot(bs - ris, n) > 0.0;
        same += a == b;
    }
    return static_cast<double>(same) / static_cast<double>(draws);
}

/// Sample mean of fejer(s1 - s2, n) / n with independent uniform angles.
inline double fejer_mean_sampled(int n, double dw, long draws, PhiloxStream& rng)
{
    numerics::CompensatedSum acc;
    for (long i = 0; i < draws; ++i)
    {
        const double a = spatial_frequency(numerics::two_pi * rng.uniform(), dw);
        const double b = spatial_frequency(numerics::two_pi * rng.uniform(), dw);
        acc.add(fejer_kernel(a - b, n) / n);
    }
    return acc.value() / static_cast<double>(draws);
}

/// Sample mean of |sum_n exp(j psi_n)|^2 with independent uniform phases.
inline double random_phase_gain_sampled(int n, long draws, PhiloxStream& rng)
{
    numerics::CompensatedSum acc;
    for (long i = 0; i < draws; ++i)
    {
        std::complex<double> s{0.0, 0.0};
        for (int k = 0; k < n; ++k)
            s += std::polar(1.0, numerics::two_pi * rng.uniform());
        acc.add(std::norm(s));
    }
    return acc.value() / static_cast<double>(draws);
}

/// Mean of fejer(sum of `terms` spatial-frequency differences, n) / n from
/// the Bessel form of the steering characteristic, J0(2 pi k d/omega).
inline double fejer_mean_bessel(int n, double dw, int terms)
{
    double acc = 0.0;
    for (int k = 1; k < n; ++k)
        acc += (n - k) * std::pow(std::cyl_bessel_j(0.0, numerics::two_pi * k * dw), terms);
    return 1.0 + 2.0 * acc / n;
}

namespace detail
{
inline CheckResult check_cross_engine(NetworkConfig const& cfg, ValidationOptions const& o)
{
    CheckResult r{1, "cross-engine coverage, T in {-5, 0, 5, 10} dB, |analytic - mc| <= 0.03", true, false, {}};
    if (o.trials <= 0)
    {
        r.skipped = true;
        r.details.push_back("warning: zero trial budget, Monte Carlo comparison skipped");
        return r;
    }
    const CoverageEngine eng(cfg, o.quad, o.analytic);
    McOptions mc;
    mc.radius = o.coverage_radius;
    const auto samples = simulate(cfg, o.trials, o.seed, mc);
    double worst = 0.0;
    for (double db : {-5.0, 0.0, 5.0, 10.0})
    {
        const double t = db_to_linear(db);
        const auto a = eng.coverage(t);
        const auto m = coverage_from_samples(samples, t);
        const double d = std::abs(a.total - m.total);
        worst = std::max(worst, d);
        r.passed = r.passed && d <= 0.03;
        r.details.push_back("T=" + fixed(db, 0) + " dB analytic " + fixed(a.total) + " mc " + fixed(m.total) + " ["
                            + fixed(m.ci_low) + ", " + fixed(m.ci_high) + "] delta " + fixed(d));
    }
    r.details.push_back("max delta " + fixed(worst) + " (limit 0.03), trials " + std::to_string(o.trials)
                        + ", radius " + fixed(o.coverage_radius, 0) + " m");
    return r;
}

inline CheckResult check_direct_link(NetworkConfig const& base, ValidationOptions const& o)
{
    CheckResult r{2, "direct-link consistency with lambda_R = 0 at 0 dB, pairwise <= 0.03", true, false, {}};
    NetworkConfig cfg = base;
    cfg.lambda_ris = 0.0;
    const CoverageEngine eng(cfg, o.quad, o.analytic);
    const double p1 = eng.coverage(1.0).total;
    const double pd = eng.coverage_direct(1.0).total;
    r.details.push_back("full " + fixed(p1) + " direct " + fixed(pd));
    double worst = std::abs(p1 - pd);
    if (o.trials > 0)
    {
        const auto m = coverage_from_samples(simulate(cfg, o.trials, o.seed, McOptions{}), 1.0);
        r.details.push_back("mc " + fixed(m.total) + " [" + fixed(m.ci_low) + ", " + fixed(m.ci_high) + "], radius "
                            + fixed(default_radius(cfg), 1) + " m");
        worst = std::max({worst, std::abs(p1 - m.total), std::abs(pd - m.total)});
    }
    else
    {
        r.details.push_back("warning: zero trial budget, Monte Carlo leg skipped");
    }
    r.passed = worst <= 0.03;
    r.details.push_back("max pairwise delta " + fixed(worst) + " (limit 0.03)");
    return r;
}

inline CheckResult check_small_beta(NetworkConfig const& base, ValidationOptions const& o)
{
    CheckResult r{3, "small-blockage variant at beta = 0.001, |los-only - full| <= 0.02 at 0 dB", true, false, {}};
    NetworkConfig cfg = base;
    cfg.beta = 0.001;
    const double th = CoverageEngine(cfg, o.quad, o.analytic).coverage(1.0).total;
    const double co = CoverageEngine(cfg, o.quad, o.analytic, InterferenceSets::LosOnly).coverage(1.0).total;
    const double d = std::abs(th - co);
    r.passed = d <= 0.02;
    r.details.push_back("full " + fixed(th) + " los-only " + fixed(co) + " delta " + fixed(d));
    return r;
}

inline CheckResult check_association(NetworkConfig const& cfg, ValidationOptions const& o)
{
    CheckResult r{4, "association probabilities vs Monte Carlo frequencies, each <= 0.015", true, false, {}};
    if (o.trials <= 0 || o.association_deployments <= 0)
    {
        r.skipped = true;
        r.details.push_back("warning: zero trial budget, Monte Carlo comparison skipped");
        return r;
    }
    McOptions mc;
    mc.radius = o.association_radius;
    const auto f = association_frequencies(cfg, o.association_deployments, o.seed, mc);
    const auto ris = ris_association(cfg, o.analytic.side);
    const std::pair<const char*, std::pair<double, double>> rows[] = {
        {"A_d,L", {assoc_prob_bs(LinkKind::Los, cfg), f.a_d_los}},
        {"A_d,N", {assoc_prob_bs(LinkKind::Nlos, cfg), f.a_d_nlos}},
        {"A_u,L", {ris.a_u_los, f.a_u_los}},
        {"A_g,L", {ris.a_g_los, f.a_g_los}},
        {"A_g,N", {ris.a_g_nlos, f.a_g_nlos}},
    };
    for (auto const& [name, v] : rows)
    {
        const double d = std::abs(v.first - v.second);
        r.passed = r.passed && d <= 0.015;
        r.details.push_back(std::string(name) + " analytic " + fixed(v.first) + " mc " + fixed(v.second) + " delta "
                            + fixed(d));
    }
    r.details.push_back("deployments " + std::to_string(f.deployments) + ", radius " + fixed(o.association_radius, 0)
                        + " m");
    return r;
}

inline CheckResult check_beamforming(NetworkConfig const& cfg, ValidationOptions const& o)
{
    CheckResult r{5, "beamforming gains and average-gain oracles", true, false, {}};
    PhiloxStream rng(o.seed, 0, 0x5100);

    // Aligned and serving gains are exact.
    bool exact = true;
    for (int i = 0; i < 16; ++i)
    {
        SteeringAngleSet a;
        a.theta_d = numerics::two_pi * rng.uniform();
        a.phi_d = numerics::two_pi * rng.uniform();
        exact = exact && direct_gain(a, a, cfg) == static_cast<double>(cfg.n_bs * cfg.n_u);
    }
    const double n2 = static_cast<double>(cfg.n_ris) * cfg.n_ris;
    exact = exact && reflected_gain_serving(cfg) == static_cast<double>(cfg.n_bs) * cfg.n_u * n2;
    double worst_opt = 0.0;
    for (int i = 0; i < 16; ++i)
    {
        const double tu = numerics::two_pi * rng.uniform();
        const double pg = numerics::two_pi * rng.uniform();
        const double g = ris_array_gain(tu, pg, optimal_ris_phases(tu, pg, cfg), cfg);
        worst_opt = std::max(worst_opt, std::abs(g - n2) / n2);
    }
    r.passed = exact && worst_opt < 1e-9;
    r.details.push_back(std::string("aligned direct gain == N_BS N_u and serving gain == N_BS N_u N^2: ")
                        + (exact ? "exact" : "MISMATCH"));
    r.details.push_back("optimal-phase RIS gain max relative error " + format_number(worst_opt));

    // Brute-force phase search for a 4-element RIS on a 16-level grid.
    NetworkConfig small = cfg;
    small.n_ris = 4;
    double worst_excess = -1e300;
    for (int pair = 0; pair < 8; ++pair)
    {
        const double tu = numerics::two_pi * rng.uniform();
        const double pg = numerics::two_pi * rng.uniform();
        const double bound = ris_array_gain(tu, pg, optimal_ris_phases(tu, pg, small), small);
        RisPhaseProfile prof;
        prof.psi.assign(4, 0.0);
        double best = 0.0;
        for (int code = 0; code < 16 * 16 * 16 * 16; ++code)
        {
            int c = code;
            for (int k = 0; k < 4; ++k, c /= 16)
                prof.psi[static_cast<std::size_t>(k)] = numerics::two_pi * (c % 16) / 16.0;
            best = std::max(best, ris_array_gain(tu, pg, prof, small));
        }
        worst_excess = std::max(worst_excess, best - bound);
    }
    const bool brute_ok = worst_excess <= 1e-9;
    r.passed = r.passed && brute_ok;
    r.details.push_back("N=4 grid search, max(best grid gain - optimal gain) " + fixed(worst_excess, 9));

    // Average gains against independent oracles.
    const AverageGains g = average_gains(cfg);
    const double dw = cfg.d_over_omega;
    struct Row
    {
        const char* name;
        double value;
        double oracle;
    };
    const Row rows[] = {
        {"m_BS (1e7 samples)", g.m_bs_dl, fejer_mean_sampled(cfg.n_bs, dw, 10000000, rng)},
        {"m_u (1e7 samples)", g.m_u_dl, fejer_mean_sampled(cfg.n_u, dw, 10000000, rng)},
        {"m_r (Bessel series)", g.m_r_rl, fejer_mean_bessel(cfg.n_ris, dw, 4)},
        {"m_r,idle (1e6 samples)", g.m_r_rl_idle, random_phase_gain_sampled(cfg.n_ris, 1000000, rng)},
    };
    for (auto const& row : rows)
    {
        const double rel = std::abs(row.value - row.oracle) / std::abs(row.oracle);
        r.passed = r.passed && rel <= 0.005;
        r.details.push_back(std::string(row.name) + " value " + fixed(row.value) + " oracle " + fixed(row.oracle)
                            + " rel " + fixed(rel));
    }
    return r;
}

inline CheckResult check_geometry(ValidationOptions const& o)
{
    CheckResult r{6, "side condition vs brute-force orientation sampling, <= 0.005", true, false, {}};
    PhiloxStream rng(o.seed, 0, 0x6100);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        const double x = 1.0 + 499.0 * rng.uniform();
        const double y = 1.0 + 499.0 * rng.uniform();
        const double v = numerics::two_pi * rng.uniform();
        const double bf = side_condition_brute_force(x, y, v, 1000000, rng);
        worst = std::max(worst, std::abs(bf - side_condition(x, y, v)));
    }
    const double h1 = side_condition(120.0, 70.0, numerics::pi);
    const double h2 = side_condition(90.0, 90.0, 0.5 * numerics::pi);
    const bool hand = std::abs(h1 - 1.0) <= 1e-12 && std::abs(h2 - 0.75) <= 1e-12;
    r.passed = worst <= 0.005 && hand;
    r.details.push_back("100 triples, 1e6 draws each, max delta " + fixed(worst));
    r.details.push_back("C(120, 70, pi) = " + fixed(h1, 12) + ", C(90, 90, pi/2) = " + fixed(h2, 12));
    return r;
}

inline CheckResult check_trends(NetworkConfig const& cfg, ValidationOptions const& o)
{
    CheckResult r{7, "qualitative trends of the analytic engine", true, false, {}};
    SweepOptions so;
    so.quad = o.quad;
    so.analytic_options = o.analytic;
    so.metrics = {Metric::P1};

    // (a) strictly decreasing in T.
    const auto t_rows = run_sweep(SweepKind::SinrThreshold, cfg, so).select("P1", "analytic");
    bool dec = true;
    for (std::size_t i = 1; i < t_rows.size(); ++i)
        dec = dec && t_rows[i].value < t_rows[i - 1].value;
    r.details.push_back(std::string("P1 strictly decreasing on -10..30 dB: ") + (dec ? "yes" : "no") + " (P1(-10 dB) "
                        + fixed(t_rows.front().value) + ", P1(30 dB) " + fixed(t_rows.back().value) + ")");

    // (b) interior maximum over the BS density.
    const auto b_rows = run_sweep(SweepKind::BsDensity, cfg, so).select("P1", "analytic");
    std::size_t arg = 0;
    std::string curve;
    for (std::size_t i = 0; i < b_rows.size(); ++i)
    {
        if (b_rows[i].value > b_rows[arg].value)
            arg = i;
        curve += (i ? " " : "") + fixed(b_rows[i].sweep_value, 0) + ":" + fixed(b_rows[i].value, 4);
    }
    const bool interior = arg > 0 && arg + 1 < b_rows.size();
    r.details.push_back(std::string("P1 vs lambda_BS interior maximum: ") + (interior ? "yes" : "no") + " (" + curve
                        + ")");

    // (c) tradeoff gap at the P1 peak, beta 0.01 vs 0.005.
    SweepOptions to = so;
    to.metrics = {Metric::P1, Metric::Pt};
    const auto tt = run_sweep(SweepKind::RisDensityTradeoff, cfg, to);
    auto gap_at_peak = [&](std::string const& suffix, double& peak_at) {
        const auto p1 = tt.select("P1" + suffix, "analytic");
        const auto pt = tt.select("Pt" + suffix, "analytic");
        std::size_t k = 0;
        for (std::size_t i = 0; i < p1.size(); ++i)
            if (p1[i].value > p1[k].value)
                k = i;
        peak_at = p1[k].sweep_value;
        return p1[k].value - pt[k].value;
    };
    double at_lo = 0.0;
    double at_hi = 0.0;
    const double gap_lo = gap_at_peak("[beta=0.005]", at_lo);
    const double gap_hi = gap_at_peak("[beta=0.01]", at_hi);
    const bool gap = gap_hi > gap_lo;
    r.details.push_back(std::string("tradeoff gap P1 - Pt at the P1 peak larger for beta=0.01: ") + (gap ? "yes" : "no")
                        + " (beta=0.005: " + fixed(gap_lo) + " at lambda_R=" + fixed(at_lo, 0)
                        + "; beta=0.01: " + fixed(gap_hi) + " at lambda_R=" + fixed(at_hi, 0) + ")");

    // (d) increasing in N.
    SweepOptions no = so;
    no.grid = {32, 64, 128, 256};
    const auto n_rows = run_sweep(SweepKind::RisSize, cfg, no).select("P1", "analytic");
    bool inc = true;
    std::string ncurve;
    for (std::size_t i = 0; i < n_rows.size(); ++i)
    {
        if (i > 0)
            inc = inc && n_rows[i].value > n_rows[i - 1].value;
        ncurve += (i ? " " : "") + fixed(n_rows[i].sweep_value, 0) + ":" + fixed(n_rows[i].value);
    }
    r.details.push_back(std::string("P1 strictly increasing in N: ") + (inc ? "yes" : "no") + " (" + ncurve + ")");
    r.passed = dec && interior && gap && inc;
    return r;
}

inline CheckResult check_numerics(NetworkConfig const& cfg, ValidationOptions const& o)
{
    CheckResult r{8, "numerical stability", true, false, {}};
    const double p = CoverageEngine(cfg, o.quad, o.analytic).coverage(1.0).total;
    const double p2 = CoverageEngine(cfg, o.quad.doubled(), o.analytic).coverage(1.0).total;
    const double d = std::abs(p - p2);
    const double limit = 1e-3 + o.quad.tolerance;
    NetworkConfig c10 = cfg;
    c10.lambda_u = 10.0 * c10.lambda_bs;
    const double pa = active_prob_bs(c10);
    const double exact = 1.0 - std::pow(11.0, -3.5);
    const double pa_err = std::abs(pa - exact);
    r.passed = d < limit && pa_err <= 1e-12;
    r.details.push_back("P1 " + fixed(p) + " doubled nodes and W " + fixed(p2) + " delta " + fixed(d) + " (limit "
                        + fixed(limit) + ")");
    r.details.push_back("active_prob_bs at ratio 10: " + fixed(pa, 15) + " vs 1 - 11^-3.5, error "
                        + format_number(pa_err));
    return r;
}
}  // namespace detail

/// Runs the cross-engine and property checks for the given configuration.
/// The report depends only on (cfg, options).
inline ValidationReport run_validation(NetworkConfig const& cfg, ValidationOptions const& o = {})
{
    cfg.validate();
    o.quad.validate();
    ValidationReport rep;
    rep.checks.push_back(detail::check_cross_engine(cfg, o));
    rep.checks.push_back(detail::check_direct_link(cfg, o));
    rep.checks.push_back(detail::check_small_beta(cfg, o));
    rep.checks.push_back(detail::check_association(cfg, o));
    rep.checks.push_back(detail::check_beamforming(cfg, o));
    rep.checks.push_back(detail::check_geometry(o));
    rep.checks.push_back(detail::check_trends(cfg, o));
    rep.checks.push_back(detail::check_numerics(cfg, o));
    return rep;
}

}  // namespace riscov

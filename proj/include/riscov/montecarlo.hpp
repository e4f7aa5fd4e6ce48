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
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "analytics.hpp"
#include "association.hpp"
#include "beamforming.hpp"
#include "config.hpp"
#include "philox.hpp"
#include "propagation.hpp"

namespace riscov
{

enum class BlockageMode
{
    /// Independent LOS draws with probability exp(-beta d) per link.
    Analytic,
    /// Explicit line segments; a link is LOS iff no segment crosses it.
    Geometric,
};

enum class AngleModel
{
    /// Departure and arrival angles drawn independently and uniformly per link.
    Independent,
    /// Angles from the sampled geometry, with uniformly oriented arrays.
    Geometric,
};

enum class ActivityMode
{
    /// A BS or RIS is active iff some sampled user is associated with it.
    Voronoi,
    /// Independent activity with the analytic active probabilities.
    Bernoulli,
};

struct McOptions
{
    /// Simulation disk radius; 0 selects 5 / sqrt(pi lambda_BS).
    double radius = 0.0;
    BlockageMode blockage = BlockageMode::Analytic;
    ActivityMode activity = ActivityMode::Voronoi;
    AngleModel angles = AngleModel::Independent;
    double blockage_length_min = 5.0;
    double blockage_length_max = 15.0;
    /// Worker threads; 0 uses the hardware concurrency.
    unsigned threads = 0;
};

inline double default_radius(NetworkConfig const& cfg)
{
    if (cfg.lambda_bs <= 0.0)
        return 500.0;
    return 5.0 / std::sqrt(numerics::pi * cfg.lambda_bs);
}

inline double resolve_radius(McOptions const& opts, NetworkConfig const& cfg)
{
    return opts.radius > 0.0 ? opts.radius : default_radius(cfg);
}

struct RisSite
{
    Vec2 position;
    double normal = 0.0;  // facing direction, radians

    Vec2 normal_vec() const { return {std::cos(normal), std::sin(normal)}; }
    bool faces(Vec2 p) const { return dot(p - position, normal_vec()) > 0.0; }
};

struct Deployment
{
    std::vector<Vec2> bs_points;
    std::vector<RisSite> ris_points;
    /// The typical user is user_points[0], at the origin.
    std::vector<Vec2> user_points;
    std::vector<BlockageSegment> blockage_segments;
    std::uint64_t rng_seed = 0;
    std::uint32_t trial = 0;
    double radius = 0.0;
};

namespace detail
{
enum StreamId : std::uint32_t
{
    stream_bs = 1,
    stream_ris = 2,
    stream_users = 3,
    stream_blockage = 4,
    stream_links = 5,
    stream_gains = 6,
    stream_activity = 7,
};

inline Vec2 uniform_in_disk(PhiloxStream& rng, double radius)
{
    const double r = radius * std::sqrt(rng.uniform());
    const double t = numerics::two_pi * rng.uniform();
    return {r * std::cos(t), r * std::sin(t)};
}

inline long poisson_count(PhiloxStream& rng, double mean)
{
    if (!(mean > 0.0))
        return 0;
    std::poisson_distribution<long> dist(mean);
    return dist(rng);
}

inline double direction(Vec2 from, Vec2 to) { return std::atan2(to.y - from.y, to.x - from.x); }
}  // namespace detail

inline Deployment sample_deployment(NetworkConfig const& cfg, double radius, std::uint64_t seed,
                                    std::uint32_t trial = 0, McOptions const& opts = {})
{
    if (!(radius > 0.0))
        throw std::invalid_argument("sample_deployment: radius must be > 0");
    Deployment dep;
    dep.rng_seed = seed;
    dep.trial = trial;
    dep.radius = radius;
    const double area = numerics::pi * radius * radius;

    PhiloxStream bs_rng(seed, trial, detail::stream_bs);
    const long n_bs = detail::poisson_count(bs_rng, cfg.lambda_bs * area);
    for (long i = 0; i < n_bs; ++i)
        dep.bs_points.push_back(detail::uniform_in_disk(bs_rng, radius));

    PhiloxStream ris_rng(seed, trial, detail::stream_ris);
    const long n_ris = detail::poisson_count(ris_rng, cfg.lambda_ris * area);
    for (long i = 0; i < n_ris; ++i)
    {
        RisSite site;
        site.position = detail::uniform_in_disk(ris_rng, radius);
        site.normal = numerics::two_pi * ris_rng.uniform();
        dep.ris_points.push_back(site);
    }

    PhiloxStream user_rng(seed, trial, detail::stream_users);
    dep.user_points.push_back({0.0, 0.0});
    const long n_users = detail::poisson_count(user_rng, cfg.lambda_u * area);
    for (long i = 0; i < n_users; ++i)
        dep.user_points.push_back(detail::uniform_in_disk(user_rng, radius));

    if (opts.blockage == BlockageMode::Geometric && cfg.beta > 0.0)
    {
        PhiloxStream rng(seed, trial, detail::stream_blockage);
        const double mean_len = 0.5 * (opts.blockage_length_min + opts.blockage_length_max);
        const double density = blockage_density_for_beta(cfg.beta, mean_len);
        const double reach = radius + 0.5 * opts.blockage_length_max;
        const long n = detail::poisson_count(rng, density * numerics::pi * reach * reach);
        for (long i = 0; i < n; ++i)
        {
            BlockageSegment seg;
            seg.midpoint = detail::uniform_in_disk(rng, reach);
            seg.length = opts.blockage_length_min
                         + (opts.blockage_length_max - opts.blockage_length_min) * rng.uniform();
            seg.orientation = numerics::pi * rng.uniform();
            dep.blockage_segments.push_back(seg);
        }
    }
    return dep;
}

struct SinrSample
{
    double sinr = 0.0;
    /// SINR with the reflected signal removed (same interference).
    double sinr_direct = 0.0;
    /// Serving BS/RIS link states; no value when no RIS assists.
    std::optional<AssociationCase> serving_case;
    LinkKind bs_kind = LinkKind::Los;
    double signal_w = 0.0;
    double direct_signal_w = 0.0;
    double interference_w = 0.0;
    double noise_w = 0.0;
};

/// Link states and serving nodes of the typical user.
struct Association
{
    std::size_t serving_bs = 0;
    LinkKind bs_kind = LinkKind::Los;
    std::vector<LinkKind> bs_state;
    std::vector<LinkKind> ris_state;  // RIS-user links
    std::optional<std::size_t> serving_ris;
    LinkKind ris_kind = LinkKind::Los;
    LinkKind g_kind = LinkKind::Los;  // serving BS - serving RIS link
};

namespace detail
{
class LinkOracle
{
public:
    LinkOracle(Deployment const& dep, NetworkConfig const& cfg, McOptions const& opts)
        : dep_(dep), beta_(cfg.beta), geometric_(opts.blockage == BlockageMode::Geometric),
          rng_(dep.rng_seed, dep.trial, stream_links)
    {
    }

    LinkKind state(Vec2 a, Vec2 b)
    {
        if (!geometric_)
            return rng_.bernoulli(los_probability(norm(b - a), beta_)) ? LinkKind::Los : LinkKind::Nlos;
        for (auto const& seg : dep_.blockage_segments)
            if (segment_blocks(a, b, seg))
                return LinkKind::Nlos;
        return LinkKind::Los;
    }

private:
    Deployment const& dep_;
    double beta_;
    bool geometric_;
    PhiloxStream rng_;
};

inline Association associate(Deployment const& dep, NetworkConfig const& cfg, LinkOracle& links)
{
    Association a;
    const Vec2 user = dep.user_points.front();
    double best = -1.0;
    a.bs_state.resize(dep.bs_points.size());
    for (std::size_t i = 0; i < dep.bs_points.size(); ++i)
    {
        const Vec2 b = dep.bs_points[i];
        a.bs_state[i] = links.state(user, b);
        const double g = path_gain(a.bs_state[i], std::max(norm(b - user), cfg.r_min), cfg);
        if (g > best)
        {
            best = g;
            a.serving_bs = i;
        }
    }
    a.bs_kind = a.bs_state[a.serving_bs];
    const Vec2 bs = dep.bs_points[a.serving_bs];

    a.ris_state.resize(dep.ris_points.size());
    best = -1.0;
    for (std::size_t r = 0; r < dep.ris_points.size(); ++r)
    {
        RisSite const& site = dep.ris_points[r];
        a.ris_state[r] = links.state(user, site.position);
        if (!site.faces(user) || !site.faces(bs))
            continue;
        const double g = path_gain(a.ris_state[r], std::max(norm(site.position - user), cfg.r_min), cfg);
        if (g > best)
        {
            best = g;
            a.serving_ris = r;
        }
    }
    if (a.serving_ris)
    {
        a.ris_kind = a.ris_state[*a.serving_ris];
        a.g_kind = links.state(bs, dep.ris_points[*a.serving_ris].position);
    }
    return a;
}

/// fejer(offset, n) / n for a ULA whose beam points at `target`.
inline double ula_gain(double arrival, double target, double axis, int n, double dw)
{
    return fejer_kernel(spatial_frequency(arrival - axis, dw) - spatial_frequency(target - axis, dw), n) / n;
}
}  // namespace detail

/// Association of the typical user with the link states drawn as in
/// realize_sinr.
inline Association associate_typical_user(Deployment const& dep, NetworkConfig const& cfg, McOptions const& opts = {})
{
    if (dep.bs_points.empty())
        throw std::invalid_argument("associate_typical_user: empty deployment");
    detail::LinkOracle links(dep, cfg, opts);
    return detail::associate(dep, cfg, links);
}

/// One SINR realization of the typical user at the origin.
inline SinrSample realize_sinr(Deployment const& dep, NetworkConfig const& cfg, McOptions const& opts = {},
                               double p_active_bs = 1.0, double p_active_ris = 1.0)
{
    if (dep.bs_points.empty())
        throw std::invalid_argument("realize_sinr: empty deployment");
    const double dw = cfg.d_over_omega;
    const double p = cfg.p_bs_watt();
    const Vec2 user = dep.user_points.front();
    detail::LinkOracle links(dep, cfg, opts);
    const Association a = detail::associate(dep, cfg, links);
    PhiloxStream grng(dep.rng_seed, dep.trial, detail::stream_gains);

    const std::size_t nb = dep.bs_points.size();
    const std::size_t nr = dep.ris_points.size();
    const Vec2 bs = dep.bs_points[a.serving_bs];

    // Array axes and beam targets. Interfering BSs steer towards their own
    // users, whose directions are uniform.
    std::vector<double> bs_axis(nb);
    std::vector<double> bs_beam(nb);
    for (std::size_t i = 0; i < nb; ++i)
    {
        bs_axis[i] = numerics::two_pi * grng.uniform();
        bs_beam[i] = numerics::two_pi * grng.uniform();
    }
    const double user_axis = numerics::two_pi * grng.uniform();
    const bool geometric_angles = opts.angles == AngleModel::Geometric;
    auto dir = [&](Vec2 from, Vec2 to) {
        return geometric_angles ? detail::direction(from, to) : numerics::two_pi * grng.uniform();
    };

    const double aligned = static_cast<double>(cfg.n_bs) * cfg.n_u;
    const double n2 = static_cast<double>(cfg.n_ris) * cfg.n_ris;
    const double xd = std::max(norm(bs - user), cfg.r_min);
    const double ld = path_gain(a.bs_kind, xd, cfg);
    double m_dl = aligned;
    double reflected = 0.0;
    double user_beam = dir(user, bs);
    bs_beam[a.serving_bs] = dir(bs, user);
    if (a.serving_ris)
    {
        const Vec2 ris = dep.ris_points[*a.serving_ris].position;
        const double bs_to_user = dir(bs, user);
        const double bs_to_ris = dir(bs, ris);
        const double user_to_bs = dir(user, bs);
        const double user_to_ris = dir(user, ris);
        const double mis = detail::ula_gain(bs_to_user, bs_to_ris, bs_axis[a.serving_bs], cfg.n_bs, dw)
                           * detail::ula_gain(user_to_bs, user_to_ris, user_axis, cfg.n_u, dw);
        const double lu = path_gain(a.ris_kind, std::max(norm(ris - user), cfg.r_min), cfg);
        const double lg = path_gain(a.g_kind, std::max(norm(ris - bs), cfg.r_min), cfg);
        double m_rl = aligned * n2;
        if (cfg.antenna_scheme == AntennaScheme::Scheme1)
        {
            m_dl = mis;
            bs_beam[a.serving_bs] = bs_to_ris;
            user_beam = user_to_ris;
        }
        else
        {
            m_rl = mis * n2;
        }
        reflected = p * lg * lu * m_rl;
    }

    SinrSample out;
    out.bs_kind = a.bs_kind;
    if (a.serving_ris)
        out.serving_case = AssociationCase{a.bs_kind, a.ris_kind};
    out.direct_signal_w = p * ld * m_dl;
    const double amp = std::sqrt(out.direct_signal_w) + std::sqrt(reflected);
    out.signal_w = amp * amp;

    // Activity.
    std::vector<char> bs_active(nb, 0);
    std::vector<char> ris_active(nr, 0);
    bs_active[a.serving_bs] = 1;
    if (a.serving_ris)
        ris_active[*a.serving_ris] = 1;
    if (opts.activity == ActivityMode::Bernoulli)
    {
        PhiloxStream arng(dep.rng_seed, dep.trial, detail::stream_activity);
        for (std::size_t i = 0; i < nb; ++i)
            if (arng.bernoulli(p_active_bs))
                bs_active[i] = 1;
        for (std::size_t r = 0; r < nr; ++r)
            if (arng.bernoulli(p_active_ris))
                ris_active[r] = 1;
    }
    else
    {
        for (std::size_t k = 1; k < dep.user_points.size(); ++k)
        {
            const Vec2 u = dep.user_points[k];
            std::size_t near_bs = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < nb; ++i)
            {
                const double d = norm(dep.bs_points[i] - u);
                if (d < best)
                {
                    best = d;
                    near_bs = i;
                }
            }
            bs_active[near_bs] = 1;
            std::optional<std::size_t> near_ris;
            best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < nr; ++r)
            {
                RisSite const& site = dep.ris_points[r];
                if (!site.faces(u) || !site.faces(dep.bs_points[near_bs]))
                    continue;
                const double d = norm(site.position - u);
                if (d < best)
                {
                    best = d;
                    near_ris = r;
                }
            }
            if (near_ris)
                ris_active[*near_ris] = 1;
        }
    }

    // Direct interference.
    double interference = 0.0;
    for (std::size_t i = 0; i < nb; ++i)
    {
        if (i == a.serving_bs || !bs_active[i])
            continue;
        const Vec2 b = dep.bs_points[i];
        const double g = detail::ula_gain(dir(b, user), bs_beam[i], bs_axis[i], cfg.n_bs, dw)
                         * detail::ula_gain(dir(user, b), user_beam, user_axis, cfg.n_u, dw);
        interference += p * path_gain(a.bs_state[i], std::max(norm(b - user), cfg.r_min), cfg) * g;
    }

    // Reflections of every active BS off every other RIS facing the user.
    // Active RISs are phased for a pair of directions of their own; idle ones
    // carry independent uniform phases.
    std::vector<double> psi(static_cast<std::size_t>(cfg.n_ris));
    for (std::size_t r = 0; r < nr; ++r)
    {
        RisSite const& site = dep.ris_points[r];
        const double in0 = numerics::pi * (grng.uniform() - 0.5);
        const double out0 = numerics::pi * (grng.uniform() - 0.5);
        if (!ris_active[r])
            for (double& v : psi)
                v = numerics::two_pi * grng.uniform();
        if (a.serving_ris && r == *a.serving_ris)
            continue;
        if (!site.faces(user))
            continue;
        const double y = std::max(norm(site.position - user), cfg.r_min);
        const double lu = path_gain(a.ris_state[r], y, cfg);
        const double out_angle = dir(site.position, user) - site.normal;
        const double gu = cfg.n_u * detail::ula_gain(dir(user, site.position), user_beam, user_axis,
                                                     cfg.n_u, dw);
        const double s_out = spatial_frequency(out_angle, dw);
        const double s_ref = spatial_frequency(out0, dw) - spatial_frequency(in0, dw);
        double incident = 0.0;
        for (std::size_t m = 0; m < nb; ++m)
        {
            const Vec2 b = dep.bs_points[m];
            if (!bs_active[m] || !site.faces(b))
                continue;
            const LinkKind kg = links.state(b, site.position);
            const double lg = path_gain(kg, std::max(norm(site.position - b), cfg.r_min), cfg);
            const double gb = cfg.n_bs * detail::ula_gain(dir(b, site.position), bs_beam[m], bs_axis[m],
                                                          cfg.n_bs, dw);
            const double s_in = spatial_frequency(dir(site.position, b) - site.normal, dw);
            double gr = 0.0;
            if (ris_active[r])
            {
                gr = fejer_kernel(s_out - s_in - s_ref, cfg.n_ris);
            }
            else
            {
                std::complex<double> acc{0.0, 0.0};
                for (std::size_t n = 0; n < psi.size(); ++n)
                    acc += std::polar(1.0, numerics::two_pi * static_cast<double>(n) * (s_out - s_in) - psi[n]);
                gr = std::norm(acc);
            }
            incident += p * lg * gb / cfg.n_bs * gr;
        }
        interference += incident * lu * gu / cfg.n_u;
    }

    out.interference_w = interference;
    out.noise_w = cfg.noise_watt();
    out.sinr = out.signal_w / (out.interference_w + out.noise_w);
    out.sinr_direct = out.direct_signal_w / (out.interference_w + out.noise_w);
    return out;
}

/// Runs `trials` independent realizations; sample t depends only on
/// (cfg, seed, t), whatever the thread count.
inline std::vector<SinrSample> simulate(NetworkConfig const& cfg, long trials, std::uint64_t seed,
                                        McOptions const& opts = {})
{
    cfg.validate();
    if (trials < 0)
        throw std::invalid_argument("simulate: trials must be >= 0");
    const double radius = resolve_radius(opts, cfg);
    double pa_bs = 1.0;
    double pa_ris = 1.0;
    if (opts.activity == ActivityMode::Bernoulli)
    {
        pa_bs = active_prob_bs(cfg);
        pa_ris = active_prob_ris(cfg);
    }
    std::vector<SinrSample> out(static_cast<std::size_t>(trials));
    auto work = [&](long begin, long end) {
        for (long t = begin; t < end; ++t)
        {
            const Deployment dep = sample_deployment(cfg, radius, seed, static_cast<std::uint32_t>(t), opts);
            if (dep.bs_points.empty())
            {
                // No BS in the disk: SINR 0.
                SinrSample s;
                s.noise_w = cfg.noise_watt();
                out[static_cast<std::size_t>(t)] = s;
                continue;
            }
            out[static_cast<std::size_t>(t)] = realize_sinr(dep, cfg, opts, pa_bs, pa_ris);
        }
    };
    unsigned n_threads = opts.threads > 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<long>(n_threads, std::max<long>(trials, 1)));
    if (n_threads <= 1)
    {
        work(0, trials);
        return out;
    }
    std::vector<std::thread> pool;
    const long chunk = (trials + n_threads - 1) / n_threads;
    for (unsigned k = 0; k < n_threads; ++k)
    {
        const long b = std::min<long>(trials, k * chunk);
        const long e = std::min<long>(trials, b + chunk);
        pool.emplace_back(work, b, e);
    }
    for (auto& th : pool)
        th.join();
    return out;
}

/// Wilson score interval at 95%.
inline std::pair<double, double> wilson_interval(long successes, long trials, double z = 1.959963984540054)
{
    if (trials <= 0)
        return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (ph + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Coverage P(SINR >= T) from simulated samples. With `direct_only`, the
/// reflected signal is dropped.
inline CoverageResult coverage_from_samples(std::vector<SinrSample> const& samples, double threshold,
                                            bool direct_only = false)
{
    CoverageResult res;
    res.engine = Engine::MonteCarlo;
    res.trials = static_cast<long>(samples.size());
    long hits = 0;
    std::array<std::array<long, 2>, 2> by_case{};
    std::array<long, 2> no_ris{};
    for (auto const& s : samples)
    {
        const double v = direct_only ? s.sinr_direct : s.sinr;
        if (!(v >= threshold))
            continue;
        ++hits;
        if (s.serving_case)
            ++by_case[index(s.serving_case->bs)][index(s.serving_case->ris)];
        else
            ++no_ris[index(s.bs_kind)];
    }
    const double n = samples.empty() ? 1.0 : static_cast<double>(samples.size());
    res.total = static_cast<double>(hits) / n;
    for (std::size_t i = 0; i < 2; ++i)
    {
        res.no_ris[i] = static_cast<double>(no_ris[i]) / n;
        for (std::size_t j = 0; j < 2; ++j)
            res.by_case[i][j] = static_cast<double>(by_case[i][j]) / n;
    }
    const auto ci = wilson_interval(hits, res.trials);
    res.ci_low = ci.first;
    res.ci_high = ci.second;
    return res;
}

inline CoverageResult empirical_coverage(double threshold, NetworkConfig const& cfg, long trials, std::uint64_t seed,
                                         McOptions const& opts = {})
{
    if (trials < 1)
        throw std::invalid_argument("empirical_coverage: trials must be >= 1");
    return coverage_from_samples(simulate(cfg, trials, seed, opts), threshold);
}

/// Empirical frequencies of the association events of the typical user.
struct AssociationFrequencies
{
    double a_d_los = 0.0;
    double a_d_nlos = 0.0;
    double a_u_los = 0.0;
    double a_u_nlos = 0.0;
    double a_g_los = 0.0;
    double a_g_nlos = 0.0;
    long deployments = 0;
};

inline AssociationFrequencies association_frequencies(NetworkConfig const& cfg, long deployments, std::uint64_t seed,
                                                      McOptions const& opts = {})
{
    const double radius = resolve_radius(opts, cfg);
    long d_los = 0;
    long d_nlos = 0;
    long u_los = 0;
    long u_nlos = 0;
    long g_los = 0;
    long valid = 0;
    NetworkConfig sparse = cfg;
    sparse.lambda_u = 0.0;  // users other than the typical one are not needed
    for (long t = 0; t < deployments; ++t)
    {
        const Deployment dep = sample_deployment(sparse, radius, seed, static_cast<std::uint32_t>(t), opts);
        ++valid;
        if (dep.bs_points.empty())
            continue;
        const Association a = associate_typical_user(dep, cfg, opts);
        (a.bs_kind == LinkKind::Los ? d_los : d_nlos)++;
        if (!a.serving_ris)
            continue;
        if (a.ris_kind == LinkKind::Los)
        {
            ++u_los;
            if (a.g_kind == LinkKind::Los)
                ++g_los;
        }
        else
        {
            ++u_nlos;
        }
    }
    AssociationFrequencies f;
    f.deployments = valid;
    const double n = valid > 0 ? static_cast<double>(valid) : 1.0;
    f.a_d_los = d_los / n;
    f.a_d_nlos = d_nlos / n;
    f.a_u_los = u_los / n;
    f.a_u_nlos = u_nlos / n;
    f.a_g_los = g_los / n;
    f.a_g_nlos = (u_los + u_nlos - g_los) / n;
    return f;
}

}  // namespace riscov

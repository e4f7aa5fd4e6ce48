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

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "association.hpp"
#include "beamforming.hpp"
#include "config.hpp"
#include "numerics.hpp"
#include "propagation.hpp"

namespace riscov
{

/// Rate constant of the gamma-dummy approximation
/// P(nu > a) ~ sum_w (-1)^{w+1} C(W, w) E[exp(-w eps a)].
enum class AlzerConstant
{
    /// W (W!)^{-1/W}: the Alzer bound for a unit-mean Gamma(W) variable.
    Standard,
    /// W (W!)^{1/W}.
    Printed,
    /// (W!)^{-1/W}.
    Reciprocal,
    /// -ln(1 - 2^{-1/W}): puts the median of the approximating CDF at 1, so
    /// the family converges to a unit step as W grows.
    MedianMatched,
};

inline double alzer_epsilon(int w_terms, AlzerConstant variant)
{
    const double w = static_cast<double>(w_terms);
    const double log_fact = std::lgamma(w + 1.0);
    switch (variant)
    {
    case AlzerConstant::Standard:
        return w * std::exp(-log_fact / w);
    case AlzerConstant::Printed:
        return w * std::exp(log_fact / w);
    case AlzerConstant::Reciprocal:
        return std::exp(-log_fact / w);
    case AlzerConstant::MedianMatched:
        return -std::log1p(-std::exp2(-1.0 / w));
    }
    return w * std::exp(-log_fact / w);
}

/// (-1)^{w+1} C(W, w) for w = 1..W.
inline std::vector<double> alzer_coefficients(int w_terms)
{
    std::vector<double> c(static_cast<std::size_t>(w_terms));
    double binom = 1.0;
    for (int w = 1; w <= w_terms; ++w)
    {
        binom = binom * (w_terms - w + 1) / w;
        c[static_cast<std::size_t>(w - 1)] = (w % 2 == 1 ? 1.0 : -1.0) * binom;
    }
    return c;
}

/// How interferer beam gains enter the Laplace transforms.
enum class InterfererGainModel
{
    /// Deterministic mean gain per interferer.
    Mean,
    /// Random Fejer gain, averaged inside the transform.
    Distribution,
};

struct QuadratureSpec
{
    int q1 = 32;
    int q2 = 32;
    int q3 = 16;
    int w_alzer = 5;
    double tolerance = 1e-3;

    void validate() const
    {
        if (q1 < 4 || q2 < 4 || q3 < 4)
            throw std::invalid_argument("QuadratureSpec: node counts must be >= 4");
        if (w_alzer < 1)
            throw std::invalid_argument("QuadratureSpec: w_alzer must be >= 1");
        if (!(tolerance > 0.0))
            throw std::invalid_argument("QuadratureSpec: tolerance must be > 0");
    }
    QuadratureSpec doubled() const { return {2 * q1, 2 * q2, 2 * q3, 2 * w_alzer, tolerance}; }
};

struct AnalyticOptions
{
    AlzerConstant alzer = AlzerConstant::MedianMatched;
    SideConditionModel side = SideConditionModel::Averaged;
    InterfererGainModel gains = InterfererGainModel::Distribution;
    /// Scales of the tan maps for the BS and RIS distances; 0 selects the
    /// mean nearest-neighbour scale of the corresponding process.
    double x_scale = 0.0;
    double y_scale = 0.0;
    int gain_bins = 48;
};

enum class Engine
{
    Analytic,
    AnalyticSmallBeta,
    MonteCarlo,
};

inline char const* to_string(Engine e)
{
    switch (e)
    {
    case Engine::Analytic:
        return "analytic";
    case Engine::AnalyticSmallBeta:
        return "analytic-small-beta";
    case Engine::MonteCarlo:
        return "montecarlo";
    }
    return "unknown";
}

struct CoverageResult
{
    double total = 0.0;
    /// Contribution per (serving BS state, serving RIS state).
    std::array<std::array<double, 2>, 2> by_case{};
    /// Contribution of users without a serving RIS, per serving BS state.
    std::array<double, 2> no_ris{};
    Engine engine = Engine::Analytic;
    QuadratureSpec quad{};
    long trials = 0;
    double ci_low = std::numeric_limits<double>::quiet_NaN();
    double ci_high = std::numeric_limits<double>::quiet_NaN();
    bool clamped = false;

    double case_sum() const
    {
        return by_case[0][0] + by_case[0][1] + by_case[1][0] + by_case[1][1] + no_ris[0] + no_ris[1];
    }
};

inline std::size_t index(LinkKind k) { return k == LinkKind::Los ? 0 : 1; }

/// Probability that a BS has at least one user in its Voronoi cell, with the
/// 3.5-shape gamma approximation of the cell area.
inline double active_prob_bs(NetworkConfig const& cfg)
{
    if (cfg.lambda_u <= 0.0)
        return 0.0;
    if (cfg.lambda_bs <= 0.0)
        return 1.0;
    return 1.0 - std::pow(1.0 + cfg.lambda_u / cfg.lambda_bs, -3.5);
}

/// Active probability of a RIS whose cell is thinned by the side condition.
inline double active_prob_ris(NetworkConfig const& cfg, SideConditionModel model = SideConditionModel::Averaged)
{
    if (cfg.lambda_u <= 0.0)
        return 0.0;
    if (cfg.lambda_ris <= 0.0 || cfg.lambda_bs <= 0.0)
        return 1.0;
    const auto xr = numerics::tan_map_rule(0.0, bs_length_scale(cfg), 6);
    const auto yr = numerics::tan_map_rule(0.0, ris_length_scale(cfg), 8);
    const auto vr = numerics::panel_rule(0.0, numerics::pi, 4);
    double idle = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < xr.size(); ++i)
    {
        const double x = xr.nodes[i];
        const double fd = serving_bs_density(LinkKind::Los, x, cfg) + serving_bs_density(LinkKind::Nlos, x, cfg);
        if (!(fd > 0.0))
            continue;
        const RisVoidTable voids = model == SideConditionModel::Averaged ? RisVoidTable(x, cfg) : RisVoidTable{};
        for (std::size_t k = 0; k < vr.size(); ++k)
        {
            const double v = vr.nodes[k];
            for (std::size_t j = 0; j < yr.size(); ++j)
            {
                const double y = yr.nodes[j];
                const double fu = serving_ris_density(LinkKind::Los, x, y, v, model, voids, cfg)
                                  + serving_ris_density(LinkKind::Nlos, x, y, v, model, voids, cfg);
                const double w = xr.weights[i] * fd * vr.weights[k] * yr.weights[j] * fu;
                const double c = side_condition(x, y, v);
                if (c > 0.0)
                    idle += w * std::pow(1.0 + 2.0 * cfg.lambda_u / (c * cfg.lambda_ris), -3.5);
                mass += w;
            }
        }
    }
    return mass > 0.0 ? 1.0 - idle / mass : 1.0;
}

/// Aggregate power incident on a RIS from all BSs,
/// pi lambda_BS P int_{r_min}^inf (C_L z^-aL e^{-bz} + C_N z^-aN (1 - e^{-bz})) dz.
struct IncidentPower
{
    double value = 0.0;
    bool divergent = false;
};

inline IncidentPower ris_interference_power(NetworkConfig const& cfg)
{
    IncidentPower out;
    if (cfg.lambda_bs <= 0.0)
        return out;
    const double b = cfg.beta;
    const bool los_tail = b == 0.0;
    if ((los_tail && cfg.alpha_los <= 1.0) || (b > 0.0 && cfg.alpha_nlos <= 1.0))
    {
        out.value = std::numeric_limits<double>::infinity();
        out.divergent = true;
        return out;
    }
    auto f = [&](double z) {
        return cfg.c_los * std::pow(z, -cfg.alpha_los) * std::exp(-b * z)
               + cfg.c_nlos * std::pow(z, -cfg.alpha_nlos) * -std::expm1(-b * z);
    };
    const double r0 = cfg.r_min;
    const double far = std::max(r0 * 1e6, b > 0.0 ? 80.0 / b : 0.0);
    double integral = numerics::integrate_geometric(f, r0, far, 2.0);
    // Beyond `far` the LOS term has vanished (or is pure power law when b = 0).
    if (b > 0.0)
        integral += cfg.c_nlos * std::pow(far, 1.0 - cfg.alpha_nlos) / (cfg.alpha_nlos - 1.0);
    else
        integral += cfg.c_los * std::pow(far, 1.0 - cfg.alpha_los) / (cfg.alpha_los - 1.0);
    out.value = numerics::pi * cfg.lambda_bs * cfg.p_bs_watt() * integral;
    return out;
}

enum class InterfererSet
{
    BsLos,
    BsNlos,
    RisLos,
    RisNlos,
    RisIdleLos,
    RisIdleNlos,
};

inline LinkKind kind_of(InterfererSet set)
{
    switch (set)
    {
    case InterfererSet::BsLos:
    case InterfererSet::RisLos:
    case InterfererSet::RisIdleLos:
        return LinkKind::Los;
    default:
        return LinkKind::Nlos;
    }
}

inline bool is_bs_set(InterfererSet set) { return set == InterfererSet::BsLos || set == InterfererSet::BsNlos; }

inline bool is_idle_set(InterfererSet set)
{
    return set == InterfererSet::RisIdleLos || set == InterfererSet::RisIdleNlos;
}

/// Parameters of one interferer set in a Laplace transform.
struct InterfererModel
{
    LinkKind kind = LinkKind::Los;
    double alpha = 2.0;
    double intercept = 1.0;
    double power = 1.0;    // transmit (BS) or incident (RIS) power, W
    double density = 0.0;  // prefactor of the radial integral (2 pi lambda p or pi lambda p)
    GainDistribution gain = GainDistribution::constant(1.0);
    double gain_max = 1.0;
    double gain_mean = 1.0;
};

inline InterfererModel interferer_model(InterfererSet set, NetworkConfig const& cfg,
                                        InterfererGainModel gain_model = InterfererGainModel::Distribution,
                                        int gain_bins = 48, SideConditionModel side = SideConditionModel::Averaged)
{
    InterfererModel m;
    m.kind = kind_of(set);
    m.alpha = m.kind == LinkKind::Los ? cfg.alpha_los : cfg.alpha_nlos;
    m.intercept = m.kind == LinkKind::Los ? cfg.c_los : cfg.c_nlos;
    const AverageGains g = average_gains(cfg);
    if (is_bs_set(set))
    {
        m.power = cfg.p_bs_watt();
        m.density = 2.0 * numerics::pi * cfg.lambda_bs * active_prob_bs(cfg);
        if (gain_model == InterfererGainModel::Distribution)
            m.gain = misaligned_gain_distribution(cfg, gain_bins);
        else
            m.gain = GainDistribution::constant(g.direct());
    }
    else
    {
        m.power = ris_interference_power(cfg).value;
        const double pa = cfg.lambda_ris > 0.0 ? active_prob_ris(cfg, side) : 0.0;
        const double share = is_idle_set(set) ? 1.0 - pa : pa;
        m.density = numerics::pi * cfg.lambda_ris * share;
        m.gain = GainDistribution::constant(is_idle_set(set) ? g.reflected_idle() : g.reflected_active(cfg.n_ris));
    }
    m.gain_mean = m.gain.mean();
    m.gain_max = 0.0;
    for (double v : m.gain.values)
        m.gain_max = std::max(m.gain_max, v);
    return m;
}

namespace detail
{
/// density * int_e^inf w(r) h(t r^-alpha) r dr, with h(u) = 1 - E[exp(-u g)]
/// and distances below r_min floored. `h` takes ln u.
template<class H>
double radial_exponent(InterfererModel const& m, double exclusion, double t, H&& h, NetworkConfig const& cfg)
{
    if (m.density <= 0.0 || t <= 0.0)
        return 0.0;
    const double beta = cfg.beta;
    if (m.kind == LinkKind::Nlos && beta == 0.0)
        return 0.0;
    const double ln_t = std::log(t);
    double sum = 0.0;
    double e0 = exclusion;
    if (exclusion < cfg.r_min)
    {
        e0 = cfg.r_min;
        const double ring = area_integral(m.kind, cfg.r_min, beta) - area_integral(m.kind, exclusion, beta);
        sum += ring * h(ln_t - m.alpha * std::log(cfg.r_min));
    }
    const double r_lin = std::exp((ln_t + std::log(std::max(m.gain_max, 1e-300)) + 9.0 * std::log(10.0)) / m.alpha);
    const double r_far = std::max({2.0 * e0, r_lin, beta > 0.0 ? 60.0 / beta : 0.0});
    const auto& rule = numerics::gl16();
    double lo = e0;
    while (lo < r_far)
    {
        const double hi = std::min(2.0 * lo, r_far);
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i)
        {
            const double r = mid + half * rule.nodes[i];
            const double w = state_probability(m.kind, r, beta);
            panel += rule.weights[i] * w * h(ln_t - m.alpha * std::log(r)) * r;
        }
        sum += half * panel;
        lo = hi;
    }
    // Tail where h(u) ~ mean(g) u and the state weight is constant.
    const bool unit_weight = m.kind == LinkKind::Nlos || beta == 0.0;
    if (unit_weight)
    {
        if (m.alpha <= 2.0)
            return std::numeric_limits<double>::infinity();
        sum += m.gain_mean * t * std::pow(r_far, 2.0 - m.alpha) / (m.alpha - 2.0);
    }
    return m.density * sum;
}

/// Tabulated h(u) = 1 - sum_k p_k exp(-u g_k) stored as ln h over ln u.
class LaplaceKernelTable
{
public:
    explicit LaplaceKernelTable(GainDistribution const& g) : mean_(g.mean())
    {
        constexpr double lo = -40.0;
        constexpr double hi = 40.0;
        constexpr double step = 0.02;
        table_ = numerics::LogGridTable::sample(
            [&](double lu) {
                const double u = std::exp(lu);
                double acc = 0.0;
                for (std::size_t k = 0; k < g.size(); ++k)
                    acc -= g.probs[k] * std::expm1(-u * g.values[k]);
                return std::log(std::max(acc, 1e-300));
            },
            lo, hi, step);
    }
    double operator()(double ln_u) const
    {
        if (ln_u < table_.log_lo())
            return mean_ * std::exp(ln_u);
        return std::exp(table_.at_log(ln_u));
    }

private:
    double mean_ = 1.0;
    numerics::LogGridTable table_;
};

inline double exact_kernel(GainDistribution const& g, double ln_u)
{
    const double u = std::exp(ln_u);
    double acc = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k)
        acc -= g.probs[k] * std::expm1(-u * g.values[k]);
    return acc;
}
}  // namespace detail

/// Laplace transform E[exp(-s I)] of the interference from one set, with
/// interferers restricted to distances beyond `exclusion`.
inline double laplace_interference(InterfererSet set, double s, double exclusion, NetworkConfig const& cfg,
                                   AnalyticOptions const& opts = {})
{
    if (s < 0.0 || exclusion < 0.0)
        throw std::invalid_argument("laplace_interference: s and exclusion must be >= 0");
    const InterfererModel m = interferer_model(set, cfg, opts.gains, opts.gain_bins, opts.side);
    const double t = s * m.power * m.intercept;
    const double e = detail::radial_exponent(
        m, exclusion, t, [&](double ln_u) { return detail::exact_kernel(m.gain, ln_u); }, cfg);
    return std::exp(-e);
}

/// Gauss-Chebyshev abscissas and weights on the half line (x, y) and on
/// [0, 2 pi] (v) at unit scale.
struct GcqNodes
{
    numerics::QuadratureRule x;
    numerics::QuadratureRule y;
    numerics::QuadratureRule upsilon;
};

inline GcqNodes gcq_nodes(QuadratureSpec const& q)
{
    return {numerics::chebyshev_half_line(static_cast<std::size_t>(q.q1)),
            numerics::chebyshev_half_line(static_cast<std::size_t>(q.q2)),
            numerics::chebyshev_angle(static_cast<std::size_t>(q.q3))};
}

/// Which interferer sets and exclusions the engine uses.
enum class InterferenceSets
{
    /// LOS and NLOS sets with max-power exclusion radii.
    Full,
    /// LOS sets only, excluded beyond the serving distances.
    LosOnly,
};

namespace detail
{
/// -ln of a product of Laplace transforms as a function of ln s.
class LogLaplaceTable
{
public:
    LogLaplaceTable() = default;

    template<class F>
    LogLaplaceTable(F&& exponent, double ln_s_anchor)
    {
        constexpr double step = 0.1;
        constexpr double reach = 80.0;
        const double a0 = exponent(std::exp(ln_s_anchor));
        if (std::isinf(a0))
        {
            divergent_ = true;
            return;
        }
        if (a0 <= 0.0)
        {
            const double probe = exponent(std::exp(ln_s_anchor + 20.0));
            if (probe <= 0.0)
            {
                zero_ = true;
                return;
            }
        }
        std::vector<double> down;
        std::vector<double> up;
        for (double u = ln_s_anchor - step;; u -= step)
        {
            const double v = exponent(std::exp(u));
            down.push_back(std::log(std::max(v, 1e-300)));
            if (v < 1e-14 || u < ln_s_anchor - reach)
                break;
        }
        for (double u = ln_s_anchor;; u += step)
        {
            const double v = exponent(std::exp(u));
            up.push_back(std::log(std::max(v, 1e-300)));
            if (v > 2e3 || u > ln_s_anchor + reach)
                break;
        }
        while (down.size() + up.size() < 4)
            up.push_back(up.back());
        std::vector<double> values(down.rbegin(), down.rend());
        values.insert(values.end(), up.begin(), up.end());
        const double lo = ln_s_anchor - step * static_cast<double>(down.size());
        table_ = numerics::LogGridTable(lo, step, std::move(values));
    }

    /// Sum of the transform exponents at ln s.
    double operator()(double ln_s) const
    {
        if (zero_)
            return 0.0;
        if (divergent_)
            return std::numeric_limits<double>::infinity();
        return std::exp(table_.at_log(ln_s));
    }

private:
    bool zero_ = false;
    bool divergent_ = false;
    numerics::LogGridTable table_;
};
}  // namespace detail

/// Semianalytical coverage evaluator. Construction tabulates every
/// threshold-independent quantity; evaluation at a threshold is then a
/// finite sum over quadrature nodes.
class CoverageEngine
{
public:
    CoverageEngine(NetworkConfig const& cfg, QuadratureSpec const& quad = {}, AnalyticOptions const& opts = {},
                   InterferenceSets sets = InterferenceSets::Full)
        : cfg_(cfg), quad_(quad), opts_(opts), sets_(sets)
    {
        cfg_.validate();
        quad_.validate();
        build();
    }

    /// Coverage with the RIS path (P1 under scheme 1, P2 under scheme 2).
    CoverageResult coverage(double threshold) const { return evaluate(threshold, true); }
    /// Coverage of the direct link alone, RIS interference kept.
    CoverageResult coverage_direct(double threshold) const { return evaluate(threshold, false); }

    NetworkConfig const& config() const { return cfg_; }
    double p_active_bs() const { return pa_bs_; }
    double p_active_ris() const { return pa_ris_; }

private:
    struct XNode
    {
        double x = 0.0;
        double weight = 0.0;
        std::array<double, 2> density{};
        std::array<double, 2> path_gain{};
        std::array<detail::LogLaplaceTable, 2> bs_exponent;
    };
    struct YNode
    {
        double y = 0.0;
        double weight = 0.0;
        std::array<double, 2> path_gain{};
        std::array<detail::LogLaplaceTable, 2> ris_exponent;
    };

    bool has_ris() const { return cfg_.lambda_ris > 0.0; }

    ExclusionRadii exclusions(LinkKind kind, double d) const
    {
        if (sets_ == InterferenceSets::LosOnly)
            return {d, d};
        return exclusion_radii(kind, d, cfg_);
    }

    void build()
    {
        const double xs = opts_.x_scale > 0.0 ? opts_.x_scale : bs_length_scale(cfg_);
        const double ys = opts_.y_scale > 0.0 ? opts_.y_scale : ris_length_scale(cfg_);
        const auto xr = numerics::chebyshev_half_line(static_cast<std::size_t>(quad_.q1), xs);
        const auto yr = numerics::chebyshev_half_line(static_cast<std::size_t>(quad_.q2), ys);
        vr_ = numerics::chebyshev_angle(static_cast<std::size_t>(quad_.q3));
        pa_bs_ = active_prob_bs(cfg_);
        pa_ris_ = has_ris() ? active_prob_ris(cfg_, opts_.side) : 0.0;
        noise_ = cfg_.noise_watt();
        p_ = cfg_.p_bs_watt();

        const auto serving = misaligned_gain_distribution(cfg_, opts_.gain_bins);
        const double aligned = static_cast<double>(cfg_.n_bs) * cfg_.n_u;
        const double n2 = static_cast<double>(cfg_.n_ris) * cfg_.n_ris;
        if (cfg_.antenna_scheme == AntennaScheme::Scheme1 && has_ris())
        {
            m_dl_ = serving;
            m_rl_ = GainDistribution::constant(aligned * n2);
        }
        else
        {
            m_dl_ = GainDistribution::constant(aligned);
            m_rl_ = serving;
            for (double& v : m_rl_.values)
                v *= n2;
        }

        const bool full = sets_ == InterferenceSets::Full;
        auto bs_l = interferer_model(InterfererSet::BsLos, cfg_, opts_.gains, opts_.gain_bins, opts_.side);
        auto bs_n = interferer_model(InterfererSet::BsNlos, cfg_, opts_.gains, opts_.gain_bins, opts_.side);
        const detail::LaplaceKernelTable bs_kernel(bs_l.gain);

        xs_.resize(xr.size());
        for (std::size_t i = 0; i < xr.size(); ++i)
        {
            XNode& n = xs_[i];
            n.x = xr.nodes[i];
            n.weight = xr.weights[i];
            const double xd = std::max(n.x, cfg_.r_min);
            for (LinkKind rho : {LinkKind::Los, LinkKind::Nlos})
            {
                const std::size_t r = index(rho);
                n.density[r] = serving_bs_density(rho, n.x, cfg_);
                n.path_gain[r] = path_gain(rho, xd, cfg_);
                const auto ex = exclusions(rho, n.x);
                auto exponent = [&](double s) {
                    double e = detail::radial_exponent(bs_l, ex.los, s * bs_l.power * bs_l.intercept, bs_kernel, cfg_);
                    if (full)
                        e += detail::radial_exponent(bs_n, ex.nlos, s * bs_n.power * bs_n.intercept, bs_kernel,
                                                     cfg_);
                    return e;
                };
                // Anchor at the scale of the strongest interferer at the exclusion.
                const double anchor = -std::log(p_ * bs_l.intercept * bs_l.gain_mean)
                                      + bs_l.alpha * std::log(std::max(ex.los, cfg_.r_min));
                n.bs_exponent[r] = detail::LogLaplaceTable(exponent, anchor);
            }
        }

        if (!has_ris())
            return;

        const InterfererModel ris_models[4] = {
            interferer_model(InterfererSet::RisLos, cfg_, opts_.gains, opts_.gain_bins, opts_.side),
            interferer_model(InterfererSet::RisNlos, cfg_, opts_.gains, opts_.gain_bins, opts_.side),
            interferer_model(InterfererSet::RisIdleLos, cfg_, opts_.gains, opts_.gain_bins, opts_.side),
            interferer_model(InterfererSet::RisIdleNlos, cfg_, opts_.gains, opts_.gain_bins, opts_.side),
        };
        ys_.resize(yr.size());
        for (std::size_t j = 0; j < yr.size(); ++j)
        {
            YNode& n = ys_[j];
            n.y = yr.nodes[j];
            n.weight = yr.weights[j];
            const double yd = std::max(n.y, cfg_.r_min);
            for (LinkKind xi : {LinkKind::Los, LinkKind::Nlos})
            {
                const std::size_t r = index(xi);
                n.path_gain[r] = path_gain(xi, yd, cfg_);
                const auto ex = exclusions(xi, n.y);
                auto exponent = [&](double s) {
                    double e = 0.0;
                    for (auto const& m : ris_models)
                    {
                        if (!full && m.kind == LinkKind::Nlos)
                            continue;
                        const double excl = m.kind == LinkKind::Los ? ex.los : ex.nlos;
                        e += detail::radial_exponent(
                            m, excl, s * m.power * m.intercept,
                            [&](double ln_u) { return -std::expm1(-std::exp(ln_u) * m.gain_mean); }, cfg_);
                    }
                    return e;
                };
                const auto& m0 = ris_models[0];
                const double anchor = -std::log(std::max(m0.power * m0.intercept * m0.gain_mean, 1e-300))
                                      + m0.alpha * std::log(std::max(ex.los, cfg_.r_min));
                n.ris_exponent[r] = detail::LogLaplaceTable(exponent, anchor);
            }
        }

        // Serving-RIS densities per (x, v, y, xi).
        const std::size_t nx = xs_.size();
        const std::size_t nv = vr_.size();
        const std::size_t ny = ys_.size();
        ris_density_.assign(nx * nv * ny * 2, 0.0);
        bs_ris_distance_.assign(nx * nv * ny, 0.0);
        for (std::size_t i = 0; i < nx; ++i)
        {
            const double x = xs_[i].x;
            const RisVoidTable voids =
                opts_.side == SideConditionModel::Averaged ? RisVoidTable(x, cfg_) : RisVoidTable{};
            for (std::size_t k = 0; k < nv; ++k)
            {
                const double v = vr_.nodes[k];
                for (std::size_t j = 0; j < ny; ++j)
                {
                    const double y = ys_[j].y;
                    const std::size_t base = (i * nv + k) * ny + j;
                    bs_ris_distance_[base] = std::sqrt(std::max(0.0, x * x + y * y - 2.0 * x * y * std::cos(v)));
                    for (LinkKind xi : {LinkKind::Los, LinkKind::Nlos})
                        ris_density_[base * 2 + index(xi)] =
                            serving_ris_density(xi, x, y, v, opts_.side, voids, cfg_);
                }
            }
        }
    }

    CoverageResult evaluate(double threshold, bool with_ris_path) const
    {
        if (!(threshold > 0.0))
            throw std::invalid_argument("coverage: threshold must be > 0");
        CoverageResult res;
        res.engine = sets_ == InterferenceSets::Full ? Engine::Analytic : Engine::AnalyticSmallBeta;
        res.quad = quad_;
        const auto coef = alzer_coefficients(quad_.w_alzer);
        const double ln_eps_t = std::log(alzer_epsilon(quad_.w_alzer, opts_.alzer) * threshold);
        std::vector<double> ln_w(coef.size());
        for (std::size_t w = 0; w < coef.size(); ++w)
            ln_w[w] = std::log(static_cast<double>(w + 1));

        // sum_w c_w exp(-s_w sigma^2 - A(s_w) - B(s_w)) for a given signal power.
        auto alzer_sum = [&](double signal, detail::LogLaplaceTable const& bs,
                             detail::LogLaplaceTable const* ris) {
            if (!(signal > 0.0))
                return 0.0;
            const double ln_s0 = ln_eps_t - std::log(signal);
            double acc = 0.0;
            for (std::size_t w = 0; w < coef.size(); ++w)
            {
                const double ln_s = ln_s0 + ln_w[w];
                const double s = std::exp(ln_s);
                double e = s * noise_ + bs(ln_s);
                if (ris)
                    e += (*ris)(ln_s);
                acc += coef[w] * std::exp(-e);
            }
            return acc;
        };

        const std::size_t nv = vr_.size();
        const std::size_t ny = ys_.size();
        for (std::size_t i = 0; i < xs_.size(); ++i)
        {
            const XNode& xn = xs_[i];
            for (LinkKind rho : {LinkKind::Los, LinkKind::Nlos})
            {
                const std::size_t r = index(rho);
                const double wx = xn.weight * xn.density[r];
                if (!(wx > 0.0))
                    continue;
                const double direct_power = p_ * xn.path_gain[r];
                if (!has_ris())
                {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < m_dl_.size(); ++k)
                        acc += m_dl_.probs[k] * alzer_sum(direct_power * m_dl_.values[k], xn.bs_exponent[r], nullptr);
                    res.no_ris[r] += wx * acc;
                    continue;
                }
                for (std::size_t kv = 0; kv < nv; ++kv)
                {
                    const double wv = wx * vr_.weights[kv] / numerics::two_pi;
                    for (std::size_t j = 0; j < ny; ++j)
                    {
                        const YNode& yn = ys_[j];
                        const std::size_t base = (i * nv + kv) * ny + j;
                        const double z = std::max(bs_ris_distance_[base], cfg_.r_min);
                        for (LinkKind xi : {LinkKind::Los, LinkKind::Nlos})
                        {
                            const std::size_t q = index(xi);
                            const double wy = wv * yn.weight * ris_density_[base * 2 + q];
                            if (!(wy > 0.0))
                                continue;
                            const auto& ris_tab = yn.ris_exponent[q];
                            double acc = 0.0;
                            if (!with_ris_path)
                            {
                                for (std::size_t k = 0; k < m_dl_.size(); ++k)
                                    acc += m_dl_.probs[k]
                                           * alzer_sum(direct_power * m_dl_.values[k], xn.bs_exponent[r], &ris_tab);
                            }
                            else
                            {
                                for (LinkKind g : {LinkKind::Los, LinkKind::Nlos})
                                {
                                    const double pg = state_probability(g, z, cfg_.beta);
                                    if (!(pg > 0.0))
                                        continue;
                                    const double refl_power = p_ * path_gain(g, z, cfg_) * yn.path_gain[q];
                                    double acc_g = 0.0;
                                    for (std::size_t a = 0; a < m_dl_.size(); ++a)
                                        for (std::size_t b = 0; b < m_rl_.size(); ++b)
                                        {
                                            const double amp = std::sqrt(direct_power * m_dl_.values[a])
                                                               + std::sqrt(refl_power * m_rl_.values[b]);
                                            acc_g += m_dl_.probs[a] * m_rl_.probs[b]
                                                     * alzer_sum(amp * amp, xn.bs_exponent[r], &ris_tab);
                                        }
                                    acc += pg * acc_g;
                                }
                            }
                            res.by_case[r][q] += wy * acc;
                        }
                    }
                }
            }
        }
        res.total = res.case_sum();
        if (res.total < -quad_.tolerance || res.total > 1.0 + quad_.tolerance)
        {
            res.clamped = true;
            res.total = std::clamp(res.total, 0.0, 1.0);
        }
        return res;
    }

    NetworkConfig cfg_;
    QuadratureSpec quad_;
    AnalyticOptions opts_;
    InterferenceSets sets_;
    numerics::QuadratureRule vr_;
    std::vector<XNode> xs_;
    std::vector<YNode> ys_;
    std::vector<double> ris_density_;
    std::vector<double> bs_ris_distance_;
    GainDistribution m_dl_;
    GainDistribution m_rl_;
    double pa_bs_ = 0.0;
    double pa_ris_ = 0.0;
    double noise_ = 0.0;
    double p_ = 0.0;
};

inline CoverageResult coverage_theorem1(double threshold, NetworkConfig const& cfg, QuadratureSpec const& quad = {},
                                        AnalyticOptions const& opts = {})
{
    return CoverageEngine(cfg, quad, opts).coverage(threshold);
}

inline CoverageResult coverage_direct(double threshold, NetworkConfig const& cfg, QuadratureSpec const& quad = {},
                                      AnalyticOptions const& opts = {})
{
    return CoverageEngine(cfg, quad, opts).coverage_direct(threshold);
}

inline CoverageResult coverage_small_beta(double threshold, NetworkConfig const& cfg,
                                          QuadratureSpec const& quad = {}, AnalyticOptions const& opts = {})
{
    return CoverageEngine(cfg, quad, opts, InterferenceSets::LosOnly).coverage(threshold);
}

struct EfficiencyResult
{
    double ase = 0.0;            // bit/s/Hz per m^2
    double power_density = 0.0;  // W per m^2
    double ee = 0.0;             // bit/s/Hz per J
    double p1 = 0.0;
    double pd = 0.0;
    double p_active_bs = 0.0;
    double p_active_ris = 0.0;
};

/// Two-regime area spectral efficiency. `bs_links` = lambda_BS p_aBS and
/// `ris_links` = lambda_R p_aR.
inline double ase_from_parts(double bs_links, double ris_links, double p1, double pd, double threshold)
{
    const double rate = std::log2(1.0 + threshold);
    if (bs_links > ris_links)
        return ris_links * p1 * rate + (bs_links - ris_links) * pd * rate;
    return bs_links * p1 * rate;
}

inline double power_density(NetworkConfig const& cfg, double pa_bs, double pa_ris)
{
    return cfg.lambda_bs * pa_bs * (cfg.p0_watt + cfg.delta * cfg.p_bs_watt())
           + cfg.lambda_ris * pa_ris * cfg.n_ris * cfg.p_elem_watt();
}

inline EfficiencyResult efficiency(double threshold, CoverageEngine const& engine)
{
    NetworkConfig const& cfg = engine.config();
    EfficiencyResult out;
    out.p_active_bs = engine.p_active_bs();
    out.p_active_ris = engine.p_active_ris();
    out.pd = engine.coverage_direct(threshold).total;
    out.p1 = cfg.lambda_ris > 0.0 ? engine.coverage(threshold).total : out.pd;
    out.ase = ase_from_parts(cfg.lambda_bs * out.p_active_bs, cfg.lambda_ris * out.p_active_ris, out.p1, out.pd,
                             threshold);
    out.power_density = power_density(cfg, out.p_active_bs, out.p_active_ris);
    out.ee = out.power_density > 0.0 ? out.ase / out.power_density : 0.0;
    return out;
}

inline EfficiencyResult ase(double threshold, NetworkConfig const& cfg, QuadratureSpec const& quad = {},
                            AnalyticOptions const& opts = {})
{
    return efficiency(threshold, CoverageEngine(cfg, quad, opts));
}

inline EfficiencyResult energy_efficiency(double threshold, NetworkConfig const& cfg,
                                          QuadratureSpec const& quad = {}, AnalyticOptions const& opts = {})
{
    return efficiency(threshold, CoverageEngine(cfg, quad, opts));
}

}  // namespace riscov

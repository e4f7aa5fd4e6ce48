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
#include <limits>
#include <vector>

#include "config.hpp"
#include "numerics.hpp"
#include "propagation.hpp"

namespace riscov
{

struct AssociationCase
{
    LinkKind bs = LinkKind::Los;
    LinkKind ris = LinkKind::Los;
};

/// How the RIS void probability treats the side condition.
enum class SideConditionModel
{
    /// C(x, y, v) evaluated at the candidate RIS and applied to the whole
    /// disc, as in the closed-form nearest-RIS law.
    Frozen,
    /// Exact thinning: the void integrates C over the disc, which reduces to
    /// the angular mean of C at each radius.
    Averaged,
};

/// Integral of e^{-beta r} r over [0, x].
inline double los_area_integral(double x, double beta)
{
    const double bx = beta * x;
    if (bx < 1e-3)
    {
        // Series of (1 - e^{-u}(1 + u)) / beta^2 = x^2 (1/2 - u/3 + u^2/8 - u^3/30).
        return x * x * (0.5 - bx / 3.0 + bx * bx / 8.0 - bx * bx * bx / 30.0);
    }
    return -std::expm1(-bx) / (beta * beta) - x * std::exp(-bx) / beta;
}

/// Integral of (1 - e^{-beta r}) r over [0, x].
inline double nlos_area_integral(double x, double beta)
{
    return 0.5 * x * x - los_area_integral(x, beta);
}

inline double area_integral(LinkKind kind, double x, double beta)
{
    return kind == LinkKind::Los ? los_area_integral(x, beta) : nlos_area_integral(x, beta);
}

inline double state_probability(LinkKind kind, double x, double beta)
{
    return kind == LinkKind::Los ? los_probability(x, beta) : -std::expm1(-beta * x);
}

inline LinkKind other(LinkKind k) { return k == LinkKind::Los ? LinkKind::Nlos : LinkKind::Los; }

/// Radii inside which no interferer of the (LOS, NLOS) sets may lie when the
/// serving link has state `kind` at distance x under max received power.
struct ExclusionRadii
{
    double los = 0.0;
    double nlos = 0.0;
};

inline ExclusionRadii exclusion_radii(LinkKind kind, double x, NetworkConfig const& cfg)
{
    if (kind == LinkKind::Los)
        return {x, chi_los(x, cfg)};
    return {chi_nlos(x, cfg), x};
}

/// Density of the distance to the nearest LOS BS.
inline double nearest_los_bs_pdf(double x, NetworkConfig const& cfg)
{
    return 2.0 * numerics::pi * cfg.lambda_bs * los_probability(x, cfg.beta) * x
           * std::exp(-2.0 * numerics::pi * cfg.lambda_bs * los_area_integral(x, cfg.beta));
}

/// Joint density of {serving BS has state `kind`, at distance x}. Integrates
/// over x to the association probability of that state.
inline double serving_bs_density(LinkKind kind, double x, NetworkConfig const& cfg)
{
    if (x <= 0.0 || cfg.lambda_bs <= 0.0)
        return 0.0;
    const double two_pi_lambda = 2.0 * numerics::pi * cfg.lambda_bs;
    const auto ex = exclusion_radii(kind, x, cfg);
    const double void_exponent = los_area_integral(ex.los, cfg.beta) + nlos_area_integral(ex.nlos, cfg.beta);
    return two_pi_lambda * state_probability(kind, x, cfg.beta) * x * std::exp(-two_pi_lambda * void_exponent);
}

/// Length scale of the serving-BS distance, used to place quadrature nodes.
inline double bs_length_scale(NetworkConfig const& cfg)
{
    return cfg.lambda_bs > 0.0 ? 1.0 / std::sqrt(numerics::pi * cfg.lambda_bs) : 100.0;
}

/// Length scale of the serving-RIS distance (eligible RISs have about a
/// quarter of the full density).
inline double ris_length_scale(NetworkConfig const& cfg)
{
    return cfg.lambda_ris > 0.0 ? 1.0 / std::sqrt(0.25 * numerics::pi * cfg.lambda_ris) : 100.0;
}

inline double assoc_prob_bs(LinkKind kind, NetworkConfig const& cfg)
{
    if (cfg.lambda_bs <= 0.0)
        return 0.0;
    const double scale = bs_length_scale(cfg);
    return numerics::integrate_tan_map([&](double x) { return serving_bs_density(kind, x, cfg); }, 0.0,
                                       scale, 32);
}

/// Probability that the user and the BS lie on the same side of a RIS line
/// of uniformly random orientation; x = BS-user distance, y = RIS-user
/// distance, v = angle between the two links at the user.
inline double side_condition(double x, double y, double upsilon)
{
    const double z2 = x * x + y * y - 2.0 * x * y * std::cos(upsilon);
    if (!(z2 > 1e-24 * (x * x + y * y)))
        return 0.5;
    double c = (y - x * std::cos(upsilon)) / std::sqrt(z2);
    c = std::clamp(c, -1.0, 1.0);
    return 1.0 - std::acos(c) / numerics::pi;
}

namespace detail
{
inline numerics::UniformGridTable build_side_condition_mean_table()
{
    constexpr double lo = -14.0;
    constexpr double hi = 14.0;
    constexpr double step = 0.005;
    const int n = static_cast<int>((hi - lo) / step) + 1;
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
    {
        const double t = std::exp(lo + i * step);
        // C(1, t, v) is symmetric in v about pi; integrate over [0, pi].
        const double mean = numerics::integrate_panels(
                                [&](double v) { return side_condition(1.0, t, v); }, 0.0, numerics::pi, 16)
                            / numerics::pi;
        values[static_cast<std::size_t>(i)] = mean;
    }
    return {lo, step, std::move(values)};
}
}  // namespace detail

/// Angular mean of C(x, y, v) over v, as a function of t = y / x.
inline double side_condition_mean(double t)
{
    static const numerics::UniformGridTable table = detail::build_side_condition_mean_table();
    if (t <= 0.0)
        return 0.5;
    return table(std::log(t));
}

/// Density of the distance to the nearest LOS RIS that satisfies the side
/// condition, with C frozen at its value for the candidate.
inline double nearest_los_ris_pdf(double x, double y, double upsilon, NetworkConfig const& cfg)
{
    if (y <= 0.0 || cfg.lambda_ris <= 0.0)
        return 0.0;
    const double c = side_condition(x, y, upsilon);
    const double k = numerics::pi * cfg.lambda_ris * c;
    return k * los_probability(y, cfg.beta) * y * std::exp(-k * los_area_integral(y, cfg.beta));
}

/// Expected number of eligible RISs of each state within radius r of the
/// user, given the serving BS at distance x, under the Averaged model.
class RisVoidTable
{
public:
    RisVoidTable() = default;

    RisVoidTable(double x, NetworkConfig const& cfg) : x_(x), beta_(cfg.beta), lambda_(cfg.lambda_ris)
    {
        constexpr double lo = -7.0;   // ln r
        constexpr double hi = 16.0;
        constexpr double step = 0.05;
        const int n = static_cast<int>((hi - lo) / step) + 1;
        std::vector<double> vl(static_cast<std::size_t>(n));
        std::vector<double> vn(static_cast<std::size_t>(n));
        static const numerics::QuadratureRule rule = numerics::gauss_legendre(8);
        const double k = numerics::pi * lambda_;
        auto cell = [&](double a, double b, LinkKind kind) {
            return numerics::integrate_gl(
                [&](double r) {
                    return side_condition_mean(r / x_) * state_probability(kind, r, beta_) * r;
                },
                a, b, rule);
        };
        // Inner disc [0, r0]: C-mean is ~1/2 there when r0 << x.
        const double r0 = std::exp(lo);
        double acc_l = k * numerics::integrate_gl(
                               [&](double r) { return side_condition_mean(r / x_) * los_probability(r, beta_) * r; },
                               0.0, r0, rule);
        double acc_n = k * numerics::integrate_gl(
                               [&](double r) {
                                   return side_condition_mean(r / x_) * state_probability(LinkKind::Nlos, r, beta_) * r;
                               },
                               0.0, r0, rule);
        vl[0] = acc_l;
        vn[0] = acc_n;
        for (int i = 1; i < n; ++i)
        {
            const double a = std::exp(lo + (i - 1) * step);
            const double b = std::exp(lo + i * step);
            acc_l += k * cell(a, b, LinkKind::Los);
            acc_n += k * cell(a, b, LinkKind::Nlos);
            vl[static_cast<std::size_t>(i)] = acc_l;
            vn[static_cast<std::size_t>(i)] = acc_n;
        }
        los_ = numerics::UniformGridTable(lo, step, std::move(vl));
        nlos_ = numerics::UniformGridTable(lo, step, std::move(vn));
        log_lo_ = lo;
        log_hi_ = hi;
    }

    double mean_count(LinkKind kind, double r) const
    {
        if (r <= 0.0 || lambda_ <= 0.0)
            return 0.0;
        const double u = std::log(r);
        if (u <= log_lo_)
            return 0.5 * numerics::pi * lambda_ * area_integral(kind, r, beta_);
        if (u >= log_hi_)
            return std::numeric_limits<double>::infinity();
        return kind == LinkKind::Los ? los_(u) : nlos_(u);
    }

private:
    double x_ = 1.0;
    double beta_ = 0.0;
    double lambda_ = 0.0;
    double log_lo_ = 0.0;
    double log_hi_ = 0.0;
    numerics::UniformGridTable los_;
    numerics::UniformGridTable nlos_;
};

/// Density in (y, v / 2 pi) of {serving RIS has state `kind`, at distance y
/// and angle v from the serving-BS direction}, given the serving BS at x.
/// `voids` must be built for the same x when the model is Averaged.
inline double serving_ris_density(LinkKind kind, double x, double y, double upsilon,
                                  SideConditionModel model, RisVoidTable const& voids,
                                  NetworkConfig const& cfg)
{
    if (y <= 0.0 || cfg.lambda_ris <= 0.0)
        return 0.0;
    const double c = side_condition(x, y, upsilon);
    const double k = numerics::pi * cfg.lambda_ris;
    const auto ex = exclusion_radii(kind, y, cfg);
    double void_count = 0.0;
    if (model == SideConditionModel::Frozen)
        void_count = k * c * (los_area_integral(ex.los, cfg.beta) + nlos_area_integral(ex.nlos, cfg.beta));
    else
        void_count = voids.mean_count(LinkKind::Los, ex.los) + voids.mean_count(LinkKind::Nlos, ex.nlos);
    return k * c * state_probability(kind, y, cfg.beta) * y * std::exp(-void_count);
}

/// Serving-RIS density with the void built on the fly.
inline double serving_ris_density(LinkKind kind, double x, double y, double upsilon,
                                  SideConditionModel model, NetworkConfig const& cfg)
{
    if (model == SideConditionModel::Frozen)
        return serving_ris_density(kind, x, y, upsilon, model, RisVoidTable{}, cfg);
    return serving_ris_density(kind, x, y, upsilon, model, RisVoidTable(x, cfg), cfg);
}

/// Association probabilities of the RIS path, integrated over the serving BS.
struct RisAssociation
{
    double a_u_los = 0.0;   // serving RIS link LOS
    double a_u_nlos = 0.0;  // serving RIS link NLOS
    double a_g_los = 0.0;   // RIS link and BS-RIS link both LOS
    double a_g_nlos = 0.0;  // complement within RIS association
};

inline RisAssociation ris_association(NetworkConfig const& cfg,
                                      SideConditionModel model = SideConditionModel::Averaged)
{
    RisAssociation out;
    if (cfg.lambda_ris <= 0.0 || cfg.lambda_bs <= 0.0)
        return out;
    const auto xr = numerics::tan_map_rule(0.0, bs_length_scale(cfg), 6);
    const auto yr = numerics::tan_map_rule(0.0, ris_length_scale(cfg), 8);
    // The integrand is symmetric in v about pi; C has a kink at v = 0.
    const auto vr = numerics::panel_rule(0.0, numerics::pi, 4);

    for (std::size_t i = 0; i < xr.size(); ++i)
    {
        const double x = xr.nodes[i];
        const double fd = serving_bs_density(LinkKind::Los, x, cfg) + serving_bs_density(LinkKind::Nlos, x, cfg);
        if (!(fd > 0.0))
            continue;
        const RisVoidTable voids = model == SideConditionModel::Averaged ? RisVoidTable(x, cfg) : RisVoidTable{};
        const double wx = xr.weights[i] * fd / numerics::pi;
        for (std::size_t k = 0; k < vr.size(); ++k)
        {
            const double v = vr.nodes[k];
            const double cv = std::cos(v);
            for (std::size_t j = 0; j < yr.size(); ++j)
            {
                const double y = yr.nodes[j];
                const double w = wx * vr.weights[k] * yr.weights[j];
                const double dl = serving_ris_density(LinkKind::Los, x, y, v, model, voids, cfg);
                const double dn = serving_ris_density(LinkKind::Nlos, x, y, v, model, voids, cfg);
                const double z = std::sqrt(std::max(0.0, x * x + y * y - 2.0 * x * y * cv));
                out.a_u_los += w * dl;
                out.a_u_nlos += w * dn;
                out.a_g_los += w * dl * los_probability(z, cfg.beta);
            }
        }
    }
    out.a_g_nlos = out.a_u_los - out.a_g_los + out.a_u_nlos;
    return out;
}

inline double assoc_prob_ris(LinkKind kind, NetworkConfig const& cfg,
                             SideConditionModel model = SideConditionModel::Averaged)
{
    const auto a = ris_association(cfg, model);
    return kind == LinkKind::Los ? a.a_u_los : a.a_u_nlos;
}

inline double assoc_prob_via_ris(LinkKind kind, NetworkConfig const& cfg,
                                 SideConditionModel model = SideConditionModel::Averaged)
{
    const auto a = ris_association(cfg, model);
    return kind == LinkKind::Los ? a.a_g_los : a.a_g_nlos;
}

}  // namespace riscov

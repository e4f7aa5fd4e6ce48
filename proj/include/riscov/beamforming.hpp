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
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "config.hpp"
#include "numerics.hpp"

namespace riscov
{

/// sin^2(pi n x) / sin^2(pi x), the power pattern of an n-element ULA.
inline double fejer_kernel(double offset, int n)
{
    const double nn = static_cast<double>(n);
    const double s = std::sin(numerics::pi * offset);
    if (std::abs(s) < 1e-9)
    {
        // Near an integer the kernel is n^2 (1 - (n^2 - 1) pi^2 delta^2 / 3).
        const double delta = offset - std::round(offset);
        const double pd = numerics::pi * delta;
        return nn * nn * (1.0 - (nn * nn - 1.0) * pd * pd / 3.0);
    }
    const double num = std::sin(numerics::pi * nn * offset);
    return std::clamp(num * num / (s * s), 0.0, nn * nn);
}

/// (d / wavelength) * sin(angle).
inline double spatial_frequency(double angle, double d_over_omega)
{
    return d_over_omega * std::sin(angle);
}

/// Departure/arrival angles of the direct (d), BS-RIS (g) and RIS-user (u)
/// links, in radians.
struct SteeringAngleSet
{
    double theta_d = 0.0;
    double phi_d = 0.0;
    double theta_g = 0.0;
    double phi_g = 0.0;
    double theta_u = 0.0;
    double phi_u = 0.0;
};

struct RisPhaseProfile
{
    std::vector<double> psi;
};

/// Gain of a BS-user link whose BS and user beams point at `beam_target`'s
/// direct-link angles. Equals n_bs * n_u when aligned.
inline double direct_gain(SteeringAngleSet const& angles, SteeringAngleSet const& beam_target,
                          NetworkConfig const& cfg)
{
    const double dw = cfg.d_over_omega;
    const double a = spatial_frequency(angles.theta_d, dw) - spatial_frequency(beam_target.theta_d, dw);
    const double b = spatial_frequency(angles.phi_d, dw) - spatial_frequency(beam_target.phi_d, dw);
    return fejer_kernel(a, cfg.n_bs) * fejer_kernel(b, cfg.n_u)
           / (static_cast<double>(cfg.n_bs) * static_cast<double>(cfg.n_u));
}

/// Phase profile that co-phases all RIS elements for a wave arriving at
/// phi_g and leaving towards theta_u.
inline RisPhaseProfile optimal_ris_phases(double theta_u, double phi_g, NetworkConfig const& cfg)
{
    const double delta = spatial_frequency(theta_u, cfg.d_over_omega)
                         - spatial_frequency(phi_g, cfg.d_over_omega);
    RisPhaseProfile out;
    out.psi.resize(static_cast<std::size_t>(cfg.n_ris));
    for (int n = 0; n < cfg.n_ris; ++n)
    {
        double p = std::fmod(numerics::two_pi * n * delta, numerics::two_pi);
        if (p < 0.0)
            p += numerics::two_pi;
        out.psi[static_cast<std::size_t>(n)] = p;
    }
    return out;
}

/// |sum_n exp(j(2 pi (n-1)(theta_u' - phi_g') - psi_n))|^2 for the given
/// arrival/departure angles and element phases.
inline double ris_array_gain(double theta_u, double phi_g, RisPhaseProfile const& phases,
                             NetworkConfig const& cfg)
{
    const double delta = spatial_frequency(theta_u, cfg.d_over_omega)
                         - spatial_frequency(phi_g, cfg.d_over_omega);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t n = 0; n < phases.psi.size(); ++n)
    {
        const double arg = numerics::two_pi * static_cast<double>(n) * delta - phases.psi[n];
        sum += std::polar(1.0, arg);
    }
    return std::norm(sum);
}

inline double reflected_gain_serving(NetworkConfig const& cfg)
{
    const double n = static_cast<double>(cfg.n_ris);
    return static_cast<double>(cfg.n_bs) * static_cast<double>(cfg.n_u) * n * n;
}

/// Gain of an interfering BS-RIS-user path. The interfering BS and the user
/// point their beams at `beam_target`'s g/u angles; the RIS carries
/// `serving_phases`, which were optimized for some other pair of angles.
inline double reflected_gain_interfering(SteeringAngleSet const& angles,
                                         SteeringAngleSet const& beam_target,
                                         RisPhaseProfile const& serving_phases,
                                         NetworkConfig const& cfg)
{
    const double dw = cfg.d_over_omega;
    const double a = spatial_frequency(angles.theta_g, dw) - spatial_frequency(beam_target.theta_g, dw);
    const double b = spatial_frequency(angles.phi_u, dw) - spatial_frequency(beam_target.phi_u, dw);
    const double m_bs = fejer_kernel(a, cfg.n_bs) / cfg.n_bs;
    const double m_u = fejer_kernel(b, cfg.n_u) / cfg.n_u;
    return m_bs * m_u * ris_array_gain(angles.theta_u, angles.phi_g, serving_phases, cfg);
}

/// E[exp(j 2 pi k (d/omega) sin(theta))] for theta uniform on [0, 2 pi),
/// by the periodic trapezoidal rule (spectrally accurate here).
inline double steering_characteristic(int k, double d_over_omega)
{
    const double z = numerics::two_pi * k * d_over_omega;
    const int m = 2 * static_cast<int>(std::ceil(std::abs(z))) + 64;
    numerics::CompensatedSum sum;
    for (int j = 0; j < m; ++j)
        sum.add(std::cos(z * std::sin(numerics::two_pi * (j + 0.5) / m)));
    return sum.value() / m;
}

/// E[fejer(sum of `terms` independent +/- spatial frequencies, n)] / n for
/// uniform angles. Uses fejer(x) = sum_{|k|<n} (n - |k|) exp(j 2 pi k x).
inline double fejer_mean(int n, double d_over_omega, int terms)
{
    double acc = 0.0;
    for (int k = 1; k < n; ++k)
        acc += (n - k) * std::pow(steering_characteristic(k, d_over_omega), terms);
    return 1.0 + 2.0 * acc / n;
}

/// Mean interference gains. The BS/user factors and m_r_rl are normalized by
/// their element counts (1 for isotropic arrays); m_r_rl_idle is the mean
/// array factor of a RIS with independent uniform random phases.
struct AverageGains
{
    double m_bs_dl = 1.0;
    double m_u_dl = 1.0;
    double m_bs_rl = 1.0;
    double m_u_rl = 1.0;
    double m_r_rl = 1.0;
    double m_r_rl_idle = 1.0;

    /// Mean gain of an interfering direct link.
    double direct() const { return m_bs_dl * m_u_dl; }
    /// Mean gain of a reflected path via an active RIS (unnormalized RIS factor).
    double reflected_active(int n_ris) const { return m_bs_rl * m_u_rl * m_r_rl * n_ris; }
    /// Mean gain of a reflected path via an idle RIS.
    double reflected_idle() const { return m_bs_rl * m_u_rl * m_r_rl_idle; }
};

inline AverageGains compute_average_gains(NetworkConfig const& cfg)
{
    AverageGains g;
    g.m_bs_dl = fejer_mean(cfg.n_bs, cfg.d_over_omega, 2);
    g.m_u_dl = fejer_mean(cfg.n_u, cfg.d_over_omega, 2);
    g.m_bs_rl = g.m_bs_dl;
    g.m_u_rl = g.m_u_dl;
    g.m_r_rl = fejer_mean(cfg.n_ris, cfg.d_over_omega, 4);
    g.m_r_rl_idle = static_cast<double>(cfg.n_ris);
    return g;
}

/// Memoized per (array sizes, spacing); safe for concurrent callers.
inline AverageGains average_gains(NetworkConfig const& cfg)
{
    using Key = std::tuple<int, int, int, double>;
    static std::mutex mutex;
    static std::map<Key, AverageGains> cache;
    const Key key{cfg.n_bs, cfg.n_u, cfg.n_ris, cfg.d_over_omega};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    const AverageGains g = compute_average_gains(cfg);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, g);
    return g;
}

/// Discrete approximation of a nonnegative random gain: atoms with masses
/// summing to one. Each atom is the conditional mean of its bin, so the mean
/// is preserved exactly.
struct GainDistribution
{
    std::vector<double> values;
    std::vector<double> probs;

    std::size_t size() const noexcept { return values.size(); }
    double mean() const
    {
        double m = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            m += values[i] * probs[i];
        return m;
    }
    static GainDistribution constant(double v) { return {{v}, {1.0}}; }
};

namespace detail
{
/// Rebins weighted samples into log-spaced bins spanning `decades` decades
/// below `top`; everything lower falls into a single bottom bin.
inline GainDistribution log_rebin(std::vector<double> const& values, std::vector<double> const& weights,
                                  double top, int bins, double decades)
{
    std::vector<double> mass(static_cast<std::size_t>(bins) + 1, 0.0);
    std::vector<double> moment(mass.size(), 0.0);
    const double log_top = std::log10(top);
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        const double v = values[i];
        std::size_t b = 0;
        if (v > 0.0)
        {
            const double pos = (std::log10(v) - (log_top - decades)) / decades * bins;
            if (pos >= 0.0)
                b = 1 + std::min<std::size_t>(static_cast<std::size_t>(pos), static_cast<std::size_t>(bins) - 1);
        }
        mass[b] += weights[i];
        moment[b] += weights[i] * v;
    }
    double total = 0.0;
    for (double m : mass)
        total += m;
    GainDistribution out;
    for (std::size_t b = 0; b < mass.size(); ++b)
    {
        if (mass[b] <= 0.0)
            continue;
        out.values.push_back(moment[b] / mass[b]);
        out.probs.push_back(mass[b] / total);
    }
    return out;
}

/// Distribution of fejer(u1 - u2, n) / n with u = (d/omega) sin(theta) and
/// theta uniform, from a midpoint grid over both angles.
inline GainDistribution fejer_difference_distribution(int n, double d_over_omega, int grid, int bins)
{
    std::vector<double> s(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i)
        s[static_cast<std::size_t>(i)] = spatial_frequency(numerics::two_pi * (i + 0.5) / grid, d_over_omega);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            values.push_back(fejer_kernel(s[static_cast<std::size_t>(i)] - s[static_cast<std::size_t>(j)], n) / n);
    std::vector<double> weights(values.size(), 1.0);
    return log_rebin(values, weights, static_cast<double>(n), bins, 8.0);
}
}  // namespace detail

/// Distribution of the misaligned direct-link gain
/// fejer(a, n_bs) fejer(b, n_u) / (n_bs n_u) with independent uniform angles.
/// Its mean equals average_gains(cfg).direct() up to the grid error.
inline GainDistribution misaligned_gain_distribution(NetworkConfig const& cfg, int bins = 48,
                                                     int grid = 512)
{
    using Key = std::tuple<int, int, double, int, int>;
    static std::mutex mutex;
    static std::map<Key, GainDistribution> cache;
    const Key key{cfg.n_bs, cfg.n_u, cfg.d_over_omega, bins, grid};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    const auto fa = detail::fejer_difference_distribution(cfg.n_bs, cfg.d_over_omega, grid, 4 * bins);
    const auto fb = detail::fejer_difference_distribution(cfg.n_u, cfg.d_over_omega, grid, 4 * bins);
    std::vector<double> values;
    std::vector<double> weights;
    values.reserve(fa.size() * fb.size());
    weights.reserve(fa.size() * fb.size());
    for (std::size_t i = 0; i < fa.size(); ++i)
        for (std::size_t j = 0; j < fb.size(); ++j)
        {
            values.push_back(fa.values[i] * fb.values[j]);
            weights.push_back(fa.probs[i] * fb.probs[j]);
        }
    auto dist = detail::log_rebin(values, weights, static_cast<double>(cfg.n_bs) * cfg.n_u, bins, 8.0);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, dist);
    return dist;
}

}  // namespace riscov

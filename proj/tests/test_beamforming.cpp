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

#include <cmath>

#include <gtest/gtest.h>

#include <riscov/beamforming.hpp>
#include <riscov/philox.hpp>
#include <riscov/validate.hpp>

using namespace riscov;

// 1 + (2/n) sum_{k<n} (n-k) J0(pi k)^t, evaluated offline with scipy.
constexpr double m8_pair = 1.3274787964370067;
constexpr double m4_pair = 1.2037856658637502;
constexpr double m128_quad = 1.028707516965594;
constexpr double m16_pair = 1.4586549205511876;

TEST(Fejer, KernelValues)
{
    EXPECT_DOUBLE_EQ(fejer_kernel(0.0, 8), 64.0);
    EXPECT_DOUBLE_EQ(fejer_kernel(1.0, 8), 64.0);
    EXPECT_NEAR(fejer_kernel(0.125, 8), 0.0, 1e-20);
    EXPECT_NEAR(fejer_kernel(0.5, 3), 1.0, 1e-12);
    EXPECT_NEAR(fejer_kernel(1e-10, 128), 16384.0, 1e-6);
    for (double x : {0.01, 0.2, 0.37, 0.5})
        EXPECT_NEAR(fejer_kernel(x, 16), fejer_kernel(-x, 16), 1e-12);
}

TEST(Fejer, KernelIsFourierSum)
{
    for (double x : {0.013, 0.21, 0.4})
    {
        const int n = 6;
        double s = n;
        for (int k = 1; k < n; ++k)
            s += 2.0 * (n - k) * std::cos(2.0 * numerics::pi * k * x);
        EXPECT_NEAR(fejer_kernel(x, n), s, 1e-10);
    }
}

TEST(Beamforming, AlignedDirectGainIsExact)
{
    const NetworkConfig cfg;
    SteeringAngleSet a;
    a.theta_d = 1.1;
    a.phi_d = -2.4;
    EXPECT_EQ(direct_gain(a, a, cfg), 32.0);
    SteeringAngleSet off = a;
    off.theta_d += 0.7;
    EXPECT_LT(direct_gain(off, a, cfg), 32.0);
}

TEST(Beamforming, ServingReflectedGain)
{
    const NetworkConfig cfg;
    EXPECT_EQ(reflected_gain_serving(cfg), 8.0 * 4.0 * 128.0 * 128.0);
    PhiloxStream rng(5, 0);
    for (int i = 0; i < 20; ++i)
    {
        const double tu = numerics::two_pi * rng.uniform();
        const double pg = numerics::two_pi * rng.uniform();
        EXPECT_NEAR(ris_array_gain(tu, pg, optimal_ris_phases(tu, pg, cfg), cfg), 16384.0, 1e-7);
    }
}

TEST(Beamforming, OptimalPhasesBeatGridSearch)
{
    NetworkConfig cfg;
    cfg.n_ris = 3;
    PhiloxStream rng(9, 0);
    for (int pair = 0; pair < 4; ++pair)
    {
        const double tu = numerics::two_pi * rng.uniform();
        const double pg = numerics::two_pi * rng.uniform();
        const double bound = ris_array_gain(tu, pg, optimal_ris_phases(tu, pg, cfg), cfg);
        RisPhaseProfile p;
        p.psi.assign(3, 0.0);
        for (int code = 0; code < 32 * 32 * 32; ++code)
        {
            int c = code;
            for (int k = 0; k < 3; ++k, c /= 32)
                p.psi[static_cast<std::size_t>(k)] = numerics::two_pi * (c % 32) / 32.0;
            EXPECT_LE(ris_array_gain(tu, pg, p, cfg), bound + 1e-9);
        }
    }
}

TEST(Beamforming, PhasesWrapIntoPeriod)
{
    const NetworkConfig cfg;
    const RisPhaseProfile p = optimal_ris_phases(0.3, 2.0, cfg);
    ASSERT_EQ(p.psi.size(), 128u);
    for (double v : p.psi)
    {
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, numerics::two_pi);
    }
}

TEST(AverageGains, MatchBesselSeries)
{
    NetworkConfig cfg;
    const AverageGains g = average_gains(cfg);
    EXPECT_NEAR(g.m_bs_dl, m8_pair, 1e-12);
    EXPECT_NEAR(g.m_u_dl, m4_pair, 1e-12);
    EXPECT_NEAR(g.m_r_rl, m128_quad, 1e-12);
    EXPECT_DOUBLE_EQ(g.m_r_rl_idle, 128.0);
    EXPECT_DOUBLE_EQ(g.direct(), g.m_bs_dl * g.m_u_dl);
    EXPECT_DOUBLE_EQ(g.reflected_active(128), g.m_bs_rl * g.m_u_rl * g.m_r_rl * 128.0);
    EXPECT_NEAR(fejer_mean(16, 0.5, 2), m16_pair, 1e-12);
    EXPECT_NEAR(fejer_mean(37, 0.3, 3), fejer_mean_bessel(37, 0.3, 3), 1e-12);
}

TEST(AverageGains, SampledOracles)
{
    PhiloxStream rng(1, 77);
    EXPECT_NEAR(fejer_mean_sampled(8, 0.5, 400000, rng) / m8_pair, 1.0, 0.01);
    EXPECT_NEAR(random_phase_gain_sampled(32, 40000, rng) / 32.0, 1.0, 0.03);
}

TEST(GainDistribution, PreservesMean)
{
    const NetworkConfig cfg;
    const GainDistribution d = misaligned_gain_distribution(cfg);
    double mass = 0.0;
    double top = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        mass += d.probs[i];
        top = std::max(top, d.values[i]);
        EXPECT_GE(d.values[i], 0.0);
    }
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_LE(top, 32.0);
    EXPECT_LE(d.size(), 49u);
    EXPECT_NEAR(d.mean() / average_gains(cfg).direct(), 1.0, 2e-3);
    EXPECT_DOUBLE_EQ(GainDistribution::constant(3.0).mean(), 3.0);
}

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

#include <riscov/analytics.hpp>
#include <riscov/montecarlo.hpp>
#include <riscov/philox.hpp>

using namespace riscov;

TEST(Philox, KnownAnswers)
{
    using P = Philox4x32;
    EXPECT_EQ(P::block({0, 0, 0, 0}, {0, 0}), (P::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(P::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (P::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(P::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (P::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamsAreIndependentAndRepeatable)
{
    PhiloxStream a(42, 1, 2);
    PhiloxStream b(42, 1, 2);
    PhiloxStream c(42, 1, 3);
    int same = 0;
    for (int i = 0; i < 1000; ++i)
    {
        const auto x = a();
        EXPECT_EQ(x, b());
        same += x == c();
    }
    EXPECT_LT(same, 3);
}

TEST(Philox, UniformMoments)
{
    PhiloxStream rng(7, 0);
    double m1 = 0.0;
    double m2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
    {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        m1 += u;
        m2 += u * u;
    }
    EXPECT_NEAR(m1 / n, 0.5, 0.003);
    EXPECT_NEAR(m2 / n, 1.0 / 3.0, 0.003);
}

TEST(Deployment, PoissonCountsHaveTheRightMean)
{
    const NetworkConfig cfg;
    const double radius = 600.0;
    const double expected = cfg.lambda_bs * numerics::pi * radius * radius;  // 14.4
    double sum = 0.0;
    const int n = 4000;
    for (int t = 0; t < n; ++t)
        sum += static_cast<double>(sample_deployment(cfg, radius, 3, static_cast<std::uint32_t>(t)).bs_points.size());
    // Standard error sqrt(14.4 / 4000) = 0.06.
    EXPECT_NEAR(sum / n, expected, 0.25);
}

TEST(Deployment, Deterministic)
{
    const NetworkConfig cfg;
    const Deployment a = sample_deployment(cfg, 400.0, 9, 5);
    const Deployment b = sample_deployment(cfg, 400.0, 9, 5);
    ASSERT_EQ(a.bs_points.size(), b.bs_points.size());
    for (std::size_t i = 0; i < a.bs_points.size(); ++i)
    {
        EXPECT_EQ(a.bs_points[i].x, b.bs_points[i].x);
        EXPECT_EQ(a.bs_points[i].y, b.bs_points[i].y);
    }
    EXPECT_EQ(a.user_points.front().x, 0.0);
    EXPECT_THROW(sample_deployment(cfg, 0.0, 1), std::invalid_argument);
}

TEST(Deployment, GeometricBlockageMatchesLosLaw)
{
    NetworkConfig cfg;
    cfg.lambda_bs = cfg.lambda_ris = cfg.lambda_u = 0.0;
    McOptions opts;
    opts.blockage = BlockageMode::Geometric;
    for (double d : {50.0, 100.0, 200.0})
    {
        long clear = 0;
        const int n = 3000;
        PhiloxStream dir(5, 0, static_cast<std::uint32_t>(d));
        for (int t = 0; t < n; ++t)
        {
            const Deployment dep = sample_deployment(cfg, 250.0, 17, static_cast<std::uint32_t>(t), opts);
            const double a = numerics::two_pi * dir.uniform();
            const Vec2 far{d * std::cos(a), d * std::sin(a)};
            bool blocked = false;
            for (auto const& seg : dep.blockage_segments)
                blocked = blocked || segment_blocks({0.0, 0.0}, far, seg);
            clear += !blocked;
        }
        EXPECT_NEAR(static_cast<double>(clear) / n, los_probability(d, cfg.beta), 0.03) << d;
    }
}

TEST(Simulation, DeterministicAcrossThreadCounts)
{
    const NetworkConfig cfg;
    McOptions one;
    one.threads = 1;
    McOptions many;
    many.threads = 4;
    const auto a = simulate(cfg, 64, 5, one);
    const auto b = simulate(cfg, 64, 5, many);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        EXPECT_EQ(a[i].sinr, b[i].sinr);
        EXPECT_EQ(a[i].sinr_direct, b[i].sinr_direct);
    }
    const auto c = simulate(cfg, 64, 6, one);
    int equal = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        equal += a[i].sinr == c[i].sinr;
    EXPECT_LT(equal, 4);
}

TEST(Simulation, SampleInvariants)
{
    const NetworkConfig cfg;
    const auto samples = simulate(cfg, 300, 2);
    for (auto const& s : samples)
    {
        EXPECT_GE(s.signal_w, s.direct_signal_w);
        EXPECT_GE(s.sinr, s.sinr_direct);
        EXPECT_GT(s.noise_w, 0.0);
        EXPECT_GE(s.interference_w, 0.0);
        EXPECT_NEAR(s.sinr, s.signal_w / (s.interference_w + s.noise_w), 1e-12 * s.sinr);
    }
    const CoverageResult r = coverage_from_samples(samples, 1.0);
    EXPECT_NEAR(r.total, r.case_sum(), 1e-12);
    EXPECT_EQ(r.trials, 300);
    EXPECT_LE(r.ci_low, r.total);
    EXPECT_GE(r.ci_high, r.total);
}

TEST(Simulation, AgreesWithAnalyticCoverage)
{
    const NetworkConfig cfg;
    McOptions mc;
    mc.radius = 500.0;
    const CoverageResult sim = empirical_coverage(1.0, cfg, 3000, 11, mc);
    const double analytic = coverage_theorem1(1.0, cfg).total;
    EXPECT_NEAR(sim.total, analytic, 0.035);
}

TEST(Simulation, RejectsBadArguments)
{
    const NetworkConfig cfg;
    EXPECT_THROW(simulate(cfg, -1, 1), std::invalid_argument);
    EXPECT_THROW(empirical_coverage(1.0, cfg, 0, 1), std::invalid_argument);
    EXPECT_TRUE(simulate(cfg, 0, 1).empty());
}

TEST(Wilson, Interval)
{
    const auto [lo, hi] = wilson_interval(50, 100);
    // Textbook 95% Wilson interval for 50/100.
    EXPECT_NEAR(lo, 0.40383, 1e-5);
    EXPECT_NEAR(hi, 0.59617, 1e-5);
    const auto [z0, z1] = wilson_interval(0, 20);
    EXPECT_EQ(z0, 0.0);
    EXPECT_NEAR(z1, 0.16113, 1e-5);
}

TEST(Radius, Defaults)
{
    const NetworkConfig cfg;
    EXPECT_NEAR(default_radius(cfg), 5.0 * 500.0 / std::sqrt(10.0), 1e-9);
    McOptions o;
    o.radius = 123.0;
    EXPECT_EQ(resolve_radius(o, cfg), 123.0);
}

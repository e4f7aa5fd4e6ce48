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

#include <riscov/association.hpp>
#include <riscov/montecarlo.hpp>
#include <riscov/philox.hpp>
#include <riscov/validate.hpp>

using namespace riscov;

TEST(SideCondition, HandCases)
{
    EXPECT_DOUBLE_EQ(side_condition(3.0, 7.0, numerics::pi), 1.0);
    EXPECT_DOUBLE_EQ(side_condition(5.0, 5.0, 0.5 * numerics::pi), 0.75);
    EXPECT_DOUBLE_EQ(side_condition(5.0, 2.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(side_condition(2.0, 5.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(side_condition(4.0, 4.0, 0.0), 0.5);
}

TEST(SideCondition, SymmetricAndBounded)
{
    PhiloxStream rng(11, 0);
    for (int i = 0; i < 200; ++i)
    {
        const double x = 1.0 + 200.0 * rng.uniform();
        const double y = 1.0 + 200.0 * rng.uniform();
        const double v = numerics::two_pi * rng.uniform();
        const double c = side_condition(x, y, v);
        EXPECT_GE(c, 0.0);
        EXPECT_LE(c, 1.0);
        EXPECT_NEAR(c, side_condition(x, y, numerics::two_pi - v), 1e-12);
        EXPECT_NEAR(c, side_condition(2.0 * x, 2.0 * y, v), 1e-12);
    }
}

TEST(SideCondition, MatchesGeometricOracle)
{
    PhiloxStream pick(3, 0);
    PhiloxStream draws(3, 1);
    for (int i = 0; i < 10; ++i)
    {
        const double x = 1.0 + 100.0 * pick.uniform();
        const double y = 1.0 + 100.0 * pick.uniform();
        const double v = numerics::two_pi * pick.uniform();
        EXPECT_NEAR(side_condition(x, y, v), side_condition_brute_force(x, y, v, 200000, draws), 0.006);
    }
}

TEST(SideCondition, AngularMeanLimits)
{
    EXPECT_NEAR(side_condition_mean(1e-5), 0.5, 1e-4);
    EXPECT_NEAR(side_condition_mean(1e5), 1.0, 1e-4);
    const double direct = numerics::integrate_panels(
                              [](double v) { return side_condition(1.0, 2.0, v); }, 0.0, numerics::two_pi, 32)
                          / numerics::two_pi;
    EXPECT_NEAR(side_condition_mean(2.0), direct, 1e-5);
}

TEST(Association, BsStatesSumToOne)
{
    for (double beta : {0.001, 0.005, 0.01, 0.05})
    {
        NetworkConfig cfg;
        cfg.beta = beta;
        EXPECT_NEAR(assoc_prob_bs(LinkKind::Los, cfg) + assoc_prob_bs(LinkKind::Nlos, cfg), 1.0, 1e-6) << beta;
    }
}

TEST(Association, NoBlockageMeansLos)
{
    NetworkConfig cfg;
    cfg.beta = 0.0;
    EXPECT_NEAR(assoc_prob_bs(LinkKind::Los, cfg), 1.0, 1e-9);
    EXPECT_NEAR(assoc_prob_bs(LinkKind::Nlos, cfg), 0.0, 1e-12);
}

TEST(Association, RisDecomposition)
{
    const NetworkConfig cfg;
    const RisAssociation a = ris_association(cfg);
    EXPECT_GT(a.a_u_los, 0.0);
    EXPECT_GT(a.a_u_nlos, 0.0);
    EXPECT_LE(a.a_g_los, a.a_u_los);
    EXPECT_NEAR(a.a_g_los + a.a_g_nlos, a.a_u_los + a.a_u_nlos, 1e-12);
    EXPECT_LE(a.a_u_los + a.a_u_nlos, 1.0);
    EXPECT_DOUBLE_EQ(assoc_prob_ris(LinkKind::Los, cfg), a.a_u_los);
    EXPECT_DOUBLE_EQ(assoc_prob_via_ris(LinkKind::Nlos, cfg), a.a_g_nlos);

    NetworkConfig none = cfg;
    none.lambda_ris = 0.0;
    const RisAssociation z = ris_association(none);
    EXPECT_EQ(z.a_u_los + z.a_u_nlos + z.a_g_los + z.a_g_nlos, 0.0);
}

TEST(Association, RisAssociationGrowsWithDensity)
{
    NetworkConfig lo;
    lo.lambda_ris = 5.0 * density_unit;
    NetworkConfig hi;
    hi.lambda_ris = 40.0 * density_unit;
    const RisAssociation a = ris_association(lo);
    const RisAssociation b = ris_association(hi);
    EXPECT_LT(a.a_u_los, b.a_u_los);
}

TEST(Association, ServingBsDensityIntegratesOverStates)
{
    const NetworkConfig cfg;
    const double total = numerics::integrate_tan_map(
        [&](double x) { return serving_bs_density(LinkKind::Los, x, cfg) + serving_bs_density(LinkKind::Nlos, x, cfg); },
        0.0, bs_length_scale(cfg), 64);
    EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(Association, AgreesWithSimulatedFrequencies)
{
    const NetworkConfig cfg;
    McOptions mc;
    mc.radius = 2000.0;
    const AssociationFrequencies f = association_frequencies(cfg, 6000, 21, mc);
    const RisAssociation a = ris_association(cfg);
    // About 4 sigma at 6000 deployments.
    EXPECT_NEAR(f.a_d_los, assoc_prob_bs(LinkKind::Los, cfg), 0.026);
    EXPECT_NEAR(f.a_d_nlos, assoc_prob_bs(LinkKind::Nlos, cfg), 0.026);
    EXPECT_NEAR(f.a_u_los, a.a_u_los, 0.026);
    EXPECT_NEAR(f.a_g_los, a.a_g_los, 0.026);
    EXPECT_NEAR(f.a_g_nlos, a.a_g_nlos, 0.026);
}

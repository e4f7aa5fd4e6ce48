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
#include <riscov/propagation.hpp>

using namespace riscov;

TEST(Propagation, PathGainDualSlope)
{
    const NetworkConfig cfg;
    EXPECT_DOUBLE_EQ(path_gain(LinkKind::Los, 10.0, cfg), cfg.c_los / 100.0);
    EXPECT_DOUBLE_EQ(path_gain(LinkKind::Nlos, 10.0, cfg), cfg.c_nlos / 10000.0);
    EXPECT_DOUBLE_EQ(path_loss({LinkKind::Los, 1.0}, cfg), cfg.c_los);
    EXPECT_THROW(path_loss({LinkKind::Los, 0.5}, cfg), std::domain_error);
}

TEST(Propagation, ExclusionRadiiEqualizeReceivedPower)
{
    NetworkConfig cfg;
    cfg.c_nlos = 0.1 * cfg.c_los;
    for (double x : {1.0, 7.5, 40.0, 300.0})
    {
        EXPECT_NEAR(path_gain(LinkKind::Nlos, chi_los(x, cfg), cfg) / path_gain(LinkKind::Los, x, cfg), 1.0, 1e-12);
        EXPECT_NEAR(path_gain(LinkKind::Los, chi_nlos(x, cfg), cfg) / path_gain(LinkKind::Nlos, x, cfg), 1.0, 1e-12);
        EXPECT_NEAR(chi_nlos(chi_los(x, cfg), cfg), x, 1e-9 * x);
    }
    // Equal intercepts with alpha 2/4: chi_L(x) = sqrt(x), chi_N(x) = x^2.
    const NetworkConfig d;
    EXPECT_NEAR(chi_los(81.0, d), 9.0, 1e-12);
    EXPECT_NEAR(chi_nlos(9.0, d), 81.0, 1e-10);
}

TEST(Propagation, LosProbability)
{
    EXPECT_DOUBLE_EQ(los_probability(0.0, 0.01), 1.0);
    EXPECT_DOUBLE_EQ(los_probability(100.0, 0.01), std::exp(-1.0));
    EXPECT_DOUBLE_EQ(los_probability(100.0, 0.0), 1.0);
}

TEST(Propagation, AreaIntegralsMatchQuadrature)
{
    for (double beta : {0.0, 1e-5, 0.005, 0.01, 0.5})
        for (double x : {0.01, 1.0, 50.0, 400.0})
        {
            const double los = numerics::integrate_panels(
                [&](double r) { return std::exp(-beta * r) * r; }, 0.0, x, 16);
            EXPECT_NEAR(los_area_integral(x, beta), los, 1e-10 * (1.0 + los));
            EXPECT_NEAR(nlos_area_integral(x, beta) + los_area_integral(x, beta), 0.5 * x * x, 1e-9 * x * x);
        }
}

TEST(Propagation, SegmentIntersection)
{
    BlockageSegment wall{{5.0, 0.0}, 4.0, 0.5 * numerics::pi};
    EXPECT_TRUE(segment_blocks({0.0, 0.0}, {10.0, 0.0}, wall));
    EXPECT_FALSE(segment_blocks({0.0, 0.0}, {4.0, 0.0}, wall));
    EXPECT_FALSE(segment_blocks({0.0, 3.0}, {10.0, 3.0}, wall));
    BlockageSegment parallel{{5.0, 0.0}, 4.0, 0.0};
    EXPECT_FALSE(segment_blocks({0.0, 0.0}, {10.0, 0.0}, parallel));
}

TEST(Propagation, BlockageDensityForBeta)
{
    // Isotropic segments of mean length L: beta = 2 rho L / pi.
    const double rho = blockage_density_for_beta(0.01, 10.0);
    EXPECT_NEAR(2.0 * rho * 10.0 / numerics::pi, 0.01, 1e-15);
}

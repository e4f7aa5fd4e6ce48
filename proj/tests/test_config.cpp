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

#include <riscov/config.hpp>

using namespace riscov;

TEST(Config, DefaultsMatchReferenceDeployment)
{
    const NetworkConfig cfg;
    EXPECT_DOUBLE_EQ(cfg.p_bs_watt(), std::pow(10.0, 0.3));
    EXPECT_NEAR(cfg.p_elem_watt(), 5.0119e-3, 1e-7);
    EXPECT_EQ(cfg.n_bs, 8);
    EXPECT_EQ(cfg.n_u, 4);
    EXPECT_EQ(cfg.n_ris, 128);
    EXPECT_DOUBLE_EQ(cfg.lambda_bs, 10.0 / (250000.0 * std::acos(-1.0)));
    EXPECT_DOUBLE_EQ(cfg.lambda_u, 10.0 * cfg.lambda_bs);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, FreeSpaceInterceptAt28GHz)
{
    // (lambda / 4 pi)^2 with lambda = c / 28 GHz.
    const double lambda = 299792458.0 / 28e9;
    const double expected = std::pow(lambda / (4.0 * std::acos(-1.0)), 2.0);
    EXPECT_DOUBLE_EQ(NetworkConfig{}.c_los, expected);
    EXPECT_NEAR(expected, 7.2594e-7, 1e-10);
}

TEST(Config, NoiseFloor)
{
    // -174 + 80 + 10 = -84 dBm.
    EXPECT_NEAR(watt_to_dbm(NetworkConfig{}.noise_watt()), -84.0, 1e-12);
}

TEST(Config, EmptyDocumentGivesDefaults)
{
    const NetworkConfig cfg = load_config("  \n");
    EXPECT_EQ(to_json(cfg), to_json(NetworkConfig{}));
}

TEST(Config, RoundTrip)
{
    NetworkConfig cfg;
    cfg.beta = 0.005;
    cfg.n_ris = 64;
    cfg.antenna_scheme = AntennaScheme::Scheme2;
    cfg.lambda_ris = 0.0;
    const NetworkConfig back = load_config(to_json(cfg).dump());
    EXPECT_EQ(to_json(back), to_json(cfg));
}

TEST(Config, CarrierSetsInterceptUnlessGiven)
{
    const NetworkConfig a = load_config(R"({"f_c": 60e9})");
    EXPECT_DOUBLE_EQ(a.c_los, free_space_intercept(60e9));
    const NetworkConfig b = load_config(R"({"f_c": 60e9, "c_nlos": 1e-8})");
    EXPECT_DOUBLE_EQ(b.c_los, free_space_intercept(60e9));
    EXPECT_DOUBLE_EQ(b.c_nlos, 1e-8);
}

TEST(Config, ErrorsNameTheField)
{
    auto field_of = [](char const* doc) {
        try
        {
            load_config(doc);
        }
        catch (ConfigError const& e)
        {
            return e.field();
        }
        return std::string("<none>");
    };
    EXPECT_EQ(field_of(R"({"beta": -0.1})"), "beta");
    EXPECT_EQ(field_of(R"({"lambda_bs": -1})"), "lambda_bs");
    EXPECT_EQ(field_of(R"({"alpha_los": 4, "alpha_nlos": 2})"), "alpha_nlos");
    EXPECT_EQ(field_of(R"({"n_ris": 0})"), "n_ris");
    EXPECT_EQ(field_of(R"({"n_ris": 12.5})"), "n_ris");
    EXPECT_EQ(field_of(R"({"antenna_scheme": 3})"), "antenna_scheme");
    EXPECT_EQ(field_of(R"({"beta": "high"})"), "beta");
    EXPECT_EQ(field_of(R"({"betta": 0.01})"), "betta");
    EXPECT_EQ(field_of(R"({"r_min": 0})"), "r_min");
}

TEST(Config, ZeroDensitiesAreValid)
{
    EXPECT_NO_THROW(load_config(R"({"lambda_ris": 0, "lambda_u": 0, "beta": 0})"));
}

TEST(Config, MalformedDocuments)
{
    EXPECT_THROW(load_config("{\"beta\": "), ConfigParseError);
    EXPECT_THROW(load_config("[1, 2]"), ConfigParseError);
    EXPECT_THROW(load_config_file("/nonexistent/riscov.json"), ConfigIoError);
}

TEST(Config, UnitConversions)
{
    EXPECT_DOUBLE_EQ(dbm_to_watt(30.0), 1.0);
    EXPECT_NEAR(watt_to_dbm(dbm_to_watt(7.0)), 7.0, 1e-12);
    EXPECT_DOUBLE_EQ(db_to_linear(10.0), 10.0);
    EXPECT_NEAR(linear_to_db(db_to_linear(-5.0)), -5.0, 1e-12);
}

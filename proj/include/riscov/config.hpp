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

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "numerics.hpp"

namespace riscov
{

inline constexpr double speed_of_light = 299792458.0;

/// Density unit used throughout the reference scenarios: one point per
/// disk of radius 500 m.
inline constexpr double density_unit = 1.0 / (500.0 * 500.0 * numerics::pi);

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// Free-space path-loss intercept at 1 m, (wavelength / 4 pi)^2.
inline double free_space_intercept(double carrier_hz)
{
    const double wavelength = speed_of_light / carrier_hz;
    const double r = wavelength / (4.0 * numerics::pi);
    return r * r;
}

enum class AntennaScheme
{
    /// Beams of the serving BS and the user point at the assisting RIS.
    Scheme1,
    /// Beams point along the direct BS-user link.
    Scheme2,
};

/// Raised when a configuration value violates its constraints.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, std::string const& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field))
    {
    }
    std::string const& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Raised when a configuration document cannot be parsed.
class ConfigParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a configuration file cannot be read.
class ConfigIoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Physical and deployment parameters of the network. Immutable once
/// validated; all densities are points per square metre.
struct NetworkConfig
{
    double p_bs_dbm = 33.0;
    double p0_watt = 10.0;
    double delta = 6.0;
    int n_bs = 8;
    int n_u = 4;
    int n_ris = 128;
    double p_elem_dbm = 7.0;
    double alpha_los = 2.0;
    double alpha_nlos = 4.0;
    double lambda_bs = 10.0 * density_unit;
    double lambda_ris = 10.0 * density_unit;
    double lambda_u = 100.0 * density_unit;
    double beta = 0.01;
    double f_c = 28e9;
    double c_los = free_space_intercept(28e9);
    double c_nlos = free_space_intercept(28e9);
    double bandwidth_hz = 100e6;
    double noise_figure_db = 10.0;
    double d_over_omega = 0.5;
    AntennaScheme antenna_scheme = AntennaScheme::Scheme1;
    double r_min = 1.0;

    double p_bs_watt() const { return dbm_to_watt(p_bs_dbm); }
    double p_elem_watt() const { return dbm_to_watt(p_elem_dbm); }
    double wavelength() const { return speed_of_light / f_c; }

    /// Thermal noise -174 dBm/Hz over the bandwidth plus the noise figure, in W.
    double noise_watt() const
    {
        return dbm_to_watt(-174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
    }

    /// Throws ConfigError naming the first offending field.
    void validate() const;
};

namespace detail
{
inline void require(bool ok, char const* field, char const* what)
{
    if (!ok)
        throw ConfigError(field, what);
}
}  // namespace detail

inline void NetworkConfig::validate() const
{
    using detail::require;
    auto finite = [](double v) { return std::isfinite(v); };
    require(finite(p_bs_dbm), "p_bs_dbm", "must be finite");
    require(finite(p0_watt) && p0_watt >= 0.0, "p0_watt", "must be finite and >= 0");
    require(finite(delta) && delta >= 0.0, "delta", "must be finite and >= 0");
    require(n_bs >= 1, "n_bs", "must be >= 1");
    require(n_u >= 1, "n_u", "must be >= 1");
    require(n_ris >= 1, "n_ris", "must be >= 1");
    require(finite(p_elem_dbm), "p_elem_dbm", "must be finite");
    require(finite(alpha_los) && alpha_los > 0.0, "alpha_los", "must be > 0");
    require(finite(alpha_nlos) && alpha_nlos >= alpha_los, "alpha_nlos", "must be >= alpha_los");
    require(finite(lambda_bs) && lambda_bs >= 0.0, "lambda_bs", "must be finite and >= 0");
    require(finite(lambda_ris) && lambda_ris >= 0.0, "lambda_ris", "must be finite and >= 0");
    require(finite(lambda_u) && lambda_u >= 0.0, "lambda_u", "must be finite and >= 0");
    require(finite(beta) && beta >= 0.0, "beta", "must be finite and >= 0");
    require(finite(f_c) && f_c > 0.0, "f_c", "must be > 0");
    require(finite(c_los) && c_los > 0.0, "c_los", "must be > 0");
    require(finite(c_nlos) && c_nlos > 0.0, "c_nlos", "must be > 0");
    require(finite(bandwidth_hz) && bandwidth_hz > 0.0, "bandwidth_hz", "must be > 0");
    require(finite(noise_figure_db), "noise_figure_db", "must be finite");
    require(finite(d_over_omega) && d_over_omega > 0.0, "d_over_omega", "must be > 0");
    require(finite(r_min) && r_min > 0.0, "r_min", "must be > 0");
}

/// Parses a flat JSON object of configuration keys. Absent keys keep their
/// defaults; unknown keys are rejected. If f_c is given without c_los or
/// c_nlos, the intercepts follow the new carrier.
inline NetworkConfig load_config(std::string_view document)
{
    nlohmann::json doc;
    if (document.find_first_not_of(" \t\r\n") == std::string_view::npos)
        doc = nlohmann::json::object();
    else
    {
        try
        {
            doc = nlohmann::json::parse(document);
        }
        catch (nlohmann::json::parse_error const& e)
        {
            throw ConfigParseError(std::string("malformed config: ") + e.what());
        }
    }
    if (!doc.is_object())
        throw ConfigParseError("malformed config: top level must be an object");

    NetworkConfig cfg;
    bool have_c_los = false;
    bool have_c_nlos = false;

    auto number = [](nlohmann::json const& v, std::string const& key) {
        if (!v.is_number())
            throw ConfigError(key, "must be a number");
        return v.get<double>();
    };
    auto integer = [](nlohmann::json const& v, std::string const& key) {
        if (!v.is_number_integer())
            throw ConfigError(key, "must be an integer");
        return v.get<int>();
    };

    for (auto const& [key, value] : doc.items())
    {
        if (key == "p_bs_dbm")
            cfg.p_bs_dbm = number(value, key);
        else if (key == "p0_watt")
            cfg.p0_watt = number(value, key);
        else if (key == "delta")
            cfg.delta = number(value, key);
        else if (key == "n_bs")
            cfg.n_bs = integer(value, key);
        else if (key == "n_u")
            cfg.n_u = integer(value, key);
        else if (key == "n_ris")
            cfg.n_ris = integer(value, key);
        else if (key == "p_elem_dbm")
            cfg.p_elem_dbm = number(value, key);
        else if (key == "alpha_los")
            cfg.alpha_los = number(value, key);
        else if (key == "alpha_nlos")
            cfg.alpha_nlos = number(value, key);
        else if (key == "lambda_bs")
            cfg.lambda_bs = number(value, key);
        else if (key == "lambda_ris")
            cfg.lambda_ris = number(value, key);
        else if (key == "lambda_u")
            cfg.lambda_u = number(value, key);
        else if (key == "beta")
            cfg.beta = number(value, key);
        else if (key == "f_c")
            cfg.f_c = number(value, key);
        else if (key == "c_los")
        {
            cfg.c_los = number(value, key);
            have_c_los = true;
        }
        else if (key == "c_nlos")
        {
            cfg.c_nlos = number(value, key);
            have_c_nlos = true;
        }
        else if (key == "bandwidth_hz")
            cfg.bandwidth_hz = number(value, key);
        else if (key == "noise_figure_db")
            cfg.noise_figure_db = number(value, key);
        else if (key == "d_over_omega")
            cfg.d_over_omega = number(value, key);
        else if (key == "antenna_scheme")
        {
            const int scheme = integer(value, key);
            if (scheme != 1 && scheme != 2)
                throw ConfigError(key, "must be 1 or 2");
            cfg.antenna_scheme = scheme == 1 ? AntennaScheme::Scheme1 : AntennaScheme::Scheme2;
        }
        else if (key == "r_min")
            cfg.r_min = number(value, key);
        else
            throw ConfigError(key, "unknown key");
    }

    if (cfg.f_c > 0.0 && std::isfinite(cfg.f_c))
    {
        if (!have_c_los)
            cfg.c_los = free_space_intercept(cfg.f_c);
        if (!have_c_nlos)
            cfg.c_nlos = free_space_intercept(cfg.f_c);
    }
    cfg.validate();
    return cfg;
}

inline NetworkConfig load_config_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigIoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

/// Serializes every field; load_config(to_json(cfg).dump()) reproduces cfg.
inline nlohmann::json to_json(NetworkConfig const& cfg)
{
    return nlohmann::json{
        {"p_bs_dbm", cfg.p_bs_dbm},
        {"p0_watt", cfg.p0_watt},
        {"delta", cfg.delta},
        {"n_bs", cfg.n_bs},
        {"n_u", cfg.n_u},
        {"n_ris", cfg.n_ris},
        {"p_elem_dbm", cfg.p_elem_dbm},
        {"alpha_los", cfg.alpha_los},
        {"alpha_nlos", cfg.alpha_nlos},
        {"lambda_bs", cfg.lambda_bs},
        {"lambda_ris", cfg.lambda_ris},
        {"lambda_u", cfg.lambda_u},
        {"beta", cfg.beta},
        {"f_c", cfg.f_c},
        {"c_los", cfg.c_los},
        {"c_nlos", cfg.c_nlos},
        {"bandwidth_hz", cfg.bandwidth_hz},
        {"noise_figure_db", cfg.noise_figure_db},
        {"d_over_omega", cfg.d_over_omega},
        {"antenna_scheme", cfg.antenna_scheme == AntennaScheme::Scheme1 ? 1 : 2},
        {"r_min", cfg.r_min},
    };
}

}  // namespace riscov

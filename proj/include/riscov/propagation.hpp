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
#include <stdexcept>

#include "config.hpp"

namespace riscov
{

struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

enum class LinkKind
{
    Los,
    Nlos,
};

inline char const* to_string(LinkKind k) { return k == LinkKind::Los ? "L" : "N"; }

struct LinkState
{
    LinkKind kind = LinkKind::Los;
    double distance = 1.0;
};

enum class RisSide
{
    None,
    SideA,
    SideB,
};

/// Line blockage used by the geometric Monte Carlo mode.
struct BlockageSegment
{
    Vec2 midpoint;
    double length = 1.0;
    double orientation = 0.0;  // [0, pi)
    RisSide ris_side = RisSide::None;

    Vec2 end_a() const
    {
        return {midpoint.x - 0.5 * length * std::cos(orientation),
                midpoint.y - 0.5 * length * std::sin(orientation)};
    }
    Vec2 end_b() const
    {
        return {midpoint.x + 0.5 * length * std::cos(orientation),
                midpoint.y + 0.5 * length * std::sin(orientation)};
    }
};

inline double los_probability(double x, double beta) { return std::exp(-beta * x); }

/// Path loss without the distance guard, for callers that already floor
/// distances at r_min.
inline double path_gain(LinkKind kind, double x, NetworkConfig const& cfg)
{
    return kind == LinkKind::Los ? cfg.c_los * std::pow(x, -cfg.alpha_los)
                                 : cfg.c_nlos * std::pow(x, -cfg.alpha_nlos);
}

inline double path_loss(LinkState const& state, NetworkConfig const& cfg)
{
    if (!(state.distance >= cfg.r_min))
        throw std::domain_error("path_loss: distance below r_min");
    return path_gain(state.kind, state.distance, cfg);
}

/// Exclusion radius for NLOS interferers when the serving link is LOS at x.
inline double chi_los(double x, NetworkConfig const& cfg)
{
    return std::pow(cfg.c_nlos / cfg.c_los, 1.0 / cfg.alpha_nlos)
           * std::pow(x, cfg.alpha_los / cfg.alpha_nlos);
}

/// Exclusion radius for LOS interferers when the serving link is NLOS at x.
inline double chi_nlos(double x, NetworkConfig const& cfg)
{
    return std::pow(cfg.c_los / cfg.c_nlos, 1.0 / cfg.alpha_los)
           * std::pow(x, cfg.alpha_nlos / cfg.alpha_los);
}

/// True iff the open segment tx-rx crosses the blockage segment.
inline bool segment_blocks(Vec2 tx, Vec2 rx, BlockageSegment const& seg)
{
    const Vec2 a = seg.end_a();
    const Vec2 b = seg.end_b();
    const Vec2 d = rx - tx;
    const Vec2 e = b - a;
    const double denom = cross(d, e);
    if (denom == 0.0)
        return false;
    const Vec2 w = a - tx;
    const double t = cross(w, e) / denom;  // along tx-rx
    const double u = cross(w, d) / denom;  // along the blockage
    return t > 0.0 && t < 1.0 && u >= 0.0 && u <= 1.0;
}

/// Segment density that makes the LOS probability of the line boolean model
/// equal to exp(-beta x) for isotropic segments of the given mean length.
inline double blockage_density_for_beta(double beta, double mean_length)
{
    return numerics::pi * beta / (2.0 * mean_length);
}

}  // namespace riscov

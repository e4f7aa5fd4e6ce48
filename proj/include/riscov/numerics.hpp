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
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace riscov::numerics
{

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Nodes and weights of a one-dimensional quadrature rule.
struct QuadratureRule
{
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Legendre rule on [-1, 1] computed by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("gauss_legendre: need at least one node");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i)
    {
        double z = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t k = 0; k < n; ++k)
            {
                const double p2 = p1;
                p1 = p0;
                const double kk = static_cast<double>(k);
                p0 = ((2.0 * kk + 1.0) * z * p1 - kk * p2) / (kk + 1.0);
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

/// Shared 16-point rule; most panel integrals in the library use it.
inline QuadratureRule const& gl16()
{
    static const QuadratureRule rule = gauss_legendre(16);
    return rule;
}

/// Integrates f over [a, b] with one application of `rule`.
template<class F>
double integrate_gl(F&& f, double a, double b, QuadratureRule const& rule = gl16())
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

/// Composite rule with `panels` equal panels on [a, b].
template<class F>
double integrate_panels(F&& f, double a, double b, int panels, QuadratureRule const& rule = gl16())
{
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p)
        sum += integrate_gl(f, a + p * h, a + (p + 1) * h, rule);
    return sum;
}

/// Integrates a smooth, decaying f over [a, inf) via x = a + scale * tan(t),
/// t in (0, pi/2), with `panels` Gauss-Legendre panels in t.
template<class F>
double integrate_tan_map(F&& f, double a, double scale, int panels = 8,
                         QuadratureRule const& rule = gl16())
{
    auto g = [&](double t) {
        const double c = std::cos(t);
        return f(a + scale * std::tan(t)) * scale / (c * c);
    };
    return integrate_panels(g, 0.0, 0.5 * pi, panels, rule);
}

/// Integrates f over [a, b] with panels whose widths grow geometrically from
/// a (a > 0), suited to integrands that vary on the scale of the abscissa.
template<class F>
double integrate_geometric(F&& f, double a, double b, double ratio = 2.0,
                           QuadratureRule const& rule = gl16())
{
    double sum = 0.0;
    double lo = a;
    while (lo < b)
    {
        const double hi = std::min(lo * ratio, b);
        sum += integrate_gl(f, lo, hi, rule);
        lo = hi;
    }
    return sum;
}

/// Composite rule on [a, b] as explicit nodes and weights.
inline QuadratureRule panel_rule(double a, double b, int panels, QuadratureRule const& rule = gl16())
{
    QuadratureRule out;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
    {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < rule.size(); ++i)
        {
            out.nodes.push_back(mid + 0.5 * h * rule.nodes[i]);
            out.weights.push_back(0.5 * h * rule.weights[i]);
        }
    }
    return out;
}

/// Nodes and weights of integrate_tan_map.
inline QuadratureRule tan_map_rule(double a, double scale, int panels, QuadratureRule const& rule = gl16())
{
    QuadratureRule t = panel_rule(0.0, 0.5 * pi, panels, rule);
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        const double c = std::cos(t.nodes[i]);
        t.weights[i] *= scale / (c * c);
        t.nodes[i] = a + scale * std::tan(t.nodes[i]);
    }
    return t;
}

/// Chebyshev-Gauss rule of the first kind mapped onto the half line by
/// x = scale * tan(pi/4 * cos((2q-1) pi / 2Q) + pi/4). The weights carry the
/// Chebyshev factor sin((2q-1) pi / 2Q) and the Jacobian of the map.
inline QuadratureRule chebyshev_half_line(std::size_t q_count, double scale = 1.0)
{
    QuadratureRule rule;
    rule.nodes.resize(q_count);
    rule.weights.resize(q_count);
    const double q_total = static_cast<double>(q_count);
    for (std::size_t q = 1; q <= q_count; ++q)
    {
        const double angle = (2.0 * static_cast<double>(q) - 1.0) / (2.0 * q_total) * pi;
        const double arg = 0.25 * pi * std::cos(angle) + 0.25 * pi;
        const double c = std::cos(arg);
        rule.nodes[q - 1] = scale * std::tan(arg);
        rule.weights[q - 1] = scale * pi * pi * std::sin(angle) / (4.0 * q_total * c * c);
    }
    return rule;
}

/// Chebyshev-Gauss rule of the first kind mapped onto [0, 2 pi] by
/// v = pi * (cos((2q-1) pi / 2Q) + 1).
inline QuadratureRule chebyshev_angle(std::size_t q_count)
{
    QuadratureRule rule;
    rule.nodes.resize(q_count);
    rule.weights.resize(q_count);
    const double q_total = static_cast<double>(q_count);
    for (std::size_t q = 1; q <= q_count; ++q)
    {
        const double angle = (2.0 * static_cast<double>(q) - 1.0) / (2.0 * q_total) * pi;
        rule.nodes[q - 1] = pi * (std::cos(angle) + 1.0);
        rule.weights[q - 1] = pi * pi * std::sin(angle) / q_total;
    }
    return rule;
}

/// Tabulated function on a uniform grid in ln(x). Interior evaluation uses
/// Catmull-Rom cubic interpolation; outside the grid the end segments are
/// extended linearly (in ln x).
class LogGridTable
{
public:
    LogGridTable() = default;

    LogGridTable(double log_lo, double log_step, std::vector<double> values)
        : log_lo_(log_lo), log_step_(log_step), values_(std::move(values))
    {
        if (values_.size() < 4)
            throw std::invalid_argument("LogGridTable: need at least 4 samples");
        if (!(log_step_ > 0.0))
            throw std::invalid_argument("LogGridTable: step must be positive");
    }

    /// Samples f at n points ln x = log_lo + i * log_step.
    template<class F>
    static LogGridTable sample(F&& f, double log_lo, double log_hi, double log_step)
    {
        const auto n = static_cast<std::size_t>(std::ceil((log_hi - log_lo) / log_step)) + 1;
        std::vector<double> values(std::max<std::size_t>(n, 4));
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = f(log_lo + static_cast<double>(i) * log_step);
        return {log_lo, log_step, std::move(values)};
    }

    bool empty() const noexcept { return values_.empty(); }
    double log_lo() const noexcept { return log_lo_; }
    double log_hi() const noexcept
    {
        return log_lo_ + log_step_ * static_cast<double>(values_.size() - 1);
    }
    std::span<const double> values() const noexcept { return values_; }

    /// Evaluates at ln x = u.
    double at_log(double u) const noexcept
    {
        const double pos = (u - log_lo_) / log_step_;
        const auto last = static_cast<double>(values_.size() - 1);
        if (pos <= 0.0)
            return values_[0] + pos * (values_[1] - values_[0]);
        if (pos >= last)
        {
            const std::size_t n = values_.size();
            return values_[n - 1] + (pos - last) * (values_[n - 1] - values_[n - 2]);
        }
        const auto i = static_cast<std::size_t>(pos);
        const double t = pos - static_cast<double>(i);
        const double y1 = values_[i];
        const double y2 = values_[i + 1];
        const double y0 = i > 0 ? values_[i - 1] : 2.0 * y1 - y2;
        const double y3 = i + 2 < values_.size() ? values_[i + 2] : 2.0 * y2 - y1;
        const double t2 = t * t;
        const double t3 = t2 * t;
        return 0.5 * ((2.0 * y1) + (-y0 + y2) * t + (2.0 * y0 - 5.0 * y1 + 4.0 * y2 - y3) * t2
                      + (-y0 + 3.0 * y1 - 3.0 * y2 + y3) * t3);
    }

private:
    double log_lo_ = 0.0;
    double log_step_ = 1.0;
    std::vector<double> values_;
};

/// Linear interpolation on a uniform grid; clamps outside the grid.
class UniformGridTable
{
public:
    UniformGridTable() = default;
    UniformGridTable(double lo, double step, std::vector<double> values)
        : lo_(lo), step_(step), values_(std::move(values))
    {
    }

    bool empty() const noexcept { return values_.empty(); }

    double operator()(double x) const noexcept
    {
        const double pos = (x - lo_) / step_;
        if (pos <= 0.0)
            return values_.front();
        const auto last = static_cast<double>(values_.size() - 1);
        if (pos >= last)
            return values_.back();
        const auto i = static_cast<std::size_t>(pos);
        const double t = pos - static_cast<double>(i);
        return values_[i] + t * (values_[i + 1] - values_[i]);
    }

private:
    double lo_ = 0.0;
    double step_ = 1.0;
    std::vector<double> values_;
};

/// Kahan-Babuska (Neumaier) compensated accumulator.
class CompensatedSum
{
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace riscov::numerics

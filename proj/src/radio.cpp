// SPDX-License-Identifier: Apache-2.0
//
// nfz-design: minimum-volume no-fly zones for drone/satellite coexistence
// Copyright (C) 2026 The nfz-design authors
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

#include "nfz/radio.hpp"

#include "nfz/error.hpp"
#include "csv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace nfz
{
    double normalize_azimuth(double phi) noexcept
    {
        double p = std::fmod(phi, two_pi);
        if (p < 0.0)
            p += two_pi;
        if (p >= two_pi) // fmod of a tiny negative value can round up to 2 pi
            p = 0.0;
        return p;
    }

    Direction::Direction(double theta, double phi) : theta_(theta), phi_(normalize_azimuth(phi))
    {
        if (!(theta >= 0.0 && theta <= half_pi) || !std::isfinite(phi))
            throw DomainError("Direction: theta must lie in [0, pi/2] and phi must be finite, got theta = " +
                              std::to_string(theta));
    }

    double ula_gain(const UlaPattern &p, const Direction &dir)
    {
        if (p.elements < 1 || !(p.spacing_ratio > 0.0))
            throw DomainError("ULA pattern needs elements >= 1 and spacing_ratio > 0");
        const double x = pi * p.spacing_ratio * std::sin(dir.theta());
        const double den = std::sin(x);
        if (std::abs(den) < 1e-12)
            return static_cast<double>(p.elements);
        return std::abs(std::sin(p.elements * x) / den);
    }

    // ---------------------------------------------------------------------------------------------

    TabulatedPattern::TabulatedPattern(std::vector<double> theta, std::vector<double> phi, std::vector<double> gains)
        : theta_(std::move(theta)), phi_(std::move(phi)), gains_(std::move(gains))
    {
        if (theta_.empty() || phi_.empty())
            throw ConfigError("pattern", "empty grid");
        if (gains_.size() != theta_.size() * phi_.size())
            throw ConfigError("pattern", "gain count does not match grid size");
        if (!std::is_sorted(theta_.begin(), theta_.end(), std::less_equal<>()) ||
            std::adjacent_find(theta_.begin(), theta_.end()) != theta_.end())
            throw ConfigError("pattern.theta", "theta nodes must be strictly increasing");
        if (!std::is_sorted(phi_.begin(), phi_.end()) ||
            std::adjacent_find(phi_.begin(), phi_.end()) != phi_.end())
            throw ConfigError("pattern.phi", "phi nodes must be strictly increasing");
        constexpr double tol = 1e-9;
        if (std::abs(theta_.front()) > tol || std::abs(theta_.back() - half_pi) > tol)
            throw ConfigError("pattern.theta", "theta nodes must span [0, 90] degrees");
        if (std::abs(phi_.front()) > tol || phi_.back() >= two_pi)
            throw ConfigError("pattern.phi", "phi nodes must start at 0 and stay below 360 degrees");
        for (double g : gains_)
            if (!(g >= 0.0) || !std::isfinite(g))
                throw ConfigError("pattern.gain_linear", "gains must be finite and non-negative");
    }

    TabulatedPattern TabulatedPattern::load_csv(const std::filesystem::path &file)
    {
        auto table = csv::read(file, {"theta_deg", "phi_deg", "gain_linear"});
        std::map<std::pair<double, double>, double> mesh;
        std::vector<double> thetas, phis;
        for (const auto &row : table.rows)
        {
            if (!mesh.emplace(std::pair{row[0], row[1]}, row[2]).second)
                throw ConfigError(file.string(), "duplicate node (" + std::to_string(row[0]) + ", " +
                                                     std::to_string(row[1]) + ")");
            thetas.push_back(row[0]);
            phis.push_back(row[1]);
        }
        auto uniq = [](std::vector<double> &v)
        {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        uniq(thetas);
        uniq(phis);
        if (mesh.size() != thetas.size() * phis.size())
            throw ConfigError(file.string(), "nodes do not form a full theta x phi mesh");

        std::vector<double> gains;
        gains.reserve(mesh.size());
        for (double t : thetas)
            for (double p : phis)
                gains.push_back(mesh.at({t, p}));

        std::vector<double> theta_rad(thetas.size()), phi_rad(phis.size());
        std::transform(thetas.begin(), thetas.end(), theta_rad.begin(), deg2rad);
        std::transform(phis.begin(), phis.end(), phi_rad.begin(), deg2rad);
        return TabulatedPattern(std::move(theta_rad), std::move(phi_rad), std::move(gains));
    }

    double TabulatedPattern::gain(const Direction &dir) const
    {
        // theta: clamped linear weight
        std::size_t i0 = 0, i1 = 0;
        double tt = 0.0;
        if (theta_.size() > 1)
        {
            double t = std::clamp(dir.theta(), theta_.front(), theta_.back());
            auto it = std::upper_bound(theta_.begin(), theta_.end(), t);
            i1 = std::min<std::size_t>(it - theta_.begin(), theta_.size() - 1);
            i0 = i1 - 1;
            tt = (t - theta_[i0]) / (theta_[i1] - theta_[i0]);
        }

        // phi: periodic, the cell after the last node wraps to the first node at 2 pi
        std::size_t j0 = 0, j1 = 0;
        double tp = 0.0;
        const std::size_t np = phi_.size();
        if (np > 1)
        {
            double p = dir.phi();
            auto it = std::upper_bound(phi_.begin(), phi_.end(), p);
            j0 = (it - phi_.begin()) - 1;
            if (j0 + 1 < np)
            {
                j1 = j0 + 1;
                tp = (p - phi_[j0]) / (phi_[j1] - phi_[j0]);
            }
            else
            {
                j1 = 0;
                tp = (p - phi_[j0]) / (phi_.front() + two_pi - phi_[j0]);
            }
        }

        auto at = [&](std::size_t i, std::size_t j) { return gains_[i * np + j]; };
        return (1.0 - tt) * ((1.0 - tp) * at(i0, j0) + tp * at(i0, j1)) +
               tt * ((1.0 - tp) * at(i1, j0) + tp * at(i1, j1));
    }

    // ---------------------------------------------------------------------------------------------

    AntennaPattern::AntennaPattern(IsotropicPattern p) : pattern_(p)
    {
        if (!(p.gain >= 0.0) || !std::isfinite(p.gain))
            throw DomainError("isotropic gain must be finite and non-negative");
    }

    AntennaPattern::AntennaPattern(UlaPattern p) : pattern_(p)
    {
        if (p.elements < 1 || !(p.spacing_ratio > 0.0))
            throw DomainError("ULA pattern needs elements >= 1 and spacing_ratio > 0");
    }

    AntennaPattern::AntennaPattern(TabulatedPattern p) : pattern_(std::move(p)) {}

    double AntennaPattern::gain(const Direction &dir) const
    {
        return std::visit(
            [&](const auto &p) -> double
            {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, IsotropicPattern>)
                    return p.gain;
                else if constexpr (std::is_same_v<T, UlaPattern>)
                    return ula_gain(p, dir);
                else
                    return p.gain(dir);
            },
            pattern_);
    }

    std::vector<double> AntennaPattern::theta_breakpoints() const
    {
        std::vector<double> out;
        if (const auto *ula = std::get_if<UlaPattern>(&pattern_))
        {
            // |sin(M x)| has kinks where M x = m pi, i.e. sin(theta) = m / (M s)
            const double ms = ula->elements * ula->spacing_ratio;
            for (int m = 1; m < ms; ++m)
                out.push_back(std::asin(m / ms));
        }
        else if (const auto *tab = std::get_if<TabulatedPattern>(&pattern_))
        {
            for (double t : tab->theta_nodes())
                if (t > 0.0 && t < half_pi)
                    out.push_back(t);
        }
        return out;
    }

    // ---------------------------------------------------------------------------------------------

    double path_loss(const BoundedPowerLaw &m, double rho)
    {
        if (!(m.alpha > 0.0))
            throw DomainError("path-loss exponent must be positive");
        if (!(rho >= 0.0))
            throw DomainError("distance must be non-negative");
        return rho <= 1.0 ? 1.0 : std::pow(rho, -m.alpha);
    }

    double inverse_path_loss(const BoundedPowerLaw &m, double level)
    {
        if (!(m.alpha > 0.0))
            throw DomainError("path-loss exponent must be positive");
        if (!(level > 0.0 && level <= 1.0))
            throw DomainError("inverse_path_loss: level must lie in (0, 1]");
        if (level == 1.0)
            return 1.0;
        return std::pow(level, -1.0 / m.alpha);
    }
}

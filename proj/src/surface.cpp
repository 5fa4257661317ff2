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

#include "nfz/surface.hpp"

#include "nfz/error.hpp"
#include "csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

namespace nfz
{
    const char *to_string(Provenance p) noexcept
    {
        switch (p)
        {
        case Provenance::optimal:
            return "optimal";
        case Provenance::dome:
            return "dome";
        case Provenance::cylinder:
            return "cylinder";
        case Provenance::custom:
            return "custom";
        }
        return "custom";
    }

    Provenance provenance_from_string(const std::string &s)
    {
        for (auto p : {Provenance::optimal, Provenance::dome, Provenance::cylinder, Provenance::custom})
            if (s == to_string(p))
                return p;
        throw ConfigError("provenance", "unknown provenance '" + s + "'");
    }

    std::string format_double(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    NfzSurface::NfzSurface(AngularGrid grid, std::vector<double> radii, SurfaceMeta meta, Shape shape)
        : grid_(std::move(grid)), radii_(std::move(radii)), meta_(std::move(meta)), shape_(std::move(shape))
    {
        if (radii_.size() != grid_.size())
            throw GeometryError("surface: radius count does not match grid size");
        for (double r : radii_)
            if (!(r >= 0.0) || !std::isfinite(r))
                throw GeometryError("surface: radii must be finite and non-negative");
    }

    double NfzSurface::radius_at(const Direction &dir) const
    {
        if (shape_)
            return shape_(dir);

        const auto th = grid_.theta_nodes();
        auto it = std::lower_bound(th.begin(), th.end(), dir.theta());
        std::size_t i = it - th.begin();
        if (i == th.size() || (i > 0 && dir.theta() - th[i - 1] < th[i] - dir.theta()))
            --i;

        const auto ph = grid_.phi_nodes();
        std::size_t best = 0;
        double best_d = two_pi;
        auto jt = std::lower_bound(ph.begin(), ph.end(), dir.phi());
        for (std::size_t cand : {std::size_t(jt - ph.begin()) % ph.size(),
                                 (std::size_t(jt - ph.begin()) + ph.size() - 1) % ph.size()})
        {
            double d = std::abs(ph[cand] - dir.phi());
            d = std::min(d, two_pi - d);
            if (d < best_d)
            {
                best_d = d;
                best = cand;
            }
        }
        return radii_[grid_.index(i, best)];
    }

    double NfzSurface::max_radius() const noexcept { return *std::max_element(radii_.begin(), radii_.end()); }
    double NfzSurface::min_radius() const noexcept { return *std::min_element(radii_.begin(), radii_.end()); }

    double surface_volume(const NfzSurface &nfz)
    {
        CompensatedSum s;
        const auto r = nfz.radii();
        for (std::size_t k = 0; k < r.size(); ++k)
            s.add(nfz.grid().solid_angle_weight(k) * r[k] * r[k] * r[k] / 3.0);
        return s.value();
    }

    NfzSurface dome_surface(const AngularGrid &grid, double radius)
    {
        if (!(radius >= 0.0))
            throw GeometryError("dome radius must be non-negative");
        SurfaceMeta meta;
        meta.provenance = Provenance::dome;
        meta.dome_radius = radius;
        return NfzSurface(grid, std::vector<double>(grid.size(), radius), meta,
                          [radius](const Direction &) { return radius; });
    }

    NfzSurface dome_of_volume(double volume, const AngularGrid &grid)
    {
        if (!(volume >= 0.0))
            throw GeometryError("volume must be non-negative");
        return dome_surface(grid, std::cbrt(3.0 * volume / two_pi));
    }

    namespace
    {
        double cylinder_radius_at(double theta, double radius, double height)
        {
            const double s = std::sin(theta), c = std::cos(theta);
            if (s <= 0.0)
                return height;
            if (c <= 0.0)
                return radius;
            return std::min(radius / s, height / c);
        }
    }

    NfzSurface cylinder_surface(const AngularGrid &grid, double radius, double height)
    {
        if (!(radius >= 0.0) || !(height >= 0.0))
            throw GeometryError("cylinder radius and height must be non-negative");
        // panel edge at the rim, where r(theta) has a kink
        std::vector<double> tb(grid.theta_breaks().begin(), grid.theta_breaks().end());
        if (radius > 0.0 && height > 0.0)
            tb.push_back(std::atan2(radius, height));
        const int n_theta = std::max(static_cast<int>(grid.n_theta()), static_cast<int>(tb.size()) + 1);
        AngularGrid g(n_theta, static_cast<int>(grid.n_phi()), std::move(tb),
                      {grid.phi_breaks().begin(), grid.phi_breaks().end()});
        std::vector<double> r(g.size());
        for (std::size_t k = 0; k < g.size(); ++k)
            r[k] = cylinder_radius_at(g.direction(k).theta(), radius, height);
        SurfaceMeta meta;
        meta.provenance = Provenance::cylinder;
        meta.cylinder_radius = radius;
        meta.cylinder_height = height;
        return NfzSurface(std::move(g), std::move(r), meta,
                          [radius, height](const Direction &d) { return cylinder_radius_at(d.theta(), radius, height); });
    }

    double cylinder_radius_for_volume(double volume, double aspect)
    {
        if (!(volume >= 0.0) || !(aspect > 0.0))
            throw GeometryError("cylinder: need volume >= 0 and aspect > 0");
        return std::cbrt(volume / (pi * aspect));
    }

    // ---------------------------------------------------------------------------------------------

    namespace
    {
        std::string join_breaks(std::span<const double> v)
        {
            std::string s;
            for (double x : v)
                s += (s.empty() ? "" : ";") + format_double(x);
            return s.empty() ? "none" : s;
        }

        std::vector<double> parse_breaks(const std::string &s, const std::string &path)
        {
            std::vector<double> out;
            if (s == "none" || s.empty())
                return out;
            for (const auto &tok : csv::split(s, ';'))
            {
                try
                {
                    out.push_back(std::stod(tok));
                }
                catch (const std::exception &)
                {
                    throw ConfigError(path, "bad breakpoint '" + tok + "'");
                }
            }
            return out;
        }
    }

    void write_surface_csv(std::ostream &out, const NfzSurface &nfz, const std::string &first_line)
    {
        const auto &m = nfz.meta();
        const auto &g = nfz.grid();
        out << first_line << '\n';
        out << "# provenance=" << to_string(m.provenance) << " mu=" << format_double(m.mu) << " a=" << format_double(m.a)
            << " a_prime=" << format_double(m.a_prime) << " dome_radius=" << format_double(m.dome_radius)
            << " cylinder_radius=" << format_double(m.cylinder_radius)
            << " cylinder_height=" << format_double(m.cylinder_height)
            << " status=" << (m.status.empty() ? "none" : m.status)
            << " scenario=" << (m.scenario_hash.empty() ? "none" : m.scenario_hash) << '\n';
        out << "# grid n_theta=" << g.n_theta() << " n_phi=" << g.n_phi()
            << " theta_breaks_rad=" << join_breaks(g.theta_breaks()) << " phi_breaks_rad=" << join_breaks(g.phi_breaks())
            << '\n';
        out << "theta_deg,phi_deg,r\n";
        const auto r = nfz.radii();
        for (std::size_t k = 0; k < g.size(); ++k)
        {
            const auto d = g.direction(k);
            out << format_double(rad2deg(d.theta())) << ',' << format_double(rad2deg(d.phi())) << ','
                << format_double(r[k]) << '\n';
        }
    }

    NfzSurface read_surface_csv(const std::filesystem::path &file)
    {
        const auto table = csv::read(file, {"theta_deg", "phi_deg", "r"});
        std::map<std::string, std::string> kv;
        for (const auto &c : table.comments)
        {
            std::istringstream ss(c);
            std::string tok;
            while (ss >> tok)
            {
                auto eq = tok.find('=');
                if (eq != std::string::npos)
                    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
            }
        }
        auto need = [&](const std::string &key) -> const std::string &
        {
            auto it = kv.find(key);
            if (it == kv.end())
                throw ConfigError(file.string() + ":" + key, "missing header field");
            return it->second;
        };
        auto num = [&](const std::string &key)
        {
            try
            {
                return std::stod(need(key));
            }
            catch (const ConfigError &)
            {
                throw;
            }
            catch (const std::exception &)
            {
                throw ConfigError(file.string() + ":" + key, "not a number");
            }
        };

        AngularGrid grid(static_cast<int>(num("n_theta")), static_cast<int>(num("n_phi")),
                         parse_breaks(need("theta_breaks_rad"), file.string() + ":theta_breaks_rad"),
                         parse_breaks(need("phi_breaks_rad"), file.string() + ":phi_breaks_rad"));
        if (table.rows.size() != grid.size())
            throw ConfigError(file.string(), "expected " + std::to_string(grid.size()) + " rows, found " +
                                                 std::to_string(table.rows.size()));
        std::vector<double> radii(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k)
        {
            const auto d = grid.direction(k);
            const auto &row = table.rows[k];
            if (std::abs(row[0] - rad2deg(d.theta())) > 1e-9 || std::abs(row[1] - rad2deg(d.phi())) > 1e-9)
                throw ConfigError(file.string() + ": row " + std::to_string(k + 1), "node does not match the declared grid");
            radii[k] = row[2];
        }

        SurfaceMeta meta;
        meta.provenance = provenance_from_string(need("provenance"));
        meta.mu = num("mu");
        meta.a = num("a");
        meta.a_prime = num("a_prime");
        meta.dome_radius = num("dome_radius");
        meta.cylinder_radius = num("cylinder_radius");
        meta.cylinder_height = num("cylinder_height");
        meta.status = need("status") == "none" ? "" : need("status");
        meta.scenario_hash = need("scenario") == "none" ? "" : need("scenario");
        return NfzSurface(std::move(grid), std::move(radii), std::move(meta));
    }
}

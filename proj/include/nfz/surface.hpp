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

#ifndef NFZ_SURFACE_HPP
#define NFZ_SURFACE_HPP

#include "nfz/quadrature.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nfz
{
    enum class Provenance
    {
        optimal,
        dome,
        cylinder,
        custom
    };

    const char *to_string(Provenance p) noexcept;
    Provenance provenance_from_string(const std::string &s);

    struct SurfaceMeta
    {
        Provenance provenance = Provenance::custom;
        double mu = 0.0;              // optimal
        double a = 0.0;               // required eliminated interference (optimal)
        double a_prime = 0.0;         // interference cap (optimal)
        double dome_radius = 0.0;     // dome
        double cylinder_radius = 0.0; // cylinder
        double cylinder_height = 0.0; // cylinder
        std::string status;           // solver status for optimal surfaces
        std::string scenario_hash;
    };

    /// Separation distance r(theta, phi) at the nodes of an angular grid: the NFZ is every point within
    /// r of the GS in its direction. `shape`, when set, evaluates the same boundary between nodes
    /// (closed form for domes/cylinders, the optimality condition for optimal surfaces); otherwise the
    /// nearest node is used.
    class NfzSurface
    {
    public:
        using Shape = std::function<double(const Direction &)>;

        NfzSurface(AngularGrid grid, std::vector<double> radii, SurfaceMeta meta = {}, Shape shape = {});

        const AngularGrid &grid() const noexcept { return grid_; }
        std::span<const double> radii() const noexcept { return radii_; }
        const SurfaceMeta &meta() const noexcept { return meta_; }
        SurfaceMeta &meta() noexcept { return meta_; }

        double radius_at(const Direction &dir) const;
        double max_radius() const noexcept;
        double min_radius() const noexcept;

    private:
        AngularGrid grid_;
        std::vector<double> radii_;
        SurfaceMeta meta_;
        Shape shape_;
    };

    // Quadrature of r^3 / 3 sin(theta) over the grid.
    double surface_volume(const NfzSurface &nfz);

    NfzSurface dome_surface(const AngularGrid &grid, double radius);

    // Dome of the given volume: radius (3 V / (2 pi))^(1/3).
    NfzSurface dome_of_volume(double volume, const AngularGrid &grid);

    /// Upright cylinder centred on the GS: r = min(radius / sin(theta), height / cos(theta)).
    NfzSurface cylinder_surface(const AngularGrid &grid, double radius, double height);

    // Radius of the cylinder of volume V with height = aspect * radius.
    double cylinder_radius_for_volume(double volume, double aspect);

    /// CSV: '#' header lines carrying the metadata and grid, then theta_deg,phi_deg,r.
    void write_surface_csv(std::ostream &out, const NfzSurface &nfz, const std::string &first_line);
    NfzSurface read_surface_csv(const std::filesystem::path &file);

    // Shortest round-trip representation of a double ("%.17g").
    std::string format_double(double v);
}

#endif

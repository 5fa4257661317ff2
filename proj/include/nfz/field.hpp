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

#ifndef NFZ_FIELD_HPP
#define NFZ_FIELD_HPP

#include "nfz/quadrature.hpp"
#include "nfz/radio.hpp"

#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace nfz
{
    class NfzSurface;

    struct HomogeneousIntensity
    {
        double lambda = 0.0; // drones per cubic length unit
    };

    // Angular cell, half-open in both angles: [theta_lo, theta_hi) x [phi_lo, phi_hi), radians.
    struct IntensityCell
    {
        double theta_lo, theta_hi;
        double phi_lo, phi_hi;
        double lambda;
    };

    struct PiecewiseIntensity
    {
        std::vector<IntensityCell> cells;
        double default_lambda = 0.0;
    };

    // Arbitrary density lambda(direction, rho). Without `upper_bound` it cannot be sampled.
    struct GeneralIntensity
    {
        std::function<double(const Direction &, double)> density;
        std::optional<double> upper_bound;
        bool radially_constant = false;
        std::vector<double> theta_breaks, phi_breaks;
    };

    /// Drone intensity lambda(theta, phi, rho) of the Poisson field around the GS.
    class IntensityField
    {
    public:
        using Variant = std::variant<HomogeneousIntensity, PiecewiseIntensity, GeneralIntensity>;

        IntensityField(HomogeneousIntensity f);
        IntensityField(PiecewiseIntensity f); // validates non-negativity, cell ranges, disjointness
        IntensityField(GeneralIntensity f);

        double at(const Direction &dir, double rho) const;

        // True when lambda does not vary along a ray; angular() is then the value on that ray.
        bool radially_constant() const noexcept;
        double angular(const Direction &dir) const;

        std::optional<double> upper_bound() const;

        std::vector<double> theta_breakpoints() const;
        std::vector<double> phi_breakpoints() const;

        const Variant &variant() const noexcept { return field_; }

    private:
        Variant field_;
    };

    /// The three-level field used for the representative results: a sparse low-altitude ring, two
    /// denser sectors, and 10^-8.5 everywhere else (including theta < 10 deg).
    IntensityField stratified_reference_field();

    /// Per-direction radius with known bounds over the hemisphere.
    struct RadialBoundary
    {
        std::function<double(const Direction &)> radius;
        double min_radius = 0.0;
        double max_radius = 0.0;

        static RadialBoundary constant(double r);
        static RadialBoundary of_surface(const NfzSurface &s);
    };

    /// Region between an inner and an outer star-shaped boundary, z >= 0.
    struct HemisphericalRegion
    {
        RadialBoundary outer;
        RadialBoundary inner = RadialBoundary::constant(0.0);

        // Exact volume, given the node rule of `grid` for the angular part.
        double volume(const AngularGrid &grid) const;
    };

    /// Integral over [r_in, r_out] of l(rho)^power * rho^2 for the bounded power law, closed form
    /// (logarithmic branch when 3 - power * alpha vanishes).
    double radial_moment(const BoundedPowerLaw &loss, double r_in, double r_out, int power = 1);

    /// Expected aggregate interference from drones in the region (Campbell's theorem):
    /// integral of P lambda l(rho) g rho^2 sin(theta). Radial part is closed form when the field is
    /// radially constant and adaptive Gauss-Kronrod (tol 1e-9) otherwise; angular part uses `grid`.
    /// Throws GeometryError if inner > outer anywhere on the grid.
    double expected_interference(const HemisphericalRegion &region, const IntensityField &field,
                                 const AntennaPattern &pattern, const BoundedPowerLaw &loss, double power,
                                 const AngularGrid &grid);

    /// Variance of the aggregate interference, integral of lambda (P g l)^2 rho^2 sin(theta).
    double interference_variance(const HemisphericalRegion &region, const IntensityField &field,
                                 const AntennaPattern &pattern, const BoundedPowerLaw &loss, double power,
                                 const AngularGrid &grid);

    /// Expected interference from drones inside the NFZ (radius 0 to r at each node of the surface's grid).
    double eliminated_interference(const NfzSurface &nfz, const IntensityField &field, const AntennaPattern &pattern,
                                   const BoundedPowerLaw &loss, double power);

    // Same, counting only the part of the NFZ that lies inside `outer` (B intersected with A).
    double eliminated_interference(const NfzSurface &nfz, const RadialBoundary &outer, const IntensityField &field,
                                   const AntennaPattern &pattern, const BoundedPowerLaw &loss, double power);
}

#endif

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

#include "nfz/field.hpp"

#include "nfz/error.hpp"
#include "nfz/surface.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

namespace nfz
{
    namespace
    {
        bool in_cell(const IntensityCell &c, double theta, double phi)
        {
            return theta >= c.theta_lo && theta < c.theta_hi && phi >= c.phi_lo && phi < c.phi_hi;
        }

        void validate(const PiecewiseIntensity &f)
        {
            if (!(f.default_lambda >= 0.0) || !std::isfinite(f.default_lambda))
                throw ConfigError("intensity.default_lambda_per_unit3", "must be finite and non-negative");
            for (std::size_t i = 0; i < f.cells.size(); ++i)
            {
                const auto &c = f.cells[i];
                const std::string path = "intensity.cells[" + std::to_string(i) + "]";
                if (!(c.lambda >= 0.0) || !std::isfinite(c.lambda))
                    throw ConfigError(path + ".lambda_per_unit3", "must be finite and non-negative");
                if (!(c.theta_lo >= 0.0 && c.theta_lo < c.theta_hi && c.theta_hi <= half_pi + 1e-12))
                    throw ConfigError(path + ".theta_deg", "need 0 <= low < high <= 90");
                if (!(c.phi_lo >= 0.0 && c.phi_lo < c.phi_hi && c.phi_hi <= two_pi + 1e-12))
                    throw ConfigError(path + ".phi_deg", "need 0 <= low < high <= 360");
                for (std::size_t j = 0; j < i; ++j)
                {
                    const auto &d = f.cells[j];
                    if (c.theta_lo < d.theta_hi && d.theta_lo < c.theta_hi && c.phi_lo < d.phi_hi && d.phi_lo < c.phi_hi)
                        throw ConfigError(path, "overlaps cell " + std::to_string(j));
                }
            }
        }

        template <class... Ts>
        struct overloaded : Ts...
        {
            using Ts::operator()...;
        };
    }

    IntensityField::IntensityField(HomogeneousIntensity f) : field_(f)
    {
        if (!(f.lambda >= 0.0) || !std::isfinite(f.lambda))
            throw ConfigError("intensity.lambda_per_unit3", "must be finite and non-negative");
    }

    IntensityField::IntensityField(PiecewiseIntensity f) : field_((validate(f), std::move(f))) {}

    IntensityField::IntensityField(GeneralIntensity f) : field_(std::move(f))
    {
        if (!std::get<GeneralIntensity>(field_).density)
            throw ConfigError("intensity", "general field needs a density function");
    }

    double IntensityField::at(const Direction &dir, double rho) const
    {
        return std::visit(overloaded{[](const HomogeneousIntensity &h) { return h.lambda; },
                                     [&](const PiecewiseIntensity &p)
                                     {
                                         for (const auto &c : p.cells)
                                             if (in_cell(c, dir.theta(), dir.phi()))
                                                 return c.lambda;
                                         return p.default_lambda;
                                     },
                                     [&](const GeneralIntensity &g) { return g.density(dir, rho); }},
                          field_);
    }

    bool IntensityField::radially_constant() const noexcept
    {
        if (const auto *g = std::get_if<GeneralIntensity>(&field_))
            return g->radially_constant;
        return true;
    }

    double IntensityField::angular(const Direction &dir) const { return at(dir, 1.0); }

    std::optional<double> IntensityField::upper_bound() const
    {
        return std::visit(overloaded{[](const HomogeneousIntensity &h) -> std::optional<double> { return h.lambda; },
                                     [](const PiecewiseIntensity &p) -> std::optional<double>
                                     {
                                         double m = p.default_lambda;
                                         for (const auto &c : p.cells)
                                             m = std::max(m, c.lambda);
                                         return m;
                                     },
                                     [](const GeneralIntensity &g) { return g.upper_bound; }},
                          field_);
    }

    std::vector<double> IntensityField::theta_breakpoints() const
    {
        std::vector<double> out;
        if (const auto *p = std::get_if<PiecewiseIntensity>(&field_))
            for (const auto &c : p->cells)
            {
                out.push_back(c.theta_lo);
                out.push_back(c.theta_hi);
            }
        else if (const auto *g = std::get_if<GeneralIntensity>(&field_))
            out = g->theta_breaks;
        return out;
    }

    std::vector<double> IntensityField::phi_breakpoints() const
    {
        std::vector<double> out;
        if (const auto *p = std::get_if<PiecewiseIntensity>(&field_))
            for (const auto &c : p->cells)
            {
                out.push_back(c.phi_lo);
                out.push_back(c.phi_hi);
            }
        else if (const auto *g = std::get_if<GeneralIntensity>(&field_))
            out = g->phi_breaks;
        return out;
    }

    IntensityField stratified_reference_field()
    {
        PiecewiseIntensity f;
        f.cells = {
            {deg2rad(10.0), deg2rad(30.0), 0.0, two_pi, 1e-8},
            {deg2rad(30.0), deg2rad(60.0), 0.0, pi, std::pow(10.0, -7.2)},
            {deg2rad(60.0), deg2rad(80.0), pi, two_pi, std::pow(10.0, -7.3)},
        };
        f.default_lambda = std::pow(10.0, -8.5);
        return IntensityField(std::move(f));
    }

    // ---------------------------------------------------------------------------------------------

    RadialBoundary RadialBoundary::constant(double r)
    {
        if (!(r >= 0.0) || !std::isfinite(r))
            throw GeometryError("radius must be finite and non-negative");
        return {[r](const Direction &) { return r; }, r, r};
    }

    RadialBoundary RadialBoundary::of_surface(const NfzSurface &s)
    {
        auto shared = std::make_shared<const NfzSurface>(s);
        return {[shared](const Direction &d) { return shared->radius_at(d); }, shared->min_radius(),
                shared->max_radius()};
    }

    double HemisphericalRegion::volume(const AngularGrid &grid) const
    {
        CompensatedSum s;
        for (std::size_t k = 0; k < grid.size(); ++k)
        {
            const auto dir = grid.direction(k);
            const double ro = outer.radius(dir), ri = inner.radius(dir);
            s.add(grid.solid_angle_weight(k) * (ro * ro * ro - ri * ri * ri) / 3.0);
        }
        return s.value();
    }

    // ---------------------------------------------------------------------------------------------

    double radial_moment(const BoundedPowerLaw &loss, double r_in, double r_out, int power)
    {
        if (!(r_in >= 0.0) || !(r_out >= r_in))
            throw GeometryError("radial_moment: need 0 <= r_in <= r_out");
        double total = 0.0;
        if (r_in < 1.0)
        {
            const double b = std::min(r_out, 1.0);
            total += (b * b * b - r_in * r_in * r_in) / 3.0;
        }
        if (r_out > 1.0)
        {
            const double a = std::max(r_in, 1.0);
            const double e = 3.0 - power * loss.alpha;
            const double log_ratio = std::log(r_out / a);
            const double t = e * log_ratio;
            // (r_out^e - a^e) / e, continuous through e = 0
            const double factor = t == 0.0 ? log_ratio : log_ratio * std::expm1(t) / t;
            total += std::pow(a, e) * factor;
        }
        return total;
    }

    namespace
    {
        double general_radial(const IntensityField &field, const Direction &dir, const BoundedPowerLaw &loss,
                              double r_in, double r_out, int power)
        {
            using boost::math::quadrature::gauss_kronrod;
            auto integrand = [&](double rho)
            {
                const double l = rho <= 1.0 ? 1.0 : std::pow(rho, -loss.alpha);
                return field.at(dir, rho) * std::pow(l, power) * rho * rho;
            };
            double total = 0.0;
            if (r_in < 1.0)
                total += gauss_kronrod<double, 31>::integrate(integrand, r_in, std::min(1.0, r_out), 15, 1e-9);
            if (r_out > 1.0)
                total += gauss_kronrod<double, 31>::integrate(integrand, std::max(1.0, r_in), r_out, 15, 1e-9);
            return total;
        }

        double region_moment(const HemisphericalRegion &region, const IntensityField &field,
                             const AntennaPattern &pattern, const BoundedPowerLaw &loss, double power,
                             const AngularGrid &grid, int moment)
        {
            if (!(power >= 0.0))
                throw DomainError("average emission power must be non-negative");
            if (!(loss.alpha > 0.0))
                throw DomainError("path-loss exponent must be positive");
            std::vector<double> terms(grid.size());
            parallel_for(grid.size(),
                         [&](std::size_t k)
                         {
                             const auto dir = grid.direction(k);
                             const double r_in = region.inner.radius(dir);
                             const double r_out = region.outer.radius(dir);
                             if (r_in > r_out * (1.0 + 1e-12))
                                 throw GeometryError("inner boundary exceeds outer boundary at theta = " +
                                                     std::to_string(rad2deg(dir.theta())) + " deg, phi = " +
                                                     std::to_string(rad2deg(dir.phi())) + " deg");
                             const double hi = std::max(r_in, r_out);
                             const double pg = power * pattern.gain(dir);
                             if (pg == 0.0 || hi == r_in)
                             {
                                 terms[k] = 0.0;
                                 return;
                             }
                             const double radial = field.radially_constant()
                                                       ? field.angular(dir) * radial_moment(loss, r_in, hi, moment)
                                                       : general_radial(field, dir, loss, r_in, hi, moment);
                             terms[k] = grid.solid_angle_weight(k) * std::pow(pg, moment) * radial;
                         });
            return compensated_sum(terms);
        }
    }

    double expected_interference(const HemisphericalRegion &region, const IntensityField &field,
                                 const AntennaPattern &pattern, const BoundedPowerLaw &loss, double power,
                                 const AngularGrid &grid)
    {
        return region_moment(region, field, pattern, loss, power, grid, 1);
    }

    double interference_variance(const HemisphericalRegion &region, const IntensityField &field,
                                 const AntennaPattern &pattern, const BoundedPowerLaw &loss, double power,
                                 const AngularGrid &grid)
    {
        return region_moment(region, field, pattern, loss, power, grid, 2);
    }

    double eliminated_interference(const NfzSurface &nfz, const IntensityField &field, const AntennaPattern &pattern,
                                   const BoundedPowerLaw &loss, double power)
    {
        return eliminated_interference(nfz, RadialBoundary::constant(std::numeric_limits<double>::max()), field,
                                       pattern, loss, power);
    }

    double eliminated_interference(const NfzSurface &nfz, const RadialBoundary &outer, const IntensityField &field,
                                   const AntennaPattern &pattern, const BoundedPowerLaw &loss, double power)
    {
        const auto &grid = nfz.grid();
        const auto radii = nfz.radii();
        if (!(power >= 0.0))
            throw DomainError("average emission power must be non-negative");
        std::vector<double> terms(grid.size());
        parallel_for(grid.size(),
                     [&](std::size_t k)
                     {
                         const auto dir = grid.direction(k);
                         const double r = std::min(radii[k], outer.radius(dir));
                         const double pg = power * pattern.gain(dir);
                         if (pg == 0.0 || r <= 0.0)
                         {
                             terms[k] = 0.0;
                             return;
                         }
                         const double radial = field.radially_constant()
                                                   ? field.angular(dir) * radial_moment(loss, 0.0, r, 1)
                                                   : general_radial(field, dir, loss, 0.0, r, 1);
                         terms[k] = grid.solid_angle_weight(k) * pg * radial;
                     });
        return compensated_sum(terms);
    }
}

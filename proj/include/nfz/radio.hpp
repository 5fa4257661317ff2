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

#ifndef NFZ_RADIO_HPP
#define NFZ_RADIO_HPP

#include <filesystem>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

namespace nfz
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double half_pi = std::numbers::pi / 2.0;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    inline constexpr double deg2rad(double deg) { return deg * (pi / 180.0); }
    inline constexpr double rad2deg(double rad) { return rad * (180.0 / pi); }

    /// Viewing direction from the ground station.
    /// theta is measured from the zenith (0 = straight up, pi/2 = horizon), phi is the azimuth.
    /// The construction enforces theta in [0, pi/2] and wraps phi into [0, 2 pi).
    class Direction
    {
    public:
        Direction(double theta, double phi);

        double theta() const noexcept { return theta_; }
        double phi() const noexcept { return phi_; }

    private:
        double theta_;
        double phi_;
    };

    // Wraps an azimuth into [0, 2 pi).
    double normalize_azimuth(double phi) noexcept;

    struct IsotropicPattern
    {
        double gain = 1.0;
    };

    /// Uniform linear array factor |sin(M pi s sin(theta)) / sin(pi s sin(theta))| with s = d / wavelength.
    /// Depends on theta only. At removable singularities (|denominator| < 1e-12) the limit M is returned.
    struct UlaPattern
    {
        int elements = 8;
        double spacing_ratio = 0.25;
    };

    /// Gain sampled on a rectangular (theta, phi) mesh, bilinear in between.
    /// theta is clamped to the first/last node; phi wraps periodically from the last node back to the first.
    class TabulatedPattern
    {
    public:
        // Angles in radians. gains are row-major: gains[i_theta * phi.size() + i_phi].
        TabulatedPattern(std::vector<double> theta, std::vector<double> phi, std::vector<double> gains);

        // CSV with header theta_deg,phi_deg,gain_linear; rows in any order but forming a full mesh.
        static TabulatedPattern load_csv(const std::filesystem::path &file);

        double gain(const Direction &dir) const;

        std::span<const double> theta_nodes() const noexcept { return theta_; }
        std::span<const double> phi_nodes() const noexcept { return phi_; }
        std::span<const double> gains() const noexcept { return gains_; }

    private:
        std::vector<double> theta_;
        std::vector<double> phi_;
        std::vector<double> gains_;
    };

    /// GS antenna gain g(theta, phi), linear scale.
    class AntennaPattern
    {
    public:
        using Variant = std::variant<IsotropicPattern, UlaPattern, TabulatedPattern>;

        AntennaPattern(IsotropicPattern p);
        AntennaPattern(UlaPattern p);
        AntennaPattern(TabulatedPattern p);

        double gain(const Direction &dir) const;

        // Zenith angles in (0, pi/2) where the gain has a kink or discontinuity in theta
        // (array nulls, tabulation nodes). Used to split the theta quadrature into smooth panels.
        std::vector<double> theta_breakpoints() const;

        const Variant &variant() const noexcept { return pattern_; }

    private:
        Variant pattern_;
    };

    double ula_gain(const UlaPattern &p, const Direction &dir);

    /// Bounded power-law path loss l(r) = min{1, r^-alpha}.
    struct BoundedPowerLaw
    {
        double alpha = 2.5;
    };

    double path_loss(const BoundedPowerLaw &m, double rho);

    // Smallest distance at which the loss equals `level`; level must lie in (0, 1].
    double inverse_path_loss(const BoundedPowerLaw &m, double level);
}

#endif

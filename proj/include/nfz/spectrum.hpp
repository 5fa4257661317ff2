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

#ifndef NFZ_SPECTRUM_HPP
#define NFZ_SPECTRUM_HPP

#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace nfz
{
    /// Drone transmit emission mask H(f), relative to the transmit power, as a function of the
    /// frequency offset from the carrier (MHz). Interpolation is linear in dB between breakpoints and
    /// flat outside them. A level of -inf marks zero density; a segment touching a -inf endpoint is zero.
    class EmissionMask
    {
    public:
        struct Breakpoint
        {
            double offset_mhz;
            double level_db;

            bool operator==(const Breakpoint &) const = default;
        };

        explicit EmissionMask(std::vector<Breakpoint> points);

        static EmissionMask constant(double level_db);

        /// Illustrative mask for a 5 MHz block: 0 dB in-band (|offset| <= 2.5), a 10 dB fall over the first
        /// MHz beyond the block edge, then a slow decline to a -30 dB floor. Not a regulatory mask.
        static EmissionMask default_mask();

        // CSV with header offset_mhz,level_db
        static EmissionMask load_csv(const std::filesystem::path &file);

        double level_db(double offset_mhz) const;
        double density(double offset_mhz) const; // linear, 10^(dB/10)

        // Exact integral of the linear density over [from, to], closed form per segment.
        double integrate(double from_mhz, double to_mhz) const;

        std::span<const Breakpoint> breakpoints() const noexcept { return points_; }

    private:
        std::vector<Breakpoint> points_;
    };

    /// Satellite band, drone band split into `blocks` resource blocks, and the guard band between them.
    /// The satellite band sits above the drone band; block `blocks` is the one adjacent to the guard band.
    struct SpectrumPlan
    {
        double sat_bandwidth_mhz = 35.0;
        double sat_center_mhz = 1692.5;
        double drone_bandwidth_mhz = 20.0;
        int blocks = 4;
        double guard_width_mhz = 0.0;
        double tx_power = 1.0;
        EmissionMask mask = EmissionMask::default_mask();

        double block_bandwidth() const { return drone_bandwidth_mhz / blocks; }

        // Absolute carrier of block k (1-based)
        double block_center_mhz(int k) const;

        // Throws DomainError if any field is out of range.
        void validate() const;
    };

    /// Unwanted emission of block k (1..K) falling in the satellite band:
    /// integral of tx_power * H over offsets [(K - k + 1/2) w_b + w, (K - k + 1/2) w_b + w + B_s].
    double block_emission_power(const SpectrumPlan &plan, int k);

    // Mean of block_emission_power over all blocks.
    double average_emission_power(const SpectrumPlan &plan);

    std::vector<std::pair<double, double>> guard_band_sweep(const SpectrumPlan &plan, std::span<const double> widths_mhz);
}

#endif

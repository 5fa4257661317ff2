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

#include "nfz/spectrum.hpp"

#include "nfz/error.hpp"
#include "csv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nfz
{
    namespace
    {
        constexpr double db_to_nepers = std::numbers::ln10 / 10.0;

        // Integral of 10^(L(f)/10) over [a, b] where L is linear from la (at a) to lb (at b).
        double segment_integral(double a, double b, double la, double lb)
        {
            const double width = b - a;
            if (width <= 0.0 || std::isinf(la) || std::isinf(lb))
                return 0.0;
            const double start = std::exp(db_to_nepers * la);
            const double t = db_to_nepers * (lb - la); // log-ratio of end densities
            if (t == 0.0)
                return start * width;
            return start * width * std::expm1(t) / t;
        }
    }

    EmissionMask::EmissionMask(std::vector<Breakpoint> points) : points_(std::move(points))
    {
        if (points_.empty())
            throw ConfigError("mask", "at least one breakpoint is required");
        for (std::size_t i = 0; i < points_.size(); ++i)
        {
            const auto &p = points_[i];
            if (!std::isfinite(p.offset_mhz))
                throw ConfigError("mask[" + std::to_string(i) + "].offset_mhz", "must be finite");
            if (std::isnan(p.level_db) || p.level_db == std::numeric_limits<double>::infinity())
                throw ConfigError("mask[" + std::to_string(i) + "].level_db", "must be finite or -inf");
            if (i > 0 && !(p.offset_mhz > points_[i - 1].offset_mhz))
                throw ConfigError("mask[" + std::to_string(i) + "].offset_mhz", "offsets must be strictly increasing");
        }
    }

    EmissionMask EmissionMask::constant(double level_db) { return EmissionMask({{0.0, level_db}}); }

    EmissionMask EmissionMask::default_mask()
    {
        return EmissionMask({
            {0.0, 0.0},
            {2.5, 0.0},
            {3.5, -10.0},
            {7.5, -13.0},
            {12.5, -16.0},
            {22.5, -20.0},
            {50.0, -30.0},
        });
    }

    EmissionMask EmissionMask::load_csv(const std::filesystem::path &file)
    {
        auto table = csv::read(file, {"offset_mhz", "level_db"});
        std::vector<Breakpoint> pts;
        for (const auto &row : table.rows)
            pts.push_back({row[0], row[1]});
        try
        {
            return EmissionMask(std::move(pts));
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(file.string(), e.what());
        }
    }

    double EmissionMask::level_db(double offset) const
    {
        if (offset <= points_.front().offset_mhz)
            return points_.front().level_db;
        if (offset >= points_.back().offset_mhz)
            return points_.back().level_db;
        auto it = std::upper_bound(points_.begin(), points_.end(), offset,
                                   [](double f, const Breakpoint &b) { return f < b.offset_mhz; });
        const auto &hi = *it;
        const auto &lo = *(it - 1);
        if (std::isinf(lo.level_db) || std::isinf(hi.level_db))
            return -std::numeric_limits<double>::infinity();
        const double t = (offset - lo.offset_mhz) / (hi.offset_mhz - lo.offset_mhz);
        return lo.level_db + t * (hi.level_db - lo.level_db);
    }

    double EmissionMask::density(double offset) const
    {
        const double db = level_db(offset);
        return std::isinf(db) ? 0.0 : std::pow(10.0, db / 10.0);
    }

    double EmissionMask::integrate(double from, double to) const
    {
        if (!(to >= from))
            throw DomainError("EmissionMask::integrate: empty or reversed interval");
        double total = 0.0;
        // flat left tail
        const double first = points_.front().offset_mhz;
        if (from < first)
        {
            const double b = std::min(to, first);
            total += segment_integral(from, b, points_.front().level_db, points_.front().level_db);
        }
        for (std::size_t i = 0; i + 1 < points_.size(); ++i)
        {
            const auto &lo = points_[i];
            const auto &hi = points_[i + 1];
            const double a = std::max(from, lo.offset_mhz);
            const double b = std::min(to, hi.offset_mhz);
            if (b <= a)
                continue;
            if (std::isinf(lo.level_db) || std::isinf(hi.level_db))
                continue;
            total += segment_integral(a, b, level_db(a), level_db(b));
        }
        // flat right tail
        const double last = points_.back().offset_mhz;
        if (to > last)
        {
            const double a = std::max(from, last);
            total += segment_integral(a, to, points_.back().level_db, points_.back().level_db);
        }
        return total;
    }

    // ---------------------------------------------------------------------------------------------

    double SpectrumPlan::block_center_mhz(int k) const
    {
        if (k < 1 || k > blocks)
            throw std::out_of_range("block index " + std::to_string(k) + " outside 1.." + std::to_string(blocks));
        const double sat_lower_edge = sat_center_mhz - 0.5 * sat_bandwidth_mhz;
        return sat_lower_edge - guard_width_mhz - (blocks - k + 0.5) * block_bandwidth();
    }

    void SpectrumPlan::validate() const
    {
        if (!(sat_bandwidth_mhz > 0.0))
            throw DomainError("spectrum: sat_bandwidth_mhz must be positive");
        if (!(drone_bandwidth_mhz > 0.0))
            throw DomainError("spectrum: drone_bandwidth_mhz must be positive");
        if (blocks < 1)
            throw DomainError("spectrum: blocks must be >= 1");
        if (!(guard_width_mhz >= 0.0))
            throw DomainError("spectrum: guard_width_mhz must be non-negative");
        if (!(tx_power >= 0.0) || !std::isfinite(tx_power))
            throw DomainError("spectrum: tx_power must be finite and non-negative");
    }

    double block_emission_power(const SpectrumPlan &plan, int k)
    {
        if (k < 1 || k > plan.blocks)
            throw std::out_of_range("block index " + std::to_string(k) + " outside 1.." + std::to_string(plan.blocks));
        plan.validate();
        const double start = (plan.blocks - k + 0.5) * plan.block_bandwidth() + plan.guard_width_mhz;
        return plan.tx_power * plan.mask.integrate(start, start + plan.sat_bandwidth_mhz);
    }

    double average_emission_power(const SpectrumPlan &plan)
    {
        plan.validate();
        double sum = 0.0;
        for (int k = 1; k <= plan.blocks; ++k)
            sum += block_emission_power(plan, k);
        return sum / plan.blocks;
    }

    std::vector<std::pair<double, double>> guard_band_sweep(const SpectrumPlan &plan, std::span<const double> widths)
    {
        std::vector<std::pair<double, double>> out;
        out.reserve(widths.size());
        SpectrumPlan p = plan;
        for (double w : widths)
        {
            if (!(w >= 0.0))
                throw DomainError("guard_band_sweep: widths must be non-negative");
            p.guard_width_mhz = w;
            out.emplace_back(w, average_emission_power(p));
        }
        return out;
    }
}

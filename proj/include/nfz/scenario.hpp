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

#ifndef NFZ_SCENARIO_HPP
#define NFZ_SCENARIO_HPP

#include "nfz/optimizer.hpp"
#include "nfz/sampling.hpp"
#include "nfz/spectrum.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nfz
{
    /// Scenario files are JSON. Lengths are in the scenario's `length_unit`; intensities are per cubic
    /// length unit (`lambda_per_unit3`); frequencies carry `_mhz`; angles carry `_deg`.
    struct AntennaSpec
    {
        std::string type = "ula"; // isotropic | ula | tabulated
        double gain_linear = 1.0;
        int elements = 8;
        double spacing_ratio = 0.25;
        std::string file;

        bool operator==(const AntennaSpec &) const = default;
    };

    struct CellSpec
    {
        double theta_lo_deg, theta_hi_deg;
        double phi_lo_deg, phi_hi_deg;
        double lambda_per_unit3;

        bool operator==(const CellSpec &) const = default;
    };

    struct IntensitySpec
    {
        std::string type = "homogeneous"; // homogeneous | piecewise
        double lambda_per_unit3 = 0.0;
        double default_lambda_per_unit3 = 0.0;
        std::vector<CellSpec> cells;

        bool operator==(const IntensitySpec &) const = default;
    };

    struct MaskSpec
    {
        std::string type = "default"; // default | constant | breakpoints | file
        double level_db = 0.0;
        std::vector<EmissionMask::Breakpoint> points;
        std::string file;

        bool operator==(const MaskSpec &) const = default;
    };

    struct SpectrumSpec
    {
        double sat_bandwidth_mhz = 35.0;
        double sat_center_mhz = 1692.5;
        double drone_bandwidth_mhz = 20.0;
        int blocks = 4;
        double guard_width_mhz = 0.0;
        double tx_power = 1.0;
        MaskSpec mask;

        bool operator==(const SpectrumSpec &) const = default;
    };

    struct BudgetSpec
    {
        std::string mode = "a_prime_fraction"; // a_prime | a_prime_fraction | target_volume
        double value = 0.5;

        bool operator==(const BudgetSpec &) const = default;
    };

    struct Scenario
    {
        std::string name = "scenario";
        std::string length_unit = "m";
        Point3 ground_station;
        AntennaSpec antenna;
        double alpha = 2.5;
        IntensitySpec intensity;
        SpectrumSpec spectrum;
        std::optional<double> outer_radius; // empty = auto (needs alpha > 3)
        BudgetSpec budget;
        int n_theta = 128;
        int n_phi = 256;
        ClampFloor clamp_floor = ClampFloor::one;
        std::uint64_t seed = 1;
        std::vector<double> sweep_widths_mhz;
        std::vector<double> compare_volumes;

        // Directory against which relative file names are resolved; not serialized.
        std::filesystem::path base_dir;

        bool operator==(const Scenario &o) const;
    };

    /// Throws ConfigError whose path() names the offending field.
    Scenario parse_scenario(const nlohmann::json &j, const std::filesystem::path &base_dir = {});
    Scenario load_scenario(const std::filesystem::path &file);
    nlohmann::json to_json(const Scenario &s);

    // 16 hex digits, FNV-1a over the canonical JSON serialization.
    std::string scenario_hash(const Scenario &s);

    // Outer radius of region A. "auto" picks R so that the tail beyond R holds at most 1e-4 of E[I_A],
    // which requires alpha > 3 (for alpha <= 3 the tail integral diverges).
    double resolve_outer_radius(const Scenario &s);

    AntennaPattern build_pattern(const Scenario &s);
    IntensityField build_field(const Scenario &s);
    SpectrumPlan build_plan(const Scenario &s);
    CoexistenceModel build_model(const Scenario &s);
    AngularGrid build_grid(const Scenario &s, const CoexistenceModel &model);

    // Budget for budget modes; a_prime_fraction is taken against E[I_A] of this model.
    Budget resolve_budget(const Scenario &s, const CoexistenceModel &model, const AngularGrid &grid);

    OptimizerOptions optimizer_options(const Scenario &s);
}

#endif

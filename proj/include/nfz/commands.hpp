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

#ifndef NFZ_COMMANDS_HPP
#define NFZ_COMMANDS_HPP

#include "nfz/optimizer.hpp"
#include "nfz/sampling.hpp"
#include "nfz/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nfz
{
    // "# nfz-design <version> scenario=<hash>", the first line of every CSV written by the tool.
    std::string csv_banner(const Scenario &s);

    struct OptimizeReport
    {
        NfzSurface surface;
        Budget budget;
        double mu = 0.0;
        double volume = 0.0;
        double eliminated = 0.0;
        double total = 0.0; // E[I_A]
        StationarityReport stationarity;
        std::string status;
    };

    /// Minimum-volume NFZ of the scenario. Budget modes solve for the multiplier; target_volume mode
    /// calibrates the optimal surface to that volume.
    OptimizeReport run_optimize(const Scenario &s);

    // mu,volume,eliminated_interference,expected_interference_a,max_residual,status
    void write_optimize_summary(std::ostream &out, const Scenario &s, const OptimizeReport &r);

    /// compare_shapes over each volume (scenario's compare_volumes when `volumes` is empty).
    std::vector<ShapeResult> run_compare(const Scenario &s, const std::vector<double> &volumes = {});
    void write_compare_csv(std::ostream &out, const Scenario &s, const std::vector<ShapeResult> &rows);

    struct SweepRow
    {
        double w_mhz = 0.0;
        double power = 0.0;
        double volume = 0.0;
        double eliminated = 0.0;
        std::string status;
    };

    /// Re-solves the NFZ for each guard width at the cap a' fixed by the scenario at its own width.
    /// Widths default to the scenario's sweep_widths_mhz. Requires a budget mode.
    std::vector<SweepRow> run_sweep_guard(const Scenario &s, const std::vector<double> &widths = {});
    void write_sweep_csv(std::ostream &out, const Scenario &s, const std::vector<SweepRow> &rows);

    /// NFZ excluded from the sampled region: "none", "optimal", "dome=<R>" or "cylinder=<r>x<h>".
    /// `inside` samples the NFZ itself instead of A \ NFZ.
    struct ValidateOptions
    {
        std::size_t replications = 10000;
        std::string nfz = "none";
        bool inside = false;
    };

    struct ValidateReport
    {
        ValidationRecord record;
        HemisphericalRegion region;
    };

    ValidateReport run_validate(const Scenario &s, const ValidateOptions &opts);

    // replications,sample_mean,sample_std_error,analytic_mean,analytic_std_error,z,z_sample,passed
    void write_validation_csv(std::ostream &out, const Scenario &s, const ValidationRecord &r);

    /// Surface of the given shape: "optimal" solves the scenario (or calibrates to `volume` if given);
    /// "dome" and "cylinder" need `volume` (cylinder uses the best aspect for the scenario).
    NfzSurface run_export_surface(const Scenario &s, const std::string &shape, std::optional<double> volume);
}

#endif

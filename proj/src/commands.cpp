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

#include "nfz/commands.hpp"

#include "nfz/error.hpp"

#include <cstdlib>
#include <ostream>

#ifndef NFZ_VERSION
#define NFZ_VERSION "unknown"
#endif

namespace nfz
{
    std::string csv_banner(const Scenario &s)
    {
        return std::string("# nfz-design ") + NFZ_VERSION + " scenario=" + scenario_hash(s);
    }

    namespace
    {
        NfzSurface tag(NfzSurface nfz, const Scenario &s)
        {
            nfz.meta().scenario_hash = scenario_hash(s);
            return nfz;
        }

        double parse_positive(const std::string &text, const std::string &path)
        {
            char *end = nullptr;
            const double v = std::strtod(text.c_str(), &end);
            if (end == text.c_str() || *end != '\0' || !(v > 0.0))
                throw ConfigError(path, "expected a positive number, got '" + text + "'");
            return v;
        }
    }

    OptimizeReport run_optimize(const Scenario &s)
    {
        const auto model = build_model(s);
        const auto grid = build_grid(s, model);
        const auto opts = optimizer_options(s);
        const double total = model.total_interference(grid);

        if (s.budget.mode == "target_volume")
        {
            auto nfz = tag(optimal_nfz_of_volume(s.budget.value, model, grid, opts), s);
            const double eliminated = model.eliminated(nfz);
            const auto report = stationarity_residual(nfz, model, opts.clamp_floor);
            const Budget b = Budget::from_cap(total - eliminated, total);
            return {nfz, b, nfz.meta().mu, surface_volume(nfz), eliminated, total, report, nfz.meta().status};
        }

        const Budget budget = resolve_budget(s, model, grid);
        auto nfz = tag(build_optimal_nfz(budget, model, grid, opts), s);
        const double eliminated = model.eliminated(nfz);
        StationarityReport report;
        if (nfz.meta().mu > 0.0)
            report = stationarity_residual(nfz, model, opts.clamp_floor);
        return {nfz, budget, nfz.meta().mu, surface_volume(nfz), eliminated, total, report, nfz.meta().status};
    }

    void write_optimize_summary(std::ostream &out, const Scenario &s, const OptimizeReport &r)
    {
        out << csv_banner(s) << '\n';
        out << "mu,volume,eliminated_interference,expected_interference_a,a,a_prime,max_residual,status\n";
        out << format_double(r.mu) << ',' << format_double(r.volume) << ',' << format_double(r.eliminated) << ','
            << format_double(r.total) << ',' << format_double(r.budget.a) << ',' << format_double(r.budget.a_prime)
            << ',' << format_double(r.stationarity.max_residual) << ',' << r.status << '\n';
    }

    std::vector<ShapeResult> run_compare(const Scenario &s, const std::vector<double> &volumes)
    {
        const auto &vs = volumes.empty() ? s.compare_volumes : volumes;
        if (vs.empty())
            throw ConfigError("compare_volumes", "no volumes given");
        const auto model = build_model(s);
        const auto grid = build_grid(s, model);
        const auto opts = optimizer_options(s);
        std::vector<ShapeResult> rows;
        for (double v : vs)
        {
            auto part = compare_shapes(v, model, grid, opts);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        return rows;
    }

    void write_compare_csv(std::ostream &out, const Scenario &s, const std::vector<ShapeResult> &rows)
    {
        out << csv_banner(s) << '\n' << "shape,volume,eliminated_interference\n";
        for (const auto &r : rows)
            out << r.shape << ',' << format_double(r.volume) << ',' << format_double(r.eliminated) << '\n';
    }

    std::vector<SweepRow> run_sweep_guard(const Scenario &s, const std::vector<double> &widths)
    {
        const auto &ws = widths.empty() ? s.sweep_widths_mhz : widths;
        if (ws.empty())
            throw ConfigError("sweep_widths_mhz", "no guard widths given");
        if (s.budget.mode == "target_volume")
            throw ConfigError("budget", "sweep-guard needs a budget mode (a_prime or a_prime_fraction)");

        auto model = build_model(s);
        const auto grid = build_grid(s, model);
        const auto opts = optimizer_options(s);
        const double a_prime = resolve_budget(s, model, grid).a_prime;
        auto plan = build_plan(s);

        std::vector<SweepRow> rows;
        for (double w : ws)
        {
            if (!(w >= 0.0))
                throw ConfigError("widths", "guard widths must be non-negative");
            plan.guard_width_mhz = w;
            model.power = average_emission_power(plan);
            const Budget budget = Budget::from_cap(a_prime, model.total_interference(grid));
            const auto nfz = build_optimal_nfz(budget, model, grid, opts);
            rows.push_back({w, model.power, surface_volume(nfz), model.eliminated(nfz), nfz.meta().status});
        }
        return rows;
    }

    void write_sweep_csv(std::ostream &out, const Scenario &s, const std::vector<SweepRow> &rows)
    {
        out << csv_banner(s) << '\n' << "w_mhz,P,volume,eliminated_interference,status\n";
        for (const auto &r : rows)
            out << format_double(r.w_mhz) << ',' << format_double(r.power) << ',' << format_double(r.volume) << ','
                << format_double(r.eliminated) << ',' << r.status << '\n';
    }

    ValidateReport run_validate(const Scenario &s, const ValidateOptions &opts)
    {
        if (opts.replications < 100)
            throw ConfigError("replications", "at least 100 replications are required");
        const auto model = build_model(s);
        const auto grid = build_grid(s, model);

        std::optional<NfzSurface> nfz;
        if (opts.nfz == "optimal")
        {
            if (s.budget.mode == "target_volume")
                nfz = optimal_nfz_of_volume(s.budget.value, model, grid, optimizer_options(s));
            else
                nfz = build_optimal_nfz(resolve_budget(s, model, grid), model, grid, optimizer_options(s));
        }
        else if (opts.nfz.rfind("dome=", 0) == 0)
            nfz = dome_surface(grid, parse_positive(opts.nfz.substr(5), "nfz"));
        else if (opts.nfz.rfind("cylinder=", 0) == 0)
        {
            const auto spec = opts.nfz.substr(9);
            const auto x = spec.find('x');
            if (x == std::string::npos)
                throw ConfigError("nfz", "cylinder needs <radius>x<height>");
            nfz = cylinder_surface(grid, parse_positive(spec.substr(0, x), "nfz"),
                                   parse_positive(spec.substr(x + 1), "nfz"));
        }
        else if (opts.nfz != "none")
            throw ConfigError("nfz", "'" + opts.nfz + "' is not one of none, optimal, dome=<R>, cylinder=<r>x<h>");

        HemisphericalRegion region{model.outer};
        if (nfz && opts.inside)
            region = HemisphericalRegion{RadialBoundary::of_surface(*nfz)};
        else if (nfz)
            region.inner = RadialBoundary::of_surface(*nfz);
        else if (opts.inside)
            throw ConfigError("nfz", "sampling inside the NFZ needs an NFZ");

        auto record =
            validate_expectation(region, model.field, model.pattern, model.loss, model.power, grid, s.seed,
                                 opts.replications);
        return {record, region};
    }

    void write_validation_csv(std::ostream &out, const Scenario &s, const ValidationRecord &r)
    {
        out << csv_banner(s) << '\n'
            << "replications,sample_mean,sample_std_error,analytic_mean,analytic_std_error,z,z_sample,passed\n";
        out << r.replications << ',' << format_double(r.sample_mean) << ',' << format_double(r.sample_std_error)
            << ',' << format_double(r.analytic_mean) << ',' << format_double(r.analytic_std_error) << ','
            << format_double(r.z) << ',' << format_double(r.z_sample) << ',' << (r.passed() ? "true" : "false")
            << '\n';
    }

    NfzSurface run_export_surface(const Scenario &s, const std::string &shape, std::optional<double> volume)
    {
        const auto model = build_model(s);
        const auto grid = build_grid(s, model);
        if (shape == "optimal")
        {
            if (volume)
                return tag(optimal_nfz_of_volume(*volume, model, grid, optimizer_options(s)), s);
            return run_optimize(s).surface;
        }
        if (shape != "dome" && shape != "cylinder")
            throw ConfigError("shape", "'" + shape + "' is not one of optimal, dome, cylinder");
        if (!volume)
        {
            if (s.budget.mode != "target_volume")
                throw ConfigError("volume", shape + " needs --volume or a target_volume budget");
            volume = s.budget.value;
        }
        if (!(*volume > 0.0))
            throw ConfigError("volume", "must be positive");
        if (shape == "dome")
            return tag(dome_of_volume(*volume, grid), s);
        return tag(best_cylinder_of_volume(*volume, model, grid).surface, s);
    }
}

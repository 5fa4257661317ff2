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
#include "nfz/quadrature.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace
{
    enum Exit
    {
        ok = 0,
        config_error = 2,
        infeasible = 3,
        validation_failed = 4,
        internal_error = 1
    };

    void error_record(const std::string &kind, const std::string &message, const std::string &path = {})
    {
        nlohmann::json j{{"error", kind}, {"message", message}};
        if (!path.empty())
            j["path"] = path;
        std::cerr << j.dump() << '\n';
    }

    std::ofstream open_output(const std::filesystem::path &dir, const std::string &name)
    {
        std::filesystem::create_directories(dir);
        std::ofstream out(dir / name, std::ios::binary);
        if (!out)
            throw nfz::ConfigError("out", "cannot write " + (dir / name).string());
        return out;
    }

    std::pair<int, int> parse_grid(const std::string &text)
    {
        const auto x = text.find('x');
        try
        {
            std::size_t a = 0, b = 0;
            const int nt = std::stoi(text.substr(0, x), &a);
            const int np = std::stoi(text.substr(x + 1), &b);
            if (x == std::string::npos || a != x || b != text.size() - x - 1 || nt < 1 || np < 1)
                throw std::invalid_argument(text);
            return {nt, np};
        }
        catch (const std::logic_error &)
        {
            throw nfz::ConfigError("grid", "expected <n_theta>x<n_phi>, got '" + text + "'");
        }
    }

    unsigned parse_threads(const std::string &text)
    {
        if (text == "auto")
            return std::max(1u, std::thread::hardware_concurrency());
        try
        {
            std::size_t used = 0;
            const int n = std::stoi(text, &used);
            if (used == text.size() && n >= 1)
                return static_cast<unsigned>(n);
        }
        catch (const std::logic_error &)
        {
        }
        throw nfz::ConfigError("threads", "expected a positive integer or 'auto', got '" + text + "'");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Minimum-volume no-fly zones for a satellite ground station among Poisson drones"};
    app.set_version_flag("--version", std::string("nfz-design ") + NFZ_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    std::string scenario_file, grid_text, threads_text = "1";
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    app.add_option("--scenario", scenario_file, "Scenario JSON file")->required();
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--seed", seed, "Override the scenario seed");
    app.add_option("--grid", grid_text, "Angular grid <n_theta>x<n_phi>");
    app.add_option("--threads", threads_text, "Worker threads, n or auto")->capture_default_str();

    auto *optimize = app.add_subcommand("optimize", "Solve for the minimum-volume NFZ; writes surface.csv and "
                                                    "optimize_summary.csv");

    auto *compare = app.add_subcommand("compare", "Optimal, dome and cylinder NFZs at equal volume; writes "
                                                  "compare.csv");
    std::vector<double> volumes;
    compare->add_option("--volumes", volumes, "Volumes (default: scenario compare_volumes)")->delimiter(',');

    auto *sweep = app.add_subcommand("sweep-guard", "Re-solve across guard widths at fixed a'; writes "
                                                    "sweep_guard.csv");
    std::vector<double> widths;
    sweep->add_option("--widths", widths, "Guard widths in MHz (default: scenario sweep_widths_mhz)")
        ->delimiter(',');

    auto *validate = app.add_subcommand("validate", "Monte Carlo check of the analytic expectation; writes "
                                                    "validation.csv");
    nfz::ValidateOptions vopts;
    std::string points_file;
    validate->add_option("--replications", vopts.replications, "Number of PPP draws (>= 100)")
        ->capture_default_str();
    validate->add_option("--nfz", vopts.nfz, "none | optimal | dome=<R> | cylinder=<r>x<h>")->capture_default_str();
    validate->add_flag("--inside", vopts.inside, "Sample inside the NFZ rather than A minus the NFZ");
    validate->add_option("--points", points_file, "Also write the first replication's points to this file");

    auto *exporter = app.add_subcommand("export-surface", "Write one NFZ surface as CSV");
    std::string shape = "optimal", export_name;
    std::optional<double> export_volume;
    exporter->add_option("--shape", shape, "optimal | dome | cylinder")->capture_default_str();
    exporter->add_option("--volume", export_volume, "Target volume");
    exporter->add_option("--output", export_name, "File name inside --out (default <shape>_surface.csv)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        error_record("usage", e.what());
        return config_error;
    }

    try
    {
        nfz::set_thread_count(parse_threads(threads_text));
        auto s = nfz::load_scenario(scenario_file);
        if (seed)
            s.seed = *seed;
        if (!grid_text.empty())
            std::tie(s.n_theta, s.n_phi) = parse_grid(grid_text);

        if (*optimize)
        {
            const auto r = nfz::run_optimize(s);
            auto surf = open_output(out_dir, "surface.csv");
            nfz::write_surface_csv(surf, r.surface, nfz::csv_banner(s));
            auto summary = open_output(out_dir, "optimize_summary.csv");
            nfz::write_optimize_summary(summary, s, r);
            std::cout << "status=" << r.status << " mu=" << nfz::format_double(r.mu)
                      << " volume=" << nfz::format_double(r.volume)
                      << " eliminated=" << nfz::format_double(r.eliminated)
                      << " max_residual=" << nfz::format_double(r.stationarity.max_residual) << '\n';
        }
        else if (*compare)
        {
            const auto rows = nfz::run_compare(s, volumes);
            auto out = open_output(out_dir, "compare.csv");
            nfz::write_compare_csv(out, s, rows);
            nfz::write_compare_csv(std::cout, s, rows);
        }
        else if (*sweep)
        {
            const auto rows = nfz::run_sweep_guard(s, widths);
            auto out = open_output(out_dir, "sweep_guard.csv");
            nfz::write_sweep_csv(out, s, rows);
            nfz::write_sweep_csv(std::cout, s, rows);
        }
        else if (*validate)
        {
            const auto r = nfz::run_validate(s, vopts);
            auto out = open_output(out_dir, "validation.csv");
            nfz::write_validation_csv(out, s, r.record);
            nfz::write_validation_csv(std::cout, s, r.record);
            if (!points_file.empty())
            {
                const auto field = nfz::build_field(s);
                nfz::StreamRng rng(s.seed, 0);
                const auto pts = nfz::sample_ppp(r.region, field, rng);
                auto pout = open_output(out_dir, points_file);
                nfz::write_points_csv(pout, pts, s.ground_station, nfz::csv_banner(s));
            }
            if (!r.record.passed())
            {
                error_record("validation", "|z| = " + nfz::format_double(std::abs(r.record.z)) + " exceeds 4");
                return validation_failed;
            }
        }
        else if (*exporter)
        {
            const auto surface = nfz::run_export_surface(s, shape, export_volume);
            auto out = open_output(out_dir, export_name.empty() ? shape + "_surface.csv" : export_name);
            nfz::write_surface_csv(out, surface, nfz::csv_banner(s));
            std::cout << "shape=" << shape << " volume=" << nfz::format_double(nfz::surface_volume(surface)) << '\n';
        }
        return ok;
    }
    catch (const nfz::ConfigError &e)
    {
        error_record("config", e.what(), e.path());
        return config_error;
    }
    catch (const nfz::InfeasibleBudget &e)
    {
        error_record("infeasible_budget", e.what());
        return infeasible;
    }
    catch (const nfz::DomainError &e)
    {
        error_record("domain", e.what());
        return config_error;
    }
    catch (const nfz::GeometryError &e)
    {
        error_record("geometry", e.what());
        return config_error;
    }
    catch (const nfz::CapabilityError &e)
    {
        error_record("capability", e.what());
        return config_error;
    }
    catch (const std::exception &e)
    {
        error_record("internal", e.what());
        return internal_error;
    }
}

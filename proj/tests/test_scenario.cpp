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
#include "nfz/scenario.hpp"

#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nfz;
using nlohmann::json;

namespace
{
    const std::filesystem::path scenario_dir = NFZ_SCENARIO_DIR;

    json bundled(const std::string &name)
    {
        std::ifstream in(scenario_dir / (name + ".json"));
        return json::parse(in);
    }

    // Parses and returns the field path of the ConfigError, or "" if parsing succeeded.
    std::string error_path(const json &j)
    {
        try
        {
            parse_scenario(j);
        }
        catch (const ConfigError &e)
        {
            return e.path();
        }
        return "";
    }

    std::string csv_of_optimize(const Scenario &s)
    {
        const auto r = run_optimize(s);
        std::ostringstream out;
        write_surface_csv(out, r.surface, csv_banner(s));
        write_optimize_summary(out, s, r);
        return out.str();
    }
}

TEST_CASE("bundled scenarios parse and round trip")
{
    for (const char *name : {"paper_fig_bcd", "paper_fig_f", "symmetric_smoke", "closed_form"})
    {
        CAPTURE(name);
        const auto s = load_scenario(scenario_dir / (std::string(name) + ".json"));
        CHECK(s.name == name);
        const auto again = parse_scenario(to_json(s), s.base_dir);
        CHECK(again == s);
        CHECK(scenario_hash(again) == scenario_hash(s));
        CHECK(to_json(again).dump() == to_json(s).dump());
        CHECK(scenario_hash(s).size() == 16);
    }
}

TEST_CASE("reference scenario contents")
{
    const auto s = load_scenario(scenario_dir / "paper_fig_bcd.json");
    CHECK(s.antenna.type == "ula");
    CHECK(s.antenna.elements == 8);
    CHECK(s.antenna.spacing_ratio == 0.25);
    CHECK(s.alpha == 2.5);
    CHECK(s.spectrum.drone_bandwidth_mhz / s.spectrum.blocks == 5.0);
    CHECK(s.budget.mode == "a_prime_fraction");
    CHECK(s.budget.value == 0.5);
    CHECK(s.n_theta == 128);
    CHECK(s.n_phi == 256);
    const auto f = build_field(s);
    const auto ref = stratified_reference_field();
    for (double t : {5.0, 15.0, 45.0, 70.0, 85.0})
        for (double p : {10.0, 200.0})
            CHECK(f.at({deg2rad(t), deg2rad(p)}, 3.0) == doctest::Approx(ref.at({deg2rad(t), deg2rad(p)}, 3.0)));
    const auto f_sweep = load_scenario(scenario_dir / "paper_fig_f.json");
    CHECK(f_sweep.sweep_widths_mhz == std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("changing any field changes the hash")
{
    const auto s = load_scenario(scenario_dir / "paper_fig_bcd.json");
    auto t = s;
    t.seed += 1;
    CHECK(scenario_hash(t) != scenario_hash(s));
    t = s;
    t.alpha = 2.6;
    CHECK(scenario_hash(t) != scenario_hash(s));
    t = s;
    t.base_dir = "/elsewhere";
    CHECK(scenario_hash(t) == scenario_hash(s));
}

TEST_CASE("invalid scenarios name the offending field")
{
    const auto base = bundled("paper_fig_bcd");
    CHECK(error_path(base) == "");

    auto j = base;
    j["antenna"]["elements"] = 0;
    CHECK(error_path(j) == "antenna.elements");
    j = base;
    j["antenna"].erase("elements");
    CHECK(error_path(j) == "antenna.elements");
    j = base;
    j["antenna"]["type"] = "horn";
    CHECK(error_path(j) == "antenna.type");
    j = base;
    j["path_loss"]["alpha"] = -1.0;
    CHECK(error_path(j) == "path_loss.alpha");
    j = base;
    j["path_loss"]["alpha"] = "2.5";
    CHECK(error_path(j) == "path_loss.alpha");
    j = base;
    j["intensity"]["cells"][1]["lambda_per_unit3"] = -1e-7;
    CHECK(error_path(j) == "intensity.cells[1].lambda_per_unit3");
    j = base;
    j["intensity"]["cells"][0]["theta_deg"] = {10};
    CHECK(error_path(j) == "intensity.cells[0].theta_deg");
    j = base;
    j["spectrum"]["blocks"] = 2.5;
    CHECK(error_path(j) == "spectrum.blocks");
    j = base;
    j["spectrum"]["mask"] = {{"type", "breakpoints"}, {"points", {{0.0, 0.0}, {0.0, -3.0}}}};
    CHECK(error_path(j) == "spectrum.mask.points");
    j = base;
    j["budget"] = {{"a_prime", 1e-6}, {"target_volume", 10.0}};
    CHECK(error_path(j) == "budget");
    j = base;
    j["budget"] = json::object();
    CHECK(error_path(j) == "budget");
    j = base;
    j["budget"] = {{"a_prime_fraction", 1.5}};
    CHECK(error_path(j) == "budget.a_prime_fraction");
    j = base;
    j["grid"]["n_phi"] = 0;
    CHECK(error_path(j) == "grid.n_phi");
    j = base;
    j["colour"] = "blue";
    CHECK(error_path(j) == "colour");
    j = base;
    j["spectrum"]["mask"]["extra"] = 1;
    CHECK(error_path(j) == "spectrum.mask.extra");
    j = base;
    j["region"]["outer_radius"] = 0.0;
    CHECK(error_path(j) == "region.outer_radius");
    j = base;
    j["clamp_floor"] = "two";
    CHECK(error_path(j) == "clamp_floor");
    j = base;
    j["seed"] = -4;
    CHECK(error_path(j) == "seed");
    j = base;
    j["sweep_widths_mhz"] = {0, -1};
    CHECK(error_path(j) == "sweep_widths_mhz[1]");
    j = base;
    j.erase("spectrum");
    CHECK(error_path(j) == "spectrum");

    // overlapping cells are rejected when the field is built
    j = base;
    j["intensity"]["cells"][1]["theta_deg"] = {20, 60};
    const auto s = parse_scenario(j);
    CHECK_THROWS_AS(build_field(s), ConfigError);
}

TEST_CASE("referenced files must exist")
{
    auto j = bundled("paper_fig_bcd");
    j["antenna"] = {{"type", "tabulated"}, {"file", "missing_pattern.csv"}};
    const auto s = parse_scenario(j, scenario_dir);
    try
    {
        build_pattern(s);
        FAIL("expected a ConfigError");
    }
    catch (const ConfigError &e)
    {
        CHECK(e.path() == "antenna.file");
    }

    const auto dir = std::filesystem::temp_directory_path() / "nfz_scenario_files";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "mask.csv") << "offset_mhz,level_db\n0,0\n2,-inf\n";
    j = bundled("paper_fig_bcd");
    j["spectrum"]["mask"] = {{"type", "file"}, {"file", "mask.csv"}};
    const auto with_mask = parse_scenario(j, dir);
    CHECK(build_plan(with_mask).mask.breakpoints().size() == 2);
}

TEST_CASE("automatic outer radius")
{
    auto s = load_scenario(scenario_dir / "paper_fig_bcd.json");
    CHECK(resolve_outer_radius(s) == 1000.0);
    s.outer_radius.reset();
    try
    {
        resolve_outer_radius(s);
        FAIL("expected a ConfigError");
    }
    catch (const ConfigError &e)
    {
        CHECK(e.path() == "region.outer_radius");
    }
    s.alpha = 4.0;
    const double R = resolve_outer_radius(s);
    // tail beyond R over the whole integral, per ray: R^-1 / (1/3 + 1)
    CHECK((1.0 / R) / (1.0 / 3.0 + 1.0) == doctest::Approx(1e-4).epsilon(1e-12));
    auto j = to_json(s);
    CHECK(j["region"]["outer_radius"] == "auto");
    CHECK(parse_scenario(j) == s);
}

TEST_CASE("optimize: symmetric scenario gives equal radii")
{
    const auto s = load_scenario(scenario_dir / "symmetric_smoke.json");
    const auto r = run_optimize(s);
    CHECK(r.status == "solved");
    CHECK(r.surface.max_radius() == doctest::Approx(r.surface.min_radius()).epsilon(1e-14));
    CHECK(r.eliminated == doctest::Approx(r.budget.a).epsilon(1e-8));
}

TEST_CASE("optimize: reference scenario peaks where lambda g peaks")
{
    const auto s = load_scenario(scenario_dir / "paper_fig_bcd.json");
    const auto r = run_optimize(s);
    const auto model = build_model(s);
    const auto &grid = r.surface.grid();
    std::size_t arg_r = 0, arg_lg = 0;
    double best_lg = -1.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
        const auto d = grid.direction(k);
        const double rk = r.surface.radii()[k];
        if (rk <= 1.0 || rk >= 1000.0)
            continue;
        const double lg = model.field.angular(d) * model.pattern.gain(d);
        if (lg > best_lg)
        {
            best_lg = lg;
            arg_lg = k;
        }
        if (rk > r.surface.radii()[arg_r])
            arg_r = k;
    }
    CHECK(arg_r == arg_lg);
    const double peak_theta = rad2deg(grid.direction(arg_r).theta());
    const double peak_phi = rad2deg(grid.direction(arg_r).phi());
    CHECK(peak_theta >= 30.0);
    CHECK(peak_theta < 60.0);
    CHECK(peak_phi < 180.0);
}

TEST_CASE("optimize is deterministic, including across thread counts")
{
    const auto s = load_scenario(scenario_dir / "paper_fig_bcd.json");
    set_thread_count(1);
    const auto a = csv_of_optimize(s);
    const auto b = csv_of_optimize(s);
    set_thread_count(3);
    const auto c = csv_of_optimize(s);
    set_thread_count(1);
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("target volume mode")
{
    auto s = load_scenario(scenario_dir / "paper_fig_bcd.json");
    s.budget = {"target_volume", 5e4};
    s.n_theta = 32;
    s.n_phi = 32;
    const auto r = run_optimize(s);
    CHECK(r.volume == doctest::Approx(5e4).epsilon(1e-10));
    CHECK(r.status == "volume_calibrated");
    CHECK_THROWS_AS(run_sweep_guard(s, {0.0}), ConfigError);
}

TEST_CASE("compare: ten volumes give thirty rows, monotone per shape")
{
    auto s = load_scenario(scenario_dir / "paper_fig_bcd.json");
    s.n_theta = 64;
    s.n_phi = 64;
    const auto rows = run_compare(s);
    REQUIRE(rows.size() == 30);
    for (std::size_t i = 0; i < rows.size(); i += 3)
    {
        CHECK(rows[i].eliminated >= rows[i + 1].eliminated);
        CHECK(rows[i].eliminated >= rows[i + 2].eliminated);
        if (i >= 3)
            for (std::size_t k = 0; k < 3; ++k)
                CHECK(rows[i + k].eliminated >= rows[i - 3 + k].eliminated);
    }
    std::ostringstream out;
    write_compare_csv(out, s, rows);
    CHECK(out.str().rfind(csv_banner(s) + "\nshape,volume,eliminated_interference\noptimal,", 0) == 0);

    const auto sym = load_scenario(scenario_dir / "symmetric_smoke.json");
    const auto srows = run_compare(sym);
    for (std::size_t i = 0; i < srows.size(); i += 3)
        CHECK(srows[i].eliminated == doctest::Approx(srows[i + 1].eliminated).epsilon(1e-8));
}

TEST_CASE("sweep-guard: default mask and zero mask")
{
    const auto s = load_scenario(scenario_dir / "paper_fig_f.json");
    const auto rows = run_sweep_guard(s);
    REQUIRE(rows.size() == 8);
    double largest = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        CHECK(rows[i].volume <= rows[i - 1].volume);
        CHECK(rows[i].power <= rows[i - 1].power);
        if (rows[i - 1].volume - rows[i].volume > largest)
        {
            largest = rows[i - 1].volume - rows[i].volume;
            at = i;
        }
    }
    CHECK(at == 1);

    auto zero = s;
    zero.spectrum.mask = {"constant", -std::numeric_limits<double>::infinity(), {}, {}};
    for (const auto &r : run_sweep_guard(zero))
    {
        CHECK(r.volume == 0.0);
        CHECK(r.power == 0.0);
    }
}

TEST_CASE("validate")
{
    auto s = load_scenario(scenario_dir / "closed_form.json");
    ValidateOptions opts;
    opts.replications = 1000;
    CHECK(run_validate(s, opts).record.passed());

    auto empty = s;
    empty.intensity.lambda_per_unit3 = 0.0;
    const auto zero = run_validate(empty, opts).record;
    CHECK(zero.sample_mean == 0.0);
    CHECK(zero.analytic_mean == 0.0);
    CHECK(zero.passed());

    auto smoke = load_scenario(scenario_dir / "symmetric_smoke.json");
    opts.nfz = "dome=2";
    const auto small = run_validate(smoke, opts).record;
    opts.replications = 10000;
    const auto large = run_validate(smoke, opts).record;
    CHECK(small.sample_std_error / large.sample_std_error == doctest::Approx(std::sqrt(10.0)).epsilon(0.2));
    CHECK(std::abs(large.z) <= 4.0);

    opts.replications = 99;
    CHECK_THROWS_AS(run_validate(smoke, opts), ConfigError);
    opts.replications = 200;
    opts.nfz = "sphere";
    CHECK_THROWS_AS(run_validate(smoke, opts), ConfigError);
    opts.nfz = "optimal";
    CHECK(std::abs(run_validate(smoke, opts).record.z) <= 4.0);
    opts.nfz = "cylinder=3x4";
    opts.inside = true;
    CHECK(std::abs(run_validate(smoke, opts).record.z) <= 4.0);
}

TEST_CASE("export surface shapes")
{
    auto s = load_scenario(scenario_dir / "symmetric_smoke.json");
    const auto dome = run_export_surface(s, "dome", 1e4);
    CHECK(surface_volume(dome) == doctest::Approx(1e4).epsilon(1e-10));
    CHECK(dome.meta().scenario_hash == scenario_hash(s));
    const auto cyl = run_export_surface(s, "cylinder", 1e4);
    CHECK(surface_volume(cyl) == doctest::Approx(1e4).epsilon(1e-4));
    const auto opt = run_export_surface(s, "optimal", std::nullopt);
    CHECK(opt.meta().status == "solved");
    CHECK_THROWS_AS(run_export_surface(s, "dome", std::nullopt), ConfigError);
    CHECK_THROWS_AS(run_export_surface(s, "cone", 1.0), ConfigError);
}

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

#include "doctest.h"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace
{
    const fs::path scenario_dir = NFZ_SCENARIO_DIR;
    const fs::path work = fs::temp_directory_path() / "nfz_cli_test";

    struct Run
    {
        int status;
        std::string err;
    };

    Run run(const std::string &args)
    {
        fs::create_directories(work);
        const auto err_file = work / "stderr.txt";
        const std::string cmd = std::string(NFZ_CLI) + " " + args + " > " + (work / "stdout.txt").string() + " 2> " +
                                err_file.string();
        const int raw = std::system(cmd.c_str());
        std::ifstream in(err_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ss.str()};
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string scenario(const std::string &name) { return "--scenario " + (scenario_dir / (name + ".json")).string(); }

    fs::path write_scenario(const std::string &name, const nlohmann::json &j)
    {
        fs::create_directories(work);
        const auto p = work / name;
        std::ofstream(p) << j.dump(2);
        return p;
    }

    nlohmann::json bundled(const std::string &name)
    {
        std::ifstream in(scenario_dir / (name + ".json"));
        return nlohmann::json::parse(in);
    }
}

TEST_CASE("optimize writes surface and summary")
{
    const auto out = work / "opt";
    fs::remove_all(out);
    REQUIRE(run("optimize " + scenario("symmetric_smoke") + " --out " + out.string()).status == 0);
    const auto surface = slurp(out / "surface.csv");
    const auto summary = slurp(out / "optimize_summary.csv");
    CHECK(surface.rfind("# nfz-design ", 0) == 0);
    CHECK(surface.find("\ntheta_deg,phi_deg,r\n") != std::string::npos);
    CHECK(summary.find("\nmu,volume,eliminated_interference,expected_interference_a,a,a_prime,max_residual,status\n") !=
          std::string::npos);
    CHECK(summary.find(",solved\n") != std::string::npos);
}

TEST_CASE("every subcommand is byte-identical across runs")
{
    const std::vector<std::pair<std::string, std::string>> jobs{
        {"optimize " + scenario("paper_fig_bcd"), "optimize_summary.csv"},
        {"optimize " + scenario("paper_fig_bcd"), "surface.csv"},
        {"compare " + scenario("symmetric_smoke"), "compare.csv"},
        {"sweep-guard " + scenario("paper_fig_f"), "sweep_guard.csv"},
        {"validate --replications 500 " + scenario("closed_form"), "validation.csv"},
        {"export-surface --shape cylinder --volume 1000 " + scenario("symmetric_smoke"), "cylinder_surface.csv"}};
    for (const auto &[args, file] : jobs)
    {
        CAPTURE(args);
        const auto a = work / "det_a", b = work / "det_b";
        fs::remove_all(a);
        fs::remove_all(b);
        REQUIRE(run(args + " --out " + a.string()).status == 0);
        REQUIRE(run(args + " --threads 3 --out " + b.string()).status == 0);
        const auto first = slurp(a / file);
        CHECK(!first.empty());
        CHECK(first == slurp(b / file));
    }
}

TEST_CASE("seed and grid flags change the scenario hash")
{
    const auto a = work / "flags_a", b = work / "flags_b";
    REQUIRE(run("validate --replications 200 " + scenario("closed_form") + " --out " + a.string()).status == 0);
    REQUIRE(run("validate --replications 200 --seed 99 --grid 16x16 " + scenario("closed_form") + " --out " +
                b.string())
                .status == 0);
    const auto ha = slurp(a / "validation.csv"), hb = slurp(b / "validation.csv");
    CHECK(ha.substr(0, ha.find('\n')) != hb.substr(0, hb.find('\n')));
}

TEST_CASE("configuration errors exit with status 2 and a record on stderr")
{
    auto j = bundled("symmetric_smoke");
    j["path_loss"]["alpha"] = -2.0;
    const auto bad = write_scenario("bad_alpha.json", j);
    const auto r = run("optimize --scenario " + bad.string() + " --out " + (work / "bad").string());
    CHECK(r.status == 2);
    const auto rec = nlohmann::json::parse(r.err);
    CHECK(rec["error"] == "config");
    CHECK(rec["path"] == "path_loss.alpha");
    CHECK_FALSE(fs::exists(work / "bad" / "surface.csv"));

    CHECK(run("optimize --scenario /nonexistent.json").status == 2);
    CHECK(run("optimize " + scenario("symmetric_smoke") + " --grid 12").status == 2);
    CHECK(run("optimize " + scenario("symmetric_smoke") + " --threads zero").status == 2);
    CHECK(run("frobnicate " + scenario("symmetric_smoke")).status == 2);
    CHECK(run("validate --replications 10 " + scenario("closed_form")).status == 2);
}

TEST_CASE("infeasible budget exits with status 3")
{
    auto j = bundled("symmetric_smoke");
    j["budget"] = {{"a_prime", 0.0}};
    const auto p = write_scenario("infeasible.json", j);
    const auto r = run("optimize --scenario " + p.string() + " --out " + (work / "inf").string());
    CHECK(r.status == 3);
    CHECK(nlohmann::json::parse(r.err)["error"] == "infeasible_budget");
}

TEST_CASE("validation failure exits with status 4")
{
    // a 5x2 angular grid is far too coarse for the analytic side, so the Monte Carlo mean disagrees with it
    auto j = bundled("paper_fig_bcd");
    j["grid"] = {{"n_theta", 5}, {"n_phi", 2}};
    const auto p = write_scenario("coarse.json", j);
    const auto r = run("validate --replications 2000 --nfz dome=50 --scenario " + p.string() + " --out " +
                       (work / "val").string());
    CHECK(r.status == 4);
    CHECK(nlohmann::json::parse(r.err)["error"] == "validation");
    // the same check on the default grid passes
    CHECK(run("validate --replications 2000 --nfz dome=50 " + scenario("paper_fig_bcd") + " --out " +
              (work / "val").string())
              .status == 0);
}

TEST_CASE("validate exports a point cloud")
{
    const auto out = work / "pts";
    fs::remove_all(out);
    REQUIRE(run("validate --replications 100 --points points.csv " + scenario("symmetric_smoke") + " --out " +
                out.string())
                .status == 0);
    const auto pts = slurp(out / "points.csv");
    CHECK(pts.find("\nx,y,z\n") != std::string::npos);
}

TEST_CASE("help and version")
{
    CHECK(run("--help").status == 0);
    CHECK(run("--version").status == 0);
}

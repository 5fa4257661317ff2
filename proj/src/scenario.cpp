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

#include "nfz/scenario.hpp"

#include "nfz/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>

namespace nfz
{
    using nlohmann::json;

    namespace
    {
        // Typed access to one JSON object with field-path diagnostics and unknown-key rejection.
        class Node
        {
        public:
            Node(const json &j, std::string path) : j_(j), path_(std::move(path))
            {
                if (!j_.is_object())
                    throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
            }

            ~Node() noexcept(false)
            {
                if (std::uncaught_exceptions() > 0)
                    return;
                for (const auto &[k, v] : j_.items())
                    if (!seen_.count(k))
                        throw ConfigError(sub(k), "unknown key");
            }

            std::string sub(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

            bool has(const std::string &key) const { return j_.contains(key); }

            void skip(const std::string &key) { seen_.insert(key); }

            const json &raw(const std::string &key)
            {
                seen_.insert(key);
                if (!j_.contains(key))
                    throw ConfigError(sub(key), "missing required field");
                return j_.at(key);
            }

            Node object(const std::string &key) { return Node(raw(key), sub(key)); }

            double number(const std::string &key)
            {
                const auto &v = raw(key);
                if (!v.is_number())
                    throw ConfigError(sub(key), "expected a number");
                const double d = v.get<double>();
                if (!std::isfinite(d))
                    throw ConfigError(sub(key), "must be finite");
                return d;
            }

            double number(const std::string &key, double fallback) { return has(key) ? number(key) : (seen_.insert(key), fallback); }

            double positive(const std::string &key)
            {
                const double d = number(key);
                if (!(d > 0.0))
                    throw ConfigError(sub(key), "must be positive");
                return d;
            }

            double non_negative(const std::string &key, double fallback)
            {
                const double d = number(key, fallback);
                if (!(d >= 0.0))
                    throw ConfigError(sub(key), "must be non-negative");
                return d;
            }

            long long integer(const std::string &key)
            {
                const auto &v = raw(key);
                if (!v.is_number_integer())
                    throw ConfigError(sub(key), "expected an integer");
                return v.get<long long>();
            }

            std::string string(const std::string &key)
            {
                const auto &v = raw(key);
                if (!v.is_string())
                    throw ConfigError(sub(key), "expected a string");
                return v.get<std::string>();
            }

            std::string string(const std::string &key, const std::string &fallback)
            {
                return has(key) ? string(key) : (seen_.insert(key), fallback);
            }

            std::vector<double> numbers(const std::string &key)
            {
                if (!has(key))
                {
                    seen_.insert(key);
                    return {};
                }
                const auto &v = raw(key);
                if (!v.is_array())
                    throw ConfigError(sub(key), "expected an array of numbers");
                std::vector<double> out;
                for (std::size_t i = 0; i < v.size(); ++i)
                {
                    if (!v[i].is_number())
                        throw ConfigError(sub(key) + "[" + std::to_string(i) + "]", "expected a number");
                    out.push_back(v[i].get<double>());
                }
                return out;
            }

        private:
            const json &j_;
            std::string path_;
            std::set<std::string> seen_;
        };

        std::pair<double, double> range(const json &v, const std::string &path)
        {
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                throw ConfigError(path, "expected [low, high]");
            return {v[0].get<double>(), v[1].get<double>()};
        }

        double level_from_json(const json &v, const std::string &path)
        {
            if (v.is_number())
                return v.get<double>();
            if (v.is_string() && v.get<std::string>() == "-inf")
                return -std::numeric_limits<double>::infinity();
            throw ConfigError(path, "expected a number or \"-inf\"");
        }

        json level_to_json(double db)
        {
            if (std::isinf(db))
                return "-inf";
            return db;
        }

        void require_one_of(const std::string &value, std::initializer_list<const char *> allowed, const std::string &path)
        {
            std::string list;
            for (const char *a : allowed)
            {
                if (value == a)
                    return;
                list += (list.empty() ? "" : ", ") + std::string(a);
            }
            throw ConfigError(path, "'" + value + "' is not one of " + list);
        }
    }

    bool Scenario::operator==(const Scenario &o) const
    {
        return name == o.name && length_unit == o.length_unit && ground_station == o.ground_station &&
               antenna == o.antenna && alpha == o.alpha && intensity == o.intensity && spectrum == o.spectrum &&
               outer_radius == o.outer_radius && budget == o.budget && n_theta == o.n_theta && n_phi == o.n_phi &&
               clamp_floor == o.clamp_floor && seed == o.seed && sweep_widths_mhz == o.sweep_widths_mhz &&
               compare_volumes == o.compare_volumes;
    }

    Scenario parse_scenario(const json &j, const std::filesystem::path &base_dir)
    {
        Scenario s;
        s.base_dir = base_dir;
        Node root(j, "");
        s.name = root.string("name", s.name);
        s.length_unit = root.string("length_unit", s.length_unit);

        if (root.has("ground_station"))
        {
            auto gs = root.object("ground_station");
            s.ground_station = {gs.number("x", 0.0), gs.number("y", 0.0), gs.number("z", 0.0)};
        }

        {
            auto a = root.object("antenna");
            s.antenna.type = a.string("type");
            require_one_of(s.antenna.type, {"isotropic", "ula", "tabulated"}, a.sub("type"));
            if (s.antenna.type == "isotropic")
                s.antenna.gain_linear = a.non_negative("gain_linear", 1.0);
            else if (s.antenna.type == "ula")
            {
                const auto m = a.integer("elements");
                if (m < 1 || m > 1000000)
                    throw ConfigError(a.sub("elements"), "must be a positive integer");
                s.antenna.elements = static_cast<int>(m);
                s.antenna.spacing_ratio = a.positive("spacing_ratio");
            }
            else
                s.antenna.file = a.string("file");
        }

        {
            auto pl = root.object("path_loss");
            s.alpha = pl.positive("alpha");
        }

        {
            auto in = root.object("intensity");
            s.intensity.type = in.string("type");
            require_one_of(s.intensity.type, {"homogeneous", "piecewise"}, in.sub("type"));
            if (s.intensity.type == "homogeneous")
                s.intensity.lambda_per_unit3 = in.non_negative("lambda_per_unit3", 0.0);
            else
            {
                s.intensity.default_lambda_per_unit3 = in.non_negative("default_lambda_per_unit3", 0.0);
                const auto &cells = in.raw("cells");
                if (!cells.is_array())
                    throw ConfigError(in.sub("cells"), "expected an array");
                for (std::size_t i = 0; i < cells.size(); ++i)
                {
                    Node c(cells[i], in.sub("cells") + "[" + std::to_string(i) + "]");
                    auto [tl, th] = range(c.raw("theta_deg"), c.sub("theta_deg"));
                    auto [pl, ph] = range(c.raw("phi_deg"), c.sub("phi_deg"));
                    s.intensity.cells.push_back({tl, th, pl, ph, c.non_negative("lambda_per_unit3", 0.0)});
                }
            }
        }

        {
            auto sp = root.object("spectrum");
            s.spectrum.sat_bandwidth_mhz = sp.positive("sat_bandwidth_mhz");
            s.spectrum.sat_center_mhz = sp.number("sat_center_mhz", s.spectrum.sat_center_mhz);
            s.spectrum.drone_bandwidth_mhz = sp.positive("drone_bandwidth_mhz");
            const auto k = sp.integer("blocks");
            if (k < 1 || k > 100000)
                throw ConfigError(sp.sub("blocks"), "must be a positive integer");
            s.spectrum.blocks = static_cast<int>(k);
            s.spectrum.guard_width_mhz = sp.non_negative("guard_width_mhz", 0.0);
            s.spectrum.tx_power = sp.non_negative("tx_power", 1.0);
            auto m = sp.object("mask");
            s.spectrum.mask.type = m.string("type");
            require_one_of(s.spectrum.mask.type, {"default", "constant", "breakpoints", "file"}, m.sub("type"));
            if (s.spectrum.mask.type == "constant")
                s.spectrum.mask.level_db = level_from_json(m.raw("level_db"), m.sub("level_db"));
            else if (s.spectrum.mask.type == "file")
                s.spectrum.mask.file = m.string("file");
            else if (s.spectrum.mask.type == "breakpoints")
            {
                const auto &pts = m.raw("points");
                if (!pts.is_array() || pts.empty())
                    throw ConfigError(m.sub("points"), "expected a non-empty array of [offset_mhz, level_db]");
                for (std::size_t i = 0; i < pts.size(); ++i)
                {
                    const std::string path = m.sub("points") + "[" + std::to_string(i) + "]";
                    if (!pts[i].is_array() || pts[i].size() != 2 || !pts[i][0].is_number())
                        throw ConfigError(path, "expected [offset_mhz, level_db]");
                    s.spectrum.mask.points.push_back({pts[i][0].get<double>(), level_from_json(pts[i][1], path)});
                }
                try
                {
                    EmissionMask check(s.spectrum.mask.points);
                }
                catch (const ConfigError &e)
                {
                    throw ConfigError(m.sub("points"), e.what());
                }
            }
        }

        {
            auto r = root.object("region");
            const auto &v = r.raw("outer_radius");
            if (v.is_string() && v.get<std::string>() == "auto")
                s.outer_radius.reset();
            else
                s.outer_radius = r.positive("outer_radius");
        }

        {
            auto b = root.object("budget");
            int modes = 0;
            for (const char *m : {"a_prime", "a_prime_fraction", "target_volume"})
                if (b.has(m))
                {
                    ++modes;
                    s.budget.mode = m;
                }
            if (modes != 1)
                throw ConfigError("budget",
                                  "set exactly one of a_prime, a_prime_fraction, target_volume");
            if (s.budget.mode == "a_prime")
                s.budget.value = b.non_negative("a_prime", 0.0);
            else if (s.budget.mode == "a_prime_fraction")
            {
                s.budget.value = b.number("a_prime_fraction");
                if (!(s.budget.value >= 0.0 && s.budget.value <= 1.0))
                    throw ConfigError(b.sub("a_prime_fraction"), "must lie in [0, 1]");
            }
            else
                s.budget.value = b.positive("target_volume");
        }

        if (root.has("grid"))
        {
            auto g = root.object("grid");
            const auto nt = g.integer("n_theta"), np = g.integer("n_phi");
            if (nt < 1 || nt > 100000)
                throw ConfigError(g.sub("n_theta"), "must be a positive integer");
            if (np < 1 || np > 100000)
                throw ConfigError(g.sub("n_phi"), "must be a positive integer");
            s.n_theta = static_cast<int>(nt);
            s.n_phi = static_cast<int>(np);
        }

        const auto floor = root.string("clamp_floor", "one");
        require_one_of(floor, {"one", "zero"}, "clamp_floor");
        s.clamp_floor = floor == "one" ? ClampFloor::one : ClampFloor::zero;

        if (root.has("seed"))
        {
            const auto &v = root.raw("seed");
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                throw ConfigError("seed", "expected a non-negative integer");
            s.seed = v.get<std::uint64_t>();
        }

        s.sweep_widths_mhz = root.numbers("sweep_widths_mhz");
        for (std::size_t i = 0; i < s.sweep_widths_mhz.size(); ++i)
            if (!(s.sweep_widths_mhz[i] >= 0.0))
                throw ConfigError("sweep_widths_mhz[" + std::to_string(i) + "]", "must be non-negative");
        s.compare_volumes = root.numbers("compare_volumes");
        for (std::size_t i = 0; i < s.compare_volumes.size(); ++i)
            if (!(s.compare_volumes[i] > 0.0))
                throw ConfigError("compare_volumes[" + std::to_string(i) + "]", "must be positive");
        return s;
    }

    Scenario load_scenario(const std::filesystem::path &file)
    {
        std::ifstream in(file);
        if (!in)
            throw ConfigError(file.string(), "cannot open scenario file");
        json j;
        try
        {
            j = json::parse(in);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(file.string(), std::string("invalid JSON: ") + e.what());
        }
        return parse_scenario(j, file.parent_path());
    }

    json to_json(const Scenario &s)
    {
        json j;
        j["name"] = s.name;
        j["length_unit"] = s.length_unit;
        j["ground_station"] = {{"x", s.ground_station.x}, {"y", s.ground_station.y}, {"z", s.ground_station.z}};

        json a{{"type", s.antenna.type}};
        if (s.antenna.type == "isotropic")
            a["gain_linear"] = s.antenna.gain_linear;
        else if (s.antenna.type == "ula")
        {
            a["elements"] = s.antenna.elements;
            a["spacing_ratio"] = s.antenna.spacing_ratio;
        }
        else
            a["file"] = s.antenna.file;
        j["antenna"] = a;

        j["path_loss"] = {{"alpha", s.alpha}};

        json in{{"type", s.intensity.type}};
        if (s.intensity.type == "homogeneous")
            in["lambda_per_unit3"] = s.intensity.lambda_per_unit3;
        else
        {
            in["default_lambda_per_unit3"] = s.intensity.default_lambda_per_unit3;
            json cells = json::array();
            for (const auto &c : s.intensity.cells)
                cells.push_back({{"theta_deg", {c.theta_lo_deg, c.theta_hi_deg}},
                                 {"phi_deg", {c.phi_lo_deg, c.phi_hi_deg}},
                                 {"lambda_per_unit3", c.lambda_per_unit3}});
            in["cells"] = cells;
        }
        j["intensity"] = in;

        json m{{"type", s.spectrum.mask.type}};
        if (s.spectrum.mask.type == "constant")
            m["level_db"] = level_to_json(s.spectrum.mask.level_db);
        else if (s.spectrum.mask.type == "file")
            m["file"] = s.spectrum.mask.file;
        else if (s.spectrum.mask.type == "breakpoints")
        {
            json pts = json::array();
            for (const auto &p : s.spectrum.mask.points)
                pts.push_back({p.offset_mhz, level_to_json(p.level_db)});
            m["points"] = pts;
        }
        j["spectrum"] = {{"sat_bandwidth_mhz", s.spectrum.sat_bandwidth_mhz},
                         {"sat_center_mhz", s.spectrum.sat_center_mhz},
                         {"drone_bandwidth_mhz", s.spectrum.drone_bandwidth_mhz},
                         {"blocks", s.spectrum.blocks},
                         {"guard_width_mhz", s.spectrum.guard_width_mhz},
                         {"tx_power", s.spectrum.tx_power},
                         {"mask", m}};

        if (s.outer_radius)
            j["region"] = {{"outer_radius", *s.outer_radius}};
        else
            j["region"] = {{"outer_radius", "auto"}};
        j["budget"] = {{s.budget.mode, s.budget.value}};
        j["grid"] = {{"n_theta", s.n_theta}, {"n_phi", s.n_phi}};
        j["clamp_floor"] = to_string(s.clamp_floor);
        j["seed"] = s.seed;
        if (!s.sweep_widths_mhz.empty())
            j["sweep_widths_mhz"] = s.sweep_widths_mhz;
        if (!s.compare_volumes.empty())
            j["compare_volumes"] = s.compare_volumes;
        return j;
    }

    std::string scenario_hash(const Scenario &s)
    {
        const std::string text = to_json(s).dump();
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : text)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    // ---------------------------------------------------------------------------------------------

    double resolve_outer_radius(const Scenario &s)
    {
        if (s.outer_radius)
            return *s.outer_radius;
        const double alpha = s.alpha;
        if (!(alpha > 3.0))
            throw ConfigError("region.outer_radius",
                              "\"auto\" needs alpha > 3: for alpha <= 3 the interference beyond any radius diverges");
        // per ray: tail(R) = R^(3 - alpha) / (alpha - 3), total = 1/3 + 1/(alpha - 3)
        constexpr double tail_fraction = 1e-4;
        const double total = 1.0 / 3.0 + 1.0 / (alpha - 3.0);
        return std::max(1.0, std::pow(tail_fraction * (alpha - 3.0) * total, 1.0 / (3.0 - alpha)));
    }

    namespace
    {
        std::filesystem::path resolve(const Scenario &s, const std::string &file)
        {
            std::filesystem::path p(file);
            return p.is_absolute() || s.base_dir.empty() ? p : s.base_dir / p;
        }
    }

    AntennaPattern build_pattern(const Scenario &s)
    {
        if (s.antenna.type == "isotropic")
            return AntennaPattern(IsotropicPattern{s.antenna.gain_linear});
        if (s.antenna.type == "ula")
            return AntennaPattern(UlaPattern{s.antenna.elements, s.antenna.spacing_ratio});
        try
        {
            return AntennaPattern(TabulatedPattern::load_csv(resolve(s, s.antenna.file)));
        }
        catch (const ConfigError &e)
        {
            throw ConfigError("antenna.file", e.what());
        }
    }

    IntensityField build_field(const Scenario &s)
    {
        if (s.intensity.type == "homogeneous")
            return IntensityField(HomogeneousIntensity{s.intensity.lambda_per_unit3});
        PiecewiseIntensity f;
        f.default_lambda = s.intensity.default_lambda_per_unit3;
        for (const auto &c : s.intensity.cells)
            f.cells.push_back({deg2rad(c.theta_lo_deg), deg2rad(c.theta_hi_deg), deg2rad(c.phi_lo_deg),
                               deg2rad(c.phi_hi_deg), c.lambda_per_unit3});
        return IntensityField(std::move(f));
    }

    SpectrumPlan build_plan(const Scenario &s)
    {
        SpectrumPlan p;
        p.sat_bandwidth_mhz = s.spectrum.sat_bandwidth_mhz;
        p.sat_center_mhz = s.spectrum.sat_center_mhz;
        p.drone_bandwidth_mhz = s.spectrum.drone_bandwidth_mhz;
        p.blocks = s.spectrum.blocks;
        p.guard_width_mhz = s.spectrum.guard_width_mhz;
        p.tx_power = s.spectrum.tx_power;
        const auto &m = s.spectrum.mask;
        if (m.type == "default")
            p.mask = EmissionMask::default_mask();
        else if (m.type == "constant")
            p.mask = EmissionMask::constant(m.level_db);
        else if (m.type == "breakpoints")
            p.mask = EmissionMask(m.points);
        else
        {
            try
            {
                p.mask = EmissionMask::load_csv(resolve(s, m.file));
            }
            catch (const ConfigError &e)
            {
                throw ConfigError("spectrum.mask.file", e.what());
            }
        }
        try
        {
            p.validate();
        }
        catch (const DomainError &e)
        {
            throw ConfigError("spectrum", e.what());
        }
        return p;
    }

    CoexistenceModel build_model(const Scenario &s)
    {
        return CoexistenceModel{build_field(s), build_pattern(s), BoundedPowerLaw{s.alpha},
                                average_emission_power(build_plan(s)),
                                RadialBoundary::constant(resolve_outer_radius(s))};
    }

    AngularGrid build_grid(const Scenario &s, const CoexistenceModel &model)
    {
        try
        {
            return model.make_grid(s.n_theta, s.n_phi);
        }
        catch (const DomainError &e)
        {
            throw ConfigError("grid", e.what());
        }
    }

    Budget resolve_budget(const Scenario &s, const CoexistenceModel &model, const AngularGrid &grid)
    {
        const double total = model.total_interference(grid);
        if (s.budget.mode == "a_prime")
            return Budget::from_cap(s.budget.value, total);
        if (s.budget.mode == "a_prime_fraction")
            return Budget::from_cap(s.budget.value * total, total);
        throw ConfigError("budget", "scenario is in target_volume mode, not a budget mode");
    }

    OptimizerOptions optimizer_options(const Scenario &s)
    {
        OptimizerOptions o;
        o.clamp_floor = s.clamp_floor;
        return o;
    }
}

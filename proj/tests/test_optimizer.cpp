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

#include "nfz/error.hpp"
#include "nfz/optimizer.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

using namespace nfz;

namespace
{
    const BoundedPowerLaw loss25{2.5};

    CoexistenceModel reference_model(double R = 1000.0)
    {
        return {stratified_reference_field(), AntennaPattern(UlaPattern{8, 0.25}), loss25, 0.5,
                RadialBoundary::constant(R)};
    }

    CoexistenceModel symmetric_model(double R = 200.0)
    {
        return {IntensityField(HomogeneousIntensity{1e-7}), AntennaPattern(IsotropicPattern{1.0}), loss25, 1.0,
                RadialBoundary::constant(R)};
    }

    double node_strength(const CoexistenceModel &m, const Direction &d)
    {
        return m.power * m.field.angular(d) * m.pattern.gain(d);
    }

    // Random radii >= 1 on the grid, scaled so the surface has volume V.
    NfzSurface random_surface_of_volume(const AngularGrid &grid, double V, double R, std::mt19937_64 &gen)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> shape(grid.size());
        for (auto &x : shape)
            x = u(gen) * u(gen);
        auto make = [&](double s)
        {
            std::vector<double> r(grid.size());
            for (std::size_t k = 0; k < r.size(); ++k)
                r[k] = std::min(R, 1.0 + s * shape[k]);
            return NfzSurface(grid, r);
        };
        double lo = 0.0, hi = 1.0;
        while (surface_volume(make(hi)) < V)
            hi *= 2.0;
        for (int i = 0; i < 200; ++i)
        {
            const double m = 0.5 * (lo + hi);
            (surface_volume(make(m)) < V ? lo : hi) = m;
        }
        return make(0.5 * (lo + hi));
    }
}

TEST_CASE("optimal radius closed form")
{
    const IntensityField f(HomogeneousIntensity{1e-7});
    const AntennaPattern ula(UlaPattern{8, 0.25});
    const double mu = 8e-7 / 32.0;
    CHECK(optimal_radius({0.0, 0.0}, mu, f, ula, loss25, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(optimal_radius({pi / 6.0, 0.0}, mu, f, ula, loss25, 1.0) == 1.0);
    CHECK(optimal_radius({pi / 6.0, 0.0}, mu, f, ula, loss25, 1.0, ClampFloor::zero) == 0.0);
    CHECK(optimal_radius({0.0, 0.0}, mu, f, ula, loss25, 1.0, ClampFloor::one, 3.0) == 3.0);
    CHECK(optimal_radius({0.0, 0.0}, 8e-7 * 2.0, f, ula, loss25, 1.0) == 1.0);
    CHECK_THROWS_AS(optimal_radius({0.0, 0.0}, 0.0, f, ula, loss25, 1.0), DomainError);
    CHECK_THROWS_AS(optimal_radius({0.0, 0.0}, -1.0, f, ula, loss25, 1.0), DomainError);

    const IntensityField zero(HomogeneousIntensity{0.0});
    CHECK(optimal_radius({0.3, 0.0}, 1e-12, zero, ula, loss25, 1.0) == 1.0);
}

TEST_CASE("ratio law between two directions")
{
    PiecewiseIntensity p{{{0.0, 0.5, 0.0, pi, 1e-6}}, 1e-7};
    const IntensityField f(p);
    const AntennaPattern iso(IsotropicPattern{2.0});
    const double mu = 1e-12;
    const double r1 = optimal_radius({0.2, 1.0}, mu, f, iso, loss25, 1.0);
    const double r2 = optimal_radius({0.2, 4.0}, mu, f, iso, loss25, 1.0);
    CHECK(r1 / r2 == doctest::Approx(std::pow(10.0, 1.0 / 2.5)).epsilon(1e-13));
}

TEST_CASE("optimal radius for a radially varying field solves the stationarity condition")
{
    // lambda = c / rho: P c g rho^-(alpha + 1) = mu beyond rho = 1
    GeneralIntensity g;
    g.density = [](const Direction &, double rho) { return 1e-5 / std::max(rho, 1e-9); };
    const IntensityField f(g);
    const AntennaPattern iso(IsotropicPattern{1.0});
    const double mu = 1e-5 / std::pow(20.0, 3.5);
    CHECK(optimal_radius({0.5, 0.5}, mu, f, iso, loss25, 1.0, ClampFloor::one, 500.0) ==
          doctest::Approx(20.0).epsilon(1e-12));
    CHECK(optimal_radius({0.5, 0.5}, mu, f, iso, loss25, 1.0, ClampFloor::one, 10.0) == 10.0);
    CHECK(optimal_radius({0.5, 0.5}, 1.0, f, iso, loss25, 1.0, ClampFloor::one, 500.0) == 1.0);
    CHECK_THROWS_AS(optimal_radius({0.5, 0.5}, mu, f, iso, loss25, 1.0), CapabilityError);
}

TEST_CASE("budget from cap")
{
    const auto b = Budget::from_cap(0.3, 1.0);
    CHECK(b.a_prime == 0.3);
    CHECK(b.a == doctest::Approx(0.7));
    CHECK_THROWS(Budget::from_cap(-0.1, 1.0));
}

TEST_CASE("multiplier recovers a forward-evaluated budget")
{
    const auto model = reference_model();
    const auto grid = model.make_grid(32, 32);
    for (double mu0 : {1e-13, 3e-14, 5e-15})
    {
        const auto s0 = surface_for_multiplier(mu0, model, grid);
        const double a = model.eliminated(s0);
        const auto sol = solve_multiplier({0.0, a}, model, grid);
        CHECK(sol.status == SolveStatus::solved);
        CHECK(sol.eliminated == doctest::Approx(a).epsilon(1e-8));
        CHECK(sol.mu == doctest::Approx(mu0).epsilon(1e-6));
    }
}

TEST_CASE("multiplier search on the reference scenario")
{
    const auto model = reference_model();
    const auto grid = model.make_grid(128, 256);
    const double total = model.total_interference(grid);
    const auto sol = solve_multiplier(Budget::from_cap(0.5 * total, total), model, grid);
    CHECK(sol.status == SolveStatus::solved);
    CHECK(sol.iterations <= 60);
    CHECK(std::abs(sol.eliminated - 0.5 * total) <= 1e-8 * 0.5 * total);
    REQUIRE(sol.trace.size() >= 2);
    for (std::size_t i = 1; i < sol.trace.size(); ++i)
    {
        CHECK(sol.trace[i].mu_lo >= sol.trace[i - 1].mu_lo);
        CHECK(sol.trace[i].mu_hi <= sol.trace[i - 1].mu_hi);
    }
    auto by_mu = sol.trace;
    std::sort(by_mu.begin(), by_mu.end(), [](auto &a, auto &b) { return a.mu < b.mu; });
    for (std::size_t i = 1; i < by_mu.size(); ++i)
        CHECK(by_mu[i].eliminated <= by_mu[i - 1].eliminated);
}

TEST_CASE("degenerate and infeasible budgets")
{
    const auto model = reference_model();
    const auto grid = model.make_grid(16, 16);
    const double total = model.total_interference(grid);
    CHECK_THROWS_AS(solve_multiplier({0.0, total}, model, grid), InfeasibleBudget);
    CHECK_THROWS_AS(solve_multiplier({0.0, 2.0 * total}, model, grid), InfeasibleBudget);
    const auto none = build_optimal_nfz({total, 0.0}, model, grid);
    CHECK(none.meta().status == "no_nfz_required");
    CHECK(surface_volume(none) == 0.0);
    const auto tiny = solve_multiplier({0.0, 1e-20}, model, grid);
    CHECK(tiny.status == SolveStatus::floor_satisfies_budget);
    const auto floor = build_optimal_nfz({0.0, 1e-20}, model, grid);
    CHECK(floor.min_radius() == 1.0);
    CHECK(floor.max_radius() == 1.0);
}

TEST_CASE("budget close to the total pushes the surface to the outer boundary")
{
    const auto model = reference_model(300.0);
    const auto grid = model.make_grid(32, 32);
    const double total = model.total_interference(grid);
    const auto nfz = build_optimal_nfz({0.0, total * (1.0 - 1e-6)}, model, grid);
    const double va = HemisphericalRegion{model.outer}.volume(grid);
    CHECK(surface_volume(nfz) > 0.9 * va);
    CHECK(model.eliminated(nfz) == doctest::Approx(total * (1.0 - 1e-6)).epsilon(1e-8));
}

TEST_CASE("symmetric model gives a dome")
{
    const auto model = symmetric_model();
    const auto grid = model.make_grid(16, 32);
    const double total = model.total_interference(grid);
    const auto nfz = build_optimal_nfz(Budget::from_cap(0.4 * total, total), model, grid);
    CHECK(nfz.max_radius() == doctest::Approx(nfz.min_radius()).epsilon(1e-14));
    CHECK(nfz.max_radius() > 1.0);
}

TEST_CASE("surface shape depends on P over mu only")
{
    auto model = reference_model();
    const auto grid = model.make_grid(32, 32);
    const double total = model.total_interference(grid);
    const auto base = build_optimal_nfz({0.0, 0.3 * total}, model, grid);
    model.power *= 7.0;
    const auto scaled = build_optimal_nfz({0.0, 0.3 * total * 7.0}, model, grid);
    CHECK(scaled.meta().mu == doctest::Approx(7.0 * base.meta().mu).epsilon(1e-7));
    for (std::size_t k = 0; k < grid.size(); ++k)
        CHECK(scaled.radii()[k] == doctest::Approx(base.radii()[k]).epsilon(1e-7));
}

TEST_CASE("optimal surface properties on the reference scenario")
{
    const auto model = reference_model();
    const auto grid = model.make_grid(64, 64);
    const double total = model.total_interference(grid);
    const auto budget = Budget::from_cap(0.5 * total, total);
    const auto nfz = build_optimal_nfz(budget, model, grid);
    const double mu = nfz.meta().mu;

    SUBCASE("stationarity and budget")
    {
        const auto rep = stationarity_residual(nfz, model);
        CHECK(rep.max_residual <= 1e-9);
        CHECK(rep.free_nodes > 0);
        CHECK(rep.free_nodes + rep.floor_nodes + rep.outer_nodes == grid.size());
        CHECK(std::abs(model.eliminated(nfz) - budget.a) <= 1e-8 * budget.a);
    }

    std::vector<std::size_t> free;
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (nfz.radii()[k] > 1.0 && nfz.radii()[k] < 1000.0)
            free.push_back(k);
    REQUIRE(free.size() > 10);

    SUBCASE("every free node meets the condition")
    {
        for (std::size_t k : free)
        {
            const auto d = grid.direction(k);
            const double lhs = node_strength(model, d) * path_loss(model.loss, nfz.radii()[k]);
            CHECK(std::abs(lhs - mu) <= 1e-9 * mu);
        }
    }

    SUBCASE("ratio law on random pairs")
    {
        std::mt19937_64 gen(31);
        std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
        for (int t = 0; t < 1000; ++t)
        {
            const std::size_t i = free[pick(gen)], j = free[pick(gen)];
            const double lhs = std::pow(nfz.radii()[i] / nfz.radii()[j], 2.5);
            const double rhs = node_strength(model, grid.direction(i)) / node_strength(model, grid.direction(j));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }

    SUBCASE("volume-preserving perturbations do not increase eliminated interference")
    {
        std::mt19937_64 gen(37);
        std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
        std::uniform_real_distribution<double> frac(0.0, 0.5);
        const double base = model.eliminated(nfz);
        std::vector<double> r(nfz.radii().begin(), nfz.radii().end());
        for (int t = 0; t < 1000; ++t)
        {
            const std::size_t i = free[pick(gen)], j = free[pick(gen)];
            if (i == j)
                continue;
            const double wi = grid.solid_angle_weight(i), wj = grid.solid_angle_weight(j);
            // move volume delta from node i to node j
            const double vi = wi * std::pow(r[i], 3) / 3.0, vj = wj * std::pow(r[j], 3) / 3.0;
            const double delta = frac(gen) * std::min(vi - wi / 3.0, vi);
            if (!(delta > 0.0))
                continue;
            auto rr = r;
            rr[i] = std::cbrt(3.0 * (vi - delta) / wi);
            rr[j] = std::min(1000.0, std::cbrt(3.0 * (vj + delta) / wj));
            const double moved = model.eliminated(NfzSurface(grid, rr));
            CHECK(moved <= base * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("eliminated interference is non-increasing in the multiplier")
{
    const auto model = reference_model();
    const auto grid = model.make_grid(32, 32);
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 60; ++i)
    {
        const double mu = std::pow(10.0, -18.0 + 0.1 * i);
        const double e = model.eliminated(surface_for_multiplier(mu, model, grid));
        CHECK(e <= prev);
        prev = e;
    }
}

TEST_CASE("clamp floor zero leaves low-value directions open")
{
    const auto model = reference_model();
    const auto grid = model.make_grid(32, 32);
    OptimizerOptions opts;
    opts.clamp_floor = ClampFloor::zero;
    const double total = model.total_interference(grid);
    const double a = 1e-3 * total;
    const auto one = build_optimal_nfz({0.0, a}, model, grid);
    const auto zero = build_optimal_nfz({0.0, a}, model, grid, opts);
    CHECK(zero.min_radius() == 0.0);
    CHECK(one.min_radius() == 1.0);
    CHECK(surface_volume(zero) <= surface_volume(one) * (1.0 + 1e-9));
    CHECK(model.eliminated(zero) == doctest::Approx(a).epsilon(1e-8));
    CHECK(stationarity_residual(zero, model, ClampFloor::zero).max_residual <= 1e-9);
}

TEST_CASE("optimal surface of a given volume")
{
    const auto model = reference_model();
    const auto grid = model.make_grid(32, 32);
    for (double V : {10.0, 1e4, 1e7})
    {
        const auto nfz = optimal_nfz_of_volume(V, model, grid);
        CHECK(surface_volume(nfz) == doctest::Approx(V).epsilon(1e-10));
    }
    CHECK_THROWS_AS(optimal_nfz_of_volume(1.0, model, grid), DomainError);
    CHECK_THROWS_AS(optimal_nfz_of_volume(3e9, model, grid), DomainError);
}

TEST_CASE("best cylinder search")
{
    const auto model = symmetric_model(1000.0);
    const auto grid = model.make_grid(64, 8);
    const double V = 1e5;
    const auto c = best_cylinder_of_volume(V, model, grid);
    REQUIRE(c.scan.size() == 64);
    for (const auto &[aspect, e] : c.scan)
        CHECK(c.eliminated >= e);
    CHECK(surface_volume(c.surface) == doctest::Approx(V).epsilon(1e-4));
    CHECK(c.eliminated == doctest::Approx(model.eliminated(c.surface)).epsilon(1e-14));

    // narrow main lobe at the zenith favours tall cylinders
    CoexistenceModel narrow{IntensityField(HomogeneousIntensity{1e-7}), AntennaPattern(UlaPattern{64, 0.5}), loss25, 1.0,
                            RadialBoundary::constant(1000.0)};
    const auto ng = narrow.make_grid(256, 8);
    const auto tall = best_cylinder_of_volume(V, narrow, ng);
    std::vector<double> aspects;
    for (const auto &s : tall.scan)
        aspects.push_back(s.first);
    std::sort(aspects.begin(), aspects.end());
    CHECK(tall.aspect > 0.5 * (aspects[31] + aspects[32]));
}

TEST_CASE("markov tail bound")
{
    CHECK(markov_tail_bound(0.0, 1.0) == 0.0);
    CHECK(markov_tail_bound(2.0, 2.0) == 1.0);
    CHECK(markov_tail_bound(1.0, 4.0) == 0.25);
    CHECK(markov_tail_bound(5.0, 1.0) == 1.0);
    CHECK_THROWS_AS(markov_tail_bound(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(markov_tail_bound(-1.0, 1.0), DomainError);
}

TEST_CASE("shape comparison")
{
    SUBCASE("reference scenario: optimal dominates")
    {
        const auto model = reference_model();
        const auto grid = model.make_grid(64, 64);
        for (double V : {1e4, 1e6})
        {
            const auto rows = compare_shapes(V, model, grid);
            REQUIRE(rows.size() == 3);
            CHECK(rows[0].shape == "optimal");
            CHECK(rows[1].shape == "dome");
            CHECK(rows[2].shape == "cylinder");
            for (const auto &r : rows)
                CHECK(r.volume == doctest::Approx(V).epsilon(1e-4));
            CHECK(rows[0].eliminated >= rows[1].eliminated);
            CHECK(rows[0].eliminated >= rows[2].eliminated);
        }
    }
    SUBCASE("symmetric scenario: optimal equals dome")
    {
        const auto model = symmetric_model();
        const auto grid = model.make_grid(16, 16);
        const auto rows = compare_shapes(1e4, model, grid);
        CHECK(rows[0].eliminated == doctest::Approx(rows[1].eliminated).epsilon(1e-8));
    }
    SUBCASE("optimal beats random surfaces of equal volume on a coarse grid")
    {
        const auto model = reference_model();
        const auto grid = model.make_grid(8, 8);
        std::mt19937_64 gen(41);
        for (double V : {1e3, 1e6})
        {
            const auto opt = optimal_nfz_of_volume(V, model, grid);
            const double best = model.eliminated(opt);
            for (int t = 0; t < 1000; ++t)
            {
                const auto s = random_surface_of_volume(grid, V, 1000.0, gen);
                CHECK(model.eliminated(s) <= best);
            }
        }
    }
}

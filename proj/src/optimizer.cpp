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

#include "nfz/optimizer.hpp"

#include "nfz/error.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace nfz
{
    const char *to_string(ClampFloor c) noexcept { return c == ClampFloor::one ? "one" : "zero"; }

    const char *to_string(SolveStatus s) noexcept
    {
        switch (s)
        {
        case SolveStatus::solved:
            return "solved";
        case SolveStatus::no_nfz_required:
            return "no_nfz_required";
        case SolveStatus::floor_satisfies_budget:
            return "floor_satisfies_budget";
        }
        return "solved";
    }

    Budget Budget::from_cap(double a_prime, double total_interference)
    {
        if (!(a_prime >= 0.0))
            throw DomainError("interference cap a' must be non-negative");
        return {a_prime, total_interference - a_prime};
    }

    double CoexistenceModel::total_interference(const AngularGrid &grid) const
    {
        HemisphericalRegion region{outer, RadialBoundary::constant(0.0)};
        return expected_interference(region, field, pattern, loss, power, grid);
    }

    double CoexistenceModel::eliminated(const NfzSurface &nfz) const
    {
        return eliminated_interference(nfz, outer, field, pattern, loss, power);
    }

    AngularGrid CoexistenceModel::make_grid(int n_theta, int n_phi) const
    {
        auto tb = field.theta_breakpoints();
        const auto pb = pattern.theta_breakpoints();
        tb.insert(tb.end(), pb.begin(), pb.end());
        return AngularGrid(n_theta, n_phi, std::move(tb), field.phi_breakpoints());
    }

    // ---------------------------------------------------------------------------------------------

    namespace
    {
        double floor_radius(ClampFloor floor, double outer) { return floor == ClampFloor::one ? std::min(1.0, outer) : 0.0; }

        // Optimal radius on a ray where P lambda g = strength is constant.
        double radius_from_strength(double strength, double mu, double alpha, ClampFloor floor, double outer)
        {
            const double ratio = strength / mu;
            if (!(ratio > 1.0))
                return floor_radius(floor, outer);
            return std::min(outer, std::max(1.0, std::pow(ratio, 1.0 / alpha)));
        }

        // P lambda(r) l(r) g - mu on a ray of a radially varying field
        struct RayResidual
        {
            const IntensityField &field;
            const Direction &dir;
            double pg;
            double alpha;
            double mu;

            double operator()(double r) const
            {
                const double l = r <= 1.0 ? 1.0 : std::pow(r, -alpha);
                return pg * field.at(dir, r) * l - mu;
            }
        };

        constexpr int ray_scan_points = 256;

        double ray_scan_radius(int i, double outer)
        {
            return std::exp(std::log(outer) * static_cast<double>(i) / (ray_scan_points - 1));
        }
    }

    double optimal_radius(const Direction &dir, double mu, const IntensityField &field, const AntennaPattern &pattern,
                          const BoundedPowerLaw &loss, double power, ClampFloor floor, double outer)
    {
        if (!(mu > 0.0))
            throw DomainError("optimal_radius: multiplier must be positive");
        if (!(power >= 0.0))
            throw DomainError("optimal_radius: power must be non-negative");
        if (!(outer >= 0.0))
            throw GeometryError("optimal_radius: outer radius must be non-negative");
        const double pg = power * pattern.gain(dir);
        if (field.radially_constant())
            return radius_from_strength(pg * field.angular(dir), mu, loss.alpha, floor, outer);

        if (!std::isfinite(outer))
            throw CapabilityError("optimal_radius: a radially varying field needs a finite outer radius");
        if (outer <= 1.0)
            return floor_radius(floor, outer);
        RayResidual h{field, dir, pg, loss.alpha, mu};
        if (h(outer) >= 0.0)
            return outer;
        // walk inward to the outermost sign change
        double hi = outer;
        for (int i = ray_scan_points - 2; i >= 0; --i)
        {
            const double lo = ray_scan_radius(i, outer);
            if (h(lo) >= 0.0)
            {
                // h(lo) >= 0 > h(hi): bisect
                double a = lo, b = hi;
                for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it)
                {
                    const double m = 0.5 * (a + b);
                    (h(m) >= 0.0 ? a : b) = m;
                }
                return std::max(0.5 * (a + b), floor == ClampFloor::one ? 1.0 : 0.0);
            }
            hi = lo;
        }
        return floor_radius(floor, outer);
    }

    // ---------------------------------------------------------------------------------------------

    namespace
    {
        /// Per-node data for repeated evaluation of surface(mu) on one grid.
        class NodeTable
        {
        public:
            NodeTable(const CoexistenceModel &model, const AngularGrid &grid, ClampFloor floor)
                : model_(model), grid_(grid), floor_(floor), radially_constant_(model.field.radially_constant())
            {
                const std::size_t n = grid.size();
                strength_.resize(n);
                outer_.resize(n);
                for (std::size_t k = 0; k < n; ++k)
                {
                    const auto dir = grid.direction(k);
                    outer_[k] = model.outer.radius(dir);
                    const double pg = model.power * model.pattern.gain(dir);
                    if (radially_constant_)
                        strength_[k] = pg * model.field.angular(dir);
                    else
                    {
                        // largest value of P lambda l g along the ray
                        double m = 0.0;
                        for (int i = 0; i < ray_scan_points; ++i)
                        {
                            const double r = ray_scan_radius(i, std::max(outer_[k], 1.0));
                            const double l = r <= 1.0 ? 1.0 : std::pow(r, -model.loss.alpha);
                            m = std::max(m, pg * model.field.at(dir, r) * l);
                        }
                        strength_[k] = m;
                    }
                }
            }

            double mu_all_floor() const { return *std::max_element(strength_.begin(), strength_.end()); }

            std::vector<double> radii(double mu) const
            {
                std::vector<double> r(grid_.size());
                parallel_for(grid_.size(),
                             [&](std::size_t k)
                             {
                                 if (radially_constant_)
                                     r[k] = radius_from_strength(strength_[k], mu, model_.loss.alpha, floor_, outer_[k]);
                                 else
                                     r[k] = optimal_radius(grid_.direction(k), mu, model_.field, model_.pattern,
                                                           model_.loss, model_.power, floor_, outer_[k]);
                             });
                return r;
            }

            double eliminated(double mu) const
            {
                if (!radially_constant_)
                    return model_.eliminated(NfzSurface(grid_, radii(mu)));
                std::vector<double> terms(grid_.size());
                parallel_for(grid_.size(),
                             [&](std::size_t k)
                             {
                                 const double r =
                                     radius_from_strength(strength_[k], mu, model_.loss.alpha, floor_, outer_[k]);
                                 terms[k] = strength_[k] == 0.0 ? 0.0
                                                                : grid_.solid_angle_weight(k) * strength_[k] *
                                                                      radial_moment(model_.loss, 0.0, r, 1);
                             });
                return compensated_sum(terms);
            }

            double volume(double mu) const { return surface_volume(NfzSurface(grid_, radii(mu))); }

        private:
            const CoexistenceModel &model_;
            const AngularGrid &grid_;
            ClampFloor floor_;
            bool radially_constant_;
            std::vector<double> strength_;
            std::vector<double> outer_;
        };

        /// Root of a non-increasing f on [lo, hi] in log(mu) with f(lo) >= 0 > f(hi), by Illinois false
        /// position. Stops when |f| <= tol.
        template <class F>
        double solve_decreasing(F &&f, double mu_lo, double f_lo, double mu_hi, double f_hi, double tol, int max_it,
                                int &iterations, std::vector<BracketStep> *trace, double offset)
        {
            double x_lo = std::log(mu_lo), x_hi = std::log(mu_hi);
            int side = 0;
            double best_x = std::abs(f_lo) <= std::abs(f_hi) ? x_lo : x_hi;
            double best_f = std::min(std::abs(f_lo), std::abs(f_hi));
            for (iterations = 0; iterations < max_it; ++iterations)
            {
                if (best_f <= tol)
                    break;
                double x = (x_lo * f_hi - x_hi * f_lo) / (f_hi - f_lo);
                // keep the step inside the bracket; fall back to bisection when false position stalls
                if (!(x > x_lo && x < x_hi))
                    x = 0.5 * (x_lo + x_hi);
                if (x_hi - x_lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x_hi)))
                    break;
                const double fx = f(std::exp(x));
                if (std::abs(fx) < best_f)
                {
                    best_f = std::abs(fx);
                    best_x = x;
                }
                const double mu = std::exp(x);
                if (fx >= 0.0)
                {
                    x_lo = x;
                    mu_lo = mu;
                    f_lo = fx;
                    if (side == -1)
                        f_hi *= 0.5;
                    side = -1;
                }
                else
                {
                    x_hi = x;
                    mu_hi = mu;
                    f_hi = fx;
                    if (side == 1)
                        f_lo *= 0.5;
                    side = 1;
                }
                if (trace)
                    trace->push_back({mu_lo, mu_hi, mu, fx + offset});
            }
            return std::exp(best_x);
        }
    }

    MultiplierSolution solve_multiplier(const Budget &budget, const CoexistenceModel &model, const AngularGrid &grid,
                                        const OptimizerOptions &opts)
    {
        const double a = budget.a;
        MultiplierSolution sol;
        if (a <= 0.0)
        {
            sol.status = SolveStatus::no_nfz_required;
            return sol;
        }
        const double total = model.total_interference(grid);
        if (a >= total)
            throw InfeasibleBudget("required eliminated interference " + format_double(a) +
                                   " is not below E[I_A] = " + format_double(total));

        NodeTable table(model, grid, opts.clamp_floor);
        const double mu_hi = table.mu_all_floor();
        sol.mu = mu_hi;
        const double e_hi = table.eliminated(mu_hi);
        if (a <= e_hi)
        {
            sol.status = SolveStatus::floor_satisfies_budget;
            sol.eliminated = e_hi;
            return sol;
        }

        // halve until feasible
        double hi = mu_hi, f_hi = e_hi - a;
        double lo = 0.5 * mu_hi;
        double f_lo = table.eliminated(lo) - a;
        sol.bracket_steps = 1;
        while (f_lo < 0.0)
        {
            if (sol.bracket_steps > 4000 || !(lo > std::numeric_limits<double>::min()))
                throw InfeasibleBudget("could not bracket the multiplier");
            hi = lo;
            f_hi = f_lo;
            lo *= 0.5;
            f_lo = table.eliminated(lo) - a;
            ++sol.bracket_steps;
        }
        sol.trace.push_back({lo, hi, lo, f_lo + a});

        auto f = [&](double mu) { return table.eliminated(mu) - a; };
        sol.mu = solve_decreasing(f, lo, f_lo, hi, f_hi, opts.budget_rel_tol * a, opts.max_iterations, sol.iterations,
                                  &sol.trace, a);
        sol.eliminated = table.eliminated(sol.mu);
        return sol;
    }

    NfzSurface surface_for_multiplier(double mu, const CoexistenceModel &model, const AngularGrid &grid, ClampFloor floor)
    {
        if (!(mu > 0.0))
            throw DomainError("multiplier must be positive");
        NodeTable table(model, grid, floor);
        auto shared = std::make_shared<const CoexistenceModel>(model);
        SurfaceMeta meta;
        meta.provenance = Provenance::optimal;
        meta.mu = mu;
        return NfzSurface(grid, table.radii(mu), meta,
                          [shared, mu, floor](const Direction &d)
                          {
                              return optimal_radius(d, mu, shared->field, shared->pattern, shared->loss, shared->power,
                                                    floor, shared->outer.radius(d));
                          });
    }

    NfzSurface build_optimal_nfz(const Budget &budget, const CoexistenceModel &model, const AngularGrid &grid,
                                 const OptimizerOptions &opts)
    {
        const auto sol = solve_multiplier(budget, model, grid, opts);
        if (sol.status == SolveStatus::no_nfz_required)
        {
            SurfaceMeta meta;
            meta.provenance = Provenance::optimal;
            meta.mu = sol.mu;
            meta.a = budget.a;
            meta.a_prime = budget.a_prime;
            meta.status = to_string(sol.status);
            return NfzSurface(grid, std::vector<double>(grid.size(), 0.0), meta, [](const Direction &) { return 0.0; });
        }
        auto surface = surface_for_multiplier(sol.mu, model, grid, opts.clamp_floor);
        surface.meta().a = budget.a;
        surface.meta().a_prime = budget.a_prime;
        surface.meta().status = to_string(sol.status);
        return surface;
    }

    NfzSurface optimal_nfz_of_volume(double volume, const CoexistenceModel &model, const AngularGrid &grid,
                                     const OptimizerOptions &opts)
    {
        if (!(volume > 0.0))
            throw DomainError("target volume must be positive");
        const double volume_a = HemisphericalRegion{model.outer}.volume(grid);
        if (!(volume < volume_a))
            throw DomainError("target volume " + format_double(volume) + " is not below the volume of region A (" +
                              format_double(volume_a) + ")");
        NodeTable table(model, grid, opts.clamp_floor);
        const double mu_hi = table.mu_all_floor();
        if (!(mu_hi > 0.0))
            throw DomainError("no interference to eliminate; the optimal NFZ is undefined");
        const double v_hi = table.volume(mu_hi);
        if (volume < v_hi)
            throw DomainError("target volume " + format_double(volume) + " is below the all-floor surface volume " +
                              format_double(v_hi));

        auto f = [&](double mu) { return std::log(table.volume(mu) / volume); };
        double hi = mu_hi, f_hi = std::log(v_hi / volume);
        double lo = 0.5 * mu_hi, f_lo = f(lo);
        for (int steps = 0; f_lo < 0.0; ++steps)
        {
            if (steps > 4000 || !(lo > std::numeric_limits<double>::min()))
                throw DomainError("could not bracket the multiplier for the target volume");
            hi = lo;
            f_hi = f_lo;
            lo *= 0.5;
            f_lo = f(lo);
        }
        int iterations = 0;
        double mu = f_hi == 0.0 ? hi
                                : solve_decreasing(f, lo, f_lo, hi, f_hi, opts.volume_rel_tol, opts.max_iterations,
                                                   iterations, nullptr, 0.0);
        auto surface = surface_for_multiplier(mu, model, grid, opts.clamp_floor);
        surface.meta().a = model.eliminated(surface);
        surface.meta().status = "volume_calibrated";
        return surface;
    }

    StationarityReport stationarity_residual(const NfzSurface &nfz, const CoexistenceModel &model, ClampFloor floor)
    {
        const double mu = nfz.meta().mu;
        if (!(mu > 0.0))
            throw DomainError("stationarity_residual: surface carries no multiplier");
        StationarityReport rep;
        const auto &grid = nfz.grid();
        const auto radii = nfz.radii();
        const double floor_r = floor == ClampFloor::one ? 1.0 : 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k)
        {
            const auto dir = grid.direction(k);
            const double r = radii[k];
            const double outer = model.outer.radius(dir);
            if (r >= outer)
            {
                ++rep.outer_nodes;
                continue;
            }
            // a free node sits strictly above the floor, or exactly on r = 1 with the condition met there
            const double value = model.power * model.field.at(dir, r) * path_loss(model.loss, r) * model.pattern.gain(dir);
            if (r <= floor_r && value < mu)
            {
                ++rep.floor_nodes;
                continue;
            }
            ++rep.free_nodes;
            rep.max_residual = std::max(rep.max_residual, std::abs(value - mu) / mu);
        }
        return rep;
    }

    // ---------------------------------------------------------------------------------------------

    CylinderSearch best_cylinder_of_volume(double volume, const CoexistenceModel &model, const AngularGrid &grid)
    {
        if (!(volume > 0.0))
            throw DomainError("cylinder volume must be positive");
        constexpr int candidates = 64;
        constexpr double log_lo = -3.0 * std::numbers::ln10, log_hi = 3.0 * std::numbers::ln10;

        auto evaluate = [&](double log_aspect)
        {
            const double aspect = std::exp(log_aspect);
            const double radius = cylinder_radius_for_volume(volume, aspect);
            return model.eliminated(cylinder_surface(grid, radius, aspect * radius));
        };

        CylinderSearch out{cylinder_surface(grid, 0.0, 0.0), 1.0, -1.0, {}};
        std::vector<double> logs(candidates);
        int best = 0;
        for (int i = 0; i < candidates; ++i)
        {
            logs[i] = log_lo + (log_hi - log_lo) * i / (candidates - 1);
            const double e = evaluate(logs[i]);
            out.scan.emplace_back(std::exp(logs[i]), e);
            if (e > out.scan[best].second)
                best = i;
        }

        // golden-section maximization between the neighbours of the best candidate
        double a = logs[std::max(best - 1, 0)], b = logs[std::min(best + 1, candidates - 1)];
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
        double fc = evaluate(c), fd = evaluate(d);
        for (int it = 0; it < 100 && b - a > 1e-10; ++it)
        {
            if (fc >= fd)
            {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = evaluate(c);
            }
            else
            {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = evaluate(d);
            }
        }
        double best_log = fc >= fd ? c : d;
        double best_e = std::max(fc, fd);
        if (out.scan[best].second > best_e)
        {
            best_log = logs[best];
            best_e = out.scan[best].second;
        }

        out.aspect = std::exp(best_log);
        const double radius = cylinder_radius_for_volume(volume, out.aspect);
        out.surface = cylinder_surface(grid, radius, out.aspect * radius);
        out.eliminated = best_e;
        return out;
    }

    double markov_tail_bound(double expected, double beta)
    {
        if (!(beta > 0.0))
            throw DomainError("markov_tail_bound: threshold must be positive");
        if (!(expected >= 0.0))
            throw DomainError("markov_tail_bound: expectation must be non-negative");
        return std::min(1.0, expected / beta);
    }

    std::vector<ShapeResult> compare_shapes(double volume, const CoexistenceModel &model, const AngularGrid &grid,
                                            const OptimizerOptions &opts)
    {
        std::vector<ShapeResult> out;
        const auto optimal = optimal_nfz_of_volume(volume, model, grid, opts);
        out.push_back({"optimal", surface_volume(optimal), model.eliminated(optimal)});
        const auto dome = dome_of_volume(volume, grid);
        out.push_back({"dome", surface_volume(dome), model.eliminated(dome)});
        const auto cyl = best_cylinder_of_volume(volume, model, grid);
        out.push_back({"cylinder", surface_volume(cyl.surface), cyl.eliminated});
        return out;
    }
}

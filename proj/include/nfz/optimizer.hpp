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

#ifndef NFZ_OPTIMIZER_HPP
#define NFZ_OPTIMIZER_HPP

#include "nfz/field.hpp"
#include "nfz/quadrature.hpp"
#include "nfz/radio.hpp"
#include "nfz/surface.hpp"

#include <limits>
#include <string>
#include <vector>

namespace nfz
{
    /// Everything the interference integrals depend on: drone field, GS antenna, path loss, the
    /// block-averaged emission power P, and the outer boundary of region A.
    struct CoexistenceModel
    {
        IntensityField field;
        AntennaPattern pattern;
        BoundedPowerLaw loss;
        double power = 1.0;
        RadialBoundary outer = RadialBoundary::constant(1000.0);

        // E[I_A] on the given grid.
        double total_interference(const AngularGrid &grid) const;

        // E[I_B] of the surface restricted to region A.
        double eliminated(const NfzSurface &nfz) const;

        // Grid whose theta/phi panels are split at the field's cells and the pattern's nulls.
        AngularGrid make_grid(int n_theta, int n_phi) const;
    };

    /// Radius used where P lambda g < mu. `one` reproduces max{1, (P lambda g / mu)^(1/alpha)};
    /// `zero` leaves those directions outside the NFZ.
    enum class ClampFloor
    {
        one,
        zero
    };

    const char *to_string(ClampFloor c) noexcept;

    /// Interference requirement: a_prime caps E[I], a = E[I_A] - a_prime must be eliminated by the NFZ.
    struct Budget
    {
        double a_prime = 0.0;
        double a = 0.0;

        static Budget from_cap(double a_prime, double total_interference);
    };

    /// Separation distance satisfying P lambda(r) l(r) g = mu along `dir`.
    /// Radially constant fields: max{floor, (P lambda g / mu)^(1/alpha)} where P lambda g > mu, the floor
    /// otherwise. Other fields: largest root on [1, outer] by scan + bisection, the floor if none.
    /// The result never exceeds `outer`. Throws DomainError for mu <= 0.
    double optimal_radius(const Direction &dir, double mu, const IntensityField &field, const AntennaPattern &pattern,
                          const BoundedPowerLaw &loss, double power, ClampFloor floor = ClampFloor::one,
                          double outer = std::numeric_limits<double>::infinity());

    struct OptimizerOptions
    {
        ClampFloor clamp_floor = ClampFloor::one;
        double budget_rel_tol = 1e-8;
        double volume_rel_tol = 1e-12;
        int max_iterations = 200;
    };

    enum class SolveStatus
    {
        solved,
        no_nfz_required,       // a <= 0
        floor_satisfies_budget // the all-floor surface already eliminates at least a
    };

    const char *to_string(SolveStatus s) noexcept;

    struct BracketStep
    {
        double mu_lo, mu_hi; // bracket after this step
        double mu;           // trial multiplier
        double eliminated;   // E[I_B] at mu
    };

    struct MultiplierSolution
    {
        double mu = 0.0;
        double eliminated = 0.0;
        SolveStatus status = SolveStatus::solved;
        int bracket_steps = 0;
        int iterations = 0;
        std::vector<BracketStep> trace;
    };

    /// Finds mu with E[I_B](surface(mu)) = a to budget_rel_tol. E[I_B] is non-increasing in mu, so the
    /// root is bracketed between mu_hi = max node P lambda g (all radii on the floor) and a mu_lo found by
    /// halving, then refined by Illinois false position on log(mu).
    /// Throws InfeasibleBudget if a >= E[I_A].
    MultiplierSolution solve_multiplier(const Budget &budget, const CoexistenceModel &model, const AngularGrid &grid,
                                        const OptimizerOptions &opts = {});

    // Surface with r = optimal_radius at every node for a fixed mu.
    NfzSurface surface_for_multiplier(double mu, const CoexistenceModel &model, const AngularGrid &grid,
                                      ClampFloor floor = ClampFloor::one);

    /// Minimum-volume NFZ eliminating `budget.a`. When no NFZ is required the surface is empty (r = 0).
    NfzSurface build_optimal_nfz(const Budget &budget, const CoexistenceModel &model, const AngularGrid &grid,
                                 const OptimizerOptions &opts = {});

    /// Optimal surface whose volume equals `volume` (calibrated on mu). Throws DomainError when the
    /// volume is below the all-floor surface or not below the volume of region A.
    NfzSurface optimal_nfz_of_volume(double volume, const CoexistenceModel &model, const AngularGrid &grid,
                                     const OptimizerOptions &opts = {});

    struct StationarityReport
    {
        double max_residual = 0.0; // max |P lambda l(r) g - mu| / mu over free nodes
        std::size_t free_nodes = 0;
        std::size_t floor_nodes = 0;
        std::size_t outer_nodes = 0; // clipped at the region boundary
    };

    // Checks the optimality condition at every node of an optimal surface.
    StationarityReport stationarity_residual(const NfzSurface &nfz, const CoexistenceModel &model,
                                             ClampFloor floor = ClampFloor::one);

    struct CylinderSearch
    {
        NfzSurface surface;
        double aspect = 1.0; // height / radius
        double eliminated = 0.0;
        std::vector<std::pair<double, double>> scan; // (aspect, E[I_B]) of the scan candidates
    };

    /// Upright cylinder of volume V maximizing E[I_B]: 64 log-spaced height/radius ratios in
    /// [1e-3, 1e3], then golden-section refinement around the best candidate.
    CylinderSearch best_cylinder_of_volume(double volume, const CoexistenceModel &model, const AngularGrid &grid);

    // Markov bound on P(I >= beta): min{1, expected / beta}.
    double markov_tail_bound(double expected, double beta);

    struct ShapeResult
    {
        std::string shape;
        double volume = 0.0;
        double eliminated = 0.0;
    };

    /// Optimal, dome and best cylinder NFZs of equal volume and the interference each eliminates.
    std::vector<ShapeResult> compare_shapes(double volume, const CoexistenceModel &model, const AngularGrid &grid,
                                            const OptimizerOptions &opts = {});
}

#endif

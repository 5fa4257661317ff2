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

#ifndef NFZ_QUADRATURE_HPP
#define NFZ_QUADRATURE_HPP

#include "nfz/radio.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace nfz
{
    /// Neumaier-compensated accumulator. Summing the same values in the same order is bit-reproducible.
    class CompensatedSum
    {
    public:
        void add(double x) noexcept;
        double value() const noexcept { return sum_ + comp_; }

    private:
        double sum_ = 0.0;
        double comp_ = 0.0;
    };

    double compensated_sum(std::span<const double> values) noexcept;

    // n-point Gauss-Legendre rule on [a, b]; nodes ascending.
    std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b);

    /// Tensor-product rule over the upper hemisphere of directions, theta in [0, pi/2], phi in [0, 2 pi).
    ///
    /// theta: composite Gauss-Legendre, split into panels at the given breakpoints; nodes are shared among
    /// panels in proportion to panel length (at least one per panel).
    /// phi: composite midpoint rule with the same panel logic; without breakpoints this is the periodic
    /// trapezoid rule shifted by half a step.
    ///
    /// Weights do not include the sin(theta) Jacobian: they sum to (pi/2) * (2 pi).
    class AngularGrid
    {
    public:
        AngularGrid(int n_theta, int n_phi, std::vector<double> theta_breaks = {}, std::vector<double> phi_breaks = {});

        std::size_t n_theta() const noexcept { return theta_.size(); }
        std::size_t n_phi() const noexcept { return phi_.size(); }
        std::size_t size() const noexcept { return theta_.size() * phi_.size(); }

        std::span<const double> theta_nodes() const noexcept { return theta_; }
        std::span<const double> theta_weights() const noexcept { return theta_w_; }
        std::span<const double> phi_nodes() const noexcept { return phi_; }
        std::span<const double> phi_weights() const noexcept { return phi_w_; }

        // Interior breakpoints actually used (sorted, deduplicated), in radians.
        std::span<const double> theta_breaks() const noexcept { return theta_breaks_; }
        std::span<const double> phi_breaks() const noexcept { return phi_breaks_; }

        // Flat node index k = i_theta * n_phi + i_phi
        std::size_t index(std::size_t i_theta, std::size_t i_phi) const noexcept { return i_theta * phi_.size() + i_phi; }
        Direction direction(std::size_t k) const { return {theta_[k / phi_.size()], phi_[k % phi_.size()]}; }

        // Solid-angle weight of node k: w_theta * w_phi * sin(theta)
        double solid_angle_weight(std::size_t k) const noexcept { return solid_w_[k]; }

        // Sum over nodes of f(direction) * solid-angle weight.
        double integrate(const std::function<double(const Direction &)> &f) const;

        // Same grid refined by `factor` in both axes with identical breakpoints.
        AngularGrid refined(int factor) const;

    private:
        std::vector<double> theta_, theta_w_, phi_, phi_w_;
        std::vector<double> theta_breaks_, phi_breaks_;
        std::vector<double> solid_w_;
    };

    /// Worker count used by the parallel loops in this library (1 = serial). Results never depend on it.
    void set_thread_count(unsigned n);
    unsigned thread_count() noexcept;

    // Calls fn(i) for i in [0, n), split across thread_count() workers in contiguous chunks.
    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);
}

#endif

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

#ifndef NFZ_SAMPLING_HPP
#define NFZ_SAMPLING_HPP

#include "nfz/field.hpp"
#include "nfz/radio.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace nfz
{
    struct Point3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        bool operator==(const Point3 &) const = default;
    };

    /// Counter-based generator: output i of stream (seed, stream) is a SplitMix64 hash of
    /// key(seed, stream) + i * golden. Streams for different replications are independent of the order
    /// in which they are consumed.
    class StreamRng
    {
    public:
        using result_type = std::uint64_t;

        StreamRng(std::uint64_t seed, std::uint64_t stream) noexcept;

        static constexpr result_type min() noexcept { return 0; }
        static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

        result_type operator()() noexcept;

        // Uniform in [0, 1) with 53 random bits.
        double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    private:
        std::uint64_t key_;
        std::uint64_t counter_ = 0;
    };

    /// Poisson field restricted to the region, by thinning: a homogeneous process of intensity
    /// lambda_max on the bounding shell [inner.min_radius, outer.max_radius], each point kept with
    /// probability lambda(x) / lambda_max and only if it lies between the two boundaries.
    /// Coordinates are relative to the GS. Throws CapabilityError if the field has no upper bound.
    std::vector<Point3> sample_ppp(const HemisphericalRegion &region, const IntensityField &field, StreamRng &rng);
    std::vector<Point3> sample_ppp(const HemisphericalRegion &region, const IntensityField &field, std::uint64_t seed);

    /// Realized aggregate interference: sum of P g(theta_i, phi_i) l(|x_i - gs|).
    double simulate_interference(std::span<const Point3> points, const AntennaPattern &pattern,
                                 const BoundedPowerLaw &loss, double power, const Point3 &gs = {});

    // Realized interference of `n` independent replications; replication i uses stream (seed, i).
    std::vector<double> interference_replications(const HemisphericalRegion &region, const IntensityField &field,
                                                  const AntennaPattern &pattern, const BoundedPowerLaw &loss,
                                                  double power, std::uint64_t seed, std::size_t n);

    struct ValidationRecord
    {
        std::size_t replications = 0;
        double sample_mean = 0.0;
        double sample_std_error = 0.0;   // sample standard deviation / sqrt(n)
        double analytic_mean = 0.0;      // Campbell first moment
        double analytic_std_error = 0.0; // sqrt(Campbell variance / n)
        double z = 0.0;                  // (sample_mean - analytic_mean) / analytic_std_error
        double z_sample = 0.0;           // same with the sample standard error

        bool passed(double limit = 4.0) const noexcept;
    };

    /// Monte Carlo check of the Campbell expectation over the region.
    ValidationRecord validate_expectation(const HemisphericalRegion &region, const IntensityField &field,
                                          const AntennaPattern &pattern, const BoundedPowerLaw &loss, double power,
                                          const AngularGrid &grid, std::uint64_t seed, std::size_t n);

    // Mean and sample standard deviation with compensated accumulation.
    std::pair<double, double> mean_and_stddev(std::span<const double> values);

    // CSV x,y,z, with the GS offset added back.
    void write_points_csv(std::ostream &out, std::span<const Point3> points, const Point3 &gs,
                          const std::string &first_line);
}

#endif

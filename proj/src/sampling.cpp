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

#include "nfz/sampling.hpp"

#include "nfz/error.hpp"
#include "nfz/quadrature.hpp"
#include "nfz/surface.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

namespace nfz
{
    namespace
    {
        constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

        constexpr std::uint64_t mix64(std::uint64_t z) noexcept
        {
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }
    }

    StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix64(mix64(seed + golden) ^ mix64(stream * golden + 0x632be59bd9b4e019ULL)))
    {
    }

    StreamRng::result_type StreamRng::operator()() noexcept
    {
        ++counter_;
        return mix64(key_ + counter_ * golden);
    }

    std::vector<Point3> sample_ppp(const HemisphericalRegion &region, const IntensityField &field, StreamRng &rng)
    {
        const auto bound = field.upper_bound();
        if (!bound)
            throw CapabilityError("sample_ppp: intensity field has no declared upper bound");
        const double lambda_max = *bound;
        const double r_lo = region.inner.min_radius;
        const double r_hi = region.outer.max_radius;
        if (!(r_hi >= r_lo))
            throw GeometryError("sample_ppp: inner boundary exceeds outer boundary");

        std::vector<Point3> points;
        const double lo3 = r_lo * r_lo * r_lo, hi3 = r_hi * r_hi * r_hi;
        const double mean = lambda_max * (two_pi / 3.0) * (hi3 - lo3);
        if (!(mean > 0.0))
            return points;

        std::poisson_distribution<long long> count_dist(mean);
        const long long count = count_dist(rng);
        for (long long i = 0; i < count; ++i)
        {
            // uniform in the hemispherical shell: cos(theta) ~ U(0,1], rho^3 ~ U(lo3, hi3)
            const double cos_t = 1.0 - rng.uniform();
            const double phi = two_pi * rng.uniform();
            const double rho = std::cbrt(lo3 + rng.uniform() * (hi3 - lo3));
            const double keep = rng.uniform();

            const Direction dir(std::acos(cos_t), phi);
            if (rho < region.inner.radius(dir) || rho > region.outer.radius(dir))
                continue;
            if (keep * lambda_max >= field.at(dir, rho))
                continue;
            const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
            points.push_back({rho * sin_t * std::cos(phi), rho * sin_t * std::sin(phi), rho * cos_t});
        }
        return points;
    }

    std::vector<Point3> sample_ppp(const HemisphericalRegion &region, const IntensityField &field, std::uint64_t seed)
    {
        StreamRng rng(seed, 0);
        return sample_ppp(region, field, rng);
    }

    double simulate_interference(std::span<const Point3> points, const AntennaPattern &pattern,
                                 const BoundedPowerLaw &loss, double power, const Point3 &gs)
    {
        CompensatedSum total;
        for (const auto &p : points)
        {
            const double dx = p.x - gs.x, dy = p.y - gs.y, dz = p.z - gs.z;
            const double rho = std::sqrt(dx * dx + dy * dy + dz * dz);
            const double theta = rho > 0.0 ? std::acos(std::clamp(dz / rho, 0.0, 1.0)) : 0.0;
            const double phi = std::atan2(dy, dx);
            total.add(power * pattern.gain(Direction(theta, phi)) * path_loss(loss, rho));
        }
        return total.value();
    }

    std::vector<double> interference_replications(const HemisphericalRegion &region, const IntensityField &field,
                                                  const AntennaPattern &pattern, const BoundedPowerLaw &loss,
                                                  double power, std::uint64_t seed, std::size_t n)
    {
        std::vector<double> out(n);
        parallel_for(n,
                     [&](std::size_t i)
                     {
                         StreamRng rng(seed, i);
                         const auto pts = sample_ppp(region, field, rng);
                         out[i] = simulate_interference(pts, pattern, loss, power);
                     });
        return out;
    }

    std::pair<double, double> mean_and_stddev(std::span<const double> values)
    {
        if (values.empty())
            return {0.0, 0.0};
        const double mean = compensated_sum(values) / static_cast<double>(values.size());
        if (values.size() < 2)
            return {mean, 0.0};
        CompensatedSum ss;
        for (double v : values)
            ss.add((v - mean) * (v - mean));
        return {mean, std::sqrt(ss.value() / static_cast<double>(values.size() - 1))};
    }

    bool ValidationRecord::passed(double limit) const noexcept { return std::abs(z) <= limit; }

    ValidationRecord validate_expectation(const HemisphericalRegion &region, const IntensityField &field,
                                          const AntennaPattern &pattern, const BoundedPowerLaw &loss, double power,
                                          const AngularGrid &grid, std::uint64_t seed, std::size_t n)
    {
        if (n < 2)
            throw DomainError("validation needs at least two replications");
        const auto samples = interference_replications(region, field, pattern, loss, power, seed, n);
        const auto [mean, sd] = mean_and_stddev(samples);

        ValidationRecord rec;
        rec.replications = n;
        rec.sample_mean = mean;
        rec.sample_std_error = sd / std::sqrt(static_cast<double>(n));
        rec.analytic_mean = expected_interference(region, field, pattern, loss, power, grid);
        rec.analytic_std_error =
            std::sqrt(interference_variance(region, field, pattern, loss, power, grid) / static_cast<double>(n));
        const double diff = rec.sample_mean - rec.analytic_mean;
        auto ratio = [diff](double se) { return se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff)); };
        rec.z = ratio(rec.analytic_std_error);
        rec.z_sample = ratio(rec.sample_std_error);
        return rec;
    }

    void write_points_csv(std::ostream &out, std::span<const Point3> points, const Point3 &gs,
                          const std::string &first_line)
    {
        out << first_line << '\n' << "x,y,z\n";
        for (const auto &p : points)
            out << format_double(p.x + gs.x) << ',' << format_double(p.y + gs.y) << ',' << format_double(p.z + gs.z)
                << '\n';
    }
}

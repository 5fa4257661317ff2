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

#include "nfz/quadrature.hpp"

#include "nfz/error.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace nfz
{
    void CompensatedSum::add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double compensated_sum(std::span<const double> values) noexcept
    {
        CompensatedSum s;
        for (double v : values)
            s.add(v);
        return s.value();
    }

    std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b)
    {
        if (n < 1)
            throw DomainError("gauss_legendre: need at least one node");
        // legendre_p_zeros returns the non-negative roots in ascending order
        const auto roots = boost::math::legendre_p_zeros<double>(n);
        std::vector<double> x, w;
        x.reserve(n);
        w.reserve(n);
        auto weight = [n](double r)
        {
            const double dp = boost::math::legendre_p_prime(n, r);
            return 2.0 / ((1.0 - r * r) * dp * dp);
        };
        for (auto it = roots.rbegin(); it != roots.rend(); ++it)
            if (*it != 0.0)
            {
                x.push_back(-*it);
                w.push_back(weight(*it));
            }
        for (double r : roots)
        {
            x.push_back(r);
            w.push_back(weight(r));
        }
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            x[i] = mid + half * x[i];
            w[i] *= half;
        }
        return {std::move(x), std::move(w)};
    }

    namespace
    {
        std::vector<double> clean_breaks(std::vector<double> br, double hi)
        {
            std::vector<double> out;
            std::sort(br.begin(), br.end());
            for (double b : br)
            {
                if (!(b > 1e-12 && b < hi - 1e-12))
                    continue;
                if (!out.empty() && b - out.back() < 1e-12)
                    continue;
                out.push_back(b);
            }
            return out;
        }

        // Distributes n nodes among panels proportionally to their length, at least one each
        // (largest-remainder rounding so the total is exact).
        std::vector<int> allocate(int n, const std::vector<double> &edges)
        {
            const std::size_t panels = edges.size() - 1;
            if (n < static_cast<int>(panels))
                throw DomainError("angular grid: " + std::to_string(n) + " nodes cannot cover " +
                                  std::to_string(panels) + " panels");
            const double total = edges.back() - edges.front();
            std::vector<int> count(panels, 1);
            int left = n - static_cast<int>(panels);
            std::vector<double> share(panels);
            for (std::size_t p = 0; p < panels; ++p)
                share[p] = left * (edges[p + 1] - edges[p]) / total;
            int used = 0;
            for (std::size_t p = 0; p < panels; ++p)
            {
                int f = static_cast<int>(std::floor(share[p]));
                count[p] += f;
                used += f;
            }
            std::vector<std::size_t> order(panels);
            for (std::size_t p = 0; p < panels; ++p)
                order[p] = p;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
                             { return share[a] - std::floor(share[a]) > share[b] - std::floor(share[b]); });
            for (int r = 0; r < left - used; ++r)
                ++count[order[r]];
            return count;
        }

        std::vector<double> edges_of(const std::vector<double> &breaks, double hi)
        {
            std::vector<double> e{0.0};
            e.insert(e.end(), breaks.begin(), breaks.end());
            e.push_back(hi);
            return e;
        }
    }

    AngularGrid::AngularGrid(int n_theta, int n_phi, std::vector<double> theta_breaks, std::vector<double> phi_breaks)
        : theta_breaks_(clean_breaks(std::move(theta_breaks), half_pi)),
          phi_breaks_(clean_breaks(std::move(phi_breaks), two_pi))
    {
        if (n_theta < 1 || n_phi < 1)
            throw DomainError("angular grid needs n_theta >= 1 and n_phi >= 1");

        const auto te = edges_of(theta_breaks_, half_pi);
        const auto tc = allocate(n_theta, te);
        for (std::size_t p = 0; p + 1 < te.size(); ++p)
        {
            auto [x, w] = gauss_legendre(tc[p], te[p], te[p + 1]);
            theta_.insert(theta_.end(), x.begin(), x.end());
            theta_w_.insert(theta_w_.end(), w.begin(), w.end());
        }

        const auto pe = edges_of(phi_breaks_, two_pi);
        const auto pc = allocate(n_phi, pe);
        for (std::size_t p = 0; p + 1 < pe.size(); ++p)
        {
            const double h = (pe[p + 1] - pe[p]) / pc[p];
            for (int k = 0; k < pc[p]; ++k)
            {
                phi_.push_back(pe[p] + (k + 0.5) * h);
                phi_w_.push_back(h);
            }
        }

        solid_w_.resize(size());
        for (std::size_t i = 0; i < theta_.size(); ++i)
            for (std::size_t j = 0; j < phi_.size(); ++j)
                solid_w_[index(i, j)] = theta_w_[i] * phi_w_[j] * std::sin(theta_[i]);
    }

    double AngularGrid::integrate(const std::function<double(const Direction &)> &f) const
    {
        CompensatedSum s;
        for (std::size_t k = 0; k < size(); ++k)
            s.add(f(direction(k)) * solid_w_[k]);
        return s.value();
    }

    AngularGrid AngularGrid::refined(int factor) const
    {
        if (factor < 1)
            throw DomainError("refinement factor must be >= 1");
        return AngularGrid(static_cast<int>(n_theta()) * factor, static_cast<int>(n_phi()) * factor, theta_breaks_,
                           phi_breaks_);
    }

    // ---------------------------------------------------------------------------------------------

    namespace
    {
        std::atomic<unsigned> g_threads{1};
    }

    void set_thread_count(unsigned n) { g_threads = std::max(1u, n); }
    unsigned thread_count() noexcept { return g_threads; }

    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn)
    {
        const std::size_t workers = std::min<std::size_t>(g_threads, n);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w)
            {
                const std::size_t begin = n * w / workers, end = n * (w + 1) / workers;
                pool.emplace_back(
                    [&, begin, end]
                    {
                        try
                        {
                            for (std::size_t i = begin; i < end; ++i)
                                fn(i);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(failure_mutex);
                            if (!failure)
                                failure = std::current_exception();
                        }
                    });
            }
        }
        if (failure)
            std::rethrow_exception(failure);
    }
}

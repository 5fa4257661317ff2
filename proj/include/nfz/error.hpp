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

#ifndef NFZ_ERROR_HPP
#define NFZ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nfz
{
    // Argument outside the mathematical domain of an operation (mu <= 0, level outside (0,1], ...).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Inner boundary exceeds outer boundary, or a surface leaves its region.
    class GeometryError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // The requested operation is not supported for this input (e.g. sampling an unbounded field).
    class CapabilityError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Required eliminated interference cannot be reached even by removing all of region A.
    class InfeasibleBudget : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Invalid scenario / input file; path() names the offending field (e.g. "antenna.elements").
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(std::string path, const std::string &message)
            : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path))
        {
        }

        const std::string &path() const noexcept { return path_; }

    private:
        std::string path_;
    };
}

#endif

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

// Minimal CSV reading shared by the pattern, mask and surface loaders.

#ifndef NFZ_SRC_CSV_HPP
#define NFZ_SRC_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace nfz::csv
{
    struct Table
    {
        std::vector<std::string> comments; // leading '#' lines, without the '#'
        std::vector<std::string> header;
        std::vector<std::vector<double>> rows;
    };

    std::vector<std::string> split(const std::string &line, char sep = ',');
    std::string trim(const std::string &s);

    // Reads a numeric table; the first non-comment line is the header and must equal `expected_header`.
    // Numbers go through strtod, so "inf" / "-inf" are accepted. Throws ConfigError on any problem.
    Table read(const std::filesystem::path &file, const std::vector<std::string> &expected_header);
}

#endif

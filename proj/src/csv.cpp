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

#include "csv.hpp"

#include "nfz/error.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>

namespace nfz::csv
{
    std::vector<std::string> split(const std::string &line, char sep)
    {
        std::vector<std::string> out;
        std::string::size_type start = 0;
        while (true)
        {
            auto pos = line.find(sep, start);
            out.push_back(trim(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
            if (pos == std::string::npos)
                break;
            start = pos + 1;
        }
        return out;
    }

    std::string trim(const std::string &s)
    {
        const char *ws = " \t\r\n";
        auto b = s.find_first_not_of(ws);
        if (b == std::string::npos)
            return {};
        auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    Table read(const std::filesystem::path &file, const std::vector<std::string> &expected_header)
    {
        std::ifstream in(file);
        if (!in)
            throw ConfigError(file.string(), "cannot open file");

        Table table;
        std::string line;
        std::size_t line_no = 0;
        bool have_header = false;
        while (std::getline(in, line))
        {
            ++line_no;
            auto t = trim(line);
            if (t.empty())
                continue;
            if (t.front() == '#')
            {
                if (!have_header)
                    table.comments.push_back(trim(t.substr(1)));
                continue;
            }
            auto fields = split(t);
            if (!have_header)
            {
                if (fields != expected_header)
                {
                    std::string want;
                    for (const auto &h : expected_header)
                        want += (want.empty() ? "" : ",") + h;
                    throw ConfigError(file.string() + ":" + std::to_string(line_no), "expected header '" + want + "'");
                }
                table.header = std::move(fields);
                have_header = true;
                continue;
            }
            if (fields.size() != expected_header.size())
                throw ConfigError(file.string() + ":" + std::to_string(line_no),
                                  "expected " + std::to_string(expected_header.size()) + " columns");
            std::vector<double> row;
            row.reserve(fields.size());
            for (std::size_t c = 0; c < fields.size(); ++c)
            {
                const char *begin = fields[c].c_str();
                char *end = nullptr;
                errno = 0;
                double v = std::strtod(begin, &end);
                if (end == begin || *end != '\0' || errno == ERANGE)
                    throw ConfigError(file.string() + ":" + std::to_string(line_no) + "." + expected_header[c],
                                      "not a number: '" + fields[c] + "'");
                row.push_back(v);
            }
            table.rows.push_back(std::move(row));
        }
        if (!have_header)
            throw ConfigError(file.string(), "missing header");
        return table;
    }
}

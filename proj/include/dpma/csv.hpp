// SPDX-License-Identifier: Apache-2.0
//
// dpma: dual-polarized movable-antenna AirComp optimization library
// Copyright (C) 2026 The dpma authors
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

#ifndef DPMA_CSV_HPP
#define DPMA_CSV_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpma
{
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct CsvTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        bool operator==(const CsvTable &) const = default;
    };

    // Shortest decimal text that round-trips to the same double.
    std::string format_double(double v);

    // RFC 4180: CRLF line ends, fields quoted when they contain a comma,
    // quote, CR or LF; embedded quotes doubled.
    void write_csv(std::ostream &os, const CsvTable &table);
    std::string to_csv(const CsvTable &table);
    void emit_csv(const CsvTable &table, const std::string &path);

    CsvTable parse_csv(const std::string &text);
    CsvTable read_csv(const std::string &path);
} // namespace dpma

#endif

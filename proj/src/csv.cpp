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

#include "dpma/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dpma
{
    std::string format_double(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    namespace
    {
        void write_field(std::ostream &os, const std::string &f)
        {
            if (f.find_first_of(",\"\r\n") == std::string::npos)
            {
                os << f;
                return;
            }
            os << '"';
            for (char c : f)
            {
                if (c == '"')
                    os << '"';
                os << c;
            }
            os << '"';
        }

        void write_record(std::ostream &os, const std::vector<std::string> &rec)
        {
            for (size_t i = 0; i < rec.size(); ++i)
            {
                if (i)
                    os << ',';
                write_field(os, rec[i]);
            }
            os << "\r\n";
        }
    } // namespace

    void write_csv(std::ostream &os, const CsvTable &table)
    {
        write_record(os, table.header);
        for (const auto &r : table.rows)
        {
            if (r.size() != table.header.size())
                throw IoError("csv row width does not match the header");
            write_record(os, r);
        }
    }

    std::string to_csv(const CsvTable &table)
    {
        std::ostringstream os;
        write_csv(os, table);
        return os.str();
    }

    void emit_csv(const CsvTable &table, const std::string &path)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw IoError("cannot open " + path + " for writing");
        write_csv(f, table);
        f.flush();
        if (!f)
            throw IoError("write to " + path + " failed");
    }

    CsvTable parse_csv(const std::string &text)
    {
        std::vector<std::vector<std::string>> records;
        std::vector<std::string> rec;
        std::string field;
        bool quoted = false, field_started = false;
        size_t i = 0;
        const size_t n = text.size();
        auto end_field = [&]
        {
            rec.push_back(field);
            field.clear();
            field_started = false;
        };
        auto end_record = [&]
        {
            end_field();
            records.push_back(std::move(rec));
            rec.clear();
        };
        while (i < n)
        {
            const char c = text[i];
            if (quoted)
            {
                if (c == '"')
                {
                    if (i + 1 < n && text[i + 1] == '"')
                    {
                        field += '"';
                        i += 2;
                        continue;
                    }
                    quoted = false;
                    ++i;
                    continue;
                }
                field += c;
                ++i;
                continue;
            }
            if (c == '"' && !field_started && field.empty())
            {
                quoted = true;
                field_started = true;
                ++i;
            }
            else if (c == ',')
            {
                end_field();
                ++i;
            }
            else if (c == '\r' || c == '\n')
            {
                end_record();
                i += (c == '\r' && i + 1 < n && text[i + 1] == '\n') ? 2 : 1;
            }
            else
            {
                field += c;
                field_started = true;
                ++i;
            }
        }
        if (quoted)
            throw IoError("unterminated quoted csv field");
        if (field_started || !field.empty() || !rec.empty())
            end_record();

        CsvTable t;
        if (records.empty())
            return t;
        t.header = std::move(records.front());
        t.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
        return t;
    }

    CsvTable read_csv(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw IoError("cannot open " + path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return parse_csv(ss.str());
    }
} // namespace dpma

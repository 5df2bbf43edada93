// SPDX-License-Identifier: Apache-2.0
//
// ris-hst: link-level simulator for RIS-assisted high-speed-train MISO downlinks
// Copyright (C) 2026 The ris-hst authors
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

#include "rishst/result_table.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#ifndef RISHST_VERSION
#define RISHST_VERSION "0.0.0"
#endif

namespace rishst
{
    namespace
    {
        bool needs_quotes(std::string_view s)
        {
            return s.find_first_of(",\"\r\n") != std::string_view::npos;
        }

        std::string quote(std::string_view s)
        {
            std::string out = "\"";
            for (char c : s)
            {
                if (c == '"')
                    out += '"';
                out += c;
            }
            out += '"';
            return out;
        }

        Cell classify(const std::string &field, bool was_quoted)
        {
            if (was_quoted || field.empty())
                return field;
            std::int64_t iv = 0;
            const char *first = field.data();
            const char *last = field.data() + field.size();
            if (auto [ptr, ec] = std::from_chars(first, last, iv); ec == std::errc() && ptr == last)
                return iv;
            if (field == "nan" || field == "-nan")
                return std::nan("");
            if (field == "inf")
                return HUGE_VAL;
            if (field == "-inf")
                return -HUGE_VAL;
            double dv = 0.0;
            if (auto [ptr, ec] = std::from_chars(first, last, dv); ec == std::errc() && ptr == last)
                return dv;
            return field;
        }

        void write_file(const std::string &path, const std::string &contents)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IoError("cannot open '" + path + "' for writing");
            out << contents;
            out.flush();
            if (!out)
                throw IoError("failed writing '" + path + "'");
        }
    }

    std::size_t ResultTable::column(std::string_view name) const
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return i;
        throw std::out_of_range("no column named '" + std::string(name) + "'");
    }

    double ResultTable::number(std::size_t row, std::string_view name) const
    {
        const Cell &c = rows.at(row).at(column(name));
        if (const auto *d = std::get_if<double>(&c))
            return *d;
        if (const auto *i = std::get_if<std::int64_t>(&c))
            return double(*i);
        throw std::invalid_argument("column '" + std::string(name) + "' is not numeric");
    }

    std::string ResultTable::text(std::size_t row, std::string_view name) const
    {
        return format_cell(rows.at(row).at(column(name)));
    }

    std::string_view tool_version()
    {
        return RISHST_VERSION;
    }

    std::string format_double(double x)
    {
        if (std::isnan(x))
            return "nan";
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return buf;
    }

    std::string format_cell(const Cell &c)
    {
        if (const auto *i = std::get_if<std::int64_t>(&c))
            return std::to_string(*i);
        if (const auto *d = std::get_if<double>(&c))
            return format_double(*d);
        return std::get<std::string>(c);
    }

    std::string to_csv(const ResultTable &table)
    {
        std::string out;
        auto append_field = [&out](std::string_view s, bool first)
        {
            if (!first)
                out += ',';
            out += needs_quotes(s) ? quote(s) : std::string(s);
        };

        for (std::size_t i = 0; i < table.header.size(); ++i)
            append_field(table.header[i], i == 0);
        out += '\n';
        for (const auto &row : table.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                append_field(format_cell(row[i]), i == 0);
            out += '\n';
        }
        return out;
    }

    void emit_csv(const ResultTable &table, const std::string &path, const RunMetadata &meta)
    {
        write_file(path, to_csv(table));

        nlohmann::json j;
        j["experiment"] = meta.experiment;
        j["config_hash"] = meta.config_hash;
        j["seed"] = meta.seed;
        j["trials"] = meta.trials;
        j["tool_version"] = meta.tool_version;
        write_file(path + ".meta.json", j.dump(2) + "\n");
    }

    ResultTable parse_csv(std::string_view text)
    {
        std::vector<std::vector<std::pair<std::string, bool>>> records;
        std::vector<std::pair<std::string, bool>> record;
        std::string field;
        bool quoted = false, in_quotes = false, field_started = false;

        auto end_field = [&]
        {
            record.emplace_back(field, quoted);
            field.clear();
            quoted = false;
            field_started = false;
        };
        auto end_record = [&]
        {
            end_field();
            records.push_back(std::move(record));
            record.clear();
        };

        for (std::size_t i = 0; i < text.size(); ++i)
        {
            const char c = text[i];
            if (in_quotes)
            {
                if (c == '"')
                {
                    if (i + 1 < text.size() && text[i + 1] == '"')
                    {
                        field += '"';
                        ++i;
                    }
                    else
                        in_quotes = false;
                }
                else
                    field += c;
                continue;
            }
            if (c == '"' && !field_started)
            {
                in_quotes = quoted = field_started = true;
            }
            else if (c == ',')
                end_field();
            else if (c == '\r')
                continue;
            else if (c == '\n')
                end_record();
            else
            {
                field += c;
                field_started = true;
            }
        }
        if (in_quotes)
            throw std::invalid_argument("parse_csv: unterminated quoted field");
        if (field_started || !record.empty())
            end_record();

        ResultTable table;
        if (records.empty())
            return table;
        for (auto &[name, q] : records.front())
            table.header.push_back(name);
        for (std::size_t r = 1; r < records.size(); ++r)
        {
            std::vector<Cell> row;
            for (auto &[value, q] : records[r])
                row.push_back(classify(value, q));
            table.rows.push_back(std::move(row));
        }
        return table;
    }

    std::string fnv1a_hex(std::string_view data)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : data)
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
}

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

#ifndef RISHST_RESULT_TABLE_HPP
#define RISHST_RESULT_TABLE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rishst
{
    class IoError : public std::runtime_error
    {
    public:
        explicit IoError(const std::string &what) : std::runtime_error(what) {}
    };

    using Cell = std::variant<std::int64_t, double, std::string>;

    struct ResultTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<Cell>> rows;

        /// Index of a column by name; throws std::out_of_range when absent.
        std::size_t column(std::string_view name) const;

        double number(std::size_t row, std::string_view name) const;
        std::string text(std::size_t row, std::string_view name) const;
    };

    struct RunMetadata
    {
        std::string experiment;
        std::string config_hash;
        std::uint64_t seed = 0;
        std::uint64_t trials = 0;
        std::string tool_version;
    };

    std::string_view tool_version();

    /// Shortest round-trippable text at 12 significant digits ("%.12g").
    std::string format_double(double x);

    std::string format_cell(const Cell &c);

    /// CSV text, header row first, RFC 4180 quoting, "\n" line ends.
    std::string to_csv(const ResultTable &table);

    /// Writes the CSV to `path` and the run metadata to `path + ".meta.json"`.
    void emit_csv(const ResultTable &table, const std::string &path, const RunMetadata &meta);

    /// Parses CSV text produced by to_csv; integer-looking fields become int64, numeric ones double.
    ResultTable parse_csv(std::string_view text);

    /// FNV-1a 64-bit digest as 16 hex digits.
    std::string fnv1a_hex(std::string_view data);
}

#endif

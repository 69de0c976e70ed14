// SPDX-License-Identifier: Apache-2.0
//
// Deterministic table output: CSV (header mandatory) and a JSON array of
// row objects. Numbers carry 12 significant digits.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace epb {

struct Cell {
    std::string text;
    bool quoted = false;  // JSON: emit as string rather than number
};

struct OutputTable {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

inline std::string format_sig12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline Cell num_cell(double v)
{
    return {format_sig12(v), false};
}

inline Cell int_cell(long long v)
{
    return {std::to_string(v), false};
}

inline Cell str_cell(std::string s)
{
    return {std::move(s), true};
}

inline void write_csv(const OutputTable& table, std::ostream& os)
{
    for (std::size_t i = 0; i < table.header.size(); ++i)
        os << (i ? "," : "") << table.header[i];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i].text;
        os << "\n";
    }
}

inline void write_json(const OutputTable& table, std::ostream& os)
{
    os << "[\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        os << "  {";
        const auto& row = table.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? ", " : "") << "\"" << table.header[i] << "\": ";
            if (row[i].quoted)
                os << "\"" << row[i].text << "\"";
            else
                os << row[i].text;
        }
        os << "}" << (r + 1 < table.rows.size() ? "," : "") << "\n";
    }
    os << "]\n";
}

}  // namespace epb

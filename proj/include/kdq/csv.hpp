#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kdq/errors.hpp"

namespace kdq {

// 17 significant digits round-trip doubles exactly; '.' decimal point
// regardless of locale, so identical configs emit byte-identical files.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    for (char* p = buf; *p; ++p)
        if (*p == ',') *p = '.';
    return buf;
}

struct IoError : Error {
    using Error::Error;
};

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out << ',';
        out << header[c];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw IoError("csv row width mismatch");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_number(row[c]);
        }
        out << '\n';
    }
    if (!out.good()) throw IoError("write failure on '" + path + "'");
}

// Re-reads an emitted file and checks column count, monotone first column and
// finiteness of every value.
inline void validate_csv(const std::string& path, std::size_t columns) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot reopen '" + path + "' for validation");
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty csv '" + path + "'");
    double prev = -std::numeric_limits<double>::infinity();
    std::size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t count = 0;
        double first = 0.0;
        while (std::getline(ss, cell, ',')) {
            const double v = std::strtod(cell.c_str(), nullptr);
            if (!std::isfinite(v))
                throw IoError("non-finite value in '" + path + "' line " + std::to_string(lineNo));
            if (count == 0) first = v;
            ++count;
        }
        if (count != columns)
            throw IoError("column count mismatch in '" + path + "' line " + std::to_string(lineNo));
        if (first < prev)
            throw IoError("first column not monotone in '" + path + "' line " +
                          std::to_string(lineNo));
        prev = first;
    }
}

}  // namespace kdq

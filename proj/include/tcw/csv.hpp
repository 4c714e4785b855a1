#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "tcw/clock.hpp"
#include "tcw/octant.hpp"

namespace tcw {

/// Shortest round-trippable decimal form, '.' decimal point, locale-free.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Column-oriented CSV: header row, then one row per record.
/// Output is a pure function of the data, so reruns are byte-identical.
inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error(path + ": cannot open for writing");
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << "\n";
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_double(columns[c][r]);
        out << "\n";
    }
}

/// Debug export of a sampled clock as (time, value) rows.
inline void write_clock_csv(const std::string& path, const MonotoneClock& clock) {
    write_csv(path, {"time", "value"}, {clock.times, clock.values});
}

}  // namespace tcw

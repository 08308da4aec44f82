#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "adsel/types.hpp"

namespace adsel::csv {

struct Table {
    Matrix values;                     // rows/columns exactly as laid out in the file
    std::vector<std::string> header;   // empty when no header row was detected
    bool has_header() const { return !header.empty(); }
};

// Strict numeric CSV reader: ',' separator, '.' decimal, UTF-8, optional single
// header row (detected when the first row has any non-numeric cell).
// NaN/Inf entries, ragged rows and empty files are rejected with row/column
// positions in the message.
Table read_table(const std::filesystem::path& path);

// 17 significant digits, enough for a bit-exact read-back of any finite double.
std::string format_double(double v);

void write_matrix(const std::filesystem::path& path, const Matrix& m,
                  const std::vector<std::string>& header = {});

}  // namespace adsel::csv

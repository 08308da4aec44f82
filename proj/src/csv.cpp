#include "adsel/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace adsel::csv {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return cells;
}

bool parse_cell(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    const char* first = cell.data();
    const char* last = first + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) return false;
    return std::isfinite(out);  // from_chars accepts inf/nan spellings
}

}  // namespace

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path.string());

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            // blank lines are only tolerated at the end of the file
            std::string rest;
            while (std::getline(in, rest)) {
                if (!trim(rest).empty())
                    throw ParseError(path.string() + ": empty row " +
                                     std::to_string(rows.size() + 1));
            }
            break;
        }
        rows.push_back(split_row(line));
    }
    if (rows.empty()) throw ParseError(path.string() + ": empty file");

    // Header row: the first row fails numeric parsing in some cell.
    Table table;
    std::size_t first_data = 0;
    {
        double v;
        bool numeric = true;
        for (const auto& cell : rows[0]) {
            if (!parse_cell(cell, v)) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            table.header = rows[0];
            first_data = 1;
            if (rows.size() == 1)
                throw ParseError(path.string() + ": header row but no data rows");
        }
    }

    const std::size_t ncols = rows[first_data].size();
    const std::size_t nrows = rows.size() - first_data;
    if (!table.header.empty() && table.header.size() != ncols)
        throw ParseError(path.string() + ": header has " + std::to_string(table.header.size()) +
                         " columns but row 2 has " + std::to_string(ncols));

    table.values.resize(static_cast<Index>(nrows), static_cast<Index>(ncols));
    for (std::size_t r = 0; r < nrows; ++r) {
        const auto& cells = rows[first_data + r];
        const std::size_t file_row = first_data + r + 1;  // 1-based, header included
        if (cells.size() != ncols)
            throw ParseError(path.string() + ": ragged row " + std::to_string(file_row) +
                             " (expected " + std::to_string(ncols) + " columns, got " +
                             std::to_string(cells.size()) + ")");
        for (std::size_t c = 0; c < ncols; ++c) {
            double v;
            if (!parse_cell(cells[c], v))
                throw ParseError(path.string() + ": invalid numeric cell at row " +
                                 std::to_string(file_row) + ", column " + std::to_string(c + 1) +
                                 ": \"" + cells[c] + "\"");
            table.values(static_cast<Index>(r), static_cast<Index>(c)) = v;
        }
    }
    return table;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m,
                  const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path.string());
    if (!header.empty()) {
        for (Index c = 0; c < static_cast<Index>(header.size()); ++c) {
            if (c) out << ',';
            out << header[static_cast<std::size_t>(c)];
        }
        out << '\n';
    }
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << format_double(m(r, c));
        }
        out << '\n';
    }
    if (!out) throw ParseError("write failed: " + path.string());
}

}  // namespace adsel::csv

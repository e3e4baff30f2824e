#pragma once

// CSV tables: comma separated, one header row, LF line endings, reals with
// 17 significant digits so every double survives a write/read round trip.

#include <iosfwd>
#include <string>
#include <vector>

namespace bpskink::cli {

std::string format_real(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_csv(std::ostream& os, const Table& table);

/// Inverse of write_csv. Cells are not quoted, so they must not contain commas.
Table read_csv(std::istream& is);

}  // namespace bpskink::cli

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace vfp {

// Numeric table with named columns.  Values are written with shortest
// round-trip formatting (std::to_chars), so emitting and re-reading a table
// is lossless and the bytes are a pure function of the data.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // each row matches columns.size()

    int column_index(const std::string& name) const;          // -1 when absent
    std::vector<double> column(const std::string& name) const;  // throws when absent
};

std::string to_csv(const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

// Parses a header line plus numeric rows; throws ValidationError on ragged
// rows, unparsable numbers, or an empty file.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace vfp

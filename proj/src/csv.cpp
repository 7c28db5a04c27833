#include "vfp/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vfp/errors.hpp"

namespace vfp {

namespace {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

int CsvTable::column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> CsvTable::column(const std::string& name) const {
    const int idx = column_index(name);
    if (idx < 0) throw ValidationError("csv: no column named '" + name + "'");
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[idx]);
    return out;
}

std::string to_csv(const CsvTable& table) {
    std::string out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw ValidationError("csv: row width does not match header");
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("csv: cannot open " + path.string() + " for writing");
    f << to_csv(table);
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("csv: cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(f, line) || line.empty())
        throw ValidationError("csv: " + path.string() + " is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.columns = split_fields(line);
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != table.columns.size())
            throw ValidationError("csv: ragged row in " + path.string());
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& s : fields) {
            double v = 0.0;
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc() || res.ptr != s.data() + s.size())
                throw ValidationError("csv: bad number '" + s + "' in " + path.string());
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace vfp

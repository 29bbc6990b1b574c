#include "poegp/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace poegp {

namespace {
std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}
}  // namespace

int RawTable::resolve_column(const std::string& name) const {
    if (cols() == 0) throw std::invalid_argument("resolve_column: empty table");
    if (name.empty()) return cols() - 1;
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw std::invalid_argument("column '" + name + "' not found in CSV header");
    return static_cast<int>(it - columns.begin());
}

RawTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV file: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("CSV file is empty: " + path);
    RawTable table;
    table.columns = split_line(line);
    if (table.columns.empty())
        throw std::runtime_error("CSV header row is empty: " + path);
    const int cols = static_cast<int>(table.columns.size());

    std::vector<double> data;
    int rows = 0;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_line(line);
        if (static_cast<int>(cells.size()) != cols)
            throw std::runtime_error(path + ": row " + std::to_string(lineno) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(cols));
        for (int c = 0; c < cols; ++c) {
            const std::string& cell = cells[c];
            char* end = nullptr;
            const double v = cell.empty() ? 0.0 : std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size())
                throw std::runtime_error(path + ": row " + std::to_string(lineno) +
                                         ", column " + std::to_string(c + 1) + " ('" +
                                         table.columns[c] + "'): cell '" + cell +
                                         "' is not numeric");
            data.push_back(v);
        }
        ++rows;
    }
    if (rows == 0) throw std::runtime_error("CSV file has no data rows: " + path);
    table.values.resize(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) table.values(r, c) = data[r * cols + c];
    return table;
}

void write_csv(const RawTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    char buf[40];
    for (int r = 0; r < table.n(); ++r) {
        for (int c = 0; c < table.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", table.values(r, c));
            out << (c ? "," : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace poegp

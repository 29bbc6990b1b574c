#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace poegp {

// Parsed numeric table: header row plus all-numeric cells.
struct RawTable {
    std::vector<std::string> columns;
    Eigen::MatrixXd values;  // n x cols

    int n() const { return static_cast<int>(values.rows()); }
    int cols() const { return static_cast<int>(values.cols()); }
    // Index by name; empty name selects the last column. Throws if missing.
    int resolve_column(const std::string& name) const;
};

// Parse errors carry the 1-based row and column of the offending cell.
RawTable read_csv(const std::string& path);

void write_csv(const RawTable& table, const std::string& path);

}  // namespace poegp

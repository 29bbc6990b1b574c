#pragma once

#include <stdexcept>
#include <string>

namespace poegp {

// Thrown when a linear-algebra or aggregation step fails numerically
// (Cholesky breakdown past the jitter schedule, non-positive aggregate
// precision, ...). Contract violations use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace poegp

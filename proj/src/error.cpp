#include "vsvm/error.hpp"

#include <sstream>

namespace vsvm {
namespace {

std::string singular_message(std::size_t index, double value, double threshold) {
    std::ostringstream os;
    os << "singular matrix: pivot " << index << " has magnitude " << value << " below " << threshold;
    return os.str();
}

std::string range_message(double residual, double tolerance) {
    std::ostringstream os;
    os << "vector lies off range(K): residual " << residual << " exceeds " << tolerance;
    return os.str();
}

}  // namespace

SingularMatrix::SingularMatrix(std::size_t pivot_index, double pivot_value, double threshold)
    : std::runtime_error(singular_message(pivot_index, pivot_value, threshold)),
      pivot_index_(pivot_index),
      pivot_value_(pivot_value),
      threshold_(threshold) {}

ParseError::ParseError(std::size_t line, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

RangeViolation::RangeViolation(double residual, double tolerance)
    : std::runtime_error(range_message(residual, tolerance)), residual_(residual) {}

}  // namespace vsvm

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vsvm {

// Caller broke a documented precondition (shape mismatch, asymmetric input,
// out-of-range parameter).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::runtime_error {
public:
    SingularMatrix(std::size_t pivot_index, double pivot_value, double threshold);

    std::size_t pivot_index() const noexcept { return pivot_index_; }
    double pivot_value() const noexcept { return pivot_value_; }
    double threshold() const noexcept { return threshold_; }

private:
    std::size_t pivot_index_;
    double pivot_value_;
    double threshold_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& reason);

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A vector expected to lie in range(K) has a residual off the range above
// the allowed tolerance.
class RangeViolation : public std::runtime_error {
public:
    RangeViolation(double residual, double tolerance);

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace vsvm

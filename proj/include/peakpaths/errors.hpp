#pragma once

#include <stdexcept>
#include <string>

namespace peakpaths {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation requested exactly at a singular point (peak, jump, asymptote).
class SingularPointError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Malformed request: invalid configuration, empty grid, bad CLI input.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested combination is valid input but not covered by the model.
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace peakpaths

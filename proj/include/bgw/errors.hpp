#pragma once

#include <stdexcept>
#include <string>

namespace bgw {

/// Argument outside the mathematical domain of a function (negative time,
/// theta outside (0,1], non-positive shape, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or degenerate input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to reach its stopping criterion.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bgw

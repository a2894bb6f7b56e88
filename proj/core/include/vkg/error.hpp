#pragma once

#include <stdexcept>
#include <string>

namespace vkg {

/// Raised when an argument lies outside the documented domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by the coupled solver when an iteration cannot be completed.
class IterationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vkg

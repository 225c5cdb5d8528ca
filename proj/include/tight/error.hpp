#pragma once

#include <stdexcept>
#include <string>

namespace tight {

/// Raised when an input lies outside the domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when two independent computations of the same quantity disagree.
class InconsistencyError : public std::logic_error {
public:
    explicit InconsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tight

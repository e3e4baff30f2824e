#pragma once

#include <stdexcept>
#include <string>

namespace bpskink {

/// Argument outside the domain where a formula or solver is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation at (or numerically indistinguishable from) a pole.
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// An iterative method failed to meet its tolerance or step budget.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bpskink

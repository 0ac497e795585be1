#pragma once

#include <stdexcept>
#include <string>

namespace lownoise {

/// Operand shapes or subsystem dimensions do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside the set where the operation is defined
/// (probabilities off the simplex, non-Hermitian input, non-PSD Choi, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine broke down or its result failed verification.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lownoise

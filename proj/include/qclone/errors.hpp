#pragma once

#include <stdexcept>
#include <string>

namespace qclone {

// Argument outside the mathematical domain of an operation (z > 1, n < 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Vector or mode dimensions that do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A vector that must be unit is not, beyond the unit tolerance.
class NormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// |eta12| > sqrt(eta11 * eta22): the machine-state overlaps are not realizable.
class SchwarzViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerically realized machine beat a proven lower bound.
class BoundViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qclone

#pragma once

#include <stdexcept>
#include <string>

namespace nsee {

// Operand sizes disagree (qubit counts, tensor shapes).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Site or qubit index outside the valid range, or colliding sites.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed argument: empty bipartition, non-unitary gate, bad text, ...
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense representation requested beyond the configured qubit cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Request is well formed but not supported (e.g. open-boundary toric code).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nsee

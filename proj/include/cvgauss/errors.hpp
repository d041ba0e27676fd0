#pragma once

#include <stdexcept>

namespace cvg {

/// Covariance data that violates the uncertainty principle, or a parameter
/// (thermal occupation, negative joint variance) that cannot describe a state.
class UnphysicalState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A two-mode covariance matrix that is not in the symmetric standard form
/// (equal diagonal local blocks, diagonal correlation block).
class FormMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated Fock-space construction left too much population near the cutoff.
class CutoffTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvg

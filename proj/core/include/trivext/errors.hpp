#pragma once

#include <stdexcept>
#include <string>

namespace trivext {

/// An exhaustive operation would exceed the configured enumeration budget.
/// Never converted into sampling or a partial answer.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the algebraic input failed (ring mismatch, non-local
/// ring, zero ideal passed to the v-operation, ...).
class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The generator list handed to a minimal-syzygy computation is not a
/// minimal generating set.
class NotMinimalError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

/// A ring-spec document or element literal could not be parsed or
/// resolved.  The message carries the source location when known.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trivext

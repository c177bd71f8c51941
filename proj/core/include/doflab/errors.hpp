#pragma once

#include <stdexcept>
#include <string>

namespace doflab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed argument (empty matrix, negative fraction, bad slot index, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Shapes that cannot be combined (matrix sizes, scheme vs realization dims).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A scheme requested channel state outside its causality window, or was run
/// under a feedback configuration it does not support.
class CsitViolation : public Error {
 public:
  using Error::Error;
};

/// The supplied rows already span the whole space; no orthogonal direction
/// exists.
class DegenerateProjector : public Error {
 public:
  using Error::Error;
};

/// A channel realization hit a measure-zero degeneracy a scheme cannot
/// tolerate (e.g. a vanishing beam gain needed for a reconstruction).
class DegenerateChannel : public Error {
 public:
  using Error::Error;
};

/// Requested combination is outside the supported set (e.g. zero-forcing with
/// fewer antennas than receivers).
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace doflab

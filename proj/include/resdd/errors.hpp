#pragma once

#include <stdexcept>
#include <string>

namespace resdd {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geometry: an atom sits at z <= 0, outside the physical half-space.
struct AtomOnOrBehindMirror : Error {
  using Error::Error;
};

// Geometry: the two atoms coincide.
struct CoincidentAtoms : Error {
  using Error::Error;
};

// An evaluator was handed a zero-length separation.
struct ZeroSeparation : Error {
  using Error::Error;
};

// A domain type received an out-of-range parameter (nonpositive frequency,
// nonfinite dipole component, malformed regulator schedule, ...).
struct InvalidParameter : Error {
  using Error::Error;
};

// Correlation evaluators require a strictly positive regulator.
struct NonPositiveRegulator : Error {
  using Error::Error;
};

// enhancement_ratio is undefined when the free-space part vanishes.
struct FreeSpacePartZero : Error {
  using Error::Error;
};

// Spectral extrapolation did not reach the requested tolerance.
struct ConvergenceFailure : Error {
  using Error::Error;
};

// The spectral route only handles the two axis-aligned configurations.
struct UnsupportedConfiguration : Error {
  using Error::Error;
};

// A scan was requested over an empty or degenerate range.
struct EmptyScanRange : Error {
  using Error::Error;
};

// figure_preset received an unrecognized name.
struct UnknownPreset : Error {
  using Error::Error;
};

// Sweep/point configuration failed validation (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

// A sweep aborted at a specific parameter value (CLI exit code 3).
struct SweepPointError : Error {
  using Error::Error;
};

// File output failed (CLI exit code 4).
struct IoError : Error {
  using Error::Error;
};

} // namespace resdd

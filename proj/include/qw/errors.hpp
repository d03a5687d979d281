#pragma once

#include <stdexcept>
#include <string>

namespace qw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed walk/state/report input.
struct SchemaError : Error { using Error::Error; };

// Symbol fails the unitarity gate; message names the worst k.
struct NonUnitaryError : Error { using Error::Error; };

// Operation received a walk whose symbol is not unitary.
struct NonUnitarySymbol : Error { using Error::Error; };

struct DimensionMismatch : Error { using Error::Error; };

// State norm is not 1 where a probability interpretation is required.
struct NotNormalized : Error { using Error::Error; };

// Branch continuation is ambiguous after refinement; message names k.
struct TrackingAmbiguity : Error { using Error::Error; };

// Phase unwrap saw a jump too large for the grid.
struct UnwrapFailure : Error { using Error::Error; };

// State support does not fit the requested window.
struct WindowTooSmall : Error { using Error::Error; };

// CTQW construction requested for a walk with a winding obstruction.
struct NotRealizable : Error { using Error::Error; };

// Valid request outside what this implementation covers.
struct NotSupported : Error { using Error::Error; };

struct IOError : Error { using Error::Error; };

}  // namespace qw

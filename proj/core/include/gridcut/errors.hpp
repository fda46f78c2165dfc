#pragma once

#include <stdexcept>
#include <string>

namespace gridcut {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file; message carries the offending line number.
struct ParseError : Error {
  using Error::Error;
};

/// Structurally invalid data (dangling references, bad ranges, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// An exhaustive routine was asked to enumerate beyond its size limit.
struct TooLargeError : Error {
  using Error::Error;
};

/// Measurement matrix lacks full column rank; the state is not observable.
struct RankError : Error {
  using Error::Error;
};

/// A hidden-attack check found a trial where the attack was detectable.
struct VerificationFailure : Error {
  using Error::Error;
};

/// Every node contracted into one supernode; no attack exists.
struct InfeasibleError : Error {
  using Error::Error;
};

/// Attack graph fell apart into components; min-cut is undefined.
struct DisconnectedError : Error {
  using Error::Error;
};

}  // namespace gridcut

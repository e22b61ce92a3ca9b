#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Failure taxonomy for the whole library.  Every deliberate failure path
// throws a subtype of balansol::Error; the CLI maps each subtype to a fixed
// process exit code so scripted callers can distinguish failure classes.

#include <stdexcept>
#include <string>

namespace balansol {

// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (instance files, rational literals, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A configured resource cap was hit (enumeration size, iteration budget
// where the caller asked for a hard failure, and similar limits).
class CapExceededError : public Error {
 public:
  using Error::Error;
};

// A computation left the 64-bit exact range.  Treated as a capacity limit:
// the instance is too large for this build rather than wrong.
class OverflowError : public CapExceededError {
 public:
  using CapExceededError::CapExceededError;
};

// Input weights fall outside the domain the requested search mode supports.
class ModeViolationError : public Error {
 public:
  using Error::Error;
};

// Two independent components disagreed about ground truth, e.g. a certificate
// the verifier accepts for a value the LP solver says is feasible.
class SoundnessError : public Error {
 public:
  using Error::Error;
};

// Internal state violated a property the code maintains unconditionally.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// The search progress measure failed to strictly increase over a step.
class PotentialError : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

// A vertex ended up with more than two big incoming edges in general mode.
class DegreeInvariantError : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

// A stalled search state failed one of its structural characterizations,
// or a certificate built from one failed its balance checks.
class StuckStateError : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

}  // namespace balansol

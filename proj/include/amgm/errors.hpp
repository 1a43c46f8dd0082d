// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace amgm {

// Base class for all validation and consistency errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input had no atom with positive probability.
class EmptySupportError : public Error {
 public:
  using Error::Error;
};

// An atom value or probability was negative (or not a finite number).
class NegativeValueError : public Error {
 public:
  using Error::Error;
};

// Probabilities did not sum to 1 within kProbSumTol.
class ProbSumError : public Error {
 public:
  using Error::Error;
};

// A (V, E) or (V, F) pair violated the admissibility dichotomy.
class InadmissiblePairError : public Error {
 public:
  using Error::Error;
};

// A shift c fell below -u, where the shifted support would leave [0, inf).
class ShiftOutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Parameters of a mixture or campaign were outside their domain.
class InadmissibleParamsError : public Error {
 public:
  using Error::Error;
};

// A computed gap escaped its certified enclosure: internal consistency bug.
class SandwichViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace amgm

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "amgm/extended_real.hpp"

namespace amgm {

// Probabilities must sum to 1 within this tolerance; inside it they are
// renormalized exactly, outside it construction fails.
inline constexpr double kProbSumTol = 1e-12;

// A computed gap in [-kGapTol, 0) is roundoff noise and is clamped to 0.
inline constexpr double kGapTol = 1e-12;

// A finitely supported law on [0, inf).  Invariants: atom values are finite,
// nonnegative and strictly increasing; every probability is positive; the
// probabilities sum to 1 within kProbSumTol.
class DiscreteDistribution {
 public:
  struct Atom {
    double x;  // value, >= 0
    double p;  // probability, > 0
    friend bool operator==(const Atom&, const Atom&) = default;
  };

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double min_value() const { return atoms_.front().x; }
  double max_value() const { return atoms_.back().x; }

  friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

  friend DiscreteDistribution make_distribution(const std::vector<std::pair<double, double>>&);

 private:
  explicit DiscreteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

// Square-root moment summary of one distribution, written for X with Y := sqrt(X):
//   V = Var Y,   E = E (Y - sqrt(m))^2,   F = E (sqrt(M) - Y)^2,
// where m and M are the smallest and largest support points, and
//   gap = E X - exp(E ln X)
// with the conventions ln 0 = -inf and exp(-inf) = 0.  F is typed as an
// extended real so downstream code can also express the F = +inf regime,
// although a finitely supported law always produces a finite F.
struct MomentSummary {
  double mean = 0.0;
  double log_mean = 0.0;  // -inf exactly when some atom sits at 0
  double gap = 0.0;
  double V = 0.0;
  double m = 0.0;
  double M = 0.0;
  double E = 0.0;
  ExtendedReal F{0.0};
};

// Builds a distribution from (value, probability) pairs: zero-probability
// pairs are dropped, equal values are merged by summing their probabilities,
// atoms are sorted ascending, and probabilities are renormalized when their
// sum lies within kProbSumTol of 1.
// Throws NegativeValueError, EmptySupportError, ProbSumError.
DiscreteDistribution make_distribution(const std::vector<std::pair<double, double>>& pairs);

// The empirical law of a list of nonnegative values: weight 1/n per entry,
// duplicates merged.  Throws EmptySupportError, NegativeValueError.
DiscreteDistribution uniform_from_values(const std::vector<double>& values);

double mean(const DiscreteDistribution& d);

// E ln X; returns -inf exactly when some atom has value 0.
double log_mean(const DiscreteDistribution& d);

// E X - exp(E ln X).  Always >= 0 up to roundoff; values in [-kGapTol, 0)
// are clamped to 0.  The exp/log route is deliberate: it reproduces the
// classical geometric mean without forming products of powers.
double amgm_gap(const DiscreteDistribution& d);

// Computes the full summary.  Algebra used (exact over the reals):
//   V = E X - (E Y)^2
//   E = E X - 2 sqrt(m) E Y + m
//   F = M - 2 sqrt(M) E Y + E X
// Tiny negative values of V, E, F caused by cancellation are clamped to 0 so
// that exact dichotomies (e.g. V = 0 iff one-point support) survive floats.
MomentSummary sqrt_moments(const DiscreteDistribution& d);

}  // namespace amgm

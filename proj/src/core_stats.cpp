// SPDX-License-Identifier: Apache-2.0
#include "amgm/core_stats.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "amgm/errors.hpp"

namespace amgm {
namespace {

// Cancellation clamp for the derived quadratics V, E, F: anything this far
// below zero is a real bug, anything closer is roundoff from squaring sums.
double clamp_tiny_negative(double x, double scale) {
  if (x < 0.0 && x >= -1e-12 * std::max(1.0, scale)) return 0.0;
  return x;
}

}  // namespace

DiscreteDistribution make_distribution(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<DiscreteDistribution::Atom> atoms;
  atoms.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [x, p] = pairs[i];
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw NegativeValueError(
          fmt::format("atom {} (x={}): value must be a finite nonnegative number", i, x));
    }
    if (!(p >= 0.0) || std::isnan(p)) {
      throw NegativeValueError(
          fmt::format("atom {} (p={}): probability must be nonnegative", i, p));
    }
    if (p > 0.0) atoms.push_back({x, p});
  }
  if (atoms.empty()) throw EmptySupportError("no atom has positive probability");

  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.x < b.x; });

  // Merge exactly equal values; approximate duplicates stay distinct atoms.
  std::vector<DiscreteDistribution::Atom> merged;
  merged.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().x == a.x) {
      merged.back().p += a.p;
    } else {
      merged.push_back(a);
    }
  }

  double sum = 0.0;
  for (const auto& a : merged) sum += a.p;
  if (!(std::abs(sum - 1.0) <= kProbSumTol)) {
    throw ProbSumError(
        fmt::format("probabilities sum to {} (must be within {} of 1)", sum, kProbSumTol));
  }
  for (auto& a : merged) a.p /= sum;

  return DiscreteDistribution(std::move(merged));
}

DiscreteDistribution uniform_from_values(const std::vector<double>& values) {
  if (values.empty()) throw EmptySupportError("value list is empty");
  const double w = 1.0 / static_cast<double>(values.size());
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(values.size());
  for (double x : values) pairs.emplace_back(x, w);
  return make_distribution(pairs);
}

double mean(const DiscreteDistribution& d) {
  double s = 0.0;
  for (const auto& a : d.atoms()) s += a.p * a.x;
  return s;
}

double log_mean(const DiscreteDistribution& d) {
  for (const auto& a : d.atoms()) {
    if (a.x == 0.0) return -std::numeric_limits<double>::infinity();
  }
  double s = 0.0;
  for (const auto& a : d.atoms()) s += a.p * std::log(a.x);
  return s;
}

double amgm_gap(const DiscreteDistribution& d) {
  // exp(-inf) = 0 covers the atom-at-zero case without a branch.
  double gap = mean(d) - std::exp(log_mean(d));
  if (gap < 0.0 && gap >= -kGapTol) gap = 0.0;
  return gap;
}

MomentSummary sqrt_moments(const DiscreteDistribution& d) {
  MomentSummary s;
  s.m = d.min_value();
  s.M = d.max_value();

  if (d.size() == 1) {
    // One-point laws are exact: no cancellation may blur the V = E = F = 0
    // corner of the admissibility dichotomies.
    s.mean = s.m;
    s.log_mean = log_mean(d);
    s.gap = 0.0;
    s.V = s.E = 0.0;
    s.F = 0.0;
    return s;
  }

  double ex = 0.0;
  double ey = 0.0;  // E sqrt(X)
  for (const auto& a : d.atoms()) {
    ex += a.p * a.x;
    ey += a.p * std::sqrt(a.x);
  }
  const double rm = std::sqrt(s.m);
  const double rM = std::sqrt(s.M);

  s.mean = ex;
  s.log_mean = log_mean(d);
  s.gap = ex - std::exp(s.log_mean);
  if (s.gap < 0.0 && s.gap >= -kGapTol) s.gap = 0.0;

  s.V = clamp_tiny_negative(ex - ey * ey, ex);
  s.E = clamp_tiny_negative(ex - 2.0 * rm * ey + s.m, ex);
  s.F = clamp_tiny_negative(s.M - 2.0 * rM * ey + ex, std::max(ex, s.M));
  return s;
}

}  // namespace amgm

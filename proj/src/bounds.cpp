// SPDX-License-Identifier: Apache-2.0
#include "amgm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "amgm/errors.hpp"

namespace amgm {

bool admissible_hi(double V, double E) {
  return (V == 0.0 && E == 0.0) || (E > V && V > 0.0);
}

bool admissible_lo(double V, ExtendedReal F) {
  if (F.is_infinite()) return V > 0.0;
  return (V == 0.0 && F.finite_value() == 0.0) || (F.finite_value() > V && V > 0.0);
}

namespace {

[[noreturn]] void throw_inadmissible(const char* which, double V, double other_or_inf,
                                     bool inf) {
  throw InadmissiblePairError(fmt::format(
      "(V={}, {}={}): requires either {}=V=0 or {}>V>0", V, which,
      inf ? std::numeric_limits<double>::infinity() : other_or_inf, which, which));
}

}  // namespace

double e_vf(double V, ExtendedReal F) {
  if (!admissible_lo(V, F)) {
    throw_inadmissible("F", V, F.is_infinite() ? 0.0 : F.finite_value(), F.is_infinite());
  }
  if (F.is_infinite()) return V;
  const double f = F.finite_value();
  if (f == V) return 0.0;  // dichotomy forces V = 0 here
  return f * V / (f - V);
}

double upper_bound(double V, double E) {
  if (!admissible_hi(V, E)) throw_inadmissible("E", V, E, false);
  return std::max(2.0 * V, E);
}

double lower_bound(double V, ExtendedReal F) {
  if (!admissible_lo(V, F)) {
    throw_inadmissible("F", V, F.is_infinite() ? 0.0 : F.finite_value(), F.is_infinite());
  }
  return std::min(2.0 * V, e_vf(V, F));
}

bool is_equality_case(const DiscreteDistribution& d) {
  if (d.size() == 1) return true;
  if (d.size() != 2) return false;
  return std::abs(d.atoms()[0].p - 0.5) <= kEqualWeightTol &&
         std::abs(d.atoms()[1].p - 0.5) <= kEqualWeightTol;
}

BoundResult evaluate_bounds(const MomentSummary& s) {
  BoundResult r;
  r.admissible_hi = admissible_hi(s.V, s.E);
  r.admissible_lo = admissible_lo(s.V, s.F);
  r.upper = std::max(2.0 * s.V, s.E);

  if (s.F.is_infinite()) {
    r.e_vf = s.V;
  } else if (s.F.finite_value() > s.V) {
    r.e_vf = s.F.finite_value() * s.V / (s.F.finite_value() - s.V);
  } else if (s.V == 0.0) {
    r.e_vf = 0.0;
  } else {
    // Roundoff produced F <= V with V > 0; the F -> V limit of E_{V,F} is
    // +inf, so the effective lower bound collapses to 2V below.
    r.e_vf = std::numeric_limits<double>::infinity();
  }
  r.lower = std::min(2.0 * s.V, r.e_vf);
  return r;
}

BoundResult check_bounds(const DiscreteDistribution& d) {
  const MomentSummary s = sqrt_moments(d);
  BoundResult r = evaluate_bounds(s);
  r.gap = s.gap;
  r.equality_case = is_equality_case(d);

  const double tol = kSandwichTolScale * std::max(1.0, s.mean);
  if (s.gap < r.lower - tol || s.gap > r.upper + tol) {
    throw SandwichViolationError(fmt::format(
        "gap {} escapes [{}, {}] (tol {}; V={}, E={}, F={}, mean={})", s.gap, r.lower,
        r.upper, tol, s.V, s.E, s.F.as_double(), s.mean));
  }
  return r;
}

}  // namespace amgm

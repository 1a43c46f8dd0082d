// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "amgm/core_stats.hpp"
#include "amgm/extended_real.hpp"

namespace amgm {

// Scale factor of the certified enclosure check: the gap may escape
// [lower, upper] by at most kSandwichTolScale * max(1, mean).
inline constexpr double kSandwichTolScale = 1e-9;

// Two-atom laws count as equality cases when both weights are within this
// distance of 1/2.
inline constexpr double kEqualWeightTol = 1e-12;

// Everything check_bounds knows about one distribution's gap enclosure.
struct BoundResult {
  double upper = 0.0;
  double lower = 0.0;
  double e_vf = 0.0;  // F V / (F - V) after conventions; +inf double only in
                      // the degenerate roundoff corner F <= V with V > 0
  double gap = 0.0;
  bool admissible_hi = false;
  bool admissible_lo = false;
  bool equality_case = false;
};

// The (V, E) dichotomy: either V = E = 0 or E > V > 0.  Exact comparisons --
// no tolerance is involved by design.
bool admissible_hi(double V, double E);

// The (V, F) dichotomy: either V = F = 0 or F > V > 0, where F = +inf with
// V > 0 is allowed.  Exact comparisons.
bool admissible_lo(double V, ExtendedReal F);

// E_{V,F} := F V / (F - V), with the conventions E_{V,inf} = V and
// E_{0,0} = 0.  Throws InadmissiblePairError outside the dichotomy.
double e_vf(double V, ExtendedReal F);

// max(2V, E).  Throws InadmissiblePairError outside the (V, E) dichotomy.
double upper_bound(double V, double E);

// min(2V, E_{V,F}).  Throws InadmissiblePairError outside the (V, F)
// dichotomy.  Always lies in [V, 2V].
double lower_bound(double V, ExtendedReal F);

// True for one-point laws and for two-point laws whose weights are both
// within kEqualWeightTol of 1/2 -- exactly the laws where the gap meets both
// bounds simultaneously.
bool is_equality_case(const DiscreteDistribution& d);

// Bound evaluation on a moment summary without any exception on degenerate
// roundoff: when cancellation leaves F <= V with V > 0, the lower bound uses
// the F -> V limit (which is 2V), keeping the enclosure valid.  Does not set
// equality_case or gap.
BoundResult evaluate_bounds(const MomentSummary& s);

// Computes sqrt_moments(d), fills a BoundResult, and verifies
//   lower - tol <= gap <= upper + tol,  tol = kSandwichTolScale * max(1, mean).
// Throws SandwichViolationError if the enclosure fails (internal bug).
BoundResult check_bounds(const DiscreteDistribution& d);

}  // namespace amgm

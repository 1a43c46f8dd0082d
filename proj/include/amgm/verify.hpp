// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "amgm/core_stats.hpp"
#include "amgm/extended_real.hpp"

namespace amgm {

// Shared knobs of every randomized verification campaign.  trials must be
// >= 1, max_atoms >= 1, value_cap > 0, zero_atom_prob in [0, 1]; violations
// throw InadmissibleParamsError from validate().
struct CampaignConfig {
  std::uint64_t trials = 1;
  int max_atoms = 8;
  double value_cap = 100.0;
  double zero_atom_prob = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

// Outcome of one campaign.  worst_violation is tolerance-adjusted and
// signed: a positive value is a genuine failure, so failures == 0 holds
// exactly when worst_violation <= 0.  witness is the worst offending
// distribution when failures > 0.
struct VerificationReport {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double worst_violation = 0.0;
  std::optional<DiscreteDistribution> witness;
  double elapsed_ms = 0.0;
};

// Name/version of the pinned pseudo-random scheme, recorded in golden files.
// All draws go through hand-rolled canonical conversions (53-bit uniforms)
// so results do not depend on any standard library's distribution code.
inline constexpr const char* kRngScheme = "mt19937_64/seed_seq-canonical53-v1";

// Deterministic per-trial generator: state depends only on (seed, trial).
std::mt19937_64 make_trial_rng(std::uint64_t seed, std::uint64_t trial);

// Uniform draw in [0, 1) with 53 random bits; bit-stable across platforms.
double draw_unit(std::mt19937_64& rng);

// A random law with 1..max_atoms atoms: values uniform on [0, value_cap]
// (one value forced to exactly 0 with probability zero_atom_prob) and
// probabilities drawn from the flat simplex.
DiscreteDistribution random_distribution(const CampaignConfig& cfg, std::mt19937_64& rng);

// Tries to falsify the gap enclosure on cfg.trials random laws.  A trial
// fails when max(lower - gap, gap - upper) / max(1, mean) exceeds
// kSandwichTolScale.
VerificationReport falsify_sandwich(const CampaignConfig& cfg);

// Checks that E_{V,F} is the greatest lower bound of E over laws with the
// given (V, F).  Finite F: the two-point law attains E_{V,F} to 1e-10
// relative, and cfg.trials constructed multi-point members (top sqrt-atom
// raised, interior atoms inserted, three weights solved linearly) stay
// strictly above it while matching (V, F) to 1e-9 relative.  F = +inf: the
// mixture family reproduces E = (1 + eps) V for eps in {0.1, 0.01, 0.001},
// decreasing toward V and never reaching it.
VerificationReport verify_infimum(double V, ExtendedReal F, const CampaignConfig& cfg);

// Checks the equality characterization: equal-weight two-point laws meet
// both bounds to 1e-10 * max(1, mean), while unequal-weight two-point laws
// and laws with >= 3 atoms leave positive slack on at least one side.
VerificationReport verify_equality_cases(const CampaignConfig& cfg);

// Checks the variance product bound for Y = sqrt(X) on random laws:
//   Var Y <= (E Y - sqrt(m)) (sqrt(M) - E Y) + 1e-12 M,
// with equality to 1e-12 M on supports of <= 2 points and strict slack
// beyond 1e-10 M otherwise.
VerificationReport verify_variance_product(const CampaignConfig& cfg);

// Side selector for sweeps and attainment scans.
enum class BoundSide { hi, lo };

// Scans psi over a logarithmic c-grid of grid_size points on
// [-u, u + 1e9 (v - u)] for the extremal family of the given side, checks
// every value against the family's own bound enclosure, and checks that the
// grid extremum reproduces the exact bound to 1e-6 relative.
VerificationReport verify_attainment(double V, ExtendedReal e_or_f, BoundSide side,
                                     int grid_size);

}  // namespace amgm

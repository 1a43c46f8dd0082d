// SPDX-License-Identifier: Apache-2.0
#include "amgm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <utility>
#include <vector>

#include "amgm/bounds.hpp"
#include "amgm/errors.hpp"
#include "amgm/extremal.hpp"

namespace amgm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Accumulates per-trial signed violations (positive means a genuine failure)
// and keeps the worst offender as witness.
class Campaign {
 public:
  explicit Campaign(std::uint64_t trials) {
    report_.trials = trials;
    report_.worst_violation = -kInf;
  }

  void record(double violation, const DiscreteDistribution* d) {
    if (violation > report_.worst_violation) {
      report_.worst_violation = violation;
      if (violation > 0.0 && d != nullptr) report_.witness = *d;
    }
    if (violation > 0.0) ++report_.failures;
  }

  VerificationReport finish() {
    if (report_.failures == 0) report_.witness.reset();
    report_.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
            .count();
    return std::move(report_);
  }

 private:
  VerificationReport report_;
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

double draw_uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * draw_unit(rng);
}

std::uint64_t draw_index(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

// Standard exponential via inversion; log1p keeps small draws exact.
double draw_exponential(std::mt19937_64& rng) { return -std::log1p(-draw_unit(rng)); }

// Flat-simplex weights; the all-zero corner (probability ~2^-53 per draw)
// falls back to equal weights to stay total.
std::vector<double> draw_simplex(std::mt19937_64& rng, int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& x : w) {
    x = draw_exponential(rng);
    sum += x;
  }
  if (sum == 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / n);
    return w;
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace

void CampaignConfig::validate() const {
  if (trials < 1) throw InadmissibleParamsError("trials must be >= 1");
  if (max_atoms < 1) throw InadmissibleParamsError("max_atoms must be >= 1");
  if (!(value_cap > 0.0) || !std::isfinite(value_cap)) {
    throw InadmissibleParamsError(fmt::format("value_cap={} must be finite and > 0", value_cap));
  }
  if (!(zero_atom_prob >= 0.0 && zero_atom_prob <= 1.0)) {
    throw InadmissibleParamsError(
        fmt::format("zero_atom_prob={} must lie in [0, 1]", zero_atom_prob));
  }
}

std::mt19937_64 make_trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

DiscreteDistribution random_distribution(const CampaignConfig& cfg, std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(draw_index(rng, static_cast<std::uint64_t>(cfg.max_atoms)));
  const bool force_zero = draw_unit(rng) < cfg.zero_atom_prob;

  std::vector<std::pair<double, double>> pairs(static_cast<std::size_t>(n));
  for (auto& [x, p] : pairs) x = draw_uniform(rng, 0.0, cfg.value_cap);
  if (force_zero) pairs.front().first = 0.0;

  const std::vector<double> w = draw_simplex(rng, n);
  for (int i = 0; i < n; ++i) pairs[static_cast<std::size_t>(i)].second = w[static_cast<std::size_t>(i)];
  return make_distribution(pairs);
}

VerificationReport falsify_sandwich(const CampaignConfig& cfg) {
  cfg.validate();
  Campaign camp(cfg.trials);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    auto rng = make_trial_rng(cfg.seed, t);
    const DiscreteDistribution d = random_distribution(cfg, rng);
    const MomentSummary s = sqrt_moments(d);
    const BoundResult r = evaluate_bounds(s);
    const double raw = std::max(r.lower - s.gap, s.gap - r.upper) / std::max(1.0, s.mean);
    camp.record(raw - kSandwichTolScale, &d);
  }
  return camp.finish();
}

namespace {

// Two sqrt-scale support points with a relative spread floor, so that slack
// and equality checks never compete with cancellation noise.
std::pair<double, double> draw_support_pair(std::mt19937_64& rng, double cap_rt) {
  while (true) {
    double a = draw_uniform(rng, 0.0, cap_rt);
    double b = draw_uniform(rng, 0.0, cap_rt);
    if (a > b) std::swap(a, b);
    if (b - a >= 1e-3 * (1.0 + b)) return {a, b};
  }
}

}  // namespace

VerificationReport verify_equality_cases(const CampaignConfig& cfg) {
  cfg.validate();
  Campaign camp(cfg.trials);
  const double cap_rt = std::sqrt(cfg.value_cap);

  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    auto rng = make_trial_rng(cfg.seed, t);
    const auto [a, b] = draw_support_pair(rng, cap_rt);

    if (t % 2 == 0) {
      // Equal weights on two points: the gap must meet both bounds.
      const DiscreteDistribution d = make_distribution({{a * a, 0.5}, {b * b, 0.5}});
      const MomentSummary s = sqrt_moments(d);
      const BoundResult r = evaluate_bounds(s);
      const double err =
          std::max(std::abs(s.gap - r.upper), std::abs(s.gap - r.lower)) /
          std::max(1.0, s.mean);
      camp.record(err - 1e-10, &d);
      continue;
    }

    DiscreteDistribution d = [&] {
      if (t % 4 == 1) {
        // Unequal weights, kept away from 1/2.
        double p = 0.5 + (0.02 + 0.43 * draw_unit(rng));
        if (draw_unit(rng) < 0.5) p = 1.0 - p;
        return make_distribution({{a * a, p}, {b * b, 1.0 - p}});
      }
      // 3..5 atoms, all weights kept away from 0.
      const int k = 3 + static_cast<int>(draw_index(rng, 3));
      std::vector<std::pair<double, double>> pairs;
      while (true) {
        pairs.clear();
        std::vector<double> ys(static_cast<std::size_t>(k));
        for (double& y : ys) y = draw_uniform(rng, 0.0, cap_rt);
        std::sort(ys.begin(), ys.end());
        bool separated = true;
        for (int i = 0; i + 1 < k; ++i) {
          if (ys[static_cast<std::size_t>(i + 1)] - ys[static_cast<std::size_t>(i)] <
              1e-3 * (1.0 + cap_rt)) {
            separated = false;
            break;
          }
        }
        if (!separated) continue;
        const std::vector<double> w = draw_simplex(rng, k);
        if (*std::min_element(w.begin(), w.end()) < 0.02) continue;
        for (int i = 0; i < k; ++i) {
          pairs.emplace_back(ys[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(i)],
                             w[static_cast<std::size_t>(i)]);
        }
        return make_distribution(pairs);
      }
    }();

    const MomentSummary s = sqrt_moments(d);
    const BoundResult r = evaluate_bounds(s);
    if (is_equality_case(d)) {
      camp.record(-1.0, &d);  // cannot happen with the floors above; never a failure
      continue;
    }
    const double slack =
        std::max(r.upper - s.gap, s.gap - r.lower) / std::max(1.0, s.mean);
    camp.record(1e-13 - slack, &d);
  }
  return camp.finish();
}

VerificationReport verify_variance_product(const CampaignConfig& cfg) {
  cfg.validate();
  Campaign camp(cfg.trials);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    auto rng = make_trial_rng(cfg.seed, t);
    const DiscreteDistribution d = random_distribution(cfg, rng);

    // Deliberately recomputed from the atoms rather than through
    // sqrt_moments, so this campaign cross-checks that path too.
    double ey = 0.0, ex = 0.0;
    for (const auto& atom : d.atoms()) {
      ey += atom.p * std::sqrt(atom.x);
      ex += atom.p * atom.x;
    }
    const double var_y = ex - ey * ey;
    const double prod = (ey - std::sqrt(d.min_value())) * (std::sqrt(d.max_value()) - ey);
    const double cap = d.max_value();
    const double scale = std::max(1.0, cap);

    double viol = (var_y - prod - 1e-12 * cap) / scale;
    if (d.size() <= 2) {
      viol = std::max(viol, (std::abs(prod - var_y) - 1e-12 * cap) / scale);
    } else {
      viol = std::max(viol, (1e-10 * cap - (prod - var_y)) / scale);
    }
    camp.record(viol, &d);
  }
  return camp.finish();
}

namespace {

VerificationReport verify_infimum_mixture(double V, const CampaignConfig&) {
  Campaign camp(3);
  double prev = kInf;
  for (const double eps : {0.1, 0.01, 0.001}) {
    const DiscreteDistribution d = mixture_members(V, eps, 64);
    const MomentSummary s = sqrt_moments(d);
    const double target = (1.0 + eps) * V;
    double viol = std::abs(s.E - target) / target - 1e-6;
    viol = std::max(viol, std::abs(s.V - V) / V - 1e-6);
    viol = std::max(viol, 1e-9 - (s.E - V) / V);  // stays strictly above V
    viol = std::max(viol, (s.E - prev) / V);      // and slides downward
    prev = s.E;
    camp.record(viol, &d);
  }
  return camp.finish();
}

}  // namespace

VerificationReport verify_infimum(double V, ExtendedReal F, const CampaignConfig& cfg) {
  cfg.validate();
  if (F.is_infinite()) {
    if (!(V > 0.0)) {
      throw InadmissiblePairError(fmt::format("(V={}, F=inf): requires V > 0", V));
    }
    return verify_infimum_mixture(V, cfg);
  }

  const double evf = e_vf(V, F);  // also validates the pair
  const TwoPointSpec tp = two_point_lo(V, F, 0.0);
  const double f = F.finite_value();
  const double root = std::sqrt(f - V);

  Campaign camp(cfg.trials + 1);
  {
    // The two-point member itself must attain the infimum.
    const DiscreteDistribution d2 = spec_to_distribution(tp, 0.0);
    const MomentSummary s2 = sqrt_moments(d2);
    camp.record(std::abs(s2.E - evf) / evf - 1e-10, &d2);
  }

  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    auto rng = make_trial_rng(cfg.seed, t);
    bool built = false;
    for (int attempt = 0; attempt < 200 && !built; ++attempt) {
      // Raise the top sqrt-atom above the two-point position (the bottom
      // stays at 0: with both extremes fixed the variance product bound is
      // tight and no interior mass can exist), then solve the bottom mass,
      // top mass and interior scale from total mass, E sqrt(X) and E X.
      const double vtop = tp.v * (1.001 + draw_unit(rng));
      const int k = 1 + static_cast<int>(draw_index(rng, 3));

      std::vector<double> ys(static_cast<std::size_t>(k));
      for (double& y : ys) y = draw_uniform(rng, 0.02 * vtop, 0.98 * vtop);
      std::sort(ys.begin(), ys.end());
      bool separated = true;
      for (int i = 0; i + 1 < k; ++i) {
        if (ys[static_cast<std::size_t>(i + 1)] - ys[static_cast<std::size_t>(i)] <
            0.01 * vtop) {
          separated = false;
          break;
        }
      }
      if (!separated) continue;
      const std::vector<double> w = draw_simplex(rng, k);

      const double beta1 = vtop - root;           // E sqrt(X) forced by (V, F, vtop)
      const double beta2 = V + beta1 * beta1;     // E X forced by Var sqrt(X) = V
      double ybar = 0.0, y2bar = 0.0;
      for (int i = 0; i < k; ++i) {
        ybar += w[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(i)];
        y2bar += w[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(i)] *
                 ys[static_cast<std::size_t>(i)];
      }
      const double tmass = (beta2 - vtop * beta1) / (y2bar - vtop * ybar);
      const double btop = (beta1 - tmass * ybar) / vtop;
      const double abot = 1.0 - tmass - btop;
      if (!(tmass > 1e-6 && btop > 1e-6 && abot > 1e-6)) continue;

      std::vector<std::pair<double, double>> pairs;
      pairs.reserve(static_cast<std::size_t>(k) + 2);
      pairs.emplace_back(0.0, abot);
      for (int i = 0; i < k; ++i) {
        pairs.emplace_back(ys[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(i)],
                           tmass * w[static_cast<std::size_t>(i)]);
      }
      pairs.emplace_back(vtop * vtop, btop);
      const DiscreteDistribution d = make_distribution(pairs);

      const MomentSummary s = sqrt_moments(d);
      double viol = std::abs(s.V - V) / V - 1e-9;  // membership in the (V, F) family
      viol = std::max(viol, std::abs(s.F.finite_value() - f) / f - 1e-9);
      viol = std::max(viol, (evf - 1e-9 - s.E) / std::max(1.0, evf));
      viol = std::max(viol, (1e-12 - (s.E - evf)) / std::max(1.0, evf));  // strictness
      camp.record(viol, &d);
      built = true;
    }
    if (!built) camp.record(1.0, nullptr);  // generator starvation counts as failure
  }
  return camp.finish();
}

VerificationReport verify_attainment(double V, ExtendedReal e_or_f, BoundSide side,
                                     int grid_size) {
  if (grid_size < 100) {
    throw InadmissibleParamsError(fmt::format("grid_size={} must be >= 100", grid_size));
  }
  if (side == BoundSide::hi && e_or_f.is_infinite()) {
    throw InadmissiblePairError("(V, E=inf) is not an admissible upper-bound pair");
  }

  const TwoPointSpec s = (side == BoundSide::hi)
                             ? two_point_hi(V, e_or_f.finite_value(), 0.0)
                             : two_point_lo(V, e_or_f, 0.0);
  const double target = (side == BoundSide::hi)
                            ? upper_bound(V, e_or_f.finite_value())
                            : lower_bound(V, e_or_f);

  // Shifting adds the same constant to both sqrt-atoms, so V, E and F of the
  // family do not depend on c; the enclosure below is therefore one fixed
  // interval that every psi value must respect.
  const double dlt = s.v - s.u;
  const double fam_v = s.p * s.q * dlt * dlt;
  const double fam_e = s.q * dlt * dlt;
  const double fam_f = s.p * dlt * dlt;
  const double up = std::max(2.0 * fam_v, fam_e);
  const double lo = std::min(2.0 * fam_v, fam_v * fam_f / (fam_f - fam_v));

  const double first_off = 1e-6 * dlt;
  const double span = s.u + 1e9 * dlt;
  std::vector<double> vals(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    const double c = (i == 0) ? -s.u
                              : -s.u + first_off * std::pow(span / first_off,
                                                            static_cast<double>(i) /
                                                                (grid_size - 1));
    vals[static_cast<std::size_t>(i)] = psi(s, c);
  }
  const double extremum = (side == BoundSide::hi)
                              ? *std::max_element(vals.begin(), vals.end())
                              : *std::min_element(vals.begin(), vals.end());

  Campaign camp(static_cast<std::uint64_t>(grid_size));
  const double scale = std::max(1.0, up);
  for (int i = 0; i < grid_size; ++i) {
    const double val = vals[static_cast<std::size_t>(i)];
    double viol = (std::max(lo - val, val - up)) / scale - kSandwichTolScale;
    if (i == grid_size - 1) {
      viol = std::max(viol, std::abs(extremum - target) / target - 1e-6);
    }
    camp.record(viol, nullptr);
  }
  return camp.finish();
}

}  // namespace amgm

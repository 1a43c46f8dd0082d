// SPDX-License-Identifier: Apache-2.0
//
// Tests for the extremal two-point families, the shifted-family gap function
// psi and its two evaluation branches, the quadrature rule, and the mixture
// family that walks the lower bound down to its infimum.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <amgm/bounds.hpp>
#include <amgm/core_stats.hpp>
#include <amgm/errors.hpp>
#include <amgm/extremal.hpp>
#include <amgm/quadrature.hpp>
#include <amgm/verify.hpp>

using namespace amgm;

namespace {

const ExtendedReal kInfF = ExtendedReal::infinity();

// Random spec with comfortable separation, for branch-agreement probes.
TwoPointSpec random_spec(std::mt19937_64& rng) {
  const double u = 5.0 * draw_unit(rng);
  const double v = u + 0.1 + 5.0 * draw_unit(rng);
  const double p = 0.05 + 0.9 * draw_unit(rng);
  return make_two_point_spec(u, v, p);
}

}  // namespace

TEST_CASE("two_point_hi solves the anchored moment problem") {
  const TwoPointSpec s = two_point_hi(1.0, 4.0, 0.0);
  CHECK(s.u == 0.0);
  CHECK(s.v == doctest::Approx(4.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(s.p == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.q == doctest::Approx(0.75).epsilon(1e-15));

  CHECK_THROWS_AS(two_point_hi(1.0, 1.0, 0.0), InadmissiblePairError);
  CHECK_THROWS_AS(two_point_hi(0.0, 1.0, 0.0), InadmissiblePairError);
  CHECK_THROWS_AS(two_point_hi(1.0, 4.0, -0.5), InadmissiblePairError);
}

TEST_CASE("two_point_lo solves the top-anchored problem and rejects infinite F") {
  const TwoPointSpec s = two_point_lo(1.0, 2.0, 0.0);
  CHECK(s.u == 0.0);
  CHECK(s.v == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.p == doctest::Approx(0.5).epsilon(1e-15));

  // The induced law is the symmetric pair {0, 4}.
  const auto d = spec_to_distribution(s, 0.0);
  REQUIRE(d.size() == 2);
  CHECK(d.atoms()[0].x == 0.0);
  CHECK(d.atoms()[1].x == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d.atoms()[0].p == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(two_point_lo(1.0, kInfF, 0.0), InadmissiblePairError);
  CHECK_THROWS_AS(two_point_lo(1.0, 0.5, 0.0), InadmissiblePairError);
  CHECK_THROWS_AS(two_point_lo(1.0, 1.0, 0.0), InadmissiblePairError);
}

TEST_CASE("two-point constructions round-trip through the moment summary") {
  const std::vector<double> vs = {0.5, 1.0, 2.0};
  const std::vector<double> ratios = {1.1, 1.5, 2.0, 5.0};
  const std::vector<double> anchors = {0.0, 0.5, 3.0};
  for (const double V : vs) {
    for (const double r : ratios) {
      for (const double u : anchors) {
        CAPTURE(V);
        CAPTURE(r);
        CAPTURE(u);
        // Hi family must reproduce (V, E) exactly.
        const MomentSummary hs =
            sqrt_moments(spec_to_distribution(two_point_hi(V, r * V, u), 0.0));
        CHECK(hs.V == doctest::Approx(V).epsilon(1e-10));
        CHECK(hs.E == doctest::Approx(r * V).epsilon(1e-10));
        // Lo family must reproduce (V, F) and land E on e_vf exactly.
        const MomentSummary ls =
            sqrt_moments(spec_to_distribution(two_point_lo(V, r * V, u), 0.0));
        CHECK(ls.V == doctest::Approx(V).epsilon(1e-10));
        CHECK(ls.F.as_double() == doctest::Approx(r * V).epsilon(1e-10));
        CHECK(ls.E == doctest::Approx(e_vf(V, r * V)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("spec_to_distribution squares the shifted support") {
  const TwoPointSpec s = make_two_point_spec(0.0, 2.0, 0.5);
  const auto d1 = spec_to_distribution(s, 1.0);
  REQUIRE(d1.size() == 2);
  CHECK(d1.atoms()[0].x == 1.0);
  CHECK(d1.atoms()[1].x == 9.0);

  const auto d0 = spec_to_distribution(s, 0.0);
  CHECK(d0.atoms()[0].x == 0.0);
  CHECK(d0.atoms()[1].x == 4.0);

  const auto dm = spec_to_distribution(make_two_point_spec(1.0, 3.0, 0.25), -1.0);
  CHECK(dm.atoms()[0].x == 0.0);
  CHECK(dm.atoms()[1].x == 4.0);
  CHECK(dm.atoms()[0].p == 0.25);
  CHECK(dm.atoms()[1].p == 0.75);

  CHECK_THROWS_AS(spec_to_distribution(s, -0.001), ShiftOutOfRangeError);
}

TEST_CASE("shifting preserves the variance of the square root") {
  // V of the shifted squared law is pq (v-u)^2 independent of c.
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = make_trial_rng(808, t);
    const TwoPointSpec s = random_spec(rng);
    const double expected = s.p * s.q * (s.v - s.u) * (s.v - s.u);
    for (const double c : {-s.u, 0.0, 0.5, 2.0, 25.0, 4000.0}) {
      if (c < -s.u) continue;
      const MomentSummary m = sqrt_moments(spec_to_distribution(s, c));
      CAPTURE(t);
      CAPTURE(c);
      // Recovering V from the shifted law subtracts numbers of size (v+c)^2,
      // so the achievable accuracy degrades with the square of the shift.
      const double tol =
          std::max(1e-10 * expected, 1e-14 * (s.v + c) * (s.v + c));
      CHECK(std::abs(m.V - expected) <= tol);
    }
  }
}

TEST_CASE("psi endpoint and limit identities") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = make_trial_rng(909, t);
    const TwoPointSpec s = random_spec(rng);
    const double d2 = (s.v - s.u) * (s.v - s.u);
    CAPTURE(t);
    CHECK(psi(s, -s.u) == doctest::Approx(s.q * d2).epsilon(1e-12));
    CHECK(psi_limit(s) == doctest::Approx(2.0 * s.p * s.q * d2).epsilon(1e-12));
  }
  CHECK(psi_limit(make_two_point_spec(0.0, 2.0, 0.5)) == 2.0);
  CHECK(psi_limit(make_two_point_spec(0.0, 4.0 / std::sqrt(3.0), 0.25)) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(psi_limit(make_two_point_spec(1.0, 3.0, 0.9)) ==
        doctest::Approx(0.72).epsilon(1e-15));
}

TEST_CASE("balanced specs make psi constant") {
  const TwoPointSpec s = make_two_point_spec(0.0, 2.0, 0.5);
  for (double c = 0.0; c <= 50.0; c += 0.5) {
    CAPTURE(c);
    CHECK(psi(s, c) == doctest::Approx(2.0).epsilon(1e-9));
  }
  // Also far beyond the branch switch.
  CHECK(psi(s, 1e8) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(psi(s, 1e12) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("psi approaches its limit far out") {
  const TwoPointSpec s = make_two_point_spec(0.0, 4.0 / std::sqrt(3.0), 0.25);
  CHECK(psi(s, 1e8) == doctest::Approx(2.0).epsilon(1e-5));
  // At 1e9 (v-u) the series value is indistinguishable from the limit.
  const double far = 1e9 * (s.v - s.u);
  CHECK(psi(s, far) == doctest::Approx(psi_limit(s)).epsilon(1e-5));
}

TEST_CASE("psi equals the gap of the shifted squared law") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = make_trial_rng(1010, t);
    const TwoPointSpec s = random_spec(rng);
    for (const double c : {-s.u, 0.0, 1.0, 10.0, 300.0}) {
      if (c < -s.u) continue;
      const double g = amgm_gap(spec_to_distribution(s, c));
      CAPTURE(t);
      CAPTURE(c);
      CHECK(std::abs(psi(s, c) - g) <= 1e-9 * std::max(1.0, g));
    }
  }
}

TEST_CASE("psi is monotone with the sign of p - q") {
  for (std::uint64_t t = 0; t < 60; ++t) {
    auto rng = make_trial_rng(1111, t);
    TwoPointSpec s = random_spec(rng);
    // Force a clear imbalance half the time each way.
    if (t % 2 == 0) s = make_two_point_spec(s.u, s.v, 0.55 + 0.4 * draw_unit(rng));
    else            s = make_two_point_spec(s.u, s.v, 0.05 + 0.4 * draw_unit(rng));
    const double span = 20.0 * (s.v - s.u);
    const int steps = 60;
    double prev = psi(s, -s.u);
    for (int i = 1; i <= steps; ++i) {
      const double c = -s.u + span * i / steps;
      const double cur = psi(s, c);
      CAPTURE(t);
      CAPTURE(c);
      if (s.p > s.q) CHECK(cur - prev >= -1e-9);
      else           CHECK(cur - prev <= 1e-9);
      prev = cur;
    }
  }
}

TEST_CASE("third differences of psi carry the sign of p - q") {
  for (std::uint64_t t = 0; t < 40; ++t) {
    auto rng = make_trial_rng(1212, t);
    const TwoPointSpec s = random_spec(rng);
    const double delta = s.v - s.u;
    const double h = delta / 4.0;
    const double floor = 1e-7 * delta * delta;
    for (int i = 0; i < 8; ++i) {
      const double c = -s.u + 0.1 * delta + i * h;
      const double d3 = psi(s, c + 3 * h) - 3 * psi(s, c + 2 * h) + 3 * psi(s, c + h) -
                        psi(s, c);
      CAPTURE(t);
      CAPTURE(c);
      if (s.p > s.q) CHECK(d3 >= -floor);
      else if (s.p < s.q) CHECK(d3 <= floor);
    }
  }
}

TEST_CASE("evaluation branches agree at the switch point") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = make_trial_rng(1313, t);
    const TwoPointSpec s = random_spec(rng);
    const double c = kPsiSwitchRatio * (s.v - s.u);
    const double direct = detail::psi_direct(s, c);
    const double tail = detail::psi_tail(s, c);
    CAPTURE(t);
    CAPTURE(s.u);
    CAPTURE(s.v);
    CAPTURE(s.p);
    CHECK(std::abs(direct - tail) <= 1e-6 * std::abs(tail));
  }
}

TEST_CASE("endpoint extrema reproduce the closed-form bounds") {
  CHECK(psi_extremum_hi(1.0, 4.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(psi_extremum_hi(1.0, 1.5) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(psi_extremum_lo(1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(psi_extremum_lo(1.0, 1.25) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(psi_extremum_lo(2.0, 4.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(psi_extremum_lo(1.0, kInfF), InadmissiblePairError);

  for (const double V : {0.5, 1.0, 2.0}) {
    for (const double r : {1.1, 1.5, 2.0, 3.0, 5.0}) {
      CAPTURE(V);
      CAPTURE(r);
      CHECK(psi_extremum_hi(V, r * V) ==
            doctest::Approx(upper_bound(V, r * V)).epsilon(1e-12));
      CHECK(psi_extremum_lo(V, r * V) ==
            doctest::Approx(lower_bound(V, ExtendedReal(r * V))).epsilon(1e-12));
    }
  }
}

TEST_CASE("dense grid never beats the claimed supremum") {
  const TwoPointSpec s = two_point_hi(1.0, 4.0, 0.0);
  double best = -1.0;
  for (int i = 0; i <= 4000; ++i) {
    const double c = 0.01 * i;
    best = std::max(best, psi(s, c));
  }
  CHECK(best <= 4.0 + 1e-9);
  // The supremum is approached at the bottom endpoint c = -u = 0.
  CHECK(psi(s, 0.0) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("quadrature rule integrates exponential moments exactly") {
  for (const int n : {16, 64}) {
    const auto rule = gauss_laguerre(n);
    REQUIRE(static_cast<int>(rule.size()) == n);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0;
    for (const auto& [x, w] : rule) {
      REQUIRE(w > 0.0);
      REQUIRE(x > 0.0);
      m0 += w;
      m1 += w * x;
      m2 += w * x * x;
      m3 += w * x * x * x;
    }
    CAPTURE(n);
    CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m1 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(m3 == doctest::Approx(6.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gauss_laguerre(0), InadmissibleParamsError);
}

TEST_CASE("mixture members hit their analytic moment targets") {
  // Underlying mixing law: E U = eps and Var U = eps by construction, so the
  // scaled square keeps V while E lands on (1 + eps) V.
  const MomentSummary s = sqrt_moments(mixture_members(1.0, 0.1, 64));
  CHECK(s.V == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.E == doctest::Approx(1.1).epsilon(1e-6));

  SUBCASE("scaled target") {
    const double V = 2.5;
    const MomentSummary sc = sqrt_moments(mixture_members(V, 0.01, 64));
    CHECK(sc.V == doctest::Approx(V).epsilon(1e-6));
    CHECK(sc.E == doctest::Approx(1.01 * V).epsilon(1e-6));
  }

  SUBCASE("the ladder slides down toward V and stays above it") {
    double prev = std::numeric_limits<double>::infinity();
    for (const double eps : {0.1, 0.01, 0.001}) {
      const MomentSummary m = sqrt_moments(mixture_members(1.0, eps, 64));
      CAPTURE(eps);
      CHECK(m.E < prev);
      CHECK(m.E > 1.0);
      prev = m.E;
    }
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(mixture_members(0.0, 0.1, 64), InadmissibleParamsError);
    CHECK_THROWS_AS(mixture_members(1.0, 0.0, 64), InadmissibleParamsError);
    CHECK_THROWS_AS(mixture_members(1.0, 1.0, 64), InadmissibleParamsError);
    CHECK_THROWS_AS(mixture_members(1.0, 0.1, 8), InadmissibleParamsError);
  }
}

TEST_CASE("make_two_point_spec validates its fields") {
  CHECK_THROWS_AS(make_two_point_spec(2.0, 1.0, 0.5), InadmissibleParamsError);
  CHECK_THROWS_AS(make_two_point_spec(1.0, 1.0, 0.5), InadmissibleParamsError);
  CHECK_THROWS_AS(make_two_point_spec(0.0, 1.0, 0.0), InadmissibleParamsError);
  CHECK_THROWS_AS(make_two_point_spec(0.0, 1.0, 1.0), InadmissibleParamsError);
  CHECK_THROWS_AS(make_two_point_spec(-1.0, 1.0, 0.5), InadmissibleParamsError);
  const TwoPointSpec s = make_two_point_spec(0.5, 1.5, 0.3);
  CHECK(s.q == doctest::Approx(0.7).epsilon(1e-15));
}

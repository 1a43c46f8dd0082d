// SPDX-License-Identifier: Apache-2.0
#include "amgm/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "amgm/errors.hpp"
#include "amgm/quadrature.hpp"

namespace amgm {
namespace {

// Anchor violations in the (V, E)/(V, F) constructors are part of the pair
// precondition, so they surface as InadmissiblePairError there; the plain
// spec constructor reports them as parameter errors instead.
template <typename Exc>
void require_anchor(double u) {
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw Exc(fmt::format("anchor u={} must be finite and >= 0", u));
  }
}

void require_shift(const TwoPointSpec& s, double c) {
  if (!(c >= -s.u)) {
    throw ShiftOutOfRangeError(
        fmt::format("shift c={} is below -u={}; the shifted support would leave [0, inf)",
                    c, -s.u));
  }
}

}  // namespace

TwoPointSpec make_two_point_spec(double u, double v, double p) {
  require_anchor<InadmissibleParamsError>(u);
  if (!(v > u) || !std::isfinite(v)) {
    throw InadmissibleParamsError(fmt::format("upper point v={} must be finite and > u={}", v, u));
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw InadmissibleParamsError(fmt::format("weight p={} must lie in (0, 1)", p));
  }
  return TwoPointSpec{u, v, p, 1.0 - p};
}

TwoPointSpec two_point_hi(double V, double E, double u) {
  if (!(E > V && V > 0.0)) {
    throw InadmissiblePairError(
        fmt::format("(V={}, E={}): requires either E=V=0 or E>V>0, with V>0 here", V, E));
  }
  require_anchor<InadmissiblePairError>(u);
  const double p = V / E;
  return TwoPointSpec{u, u + E / std::sqrt(E - V), p, 1.0 - p};
}

TwoPointSpec two_point_lo(double V, ExtendedReal F, double u) {
  if (F.is_infinite()) {
    throw InadmissiblePairError(
        "F=inf: no two-point law realizes this regime; its infimum is approached by "
        "mixture_members but never attained");
  }
  const double f = F.finite_value();
  if (!(f > V && V > 0.0)) {
    throw InadmissiblePairError(
        fmt::format("(V={}, F={}): requires either F=V=0 or F>V>0, with V>0 here", V, f));
  }
  require_anchor<InadmissiblePairError>(u);
  const double q = V / f;
  return TwoPointSpec{u, u + f / std::sqrt(f - V), 1.0 - q, q};
}

DiscreteDistribution spec_to_distribution(const TwoPointSpec& s, double c) {
  require_shift(s, c);
  const double lo = s.u + c;
  const double hi = s.v + c;
  return make_distribution({{lo * lo, s.p}, {hi * hi, s.q}});
}

namespace detail {

// Factored form: with s0 = u + c and r = (v - u) / s0,
//   psi(c) = s0^2 * (p + q (1+r)^2 - (1+r)^{2q})
//          = s0^2 * (q r (2 + r) - expm1(2q log1p(r))),
// which subtracts two O(r) quantities whose difference is O(r^2) and so
// stays accurate where the naive arithmetic-minus-power form loses all
// digits (r small).  For very small s0 the expm1 argument would overflow;
// there the plain form is exact enough and is used instead.
double psi_direct(const TwoPointSpec& s, double c) {
  const double s0 = s.u + c;
  const double s1 = s.v + c;
  const double r = (s.v - s.u) / s0;
  const double t = 2.0 * s.q * std::log1p(r);
  if (t < 700.0) {
    return s0 * s0 * (s.q * r * (2.0 + r) - std::expm1(t));
  }
  const double am = s.p * s0 * s0 + s.q * s1 * s1;
  return am - std::exp(2.0 * s.p * std::log(s0) + 2.0 * s.q * std::log(s1));
}

// Series in r = (v - u) / (u + c) around r = 0, truncated after the r^2
// correction: with g = 2q,
//   psi(c) = 2pq d^2 - g(g-1)(g-2)/6 * d^3/s0 - g(g-1)(g-2)(g-3)/24 * d^4/s0^2
//            + O(d^5/s0^3),
// so the truncation error at the switch ratio 1e6 is ~1e-18 relative --
// far below the 1e-6 agreement demanded of the two branches.
double psi_tail(const TwoPointSpec& s, double c) {
  const double d = s.v - s.u;
  const double s0 = s.u + c;
  const double g = 2.0 * s.q;
  const double c3 = -g * (g - 1.0) * (g - 2.0) / 6.0;
  const double c4 = -g * (g - 1.0) * (g - 2.0) * (g - 3.0) / 24.0;
  const double r = d / s0;
  return d * d * (2.0 * s.p * s.q + r * (c3 + r * c4));
}

}  // namespace detail

double psi(const TwoPointSpec& s, double c) {
  require_shift(s, c);
  if (s.u + c == 0.0) {
    // The power term vanishes with the bottom support point.
    const double d = s.v - s.u;
    return s.q * d * d;
  }
  if (c > kPsiSwitchRatio * (s.v - s.u)) return detail::psi_tail(s, c);
  return detail::psi_direct(s, c);
}

double psi_limit(const TwoPointSpec& s) {
  const double d = s.v - s.u;
  return 2.0 * s.p * s.q * d * d;
}

double psi_extremum_hi(double V, double E) {
  const TwoPointSpec s = two_point_hi(V, E, 0.0);
  return std::max(psi(s, 0.0), psi_limit(s));
}

double psi_extremum_lo(double V, ExtendedReal F) {
  const TwoPointSpec s = two_point_lo(V, F, 0.0);
  return std::min(psi(s, 0.0), psi_limit(s));
}

DiscreteDistribution mixture_members(const MixtureSpec& spec, int n_quad) {
  if (!(spec.V > 0.0) || !std::isfinite(spec.V)) {
    throw InadmissibleParamsError(fmt::format("V={} must be finite and > 0", spec.V));
  }
  if (!(spec.eps > 0.0 && spec.eps < 1.0)) {
    throw InadmissibleParamsError(fmt::format("eps={} must lie in (0, 1)", spec.eps));
  }
  if (n_quad < 16) {
    throw InadmissibleParamsError(fmt::format("n_quad={} must be >= 16", n_quad));
  }

  const double eps = spec.eps;
  const double scale = spec.scale();
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(static_cast<std::size_t>(n_quad) + 2);
  pairs.emplace_back(0.0, 1.0 - eps);
  pairs.emplace_back(scale, eps - eps * eps);
  // Exponential component: X = scale * x^2 under the e^{-x} weight.  The
  // first two moments of U (all the V and E identities need) are integrals
  // of x and x^2, which the rule reproduces exactly.
  for (const QuadratureNode& qn : gauss_laguerre(n_quad)) {
    pairs.emplace_back(scale * qn.node * qn.node, eps * eps * qn.weight);
  }
  return make_distribution(pairs);
}

DiscreteDistribution mixture_members(double V, double eps, int n_quad) {
  return mixture_members(MixtureSpec{V, eps}, n_quad);
}

}  // namespace amgm

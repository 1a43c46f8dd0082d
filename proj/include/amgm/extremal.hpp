// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "amgm/core_stats.hpp"
#include "amgm/extended_real.hpp"

namespace amgm {

// psi switches from direct evaluation to its large-shift series once
// c > kPsiSwitchRatio * (v - u).
inline constexpr double kPsiSwitchRatio = 1e6;

// A two-point law for Y = sqrt(X): P(Y = u) = p, P(Y = v) = q = 1 - p, with
// 0 <= u < v and 0 < p < 1.  Both p and q are stored so each side of the
// split is available without re-deriving it through 1 - p.
struct TwoPointSpec {
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
  double q = 0.0;
};

// Validating constructor for hand-written specs (q is derived as 1 - p).
TwoPointSpec make_two_point_spec(double u, double v, double p);

// The two-point law that maximizes the gap among laws with the given
// (V, E) at the bottom anchor u:  p = V / E,  v = u + E / sqrt(E - V).
// Throws InadmissiblePairError unless E > V > 0 and u >= 0.
TwoPointSpec two_point_hi(double V, double E, double u);

// The two-point law that minimizes the gap among laws with the given
// (V, F):  q = V / F,  v = u + F / sqrt(F - V).  F = +inf is rejected --
// no two-point law realizes that regime (see mixture_members).
// Throws InadmissiblePairError unless finite F > V > 0 and u >= 0.
TwoPointSpec two_point_lo(double V, ExtendedReal F, double u);

// The law of (Y + c)^2 for the spec's Y: atoms ((u+c)^2, p), ((v+c)^2, q).
// Throws ShiftOutOfRangeError when c < -u.
DiscreteDistribution spec_to_distribution(const TwoPointSpec& s, double c);

// Gap of the shifted law as a function of the shift:
//   psi(c) = p (u+c)^2 + q (v+c)^2 - (u+c)^{2p} (v+c)^{2q},
// the power term computed as exp(2p ln(u+c) + 2q ln(v+c)) and equal to 0
// when u + c = 0.  psi is monotone in c with the sign of p - q, runs from
// psi(-u) = q (v-u)^2 to the limit 2 p q (v-u)^2, and is evaluated through a
// cancellation-free factoring for moderate shifts and a truncated series
// beyond kPsiSwitchRatio * (v - u).  Throws ShiftOutOfRangeError when c < -u.
double psi(const TwoPointSpec& s, double c);

// The c -> inf limit 2 p q (v - u)^2.
double psi_limit(const TwoPointSpec& s);

// sup_c psi over the two_point_hi(V, E, 0) family; equals upper_bound(V, E).
// The sup is taken over the two attainable ends (c = -u and c -> inf), which
// monotonicity proves are the only candidates.
double psi_extremum_hi(double V, double E);

// inf_c psi over the two_point_lo(V, F, 0) family; equals lower_bound(V, F)
// for finite F.  Throws InadmissiblePairError for F = +inf.
double psi_extremum_lo(double V, ExtendedReal F);

namespace detail {
// The two branches of psi, exposed so tests can probe their agreement at the
// switch point.  Both require u + c > 0.
double psi_direct(const TwoPointSpec& s, double c);
double psi_tail(const TwoPointSpec& s, double c);
}  // namespace detail

// Parameters of the family X_eps = (V/eps) U_eps^2, where U_eps mixes an
// atom at 0 (mass 1-eps), an atom at 1 (mass eps-eps^2) and a unit
// exponential (mass eps^2).  By construction E U_eps = eps = Var U_eps, so
// X_eps keeps Var sqrt(X) = V for every eps while E (sqrt X)^2 - ... gives
// E_{X_eps} = (1 + eps) V, sliding down toward V as eps -> 0 without ever
// reaching it: the F = +inf regime has no minimizer.
struct MixtureSpec {
  double V = 0.0;
  double eps = 0.0;
  double scale() const { return V / eps; }
};

// Discretizes X_eps with an n_quad-point Gauss-Laguerre rule on the
// exponential component.  Throws InadmissibleParamsError unless V > 0,
// 0 < eps < 1 and n_quad >= 16.
DiscreteDistribution mixture_members(const MixtureSpec& spec, int n_quad = 64);
DiscreteDistribution mixture_members(double V, double eps, int n_quad = 64);

}  // namespace amgm

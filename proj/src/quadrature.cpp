// SPDX-License-Identifier: Apache-2.0
#include "amgm/quadrature.hpp"

#include <cmath>

#include "amgm/errors.hpp"

namespace amgm {

// Newton iteration on the Laguerre three-term recurrence, with the classic
// root brackets as starting points.  Weights use w = -1 / (L_n'(x) n L_{n-1}(x)).
// Long double keeps the recurrence honest out to the largest roots (~4n).
std::vector<QuadratureNode> gauss_laguerre(int n) {
  if (n < 1) throw InadmissibleParamsError("gauss_laguerre: n must be >= 1");

  std::vector<QuadratureNode> out(static_cast<std::size_t>(n));
  long double z = 0.0L;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0L / (1.0L + 2.4L * n);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * n);
    } else {
      const long double ai = i - 1;
      z += ((1.0L + 2.55L * ai) / (1.9L * ai)) * (z - out[i - 2].node);
    }

    long double p1 = 0.0L, p2 = 0.0L, pp = 0.0L;
    for (int it = 0; it < 200; ++it) {
      p1 = 1.0L;
      p2 = 0.0L;
      for (int j = 1; j <= n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2 * j - 1 - z) * p2 - (j - 1) * p3) / j;
      }
      pp = n * (p1 - p2) / z;  // L_n'(z) via L_{n-1}
      const long double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(static_cast<double>(z - z1)) <= 1e-16 * static_cast<double>(z)) break;
    }
    out[i].node = static_cast<double>(z);
    out[i].weight = static_cast<double>(-1.0L / (pp * n * p2));
  }
  return out;
}

}  // namespace amgm

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace amgm {

struct QuadratureNode {
  double node;
  double weight;
};

// Nodes and weights of the n-point Gauss-Laguerre rule:
//   integral_0^inf f(x) e^{-x} dx  ~=  sum_i weight_i * f(node_i),
// exact for polynomials of degree <= 2n - 1.  Nodes are returned ascending.
// Throws std::invalid_argument when n < 1.
std::vector<QuadratureNode> gauss_laguerre(int n);

}  // namespace amgm

// Copyright 2026 The bmcarpet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BMCARPET_LOWER_BOUNDS_HPP_
#define BMCARPET_LOWER_BOUNDS_HPP_

#include "bmcarpet/carpet_model.hpp"

namespace bmc {

// Mixtures of the uniform and McMullen vectors with weight u on the uniform
// side:
//   P  = u p~   + (1-u) p^      over maps
//   QM = u q~M  + (1-u) q^M     over columns
//   Q  = u q~/N + (1-u) p^      over maps, column-constant with marginal QM
struct MixedVectors {
  double u = 0.0;
  ProbVector maps;
  ProbVector columns;
  ProbVector coordinate;
};

// Throws UOutOfRange unless u is in [0, 1].
MixedVectors mixed_vectors(const Carpet& carpet, double u);

struct PsiEval {
  double theta = 0.0;
  double u = 0.0;
  double dim_t = 0.0;  // H(P)/log n + (1 - log_n m) H(QM)/log m
  double psi = 0.0;    // dim_t - (1-theta)(H(P) - H(Q))/log n
};

// psi at an explicit mixing weight u. Throws ThetaOutOfRange / UOutOfRange.
PsiEval psi(const Carpet& carpet, double theta, double u);
// psi(t, theta) with u = theta^t, t > 0, and 0^t = 0.
PsiEval psi_at_t(const Carpet& carpet, double t, double theta);

// Supremum of psi over u in [0, 1]: 257-point grid, then golden section in
// the winning bracket down to width 1e-10. Smallest u wins ties. Returns
// hausdorff_dim (u = 0) at theta = 0 and box_dim (u = 1) at theta = 1.
PsiEval lower_thm(const Carpet& carpet, double theta);

// box - (1-theta)(log(N/M) - mean log N_j)/log n
double lower_linear_box(const Carpet& carpet, double theta);

// hausdorff + theta (log N - H(p^))/log n
double lower_ffk(const Carpet& carpet, double theta);

// Pointwise maximum of the three lower bounds above.
double lower_envelope(const Carpet& carpet, double theta);

}  // namespace bmc

#endif  // BMCARPET_LOWER_BOUNDS_HPP_

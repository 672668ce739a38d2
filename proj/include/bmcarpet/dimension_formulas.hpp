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

#ifndef BMCARPET_DIMENSION_FORMULAS_HPP_
#define BMCARPET_DIMENSION_FORMULAS_HPP_

#include "bmcarpet/carpet_model.hpp"

namespace bmc {

struct DimPair {
  double hausdorff = 0.0;
  double box = 0.0;
};

// Entropy forms: H(p)/log n + (1 - log m/log n) H(q^M)/log m, evaluated at the
// McMullen vectors (Hausdorff) or the uniform vectors (box).
double hausdorff_dim(const Carpet& carpet);
double box_dim(const Carpet& carpet);
DimPair dimensions(const Carpet& carpet);

// The usual closed forms, kept as an independent cross-check:
//   dim_H = log_m(sum_j N_j^{log_n m}),  dim_B = log_m M + log_n(N/M).
double hausdorff_dim_closed_form(const Carpet& carpet);
double box_dim_closed_form(const Carpet& carpet);

}  // namespace bmc

#endif  // BMCARPET_DIMENSION_FORMULAS_HPP_

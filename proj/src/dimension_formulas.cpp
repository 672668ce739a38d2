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

#include "bmcarpet/dimension_formulas.hpp"

#include <cmath>

namespace bmc {

namespace {

double entropy_form(const Carpet& carpet, const ProbVector& maps, const ProbVector& columns) {
  return entropy(maps) / carpet.log_n() +
         (1.0 - carpet.log_ratio()) * entropy(columns) / carpet.log_m();
}

}  // namespace

double hausdorff_dim(const Carpet& carpet) {
  const McMullenVectors v = mcmullen_vectors(carpet);
  return entropy_form(carpet, v.maps, v.columns);
}

double box_dim(const Carpet& carpet) {
  const UniformVectors v = uniform_vectors(carpet);
  return entropy_form(carpet, v.maps, v.columns);
}

DimPair dimensions(const Carpet& carpet) { return {hausdorff_dim(carpet), box_dim(carpet)}; }

double hausdorff_dim_closed_form(const Carpet& carpet) {
  double acc = 0.0;
  for (int count : carpet.column_counts()) {
    acc += std::pow(static_cast<double>(count), carpet.log_ratio());
  }
  return std::log(acc) / carpet.log_m();
}

double box_dim_closed_form(const Carpet& carpet) {
  return std::log(static_cast<double>(carpet.columns())) / carpet.log_m() +
         carpet.log_mean_fibre() / carpet.log_n();
}

}  // namespace bmc

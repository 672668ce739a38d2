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

#ifndef BMCARPET_UPPER_BOUNDS_HPP_
#define BMCARPET_UPPER_BOUNDS_HPP_

#include <array>

#include "bmcarpet/carpet_model.hpp"
#include "bmcarpet/rate_function.hpp"

namespace bmc {

// Balance point of the two-scale cover: the Delta in (0, c - mean) with
//
//   (1 - theta) Delta = (1/theta - 1) I(c - Delta),
//
// solved in the equivalent monotone form theta Delta = I(c - Delta), which
// also covers theta = 1 (the limit equation Delta = I(c - Delta)).
struct Delta0Solution {
  double theta = 0.0;
  double delta0 = 0.0;
  // (1-theta) Delta - (1/theta-1) I(c-Delta); Delta - I(c-Delta) at theta = 1.
  double residual = 0.0;
};

// Throws UniformFibres or ThetaOutOfRange (theta outside [log_n m, 1]).
Delta0Solution solve_delta0(const Carpet& carpet, double theta);
Delta0Solution solve_delta0(const RateFunction& rate_fn, double theta);

// Two-scale upper bound on the upper intermediate dimension:
// box - Delta0(theta)(1-theta)/log n on [log_n m, 1], constant below
// log_n m, and box everywhere for uniform fibres. Throws ThetaOutOfRange
// outside [0, 1].
double upper_bound(const Carpet& carpet, double theta);
double upper_bound(const RateFunction& rate_fn, double theta);

// Delta0(1)/log n, the slope of the two-scale bound as theta -> 1.
double upper_slope_at_one(const Carpet& carpet);

// Parameters of the three-scale cover search.
struct GridSpec {
  int points = 24;      // per axis
  bool refine = true;   // one extra pass inside the winning cell
};

// Exponents e1..e4 of the three-scale cover for one parameter choice.
std::array<double, 4> three_scale_exponents(const RateFunction& rate_fn, double theta,
                                            double delta0, double delta1, double delta2,
                                            double eta);

struct ThreeScaleParams {
  double theta = 0.0;
  double delta0 = 0.0;
  double delta1 = 0.0;  // in (delta0, c - mean)
  double delta2 = 0.0;  // in ((1-theta) delta0, delta0)
  double eta = 0.0;     // in (theta, 1)
  std::array<double, 4> exponents{};
  double bound = 0.0;            // max of exponents
  double two_scale_bound = 0.0;  // upper_bound(theta), for comparison
};

// Minimizes max(e1..e4) over a log-uniform grid in the parameter box. The
// intermediate scale eta is a free search parameter; the existence of an eta
// meeting the prefix-average condition for every square is not certified.
// Throws UniformFibres, ThetaOutOfRange (theta outside [log_n m, 1)), or
// SearchFailed when no grid point beats the two-scale bound.
ThreeScaleParams improved_upper(const Carpet& carpet, double theta, const GridSpec& grid = {});
ThreeScaleParams improved_upper(const RateFunction& rate_fn, double theta,
                                const GridSpec& grid = {});

}  // namespace bmc

#endif  // BMCARPET_UPPER_BOUNDS_HPP_

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

#ifndef BMCARPET_RATE_FUNCTION_HPP_
#define BMCARPET_RATE_FUNCTION_HPP_

#include <limits>
#include <mutex>
#include <unordered_map>

#include "bmcarpet/carpet_model.hpp"

namespace bmc {

// Cramer rate function of X, a uniform pick from {log N_1, ..., log N_M}:
//
//   I(x) = sup_{lambda >= 0} ( lambda x - log((1/M) sum_j N_j^lambda) ),
//
// supported here on [mean_log_fibre, log max N_j].
struct RateEval {
  double x = 0.0;
  double value = 0.0;
  // Maximizing lambda; +infinity at x = log max N_j where the sup is not attained.
  double lambda_star = 0.0;
};

// log((1/M) sum_j N_j^lambda), the cumulant generating function of X.
double cumulant(const Carpet& carpet, double lambda);
// Its derivative, the mean of X under the lambda-tilted law.
double cumulant_slope(const Carpet& carpet, double lambda);

// Throws DomainError outside [mean_log_fibre, log max N_j]. Points within
// 1e-12 below the mean are clamped to it.
RateEval rate(const Carpet& carpet, double x);

// Memoizing evaluator for callers that hit the same x repeatedly (root
// solvers, grid searches). Thread-safe; results equal rate() exactly.
class RateFunction {
 public:
  explicit RateFunction(Carpet carpet) : carpet_(std::move(carpet)) {}

  const Carpet& carpet() const { return carpet_; }
  RateEval evaluate(double x) const;
  double operator()(double x) const { return evaluate(x).value; }

 private:
  Carpet carpet_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<double, RateEval> cache_;
};

}  // namespace bmc

#endif  // BMCARPET_RATE_FUNCTION_HPP_

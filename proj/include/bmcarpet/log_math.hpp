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

#ifndef BMCARPET_LOG_MATH_HPP_
#define BMCARPET_LOG_MATH_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

namespace bmc {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

inline double log_sum_exp(std::span<const double> terms) {
  double peak = kNegInf;
  for (double t : terms) peak = std::max(peak, t);
  if (peak == kNegInf || std::isinf(peak)) return peak;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

inline double to_log10(double natural_log) {
  return natural_log / std::numbers::ln10;
}

// log(n! / prod k_i!) via lgamma; exact enough for n in the thousands.
inline double log_factorial(long n) {
  return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace bmc

#endif  // BMCARPET_LOG_MATH_HPP_

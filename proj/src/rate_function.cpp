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

#include "bmcarpet/rate_function.hpp"

#include <cmath>
#include <sstream>

#include "bmcarpet/errors.hpp"

namespace bmc {

namespace {

constexpr double kClampTolerance = 1e-12;
constexpr double kLambdaRelTolerance = 1e-13;
constexpr int kMaxBisections = 200;
constexpr int kMaxDoublings = 1000;

// Tilted weights are taken relative to the largest fibre so that
// N_j^lambda never overflows.
double log_max(const Carpet& carpet) {
  return std::log(static_cast<double>(carpet.max_column_count()));
}

}  // namespace

double cumulant(const Carpet& carpet, double lambda) {
  const double top = log_max(carpet);
  const double anchor = lambda >= 0.0 ? top : 0.0;
  double acc = 0.0;
  for (const FibreClass& fc : carpet.fibre_classes()) {
    const double log_size = std::log(static_cast<double>(fc.size));
    acc += fc.columns * std::exp(lambda * (log_size - anchor));
  }
  return lambda * anchor + std::log(acc / carpet.columns());
}

double cumulant_slope(const Carpet& carpet, double lambda) {
  const double top = log_max(carpet);
  double weight = 0.0;
  double moment = 0.0;
  for (const FibreClass& fc : carpet.fibre_classes()) {
    const double log_size = std::log(static_cast<double>(fc.size));
    const double w = fc.columns * std::exp(lambda * (log_size - top));
    weight += w;
    moment += w * log_size;
  }
  return moment / weight;
}

RateEval rate(const Carpet& carpet, double x) {
  const double mean = carpet.mean_log_fibre();
  const double top = log_max(carpet);
  if (!(x >= mean - kClampTolerance) || !(x <= top + kClampTolerance)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "rate function evaluated at x = " << x << " outside its domain [" << mean << ", "
        << top << "]";
    throw DomainError(msg.str());
  }
  if (x <= mean) return {x, 0.0, 0.0};

  int top_columns = 0;
  for (const FibreClass& fc : carpet.fibre_classes()) {
    if (fc.size == carpet.max_column_count()) top_columns = fc.columns;
  }
  const double endpoint_value =
      std::log(static_cast<double>(carpet.columns())) - std::log(static_cast<double>(top_columns));
  if (x >= top) return {x, endpoint_value, std::numeric_limits<double>::infinity()};

  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (cumulant_slope(carpet, hi) < x) {
    lo = hi;
    hi *= 2.0;
    // x sits closer to the top atom than the tilt can resolve in double
    // precision; the endpoint value is the limit.
    if (++doublings > kMaxDoublings || !std::isfinite(hi)) {
      return {x, endpoint_value, std::numeric_limits<double>::infinity()};
    }
  }
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cumulant_slope(carpet, mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= kLambdaRelTolerance * hi) break;
  }
  const double lambda = 0.5 * (lo + hi);
  const double value = lambda * x - cumulant(carpet, lambda);
  return {x, std::max(0.0, value), lambda};
}

RateEval RateFunction::evaluate(double x) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(x); it != cache_.end()) return it->second;
  }
  const RateEval result = rate(carpet_, x);
  std::lock_guard lock(mutex_);
  cache_.emplace(x, result);
  return result;
}

}  // namespace bmc

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

#include "bmcarpet/upper_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>
#include <vector>

#include "bmcarpet/dimension_formulas.hpp"
#include "bmcarpet/errors.hpp"

namespace bmc {

namespace {

constexpr double kDeltaTolerance = 1e-12;
constexpr int kMaxBisections = 200;

void require_nonuniform(const Carpet& carpet, const char* op) {
  if (has_uniform_fibres(carpet)) {
    throw UniformFibres(std::string(op) +
                        ": carpet has uniform vertical fibres, so (0, log(N/M) - mean) is empty");
  }
}

std::string theta_message(const char* op, double theta, double lo, const char* hi) {
  std::ostringstream msg;
  msg.precision(12);
  msg << op << ": theta = " << theta << " outside [" << lo << ", " << hi;
  return msg.str();
}

// Geometric interior points a (b/a)^((i + 1/2)/count), i = 0..count-1.
std::vector<double> log_grid(double a, double b, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double span = std::log(b / a);
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = a * std::exp(span * (i + 0.5) / count);
  }
  return out;
}

struct Candidate {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double eta = 0.0;
  std::array<double, 4> exponents{};
  double bound = std::numeric_limits<double>::infinity();

  bool better_than(const Candidate& other) const {
    if (bound != other.bound) return bound < other.bound;
    return std::tie(delta1, delta2, eta) < std::tie(other.delta1, other.delta2, other.eta);
  }
};

struct Box {
  double d1_lo, d1_hi, d2_lo, d2_hi, eta_lo, eta_hi;
};

Candidate search_box(const RateFunction& rate_fn, double theta, double delta0, const Box& box,
                     int points) {
  const std::vector<double> d1 = log_grid(box.d1_lo, box.d1_hi, points);
  const std::vector<double> d2 = log_grid(box.d2_lo, box.d2_hi, points);
  const std::vector<double> eta = log_grid(box.eta_lo, box.eta_hi, points);
  const Carpet& carpet = rate_fn.carpet();
  const double box_dim_value = box_dim(carpet);
  const double c = carpet.log_mean_fibre();
  const double log_n = carpet.log_n();
  const double shrink = 1.0 / theta - 1.0;
  const double bad_rate = rate_fn(c - delta0);

  // Only e2 depends on delta1 through I, only e3 on delta2: tabulate once.
  std::vector<double> e1(d1.size()), e2(d1.size()), e3(d2.size());
  for (std::size_t i = 0; i < d1.size(); ++i) {
    e1[i] = box_dim_value - d1[i] * (1.0 - theta) / log_n;
    e2[i] = box_dim_value - (delta0 + rate_fn(c - d1[i])) * (1.0 - theta) / log_n;
  }
  for (std::size_t j = 0; j < d2.size(); ++j) {
    e3[j] = box_dim_value - rate_fn(c - d2[j]) * shrink / log_n;
  }

  Candidate best;
  for (std::size_t i = 0; i < d1.size(); ++i) {
    for (std::size_t j = 0; j < d2.size(); ++j) {
      for (std::size_t k = 0; k < eta.size(); ++k) {
        Candidate cand;
        cand.delta1 = d1[i];
        cand.delta2 = d2[j];
        cand.eta = eta[k];
        const double e4 = box_dim_value - d2[j] * (1.0 - eta[k]) / log_n -
                          bad_rate * shrink * eta[k] / log_n;
        cand.exponents = {e1[i], e2[i], e3[j], e4};
        cand.bound = *std::max_element(cand.exponents.begin(), cand.exponents.end());
        if (cand.better_than(best)) best = cand;
      }
    }
  }
  return best;
}

// Half a log-cell on each side of x, clipped to [lo, hi].
std::pair<double, double> cell_around(double x, double lo, double hi, int points) {
  const double half = 0.5 * std::log(hi / lo) / points;
  return {std::max(lo, x * std::exp(-half)), std::min(hi, x * std::exp(half))};
}

}  // namespace

Delta0Solution solve_delta0(const RateFunction& rate_fn, double theta) {
  const Carpet& carpet = rate_fn.carpet();
  require_nonuniform(carpet, "solve_delta0");
  if (!(theta >= carpet.log_ratio() && theta <= 1.0)) {
    throw ThetaOutOfRange(theta_message("solve_delta0", theta, carpet.log_ratio(), "1]"));
  }
  const double c = carpet.log_mean_fibre();
  double lo = 0.0;
  double hi = c - carpet.mean_log_fibre();
  // h(D) = theta D - I(c - D) is strictly increasing, h(lo) < 0 < h(hi).
  auto h = [&](double delta) { return theta * delta - rate_fn(c - delta); };
  for (int it = 0; it < kMaxBisections && hi - lo > kDeltaTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double delta = 0.5 * (lo + hi);
  const double residual = theta == 1.0 ? delta - rate_fn(c - delta)
                                       : (1.0 - theta) * delta -
                                             (1.0 / theta - 1.0) * rate_fn(c - delta);
  return {theta, delta, residual};
}

Delta0Solution solve_delta0(const Carpet& carpet, double theta) {
  return solve_delta0(RateFunction(carpet), theta);
}

double upper_bound(const RateFunction& rate_fn, double theta) {
  const Carpet& carpet = rate_fn.carpet();
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw ThetaOutOfRange(theta_message("upper_bound", theta, 0.0, "1]"));
  }
  const double box = box_dim(carpet);
  if (has_uniform_fibres(carpet) || theta == 1.0) return box;
  const double effective = std::max(theta, carpet.log_ratio());
  const Delta0Solution sol = solve_delta0(rate_fn, effective);
  return box - sol.delta0 * (1.0 - effective) / carpet.log_n();
}

double upper_bound(const Carpet& carpet, double theta) {
  return upper_bound(RateFunction(carpet), theta);
}

double upper_slope_at_one(const Carpet& carpet) {
  require_nonuniform(carpet, "upper_slope_at_one");
  return solve_delta0(carpet, 1.0).delta0 / carpet.log_n();
}

std::array<double, 4> three_scale_exponents(const RateFunction& rate_fn, double theta,
                                            double delta0, double delta1, double delta2,
                                            double eta) {
  const Carpet& carpet = rate_fn.carpet();
  const double box = box_dim(carpet);
  const double c = carpet.log_mean_fibre();
  const double log_n = carpet.log_n();
  const double shrink = 1.0 / theta - 1.0;
  return {
      box - delta1 * (1.0 - theta) / log_n,
      box - (delta0 + rate_fn(c - delta1)) * (1.0 - theta) / log_n,
      box - rate_fn(c - delta2) * shrink / log_n,
      box - delta2 * (1.0 - eta) / log_n - rate_fn(c - delta0) * shrink * eta / log_n,
  };
}

ThreeScaleParams improved_upper(const RateFunction& rate_fn, double theta, const GridSpec& grid) {
  const Carpet& carpet = rate_fn.carpet();
  require_nonuniform(carpet, "improved_upper");
  if (!(theta >= carpet.log_ratio() && theta < 1.0)) {
    throw ThetaOutOfRange(theta_message("improved_upper", theta, carpet.log_ratio(), "1)"));
  }
  if (grid.points < 1) throw DomainError("improved_upper: grid needs at least one point per axis");

  const double delta0 = solve_delta0(rate_fn, theta).delta0;
  const double two_scale = upper_bound(rate_fn, theta);
  const Box full{delta0, carpet.log_mean_fibre() - carpet.mean_log_fibre(),
                 (1.0 - theta) * delta0, delta0, theta, 1.0};
  Candidate best = search_box(rate_fn, theta, delta0, full, grid.points);

  if (grid.refine) {
    const auto [d1_lo, d1_hi] = cell_around(best.delta1, full.d1_lo, full.d1_hi, grid.points);
    const auto [d2_lo, d2_hi] = cell_around(best.delta2, full.d2_lo, full.d2_hi, grid.points);
    const auto [e_lo, e_hi] = cell_around(best.eta, full.eta_lo, full.eta_hi, grid.points);
    const Candidate refined =
        search_box(rate_fn, theta, delta0, {d1_lo, d1_hi, d2_lo, d2_hi, e_lo, e_hi}, grid.points);
    if (refined.better_than(best)) best = refined;
  }

  if (!(best.bound < two_scale)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "improved_upper: no grid point beats the two-scale bound " << two_scale
        << " at theta = " << theta;
    throw SearchFailed(msg.str());
  }
  return {theta, delta0, best.delta1, best.delta2, best.eta, best.exponents, best.bound,
          two_scale};
}

ThreeScaleParams improved_upper(const Carpet& carpet, double theta, const GridSpec& grid) {
  return improved_upper(RateFunction(carpet), theta, grid);
}

}  // namespace bmc

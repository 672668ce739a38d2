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

#include "bmcarpet/lower_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "bmcarpet/dimension_formulas.hpp"
#include "bmcarpet/errors.hpp"

namespace bmc {

namespace {

constexpr int kGridPoints = 257;
constexpr double kGoldenWidth = 1e-10;

void require_theta(const char* op, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << op << ": theta = " << theta << " outside [0, 1]";
    throw ThetaOutOfRange(msg.str());
  }
}

void require_u(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "mixing weight u = " << u << " outside [0, 1]";
    throw UOutOfRange(msg.str());
  }
}

// Precomputed per carpet so the u-search only mixes and takes entropies.
class PsiEvaluator {
 public:
  explicit PsiEvaluator(const Carpet& carpet)
      : carpet_(carpet),
        mcm_(mcmullen_vectors(carpet)),
        uni_(uniform_vectors(carpet)),
        fibre_(fibre_sizes(carpet)) {}

  MixedVectors mix(double u) const {
    return {u, ProbVector::mix(u, uni_.maps, mcm_.maps),
            ProbVector::mix(u, uni_.columns, mcm_.columns),
            ProbVector::mix(u, uni_.coordinate, mcm_.maps)};
  }

  PsiEval operator()(double theta, double u) const {
    const MixedVectors v = mix(u);
    const double h_p = entropy(v.maps);
    const double h_qm = entropy(v.columns);
    // Q is uniform inside each column with column marginal QM.
    const double h_q = h_qm + log_geometric_mean(fibre_, v.coordinate);
    const double r = carpet_.log_ratio();
    const double dim_t = h_p / carpet_.log_n() + (1.0 - r) * h_qm / carpet_.log_m();
    const double value = dim_t - (1.0 - theta) * (h_p - h_q) / carpet_.log_n();
    return {theta, u, dim_t, value};
  }

 private:
  const Carpet& carpet_;
  McMullenVectors mcm_;
  UniformVectors uni_;
  std::vector<double> fibre_;
};

}  // namespace

MixedVectors mixed_vectors(const Carpet& carpet, double u) {
  require_u(u);
  return PsiEvaluator(carpet).mix(u);
}

PsiEval psi(const Carpet& carpet, double theta, double u) {
  require_theta("psi", theta);
  require_u(u);
  return PsiEvaluator(carpet)(theta, u);
}

PsiEval psi_at_t(const Carpet& carpet, double t, double theta) {
  require_theta("psi_at_t", theta);
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("psi_at_t: t = " + std::to_string(t) + " must be positive and finite");
  }
  const double u = theta == 0.0 ? 0.0 : std::pow(theta, t);
  return PsiEvaluator(carpet)(theta, u);
}

PsiEval lower_thm(const Carpet& carpet, double theta) {
  require_theta("lower_thm", theta);
  if (theta == 0.0) return {0.0, 0.0, hausdorff_dim(carpet), hausdorff_dim(carpet)};
  if (theta == 1.0) return {1.0, 1.0, box_dim(carpet), box_dim(carpet)};

  const PsiEvaluator eval(carpet);
  PsiEval best = eval(theta, 0.0);
  int best_index = 0;
  for (int i = 1; i < kGridPoints; ++i) {
    const PsiEval cur = eval(theta, static_cast<double>(i) / (kGridPoints - 1));
    if (cur.psi > best.psi) {
      best = cur;
      best_index = i;
    }
  }

  double a = static_cast<double>(std::max(best_index - 1, 0)) / (kGridPoints - 1);
  double b = static_cast<double>(std::min(best_index + 1, kGridPoints - 1)) / (kGridPoints - 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  PsiEval f1 = eval(theta, x1);
  PsiEval f2 = eval(theta, x2);
  while (b - a > kGoldenWidth) {
    if (f1.psi >= f2.psi) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval(theta, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval(theta, x2);
    }
  }
  for (const PsiEval& cand : {f1, f2}) {
    if (cand.psi > best.psi) best = cand;
  }
  return best;
}

double lower_linear_box(const Carpet& carpet, double theta) {
  require_theta("lower_linear_box", theta);
  return box_dim(carpet) -
         (1.0 - theta) * (carpet.log_mean_fibre() - carpet.mean_log_fibre()) / carpet.log_n();
}

double lower_ffk(const Carpet& carpet, double theta) {
  require_theta("lower_ffk", theta);
  const double gap = std::log(static_cast<double>(carpet.maps())) -
                     entropy(mcmullen_vectors(carpet).maps);
  return hausdorff_dim(carpet) + theta * gap / carpet.log_n();
}

double lower_envelope(const Carpet& carpet, double theta) {
  return std::max({lower_thm(carpet, theta).psi, lower_linear_box(carpet, theta),
                   lower_ffk(carpet, theta)});
}

}  // namespace bmc

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

#ifndef BMCARPET_CURVE_HPP_
#define BMCARPET_CURVE_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmcarpet/carpet_model.hpp"

namespace bmc {

struct CurvePoint {
  double theta = 0.0;
  double upper2 = 0.0;
  std::optional<double> upper3;
  double lower_psi = 0.0;
  double lower_linear = 0.0;
  double lower_ffk = 0.0;
  double lower_env = 0.0;
  double hdim = 0.0;
  double bdim = 0.0;
};

inline constexpr const char* kCurveHeader =
    "theta,upper2,upper3,lower_psi,lower_linear,lower_ffk,lower_env,hdim,bdim";

// i/(size-1) for i = 0..size-1, plus log_n m when no grid point is within
// 1e-12 of it. Throws DomainError for size < 2.
std::vector<double> theta_grid(const Carpet& carpet, int size);

// upper3 is filled on [log_n m + 0.01, 0.99] when include_three_scale is
// set and the carpet has non-uniform fibres.
std::vector<CurvePoint> compute_curve(const Carpet& carpet, int size, bool include_three_scale);

// 12 significant digits, shortest form, locale independent.
std::string format_real(double x);

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> points);

struct CurveCheck {
  int rows = 0;
  std::vector<std::string> violations;
};

// Checks hdim <= lower_env <= upper2 <= bdim and upper3 <= upper2 on each
// row, within 1e-9. Throws IoError when the text is not a curve CSV.
CurveCheck check_curve_csv(std::istream& in);

}  // namespace bmc

#endif  // BMCARPET_CURVE_HPP_

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

#include "bmcarpet/curve.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

#include "bmcarpet/dimension_formulas.hpp"
#include "bmcarpet/errors.hpp"
#include "bmcarpet/lower_bounds.hpp"
#include "bmcarpet/rate_function.hpp"
#include "bmcarpet/upper_bounds.hpp"

namespace bmc {

namespace {

constexpr double kOrderTolerance = 1e-9;
constexpr double kThreeScaleMargin = 0.01;
constexpr std::size_t kColumns = 9;

double parse_cell(std::string_view cell, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw IoError("line " + std::to_string(line) + ": cannot parse number '" + std::string(cell) +
                  "'");
  }
  return v;
}

}  // namespace

std::vector<double> theta_grid(const Carpet& carpet, int size) {
  if (size < 2) throw DomainError("grid size must be at least 2");
  std::vector<double> grid(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (size - 1);
  const double r = carpet.log_ratio();
  const bool present =
      std::any_of(grid.begin(), grid.end(), [r](double t) { return std::abs(t - r) <= 1e-12; });
  if (!present) grid.insert(std::upper_bound(grid.begin(), grid.end(), r), r);
  return grid;
}

std::vector<CurvePoint> compute_curve(const Carpet& carpet, int size, bool include_three_scale) {
  const RateFunction rate_fn(carpet);
  const DimPair dims = dimensions(carpet);
  const double r = carpet.log_ratio();
  const bool uniform = has_uniform_fibres(carpet);

  std::vector<CurvePoint> points;
  for (double theta : theta_grid(carpet, size)) {
    CurvePoint pt;
    pt.theta = theta;
    pt.hdim = dims.hausdorff;
    pt.bdim = dims.box;
    pt.upper2 = upper_bound(rate_fn, theta);
    pt.lower_psi = lower_thm(carpet, theta).psi;
    pt.lower_linear = lower_linear_box(carpet, theta);
    pt.lower_ffk = lower_ffk(carpet, theta);
    pt.lower_env = std::max({pt.lower_psi, pt.lower_linear, pt.lower_ffk});
    if (include_three_scale && !uniform && theta >= r + kThreeScaleMargin &&
        theta <= 1.0 - kThreeScaleMargin) {
      try {
        pt.upper3 = improved_upper(rate_fn, theta).bound;
      } catch (const SearchFailed&) {
        // Cell stays empty; the two-scale value already bounds this theta.
      }
    }
    points.push_back(pt);
  }
  return points;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 12);
  return std::string(buf.data(), ptr);
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> points) {
  out << kCurveHeader << '\n';
  for (const CurvePoint& p : points) {
    out << format_real(p.theta) << ',' << format_real(p.upper2) << ','
        << (p.upper3 ? format_real(*p.upper3) : std::string()) << ',' << format_real(p.lower_psi)
        << ',' << format_real(p.lower_linear) << ',' << format_real(p.lower_ffk) << ','
        << format_real(p.lower_env) << ',' << format_real(p.hdim) << ',' << format_real(p.bdim)
        << '\n';
  }
}

CurveCheck check_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty curve file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCurveHeader) throw IoError("unexpected header '" + line + "'");

  CurveCheck result;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != kColumns) {
      throw IoError("line " + std::to_string(line_no) + ": expected 9 fields, found " +
                    std::to_string(cells.size()));
    }
    const double upper2 = parse_cell(cells[1], line_no);
    const double env = parse_cell(cells[6], line_no);
    const double hdim = parse_cell(cells[7], line_no);
    const double bdim = parse_cell(cells[8], line_no);
    for (std::size_t c : {0u, 3u, 4u, 5u}) parse_cell(cells[c], line_no);

    const auto fail = [&](const char* what) {
      result.violations.push_back("line " + std::to_string(line_no) + " (theta = " +
                                  std::string(cells[0]) + "): " + what);
    };
    if (hdim > env + kOrderTolerance) fail("hdim > lower_env");
    if (env > upper2 + kOrderTolerance) fail("lower_env > upper2");
    if (upper2 > bdim + kOrderTolerance) fail("upper2 > bdim");
    if (!cells[2].empty() && parse_cell(cells[2], line_no) > upper2 + kOrderTolerance) {
      fail("upper3 > upper2");
    }
    ++result.rows;
  }
  return result;
}

}  // namespace bmc

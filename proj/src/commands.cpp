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

#include "bmcarpet/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <utility>

#include "bmcarpet/carpet_model.hpp"
#include "bmcarpet/curve.hpp"
#include "bmcarpet/dimension_formulas.hpp"
#include "bmcarpet/errors.hpp"
#include "bmcarpet/rate_function.hpp"
#include "bmcarpet/symbolic_oracle.hpp"
#include "bmcarpet/upper_bounds.hpp"

namespace bmc {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kUniformDelta0 = 1e-6;
constexpr int kDefaultRatePoints = 11;

// Non-finite values have no JSON form and become null.
Json jreal(double x) {
  if (!std::isfinite(x)) return nullptr;
  const std::string text = format_real(x);
  double v = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), v);
  return v;
}

class Table {
 public:
  void row(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
  void row(std::string key, double value) { row(std::move(key), format_real(value)); }
  void print(std::ostream& out) const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_) out << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

Carpet load_carpet(const std::string& path) { return parse_carpet(load_spec_file(path)); }

int guarded(OutputStreams io, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InvalidSpec& e) {
    io.err << "error: invalid spec: " << e.what() << '\n';
    return kExitSpec;
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

std::string join_counts(const Carpet& carpet) {
  std::string s;
  for (int c : carpet.column_counts()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(c);
  }
  return s;
}

}  // namespace

int cmd_dims(const std::string& spec_path, bool json, OutputStreams io) {
  return guarded(io, [&] {
    const Carpet carpet = load_carpet(spec_path);
    const DimPair d = dimensions(carpet);
    const bool uniform = has_uniform_fibres(carpet);
    if (json) {
      Json j;
      j["m"] = carpet.m();
      j["n"] = carpet.n();
      j["N"] = carpet.maps();
      j["M"] = carpet.columns();
      j["col_counts"] = std::vector<int>(carpet.column_counts().begin(), carpet.column_counts().end());
      j["dim_H"] = jreal(d.hausdorff);
      j["dim_B"] = jreal(d.box);
      j["gap"] = jreal(d.box - d.hausdorff);
      j["uniform_fibres"] = uniform;
      j["c"] = jreal(carpet.log_mean_fibre());
      j["mean_log_N"] = jreal(carpet.mean_log_fibre());
      j["r"] = jreal(carpet.log_ratio());
      io.out << j.dump(2) << '\n';
    } else {
      Table t;
      t.row("m", std::to_string(carpet.m()));
      t.row("n", std::to_string(carpet.n()));
      t.row("N", std::to_string(carpet.maps()));
      t.row("M", std::to_string(carpet.columns()));
      t.row("col_counts", join_counts(carpet));
      t.row("dim_H", d.hausdorff);
      t.row("dim_B", d.box);
      t.row("gap", d.box - d.hausdorff);
      t.row("uniform_fibres", uniform ? "true" : "false");
      t.row("c = log(N/M)", carpet.log_mean_fibre());
      t.row("mean_log_N", carpet.mean_log_fibre());
      t.row("r = log_n m", carpet.log_ratio());
      t.print(io.out);
      if (uniform) io.out << "uniform vertical fibres: bounds coincide\n";
    }
    return kExitOk;
  });
}

int cmd_curve(const std::string& spec_path, int grid_size, bool include_three_scale,
              const std::string& out_path, OutputStreams io) {
  return guarded(io, [&] {
    const Carpet carpet = load_carpet(spec_path);
    const std::vector<CurvePoint> points = compute_curve(carpet, grid_size, include_three_scale);
    if (out_path.empty()) {
      write_curve_csv(io.out, points);
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw IoError("cannot write '" + out_path + "'");
      write_curve_csv(file, points);
      file.flush();
      if (!file) throw IoError("write to '" + out_path + "' failed");
    }
    if (include_three_scale) {
      io.err << "note: upper3 is the three-scale cover bound with a searched, uncertified eta\n";
    }
    return kExitOk;
  });
}

int cmd_rate(const std::string& spec_path, const std::vector<double>& xs, bool json,
             OutputStreams io) {
  return guarded(io, [&] {
    const Carpet carpet = load_carpet(spec_path);
    std::vector<double> points = xs;
    if (points.empty()) {
      const double lo = carpet.mean_log_fibre();
      const double hi = std::log(static_cast<double>(carpet.max_column_count()));
      for (int i = 0; i < kDefaultRatePoints; ++i) {
        points.push_back(lo + (hi - lo) * i / (kDefaultRatePoints - 1));
      }
    }
    std::vector<RateEval> rows;
    for (double x : points) rows.push_back(rate(carpet, x));
    if (json) {
      Json arr = Json::array();
      for (const RateEval& e : rows) {
        arr.push_back({{"x", jreal(e.x)}, {"I", jreal(e.value)}, {"lambda_star", jreal(e.lambda_star)}});
      }
      io.out << arr.dump(2) << '\n';
    } else {
      io.out << std::left << std::setw(20) << "x" << std::setw(20) << "I" << "lambda_star\n";
      for (const RateEval& e : rows) {
        io.out << std::left << std::setw(20) << format_real(e.x) << std::setw(20)
               << format_real(e.value) << format_real(e.lambda_star) << '\n';
      }
    }
    return kExitOk;
  });
}

int cmd_oracle(const std::string& spec_path, const std::string& theta_text, long K,
               std::optional<double> s, std::optional<double> delta0, bool json,
               OutputStreams io) {
  return guarded(io, [&] {
    const Carpet carpet = load_carpet(spec_path);
    const Theta theta = parse_theta(theta_text);
    if (theta.value < carpet.log_ratio()) {
      throw RegimeError("theta = " + format_real(theta.value) + " is below log_n m = " +
                        format_real(carpet.log_ratio()) +
                        ": the column window regime no longer applies there");
    }
    const bool uniform = has_uniform_fibres(carpet);
    const RateFunction rate_fn(carpet);
    const double d0 = delta0 ? *delta0
                             : (uniform ? kUniformDelta0 : solve_delta0(rate_fn, theta.value).delta0);
    const double exponent = s ? *s : upper_bound(rate_fn, theta.value);
    const OracleReport rep = cover_cost_log(carpet, K, theta, d0, exponent);
    const double gap = std::abs(rep.bad_exponent - rep.asymptotic_bad_exponent);
    const auto exact = [](const std::optional<BigInt>& v) { return v ? v->str() : std::string(); };

    if (json) {
      Json j;
      j["K"] = rep.K;
      j["theta"] = jreal(rep.theta);
      j["delta0"] = jreal(rep.delta0);
      j["s"] = jreal(*rep.s);
      j["L_K"] = rep.level_K;
      j["K_over_theta"] = rep.scaled;
      j["L_K_over_theta"] = rep.level_scaled;
      j["window"] = rep.window;
      j["log10_total_count"] = jreal(rep.log10_total_count);
      j["log10_good_count"] = jreal(rep.log10_good_count);
      j["log10_bad_count"] = jreal(rep.log10_bad_count);
      j["log10_window_count"] = jreal(rep.log10_d_count);
      j["good_count"] = rep.good_count ? Json(exact(rep.good_count)) : Json(nullptr);
      j["bad_count"] = rep.bad_count ? Json(exact(rep.bad_count)) : Json(nullptr);
      j["bad_exponent"] = jreal(rep.bad_exponent);
      j["asymptotic_bad_exponent"] = jreal(rep.asymptotic_bad_exponent);
      j["exponent_gap"] = jreal(gap);
      j["log10_cost_bad"] = jreal(rep.log10_cost_bad);
      j["log10_cost_good"] = jreal(rep.log10_cost_good);
      j["log10_cost_total"] = jreal(rep.log10_cost_total);
      io.out << j.dump(2) << '\n';
    } else {
      Table t;
      t.row("K", std::to_string(rep.K));
      t.row("theta", rep.theta);
      t.row("delta0", rep.delta0);
      t.row("s", *rep.s);
      t.row("L(K)", std::to_string(rep.level_K));
      t.row("floor(K/theta)", std::to_string(rep.scaled));
      t.row("L(floor(K/theta))", std::to_string(rep.level_scaled));
      t.row("window", std::to_string(rep.window));
      t.row("log10_total_count", rep.log10_total_count);
      t.row("log10_good_count", rep.log10_good_count);
      t.row("log10_bad_count", rep.log10_bad_count);
      t.row("log10_window_count", rep.log10_d_count);
      if (rep.good_count) {
        t.row("good_count", exact(rep.good_count));
        t.row("bad_count", exact(rep.bad_count));
      }
      t.row("bad_exponent", rep.bad_exponent);
      t.row("asymptotic_bad_exponent", rep.asymptotic_bad_exponent);
      t.row("exponent_gap", gap);
      t.row("log10_cost_bad", rep.log10_cost_bad);
      t.row("log10_cost_good", rep.log10_cost_good);
      t.row("log10_cost_total", rep.log10_cost_total);
      t.print(io.out);
    }
    return kExitOk;
  });
}

int cmd_check(const std::string& csv_path, bool json, OutputStreams io) {
  return guarded(io, [&] {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + csv_path + "'");
    const CurveCheck result = check_curve_csv(in);
    if (json) {
      io.out << Json{{"rows", result.rows}, {"violations", result.violations}}.dump(2) << '\n';
    } else {
      io.out << "rows " << result.rows << ", violations " << result.violations.size() << '\n';
      for (const std::string& v : result.violations) io.out << "  " << v << '\n';
    }
    return result.violations.empty() ? kExitOk : kExitViolation;
  });
}

}  // namespace bmc

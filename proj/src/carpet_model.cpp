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

#include "bmcarpet/carpet_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "bmcarpet/errors.hpp"

namespace bmc {

namespace {

using nlohmann::json;

int require_int(const json& value, const char* what) {
  if (!value.is_number_integer()) {
    throw InvalidSpec(std::string("field '") + what + "' must be an integer");
  }
  const auto v = value.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw InvalidSpec(std::string("field '") + what + "' is out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

CarpetSpec parse_spec_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InvalidSpec(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidSpec("spec must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "m" && key != "n" && key != "digits") {
      throw InvalidSpec("unknown field '" + key + "'");
    }
  }
  for (const char* key : {"m", "n", "digits"}) {
    if (!doc.contains(key)) throw InvalidSpec(std::string("missing field '") + key + "'");
  }
  CarpetSpec spec;
  spec.m = require_int(doc["m"], "m");
  spec.n = require_int(doc["n"], "n");
  const json& digits = doc["digits"];
  if (!digits.is_array()) throw InvalidSpec("field 'digits' must be an array");
  for (const json& d : digits) {
    if (!d.is_array() || d.size() != 2) {
      throw InvalidSpec("each digit must be a [col, row] pair");
    }
    spec.digits.push_back({require_int(d[0], "digits[][0]"), require_int(d[1], "digits[][1]")});
  }
  return spec;
}

CarpetSpec load_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read spec file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_json(buf.str());
}

std::string spec_to_json(const CarpetSpec& spec) {
  json doc;
  doc["m"] = spec.m;
  doc["n"] = spec.n;
  doc["digits"] = json::array();
  for (const Digit& d : spec.digits) doc["digits"].push_back({d.col, d.row});
  return doc.dump();
}

Carpet parse_carpet(const CarpetSpec& spec) {
  if (spec.m < 2) throw InvalidSpec("m must be at least 2");
  if (spec.n <= spec.m) throw InvalidSpec("n must be strictly greater than m");
  if (spec.digits.empty()) throw InvalidSpec("digit list must be non-empty");
  for (const Digit& d : spec.digits) {
    if (d.col < 0 || d.col >= spec.m || d.row < 0 || d.row >= spec.n) {
      throw InvalidSpec("digit (" + std::to_string(d.col) + "," + std::to_string(d.row) +
                        ") lies outside [0,m)x[0,n)");
    }
  }

  Carpet c;
  c.spec_ = spec;
  std::sort(c.spec_.digits.begin(), c.spec_.digits.end());
  const auto dup = std::adjacent_find(c.spec_.digits.begin(), c.spec_.digits.end());
  if (dup != c.spec_.digits.end()) {
    throw InvalidSpec("duplicate digit (" + std::to_string(dup->col) + "," +
                      std::to_string(dup->row) + ")");
  }

  int prev_col = -1;
  for (const Digit& d : c.spec_.digits) {
    if (d.col != prev_col) {
      c.first_map_.push_back(static_cast<int>(c.column_of_.size()));
      c.column_counts_.push_back(0);
      prev_col = d.col;
    }
    ++c.column_counts_.back();
    c.column_of_.push_back(static_cast<int>(c.column_counts_.size()) - 1);
  }

  std::map<int, int> classes;
  for (int count : c.column_counts_) ++classes[count];
  for (auto [size, cols] : classes) c.classes_.push_back({size, cols});
  c.max_count_ = *std::max_element(c.column_counts_.begin(), c.column_counts_.end());

  const double big_n = static_cast<double>(c.maps());
  const double big_m = static_cast<double>(c.columns());
  c.log_m_ = std::log(static_cast<double>(spec.m));
  c.log_n_ = std::log(static_cast<double>(spec.n));
  c.log_ratio_ = c.log_m_ / c.log_n_;
  c.log_mean_fibre_ = std::log(big_n / big_m);
  double acc = 0.0;
  for (int count : c.column_counts_) acc += std::log(static_cast<double>(count));
  c.mean_log_fibre_ = acc / big_m;
  // Jensen: the mean of logs never exceeds the log of the mean. Rounding can
  // push a uniform carpet a few ulps the wrong way.
  if (classes.size() == 1) c.mean_log_fibre_ = c.log_mean_fibre_;
  return c;
}

Carpet carpet_from_column_counts(int m, int n, std::span<const int> counts) {
  CarpetSpec spec{m, n, {}};
  for (std::size_t col = 0; col < counts.size(); ++col) {
    for (int row = 0; row < counts[col]; ++row) {
      spec.digits.push_back({static_cast<int>(col), row});
    }
  }
  return parse_carpet(spec);
}

bool has_uniform_fibres(const Carpet& carpet) { return carpet.fibre_classes().size() == 1; }

ProbVector::ProbVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidProbVector("probability vector must be non-empty");
  double total = 0.0;
  for (double e : entries_) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw InvalidProbVector("probability vector has a negative or non-finite entry");
    }
    total += e;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probability vector sums to " << total << ", not 1";
    throw InvalidProbVector(msg.str());
  }
  for (double& e : entries_) e /= total;
}

ProbVector ProbVector::mix(double u, const ProbVector& a, const ProbVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("cannot mix vectors of different sizes");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u * a[i] + (1.0 - u) * b[i];
  return ProbVector(std::move(out));
}

double entropy(const ProbVector& p) {
  double h = 0.0;
  for (double x : p.entries()) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double log_geometric_mean(std::span<const double> c, const ProbVector& p) {
  if (c.size() != p.size()) {
    throw DimensionMismatch("log_geometric_mean: " + std::to_string(c.size()) + " values vs " +
                            std::to_string(p.size()) + " weights");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (p[i] > 0.0) acc += p[i] * std::log(c[i]);
  }
  return acc;
}

std::vector<double> fibre_sizes(const Carpet& carpet) {
  std::vector<double> out(static_cast<std::size_t>(carpet.maps()));
  for (int i = 0; i < carpet.maps(); ++i) {
    out[static_cast<std::size_t>(i)] = carpet.column_counts()[static_cast<std::size_t>(carpet.column_of(i))];
  }
  return out;
}

McMullenVectors mcmullen_vectors(const Carpet& carpet) {
  const double r = carpet.log_ratio();
  double norm = 0.0;
  for (int count : carpet.column_counts()) norm += std::pow(static_cast<double>(count), r);
  std::vector<double> maps(static_cast<std::size_t>(carpet.maps()));
  std::vector<double> cols(static_cast<std::size_t>(carpet.columns()));
  for (int j = 0; j < carpet.columns(); ++j) {
    const double count = carpet.column_counts()[static_cast<std::size_t>(j)];
    cols[static_cast<std::size_t>(j)] = std::pow(count, r) / norm;
  }
  for (int i = 0; i < carpet.maps(); ++i) {
    const double count = carpet.column_counts()[static_cast<std::size_t>(carpet.column_of(i))];
    maps[static_cast<std::size_t>(i)] = std::pow(count, r - 1.0) / norm;
  }
  return {ProbVector(std::move(maps)), ProbVector(std::move(cols))};
}

UniformVectors uniform_vectors(const Carpet& carpet) {
  const auto big_n = static_cast<std::size_t>(carpet.maps());
  const auto big_m = static_cast<std::size_t>(carpet.columns());
  std::vector<double> coord(big_n);
  for (std::size_t i = 0; i < big_n; ++i) {
    const double count = carpet.column_counts()[static_cast<std::size_t>(carpet.column_of(static_cast<int>(i)))];
    coord[i] = 1.0 / (static_cast<double>(big_m) * count);
  }
  return {ProbVector(std::vector<double>(big_n, 1.0 / static_cast<double>(big_n))),
          ProbVector(std::vector<double>(big_m, 1.0 / static_cast<double>(big_m))),
          ProbVector(std::move(coord))};
}

std::vector<double> column_marginal(const Carpet& carpet, const ProbVector& p) {
  if (p.size() != static_cast<std::size_t>(carpet.maps())) {
    throw DimensionMismatch("column_marginal: vector is not over the maps");
  }
  std::vector<double> out(static_cast<std::size_t>(carpet.columns()), 0.0);
  for (int i = 0; i < carpet.maps(); ++i) {
    out[static_cast<std::size_t>(carpet.column_of(i))] += p[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace bmc

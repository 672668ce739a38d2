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

#ifndef BMCARPET_CARPET_MODEL_HPP_
#define BMCARPET_CARPET_MODEL_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bmc {

// A grid cell (column, row) of the m x n subdivision of the unit square.
struct Digit {
  int col = 0;
  int row = 0;

  friend auto operator<=>(const Digit&, const Digit&) = default;
};

// Raw, unvalidated description of a Bedford-McMullen carpet.
struct CarpetSpec {
  int m = 0;  // columns
  int n = 0;  // rows
  std::vector<Digit> digits;
};

// Strict JSON reader for {"m": int, "n": int, "digits": [[col,row], ...]}.
// Throws InvalidSpec on malformed input and IoError on unreadable files.
CarpetSpec parse_spec_json(std::string_view text);
CarpetSpec load_spec_file(const std::filesystem::path& path);
std::string spec_to_json(const CarpetSpec& spec);

// Fibre sizes N_j that share one value, and how many columns carry it.
struct FibreClass {
  int size = 0;
  int columns = 0;
};

// Validated carpet with its derived constants. Maps are numbered 0..N-1 in
// ascending (column, row) order, so the maps of one column are contiguous
// and column ranks follow ascending column index.
class Carpet {
 public:
  const CarpetSpec& spec() const { return spec_; }
  int m() const { return spec_.m; }
  int n() const { return spec_.n; }

  int maps() const { return static_cast<int>(column_of_.size()); }        // N
  int columns() const { return static_cast<int>(column_counts_.size()); }  // M
  std::span<const int> column_counts() const { return column_counts_; }
  int column_of(int map) const { return column_of_[static_cast<std::size_t>(map)]; }
  // Index of the first map of a column rank.
  int first_map_of(int column) const { return first_map_[static_cast<std::size_t>(column)]; }
  int max_column_count() const { return max_count_; }
  std::span<const FibreClass> fibre_classes() const { return classes_; }

  double log_m() const { return log_m_; }
  double log_n() const { return log_n_; }
  // log m / log n, the exponent relating column and row scales.
  double log_ratio() const { return log_ratio_; }
  // log(N/M)
  double log_mean_fibre() const { return log_mean_fibre_; }
  // (1/M) sum_j log N_j; equals log_mean_fibre() iff fibres are uniform.
  double mean_log_fibre() const { return mean_log_fibre_; }

 private:
  friend Carpet parse_carpet(const CarpetSpec& spec);
  Carpet() = default;

  CarpetSpec spec_;
  std::vector<int> column_counts_;
  std::vector<int> column_of_;
  std::vector<int> first_map_;
  std::vector<FibreClass> classes_;
  int max_count_ = 0;
  double log_m_ = 0.0;
  double log_n_ = 0.0;
  double log_ratio_ = 0.0;
  double log_mean_fibre_ = 0.0;
  double mean_log_fibre_ = 0.0;
};

// Validates and canonicalizes. Throws InvalidSpec naming the violated rule.
Carpet parse_carpet(const CarpetSpec& spec);

// Builds a carpet whose column j (0-based) holds counts[j] maps in rows
// 0..counts[j]-1. Convenience for tests and the named example families.
Carpet carpet_from_column_counts(int m, int n, std::span<const int> counts);

bool has_uniform_fibres(const Carpet& carpet);

// Non-negative vector summing to one. Inputs within 1e-12 of unit mass are
// renormalized; anything else throws InvalidProbVector.
class ProbVector {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit ProbVector(std::vector<double> entries);

  std::span<const double> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }

  // u * a + (1 - u) * b, entrywise.
  static ProbVector mix(double u, const ProbVector& a, const ProbVector& b);

 private:
  std::vector<double> entries_;
};

// Shannon entropy in nats with 0 log 0 := 0.
double entropy(const ProbVector& p);

// sum_i p_i log c_i, the log of the p-weighted geometric mean of c.
double log_geometric_mean(std::span<const double> c, const ProbVector& p);

// The fibre-size vector (N_phi(0), ..., N_phi(N-1)) over maps.
std::vector<double> fibre_sizes(const Carpet& carpet);

struct McMullenVectors {
  ProbVector maps;     // p-hat over [N]
  ProbVector columns;  // q-hat^M over [M]
};
McMullenVectors mcmullen_vectors(const Carpet& carpet);

struct UniformVectors {
  ProbVector maps;        // 1/N each
  ProbVector columns;     // 1/M each
  ProbVector coordinate;  // 1/(M N_phi(i)): column mass spread evenly in columns
};
UniformVectors uniform_vectors(const Carpet& carpet);

// Sums a map-level vector over each column.
std::vector<double> column_marginal(const Carpet& carpet, const ProbVector& p);

}  // namespace bmc

#endif  // BMCARPET_CARPET_MODEL_HPP_

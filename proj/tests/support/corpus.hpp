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

#ifndef BMCARPET_TESTS_CORPUS_HPP_
#define BMCARPET_TESTS_CORPUS_HPP_

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "bmcarpet/carpet_model.hpp"

namespace corpus {

struct Entry {
  std::string name;
  int m;
  int n;
  std::vector<int> counts;  // N_j per non-empty column
  bmc::Carpet carpet;
};

inline Entry make(std::string name, int m, int n, std::vector<int> counts) {
  bmc::Carpet c = bmc::carpet_from_column_counts(m, n, counts);
  return {std::move(name), m, n, std::move(counts), std::move(c)};
}

inline Entry e1() { return make("e1", 2, 3, {2, 1}); }

inline std::vector<int> spike_counts() {
  std::vector<int> c(10, 2);
  c[0] = 12;
  return c;
}
inline Entry spike(int n) { return make("spike_n" + std::to_string(n), 10, n, spike_counts()); }

// Random carpets with 2 <= m <= 6 and m < n <= 12; fixed seed. Rows are drawn
// as a random subset so the digit layout varies, not only the counts.
inline std::vector<Entry> random_carpets(int count, unsigned seed = 20261016u) {
  std::mt19937 rng(seed);
  std::vector<Entry> out;
  for (int k = 0; k < count; ++k) {
    const int m = std::uniform_int_distribution<int>(2, 6)(rng);
    const int n = std::uniform_int_distribution<int>(m + 1, 12)(rng);
    std::vector<int> cols(static_cast<std::size_t>(m));
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(cols.begin(), cols.end(), rng);
    const int M = std::uniform_int_distribution<int>(1, m)(rng);
    bmc::CarpetSpec spec{m, n, {}};
    std::vector<int> chosen(cols.begin(), cols.begin() + M);
    std::sort(chosen.begin(), chosen.end());
    std::vector<int> counts;
    for (int col : chosen) {
      std::vector<int> rows(static_cast<std::size_t>(n));
      std::iota(rows.begin(), rows.end(), 0);
      std::shuffle(rows.begin(), rows.end(), rng);
      const int Nj = std::uniform_int_distribution<int>(1, n)(rng);
      for (int i = 0; i < Nj; ++i) spec.digits.push_back({col, rows[static_cast<std::size_t>(i)]});
      counts.push_back(Nj);
    }
    out.push_back({"random" + std::to_string(k), m, n, counts, bmc::parse_carpet(spec)});
  }
  return out;
}

inline std::vector<Entry> uniform_carpets() {
  return {make("uniform_2_4", 2, 4, {2, 2}), make("uniform_3_5", 3, 5, {3, 3, 3}),
          make("uniform_single", 4, 9, {5}), make("sierpinski_like", 2, 3, {1, 1}),
          make("full_rows", 3, 7, {7, 7})};
}

}  // namespace corpus

#endif  // BMCARPET_TESTS_CORPUS_HPP_

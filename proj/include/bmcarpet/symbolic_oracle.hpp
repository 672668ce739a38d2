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

#ifndef BMCARPET_SYMBOLIC_ORACLE_HPP_
#define BMCARPET_SYMBOLIC_ORACLE_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bmcarpet/carpet_model.hpp"

namespace bmc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Largest l with n^l <= m^K. Exact integer comparison up to m^K of 2^17
// bits; beyond that a long double estimate is used unless it lies within
// 1e-9 of an integer, in which case the exact comparison decides.
long level_L(const Carpet& carpet, long K);

// A theta value, optionally carrying the exact rational it was parsed from.
struct Theta {
  Theta(double v) : value(v) {}  // NOLINT(google-explicit-constructor)
  Theta(double v, Rational q) : value(v), exact(std::move(q)) {}

  double value;
  std::optional<Rational> exact;
};

// Accepts "p/q" and plain decimals ("0.75") exactly; other float syntax
// parses to a value without an exact form. Throws DomainError.
Theta parse_theta(std::string_view text);

// floor(K / theta): exact when theta carries a rational, otherwise the
// floating quotient snapped to the nearest integer when within
// 1e-12 max(1, K/theta) of it.
long scaled_level(long K, const Theta& theta);

// Level-K approximate square: L(K) map indices then K - L(K) column ranks,
// all 0-based.
struct SquareId {
  long level = 0;
  std::vector<int> prefix;
  std::vector<int> columns;

  friend bool operator==(const SquareId&, const SquareId&) = default;
};

// The square containing the cylinder of `word` (map indices), at level
// word.size().
SquareId square_of_word(const Carpet& carpet, std::span<const int> word);

// Number of level-K cylinders in the square: prod of N_j over its columns.
BigInt fibre_count(const Carpet& carpet, const SquareId& sq);

// Level-k2 squares inside one level-k1 square, k1 <= k2. When
// L(k2) <= k1 the window holds the column ranks at positions
// L(k1)+1..L(k2); otherwise k1 plays the role of K and the window holds
// positions L(K)+1..K. Throws RegimeMismatch on a window of the wrong
// length.
BigInt squares_within(const Carpet& carpet, long k1, long k2, std::span<const int> window);

// One multiplicity vector over the fibre classes for a window of W column
// picks.
struct WindowClass {
  std::vector<int> multiplicity;  // per fibre class, summing to W
  double sum_log = 0.0;           // sum of log N_j, also log prod N_j
  double log_sequences = 0.0;     // log of the number of column sequences
};

// Every multiplicity vector for windows of length W. Size C(W+C-1, C-1)
// for C fibre classes.
std::vector<WindowClass> window_classes(const Carpet& carpet, long W);

// Exact number of column sequences realizing a window class.
BigInt window_class_count(const Carpet& carpet, const WindowClass& wc);

struct OracleReport {
  long K = 0;
  double theta = 0.0;
  double delta0 = 0.0;
  long level_K = 0;         // L(K)
  long scaled = 0;          // floor(K/theta)
  long level_scaled = 0;    // L(floor(K/theta))
  long window = 0;          // W = L(floor(K/theta)) - L(K)

  double log10_total_count = 0.0;  // N^{L(K)} M^{K-L(K)}
  double log10_good_count = 0.0;
  double log10_bad_count = 0.0;
  double log10_d_count = 0.0;      // windows with mean log-count above threshold
  // Exact counts, filled when W <= 30.
  std::optional<BigInt> good_count;
  std::optional<BigInt> bad_count;
  std::optional<BigInt> d_count;

  double bad_exponent = 0.0;             // log #Bad / (K log m)
  double asymptotic_bad_exponent = 0.0;  // box - I(c - delta0)(1/theta - 1)/log n

  // Filled by cover_cost_log only.
  std::optional<double> s;
  double log10_cost_bad = 0.0;
  double log10_cost_good = 0.0;
  double log10_cost_total = 0.0;
};

inline constexpr long kExactWindowLimit = 30;

// Good/Bad split of the level-K squares: a square is Bad when its window
// mean of log N_j exceeds log(N/M) - delta0 by more than 1e-12 max(1, |.|),
// Good otherwise. Throws RegimeError for theta < log_n m or W = 0,
// ThetaOutOfRange for theta >= 1, DomainError for K < 1 or delta0 <= 0.
OracleReport good_bad_counts(const Carpet& carpet, long K, const Theta& theta, double delta0);

// Adds the two-scale cover cost at exponent s: Bad squares kept at level K,
// Good squares subdivided to level floor(K/theta). Diameter constants are
// omitted.
OracleReport cover_cost_log(const Carpet& carpet, long K, const Theta& theta, double delta0,
                            double s);

// log P(mean of ell uniform picks of log N_j >= x), exact up to rounding of
// the multinomial weights. -inf when no window reaches x.
double tail_log_probability(const Carpet& carpet, long ell, double x);

// -log P(mean >= x)/ell. Throws DomainError unless ell >= 1 and
// x is in (mean log N_j, log max N_j].
double empirical_rate(const Carpet& carpet, long ell, double x);

// Product measure nu_K: p on the first L(K) symbols, q afterwards.
struct MeasureSpec {
  Carpet carpet;
  long K = 0;
  ProbVector p;
  ProbVector q;
};

double nu_cylinder(const MeasureSpec& spec, std::span<const int> word);
double log_nu_cylinder(const MeasureSpec& spec, std::span<const int> word);
// Throws InvalidMeasure unless p and q are constant within columns (1e-12).
double nu_square(const MeasureSpec& spec, const SquareId& sq);
// E[-log nu_K(B_k)] under nu_K:
//   L(K) H(p) + (k - L(K)) H(q) - (k - L(k)) sum_i q_i log N_phi(i)
double expected_log_nu(const MeasureSpec& spec, long k);

// The same measure with exact rational weights.
struct RationalMeasure {
  Carpet carpet;
  long K = 0;
  std::vector<Rational> p;
  std::vector<Rational> q;
};

Rational nu_cylinder_exact(const RationalMeasure& spec, std::span<const int> word);
Rational nu_square_exact(const RationalMeasure& spec, const SquareId& sq);

}  // namespace bmc

#endif  // BMCARPET_SYMBOLIC_ORACLE_HPP_

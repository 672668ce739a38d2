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

#include "bmcarpet/symbolic_oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

#include "bmcarpet/dimension_formulas.hpp"
#include "bmcarpet/errors.hpp"
#include "bmcarpet/log_math.hpp"
#include "bmcarpet/rate_function.hpp"

namespace bmc {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kExactBits = 131072.0;
constexpr double kNearInteger = 1e-9;
constexpr double kMaxWindowClasses = 5e7;

std::string real(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

long level_exact(int m, int n, long K) {
  const BigInt target = boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(K));
  long l = static_cast<long>(std::floor(static_cast<long double>(K) * std::log(static_cast<long double>(m)) /
                                        std::log(static_cast<long double>(n))));
  l = std::max(l, 0L);
  BigInt power = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(l));
  while (power > target) {
    power /= n;
    --l;
  }
  while (power * n <= target) {
    power *= n;
    ++l;
  }
  return l;
}

BigInt int_pow(long base, long exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

void check_square(const Carpet& carpet, const SquareId& sq) {
  if (sq.level < 0) throw DomainError("square level must be non-negative");
  const long L = level_L(carpet, sq.level);
  if (static_cast<long>(sq.prefix.size()) != L ||
      static_cast<long>(sq.columns.size()) != sq.level - L) {
    throw DomainError("square at level " + std::to_string(sq.level) + " needs " +
                      std::to_string(L) + " map symbols and " + std::to_string(sq.level - L) +
                      " column symbols");
  }
  for (int i : sq.prefix) {
    if (i < 0 || i >= carpet.maps()) throw DomainError("map index out of range in square");
  }
  for (int j : sq.columns) {
    if (j < 0 || j >= carpet.columns()) throw DomainError("column rank out of range in square");
  }
}

void check_word(const Carpet& carpet, std::span<const int> word) {
  for (int i : word) {
    if (i < 0 || i >= carpet.maps()) {
      throw DomainError("map index " + std::to_string(i) + " outside [0, " +
                        std::to_string(carpet.maps()) + ")");
    }
  }
}

// I(x) extended by 0 below the mean and +inf past log max N_j.
double rate_extended(const Carpet& carpet, double x) {
  if (x <= carpet.mean_log_fibre()) return 0.0;
  const double top = std::log(static_cast<double>(carpet.max_column_count()));
  if (x > top + kTieTolerance) return std::numeric_limits<double>::infinity();
  return rate(carpet, std::min(x, top)).value;
}

struct Window {
  long K1, L0, L1, W;
};

Window oracle_window(const Carpet& carpet, long K, const Theta& theta, double delta0) {
  if (K < 1) throw DomainError("K = " + std::to_string(K) + " must be at least 1");
  if (!(delta0 > 0.0) || !std::isfinite(delta0)) {
    throw DomainError("delta0 = " + real(delta0) + " must be positive and finite");
  }
  if (!(theta.value < 1.0)) {
    throw ThetaOutOfRange("oracle: theta = " + real(theta.value) + " must be below 1");
  }
  if (!(theta.value >= carpet.log_ratio())) {
    throw RegimeError("oracle: theta = " + real(theta.value) + " is below log_n m = " +
                      real(carpet.log_ratio()) +
                      "; there L(K/theta) exceeds K and the square count changes regime");
  }
  const long K1 = scaled_level(K, theta);
  const long L0 = level_L(carpet, K);
  const long L1 = level_L(carpet, K1);
  if (L1 > K) {
    throw RegimeError("oracle: L(floor(K/theta)) = " + std::to_string(L1) + " exceeds K = " +
                      std::to_string(K));
  }
  if (L1 == L0) {
    throw RegimeError("oracle: empty column window at K = " + std::to_string(K) +
                      "; increase K");
  }
  return {K1, L0, L1, L1 - L0};
}

bool is_bad(const WindowClass& wc, long W, double threshold) {
  return wc.sum_log > static_cast<double>(W) * threshold +
                          kTieTolerance * std::max(1.0, std::abs(threshold)) * static_cast<double>(W);
}

template <class Weights>
void require_column_constant(const Carpet& carpet, const Weights& w, const char* name) {
  for (int i = 0; i < carpet.maps(); ++i) {
    const auto& a = w[static_cast<std::size_t>(i)];
    const auto& b = w[static_cast<std::size_t>(carpet.first_map_of(carpet.column_of(i)))];
    bool equal;
    if constexpr (std::is_same_v<std::decay_t<decltype(a)>, Rational>) {
      equal = a == b;
    } else {
      equal = std::abs(a - b) <= kTieTolerance;
    }
    if (!equal) {
      throw InvalidMeasure(std::string(name) + " is not constant on column " +
                           std::to_string(carpet.column_of(i)));
    }
  }
}

template <class Weights>
void require_sizes(const Carpet& carpet, const Weights& p, const Weights& q) {
  const auto n = static_cast<std::size_t>(carpet.maps());
  if (p.size() != n || q.size() != n) {
    throw DimensionMismatch("measure vectors must have one entry per map (" + std::to_string(n) +
                            ")");
  }
}

}  // namespace

long level_L(const Carpet& carpet, long K) {
  if (K < 0) throw DomainError("level_L: K = " + std::to_string(K) + " is negative");
  if (K == 0) return 0;
  const int m = carpet.m();
  const int n = carpet.n();
  if (static_cast<double>(K) * std::log2(static_cast<double>(m)) <= kExactBits) {
    return level_exact(m, n, K);
  }
  const long double est = static_cast<long double>(K) * std::log(static_cast<long double>(m)) /
                          std::log(static_cast<long double>(n));
  const long double frac = est - std::floor(est);
  if (frac > kNearInteger && frac < 1.0L - kNearInteger) return static_cast<long>(std::floor(est));
  return level_exact(m, n, K);
}

Theta parse_theta(std::string_view text) {
  const auto fail = [&] { throw DomainError("cannot parse theta '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  const auto parse_long = [&](std::string_view s) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) fail();
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const long num = parse_long(text.substr(0, slash));
    const long den = parse_long(text.substr(slash + 1));
    if (den <= 0 || num < 0) fail();
    return {static_cast<double>(num) / static_cast<double>(den), Rational(num, den)};
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) fail();

  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  const auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  if (digits(whole) && digits(frac) && !(whole.empty() && frac.empty())) {
    BigInt num = 0;
    for (char ch : whole) num = num * 10 + (ch - '0');
    for (char ch : frac) num = num * 10 + (ch - '0');
    return {value, Rational(num, int_pow(10, static_cast<long>(frac.size())))};
  }
  return {value};
}

long scaled_level(long K, const Theta& theta) {
  if (!(theta.value > 0.0)) throw DomainError("theta must be positive to scale a level");
  if (theta.exact) {
    const Rational q = Rational(K) / *theta.exact;
    const BigInt fl = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
    return fl.convert_to<long>();
  }
  const double q = static_cast<double>(K) / theta.value;
  const double nearest = std::nearbyint(q);
  if (std::abs(q - nearest) <= kTieTolerance * std::max(1.0, q)) return static_cast<long>(nearest);
  return static_cast<long>(std::floor(q));
}

SquareId square_of_word(const Carpet& carpet, std::span<const int> word) {
  check_word(carpet, word);
  const long k = static_cast<long>(word.size());
  const long L = level_L(carpet, k);
  SquareId sq{k, {word.begin(), word.begin() + L}, {}};
  for (long i = L; i < k; ++i) sq.columns.push_back(carpet.column_of(word[static_cast<std::size_t>(i)]));
  return sq;
}

BigInt fibre_count(const Carpet& carpet, const SquareId& sq) {
  check_square(carpet, sq);
  BigInt count = 1;
  for (int j : sq.columns) count *= carpet.column_counts()[static_cast<std::size_t>(j)];
  return count;
}

BigInt squares_within(const Carpet& carpet, long k1, long k2, std::span<const int> window) {
  if (k1 < 0 || k1 > k2) {
    throw DomainError("squares_within: need 0 <= k1 <= k2, got k1 = " + std::to_string(k1) +
                      ", k2 = " + std::to_string(k2));
  }
  for (int j : window) {
    if (j < 0 || j >= carpet.columns()) throw DomainError("column rank out of range in window");
  }
  const long L1 = level_L(carpet, k1);
  const long L2 = level_L(carpet, k2);
  const bool nested = L2 <= k1;
  const long expected = nested ? L2 - L1 : k1 - L1;
  if (static_cast<long>(window.size()) != expected) {
    throw RegimeMismatch("squares_within: window has " + std::to_string(window.size()) +
                         " entries, the " + (nested ? "L(k2) <= k1" : "L(k2) > k1") +
                         " regime needs " + std::to_string(expected));
  }
  BigInt count = nested ? int_pow(carpet.columns(), k2 - k1)
                        : int_pow(carpet.maps(), L2 - k1) * int_pow(carpet.columns(), k2 - L2);
  for (int j : window) count *= carpet.column_counts()[static_cast<std::size_t>(j)];
  return count;
}

std::vector<WindowClass> window_classes(const Carpet& carpet, long W) {
  if (W < 0) throw DomainError("window length must be non-negative");
  const auto classes = carpet.fibre_classes();
  const int C = static_cast<int>(classes.size());
  const double size = std::exp(std::lgamma(W + C) - std::lgamma(W + 1.0) - std::lgamma(C));
  if (size > kMaxWindowClasses) {
    throw DomainError("window of length " + std::to_string(W) + " over " + std::to_string(C) +
                      " fibre classes is too large to enumerate");
  }
  std::vector<double> log_size(static_cast<std::size_t>(C));
  std::vector<double> log_cols(static_cast<std::size_t>(C));
  for (int k = 0; k < C; ++k) {
    log_size[static_cast<std::size_t>(k)] = std::log(static_cast<double>(classes[k].size));
    log_cols[static_cast<std::size_t>(k)] = std::log(static_cast<double>(classes[k].columns));
  }

  std::vector<WindowClass> out;
  out.reserve(static_cast<std::size_t>(size + 0.5));
  std::vector<int> a(static_cast<std::size_t>(C), 0);
  const double log_w = log_factorial(W);
  auto emit = [&] {
    WindowClass wc{a, 0.0, log_w};
    for (int k = 0; k < C; ++k) {
      const auto ak = static_cast<std::size_t>(k);
      wc.sum_log += a[ak] * log_size[ak];
      wc.log_sequences += a[ak] * log_cols[ak] - log_factorial(a[ak]);
    }
    out.push_back(std::move(wc));
  };
  auto rec = [&](auto&& self, int k, long remaining) -> void {
    if (k == C - 1) {
      a[static_cast<std::size_t>(k)] = static_cast<int>(remaining);
      emit();
      return;
    }
    for (long v = 0; v <= remaining; ++v) {
      a[static_cast<std::size_t>(k)] = static_cast<int>(v);
      self(self, k + 1, remaining - v);
    }
  };
  rec(rec, 0, W);
  return out;
}

BigInt window_class_count(const Carpet& carpet, const WindowClass& wc) {
  const auto classes = carpet.fibre_classes();
  long W = 0;
  for (int a : wc.multiplicity) W += a;
  BigInt count = 1;
  for (long i = 2; i <= W; ++i) count *= i;
  for (std::size_t k = 0; k < wc.multiplicity.size(); ++k) {
    BigInt fact = 1;
    for (long i = 2; i <= wc.multiplicity[k]; ++i) fact *= i;
    count /= fact;
  }
  for (std::size_t k = 0; k < wc.multiplicity.size(); ++k) {
    count *= int_pow(classes[k].columns, wc.multiplicity[k]);
  }
  return count;
}

OracleReport good_bad_counts(const Carpet& carpet, long K, const Theta& theta, double delta0) {
  const Window win = oracle_window(carpet, K, theta, delta0);
  const double log_N = std::log(static_cast<double>(carpet.maps()));
  const double log_M = std::log(static_cast<double>(carpet.columns()));
  const double threshold = carpet.log_mean_fibre() - delta0;

  std::vector<double> bad_terms;
  std::vector<double> good_terms;
  BigInt d_exact = 0;
  const bool exact = win.W <= kExactWindowLimit;
  for (const WindowClass& wc : window_classes(carpet, win.W)) {
    if (is_bad(wc, win.W, threshold)) {
      bad_terms.push_back(wc.log_sequences);
      if (exact) d_exact += window_class_count(carpet, wc);
    } else {
      good_terms.push_back(wc.log_sequences);
    }
  }

  OracleReport rep;
  rep.K = K;
  rep.theta = theta.value;
  rep.delta0 = delta0;
  rep.level_K = win.L0;
  rep.scaled = win.K1;
  rep.level_scaled = win.L1;
  rep.window = win.W;

  const double base = static_cast<double>(win.L0) * log_N + static_cast<double>(K - win.L1) * log_M;
  const double log_d = log_sum_exp(bad_terms);
  const double log_bad = base + log_d;
  const double log_good = base + log_sum_exp(good_terms);
  rep.log10_total_count =
      to_log10(static_cast<double>(win.L0) * log_N + static_cast<double>(K - win.L0) * log_M);
  rep.log10_d_count = to_log10(log_d);
  rep.log10_bad_count = to_log10(log_bad);
  rep.log10_good_count = to_log10(log_good);
  if (exact) {
    const BigInt scale = int_pow(carpet.maps(), win.L0) * int_pow(carpet.columns(), K - win.L1);
    rep.d_count = d_exact;
    rep.bad_count = scale * d_exact;
    rep.good_count = scale * (int_pow(carpet.columns(), win.W) - d_exact);
  }

  rep.bad_exponent = log_bad / (static_cast<double>(K) * carpet.log_m());
  rep.asymptotic_bad_exponent = box_dim(carpet) - rate_extended(carpet, threshold) *
                                                      (1.0 / theta.value - 1.0) / carpet.log_n();
  return rep;
}

OracleReport cover_cost_log(const Carpet& carpet, long K, const Theta& theta, double delta0,
                            double s) {
  if (!std::isfinite(s)) throw DomainError("cover exponent s must be finite");
  OracleReport rep = good_bad_counts(carpet, K, theta, delta0);
  const double log_N = std::log(static_cast<double>(carpet.maps()));
  const double log_M = std::log(static_cast<double>(carpet.columns()));
  const double threshold = carpet.log_mean_fibre() - delta0;

  std::vector<double> good_mass;
  for (const WindowClass& wc : window_classes(carpet, rep.window)) {
    if (!is_bad(wc, rep.window, threshold)) good_mass.push_back(wc.log_sequences + wc.sum_log);
  }
  const double log_bad = rep.log10_bad_count * std::numbers::ln10;
  const double cost_bad = log_bad - static_cast<double>(K) * s * carpet.log_m();
  const double cost_good = static_cast<double>(rep.level_K) * log_N +
                           static_cast<double>(rep.scaled - rep.level_scaled) * log_M -
                           s * static_cast<double>(rep.scaled) * carpet.log_m() +
                           log_sum_exp(good_mass);
  rep.s = s;
  rep.log10_cost_bad = to_log10(cost_bad);
  rep.log10_cost_good = to_log10(cost_good);
  rep.log10_cost_total = to_log10(log_add(cost_bad, cost_good));
  return rep;
}

double tail_log_probability(const Carpet& carpet, long ell, double x) {
  if (ell < 1) throw DomainError("tail length must be at least 1");
  const double log_M = std::log(static_cast<double>(carpet.columns()));
  const double cut = static_cast<double>(ell) * x -
                     kTieTolerance * std::max(1.0, std::abs(x)) * static_cast<double>(ell);
  std::vector<double> terms;
  for (const WindowClass& wc : window_classes(carpet, ell)) {
    if (wc.sum_log >= cut) terms.push_back(wc.log_sequences - static_cast<double>(ell) * log_M);
  }
  return std::min(0.0, log_sum_exp(terms));
}

double empirical_rate(const Carpet& carpet, long ell, double x) {
  const double top = std::log(static_cast<double>(carpet.max_column_count()));
  if (ell < 1 || !(x > carpet.mean_log_fibre()) || !(x <= top + kTieTolerance)) {
    throw DomainError("empirical_rate: need ell >= 1 and x in (" + real(carpet.mean_log_fibre()) +
                      ", " + real(top) + "]");
  }
  return -tail_log_probability(carpet, ell, x) / static_cast<double>(ell);
}

double log_nu_cylinder(const MeasureSpec& spec, std::span<const int> word) {
  const Carpet& carpet = spec.carpet;
  require_sizes(carpet, spec.p, spec.q);
  if (static_cast<long>(word.size()) < spec.K) {
    throw WordTooShort("word of length " + std::to_string(word.size()) +
                       " is shorter than K = " + std::to_string(spec.K));
  }
  check_word(carpet, word);
  const long L = level_L(carpet, spec.K);
  double acc = 0.0;
  for (std::size_t l = 0; l < word.size(); ++l) {
    const auto i = static_cast<std::size_t>(word[l]);
    acc += std::log(static_cast<long>(l) < L ? spec.p[i] : spec.q[i]);
  }
  return acc;
}

double nu_cylinder(const MeasureSpec& spec, std::span<const int> word) {
  const Carpet& carpet = spec.carpet;
  require_sizes(carpet, spec.p, spec.q);
  if (static_cast<long>(word.size()) < spec.K) {
    throw WordTooShort("word of length " + std::to_string(word.size()) +
                       " is shorter than K = " + std::to_string(spec.K));
  }
  check_word(carpet, word);
  const long L = level_L(carpet, spec.K);
  double acc = 1.0;
  for (std::size_t l = 0; l < word.size(); ++l) {
    const auto i = static_cast<std::size_t>(word[l]);
    acc *= static_cast<long>(l) < L ? spec.p[i] : spec.q[i];
  }
  return acc;
}

double nu_square(const MeasureSpec& spec, const SquareId& sq) {
  const Carpet& carpet = spec.carpet;
  require_sizes(carpet, spec.p, spec.q);
  require_column_constant(carpet, spec.p, "p");
  require_column_constant(carpet, spec.q, "q");
  if (sq.level < spec.K) throw WordTooShort("square level is below K");
  check_square(carpet, sq);
  std::vector<int> word(sq.prefix);
  for (int j : sq.columns) word.push_back(carpet.first_map_of(j));
  return fibre_count(carpet, sq).convert_to<double>() * nu_cylinder(spec, word);
}

double expected_log_nu(const MeasureSpec& spec, long k) {
  const Carpet& carpet = spec.carpet;
  require_sizes(carpet, spec.p, spec.q);
  if (k < spec.K) throw WordTooShort("k = " + std::to_string(k) + " is below K");
  const double LK = static_cast<double>(level_L(carpet, spec.K));
  const double Lk = static_cast<double>(level_L(carpet, k));
  const double kd = static_cast<double>(k);
  return LK * entropy(spec.p) + (kd - LK) * entropy(spec.q) -
         (kd - Lk) * log_geometric_mean(fibre_sizes(carpet), spec.q);
}

Rational nu_cylinder_exact(const RationalMeasure& spec, std::span<const int> word) {
  const Carpet& carpet = spec.carpet;
  require_sizes(carpet, spec.p, spec.q);
  if (static_cast<long>(word.size()) < spec.K) throw WordTooShort("word is shorter than K");
  check_word(carpet, word);
  const long L = level_L(carpet, spec.K);
  Rational acc = 1;
  for (std::size_t l = 0; l < word.size(); ++l) {
    const auto i = static_cast<std::size_t>(word[l]);
    acc *= static_cast<long>(l) < L ? spec.p[i] : spec.q[i];
  }
  return acc;
}

Rational nu_square_exact(const RationalMeasure& spec, const SquareId& sq) {
  const Carpet& carpet = spec.carpet;
  require_sizes(carpet, spec.p, spec.q);
  require_column_constant(carpet, spec.p, "p");
  require_column_constant(carpet, spec.q, "q");
  if (sq.level < spec.K) throw WordTooShort("square level is below K");
  check_square(carpet, sq);
  std::vector<int> word(sq.prefix);
  for (int j : sq.columns) word.push_back(carpet.first_map_of(j));
  return Rational(fibre_count(carpet, sq)) * nu_cylinder_exact(spec, word);
}

}  // namespace bmc

#pragma once

// Small independent reference computations used as test oracles. They work
// on plain maps and bit loops and share no code paths with the library
// beyond the Rational type.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "liftlab/rational.hpp"

namespace oracle {

using liftlab::Rational;
using Vec = std::map<std::uint64_t, Rational>;

inline Rational get(const Vec& v, std::uint64_t s) {
  auto it = v.find(s);
  return it == v.end() ? Rational(0) : it->second;
}

inline int popcount(std::uint64_t m) { return __builtin_popcountll(m); }

// max sum of values over subsets whose sizes fit, by plain 2^n enumeration.
inline Rational knapsack_opt(const std::vector<Rational>& c, const std::vector<Rational>& v, const Rational& cap) {
  const int n = static_cast<int>(c.size());
  Rational best = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    Rational w = 0;
    Rational val = 0;
    for (int i = 0; i < n; ++i) {
      if (m >> i & 1U) {
        w += c[i];
        val += v[i];
      }
    }
    if (w <= cap && val > best) best = val;
  }
  return best;
}

// (x*y)_I = sum_J x_J y_{I|J} over all 2^n subsets.
inline Vec shift(const Vec& x, const Vec& y, int n) {
  Vec out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    Rational acc = 0;
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) acc += get(x, j) * get(y, i | j);
    out[i] = acc;
  }
  return out;
}

// z^X_I = sum over J with X <= J <= S of (-1)^{|J \ X|} y_{I|J}.
inline Rational z_entry(const Vec& y, std::uint64_t s, std::uint64_t x, std::uint64_t i) {
  Rational acc = 0;
  for (std::uint64_t j = 0; j <= s; ++j) {
    if ((j & ~s) != 0 || (x & ~j) != 0) continue;
    Rational term = get(y, i | j);
    acc += popcount(j & ~x) % 2 == 0 ? term : Rational(-term);
  }
  return acc;
}

inline Rational random_rational(std::mt19937_64& rng, int lo = -9, int hi = 9, int max_den = 6) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace oracle

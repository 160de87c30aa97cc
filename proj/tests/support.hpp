#pragma once

// Shared helpers for the test suites: seeded generators and brute-force oracles
// that stay independent of the library code paths they check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "symlift/core.hpp"

namespace symlift::testing {

inline MTuple labels(std::initializer_list<int> ranks) {
  MTuple t;
  for (int r : ranks) t.push_back(Point::label(static_cast<std::size_t>(r)));
  return t;
}

inline MTuple reals(std::initializer_list<double> xs) {
  MTuple t;
  for (double x : xs) t.push_back(Point{x});
  return t;
}

/// Every permutation of {0..m-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> all_permutations(std::size_t m) {
  std::vector<std::size_t> p(m);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Every tuple in {0..q-1}^m, in lexicographic order.
inline std::vector<std::vector<int>> all_tuples(int q, std::size_t m) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(m, 0);
  while (true) {
    out.push_back(t);
    std::size_t i = m;
    while (i > 0 && t[i - 1] == q - 1) t[--i] = 0;
    if (i == 0) break;
    ++t[i - 1];
  }
  return out;
}

inline MTuple as_labels(const std::vector<int>& t) {
  MTuple out;
  for (int r : t) out.push_back(Point::label(static_cast<std::size_t>(r)));
  return out;
}

inline MTuple random_label_tuple(std::mt19937_64& rng, std::size_t m, int q) {
  std::uniform_int_distribution<int> d(0, q - 1);
  MTuple t;
  for (std::size_t i = 0; i < m; ++i) t.push_back(Point::label(static_cast<std::size_t>(d(rng))));
  return t;
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace symlift::testing

#pragma once

// Region builders for the lifting tests: fixture loading, seeded random walks
// of well-separated points, and a rotating pair on a 2-D grid.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symlift/io.hpp"
#include "symlift/regions.hpp"

namespace symlift::testing {

#ifdef SYMLIFT_FIXTURES
inline std::string fixture_path(const std::string& name) { return std::string(SYMLIFT_FIXTURES) + "/" + name; }

inline std::string fixture_text(const std::string& name) {
  std::istringstream none;
  return io::read_text(fixture_path(name), none);
}

inline SampledRegion load_fixture(const std::string& name) { return io::parse_region(fixture_text(name)); }
#endif

inline bool near(const Point& a, const Point& b, double tol = 1e-12) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (std::abs(a[k] - b[k]) > tol) return false;
  }
  return true;
}

inline double min_gap(const MTuple& t) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) g = std::min(g, std::hypot(t[i][0] - t[j][0], t[i][1] - t[j][1]));
  }
  return g;
}

/// A walk of m labelled points in the plane: the true ordered path and the
/// sp region sampling it. Each step moves every point by at most a fifth of the
/// current minimum gap, and gaps never drop below 0.5.
struct RandomWalk {
  std::vector<MTuple> truth;
  SampledRegion region;
};

inline RandomWalk random_walk(std::mt19937_64& rng, std::size_t m, std::size_t nodes) {
  std::uniform_real_distribution<double> box(0.0, 10.0), unit(0.0, 1.0);
  RandomWalk w;
  MTuple cur;
  do {
    cur.clear();
    for (std::size_t i = 0; i < m; ++i) cur.push_back(Point{box(rng), box(rng)});
  } while (m > 1 && min_gap(cur) < 1.0);
  w.truth.push_back(cur);
  while (w.truth.size() < nodes) {
    const double reach = m > 1 ? 0.2 * min_gap(cur) : 0.2;
    MTuple next;
    for (int attempt = 0; attempt < 50; ++attempt) {
      next.clear();
      for (const Point& p : cur) {
        const double r = reach * unit(rng), a = 2.0 * std::numbers::pi * unit(rng);
        next.push_back(Point{p[0] + r * std::cos(a), p[1] + r * std::sin(a)});
      }
      if (m == 1 || min_gap(next) >= 0.5) break;
      next = cur;
    }
    cur = next;
    w.truth.push_back(cur);
  }
  w.region.domain = PointDomain::euclidean(2);
  w.region.mode = RegionMode::sp;
  w.region.m = m;
  w.region.shape = {nodes};
  w.region.eps = 0.0;
  for (const MTuple& t : w.truth) w.region.samples.push_back(sorted_copy(t));
  return w;
}

/// The pair {p, -p} with p = (cos t, sin t) and t = a*i/(rows-1) + b*j/(cols-1).
inline SampledRegion rotating_pair(std::size_t rows, std::size_t cols, double a, double b) {
  SampledRegion r;
  r.domain = PointDomain::euclidean(2);
  r.mode = RegionMode::sp;
  r.m = 2;
  r.shape = {rows, cols};
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double t = a * static_cast<double>(i) / static_cast<double>(rows - 1) +
                       b * static_cast<double>(j) / static_cast<double>(cols - 1);
      r.samples.push_back(sorted_copy(MTuple{Point{std::cos(t), std::sin(t)}, Point{-std::cos(t), -std::sin(t)}}));
    }
  }
  return r;
}

/// Real line region in sp or f mode from per-node value lists.
inline SampledRegion line_region(RegionMode mode, std::size_t m, const std::vector<std::vector<double>>& values,
                                 double eps = 0.0) {
  SampledRegion r;
  r.domain = PointDomain::euclidean(1);
  r.mode = mode;
  r.m = m;
  r.shape = {values.size()};
  r.eps = eps;
  for (const auto& v : values) {
    MTuple t;
    for (double x : v) t.push_back(Point{x});
    r.samples.push_back(sorted_copy(t));
  }
  return r;
}

}  // namespace symlift::testing

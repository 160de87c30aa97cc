#include "symlift/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace symlift {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest augmenting path form of the Hungarian method, O(n^3). Forbidden
// (infinite) entries are replaced by a large finite penalty so the potentials
// stay finite; a result that uses one is reported as infinite.
Assignment solve(const CostMatrix& c) {
  const std::size_t n = c.n;
  Assignment out;
  out.col_of_row.assign(n, 0);
  if (n == 0) return out;

  double finite_max = 0.0;
  for (double v : c.cost) {
    if (std::isfinite(v)) finite_max = std::max(finite_max, std::abs(v));
  }
  const double penalty = (finite_max + 1.0) * static_cast<double>(n + 1) * 4.0;
  auto at = [&](std::size_t r, std::size_t col) {
    const double v = c(r, col);
    return std::isfinite(v) ? v : penalty;
  };

  // 1-based arrays, index 0 is the virtual column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (std::size_t j = 1; j <= n; ++j) out.col_of_row[p[j] - 1] = j - 1;
  out.cost = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double x = c(r, out.col_of_row[r]);
    if (!std::isfinite(x)) {
      out.cost = kInf;
      break;
    }
    out.cost += x;
  }
  return out;
}

// Cost matrix with row r fixed to column col (all other entries of that row
// and column forbidden).
void fix(CostMatrix& c, std::size_t r, std::size_t col) {
  for (std::size_t k = 0; k < c.n; ++k) {
    if (k != col) c.cost[r * c.n + k] = kInf;
    if (k != r) c.cost[k * c.n + col] = kInf;
  }
}

CostMatrix distance_matrix(const PointDomain& domain, const MTuple& prev, const MTuple& next) {
  CostMatrix c;
  c.n = prev.size();
  c.cost.resize(c.n * c.n);
  for (std::size_t r = 0; r < c.n; ++r) {
    for (std::size_t k = 0; k < c.n; ++k) c.cost[r * c.n + k] = domain.distance(prev[r], next[k]);
  }
  return c;
}

}  // namespace

Assignment min_cost_assignment(const CostMatrix& c) { return solve(c); }

bool same_cost(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
  return std::abs(a - b) <= kTieTolerance * (1.0 + std::max(std::abs(a), std::abs(b)));
}

Assignment lex_min_assignment(const CostMatrix& c) {
  const Assignment best = solve(c);
  if (!std::isfinite(best.cost)) return best;
  CostMatrix work = c;
  Assignment out;
  out.col_of_row.assign(c.n, 0);
  for (std::size_t r = 0; r < c.n; ++r) {
    bool placed = false;
    for (std::size_t col = 0; col < c.n && !placed; ++col) {
      if (!std::isfinite(work(r, col))) continue;
      CostMatrix trial = work;
      fix(trial, r, col);
      if (same_cost(solve(trial).cost, best.cost)) {
        work = std::move(trial);
        out.col_of_row[r] = col;
        placed = true;
      }
    }
    if (!placed) throw std::logic_error("lex_min_assignment: lost the optimum");
  }
  out.cost = 0.0;
  for (std::size_t r = 0; r < c.n; ++r) out.cost += c(r, out.col_of_row[r]);
  return out;
}

double positional_cost(const PointDomain& domain, const MTuple& a, const MTuple& b) {
  if (a.size() != b.size()) throw std::invalid_argument("positional_cost: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += domain.distance(a[i], b[i]);
  return s;
}

MatchStep match_step(const PointDomain& domain, const MTuple& prev, const MTuple& next) {
  if (prev.size() != next.size()) throw std::invalid_argument("match_step: length mismatch");
  const CostMatrix c = distance_matrix(domain, prev, next);
  const Assignment a = lex_min_assignment(c);
  MatchStep out;
  out.plan = Permutation(a.col_of_row);
  out.tuple = out.plan.apply(next);
  out.cost = a.cost;
  // A different tuple needs some row to take a column holding a different point.
  for (std::size_t r = 0; r < c.n && !out.tie; ++r) {
    CostMatrix trial = c;
    for (std::size_t k = 0; k < c.n; ++k) {
      if (next[k] == out.tuple[r]) trial.cost[r * c.n + k] = kInf;
    }
    if (same_cost(solve(trial).cost, a.cost)) out.tie = true;
  }
  return out;
}

SupportExpansion expand_support(const PointDomain& domain, const MTuple& prev, const MTuple& support) {
  const std::size_t m = prev.size(), k = support.size();
  if (k == 0 || k > m) throw std::invalid_argument("expand_support: need 1 <= |support| <= m");
  std::vector<std::size_t> vote(m);
  std::vector<std::size_t> count(k, 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t best = 0;
    for (std::size_t s = 1; s < k; ++s) {
      if (domain.distance(prev[i], support[s]) < domain.distance(prev[i], support[best])) best = s;
    }
    vote[i] = best;
    ++count[best];
  }
  for (;;) {
    std::size_t empty = k;
    for (std::size_t s = 0; s < k && empty == k; ++s) {
      if (count[s] == 0) empty = s;
    }
    if (empty == k) break;
    // Cheapest single move into any empty point; ties by (coordinate, target).
    double best_delta = kInf;
    std::size_t best_i = m, best_s = k;
    for (std::size_t i = 0; i < m; ++i) {
      if (count[vote[i]] < 2) continue;
      const double here = domain.distance(prev[i], support[vote[i]]);
      for (std::size_t s = 0; s < k; ++s) {
        if (count[s] != 0) continue;
        const double delta = domain.distance(prev[i], support[s]) - here;
        if (delta < best_delta) {
          best_delta = delta;
          best_i = i;
          best_s = s;
        }
      }
    }
    --count[vote[best_i]];
    vote[best_i] = best_s;
    ++count[best_s];
  }
  SupportExpansion out;
  out.multiplicity = count;
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t c = 0; c < count[s]; ++c) out.multiset.push_back(support[s]);
  }
  return out;
}

}  // namespace symlift

#pragma once

// Minimum-cost perfect matching (Hungarian method) with a deterministic
// lexicographic tie-break, and the matching steps used by the lifter.

#include <cstddef>
#include <vector>

#include "symlift/core.hpp"

namespace symlift {

/// Square cost matrix stored row-major.
struct CostMatrix {
  std::size_t n = 0;
  std::vector<double> cost;

  double operator()(std::size_t r, std::size_t c) const { return cost[r * n + c]; }
};

struct Assignment {
  std::vector<std::size_t> col_of_row;
  double cost = 0.0;
};

/// An optimal assignment (no tie-break guarantee). Entries may be +infinity to
/// forbid a pairing; the result cost is +infinity when no finite assignment exists.
Assignment min_cost_assignment(const CostMatrix& c);

/// Relative tolerance under which two assignment costs count as equal.
inline constexpr double kTieTolerance = 1e-12;

bool same_cost(double a, double b);

/// The lexicographically smallest col_of_row among all optimal assignments.
Assignment lex_min_assignment(const CostMatrix& c);

struct MatchStep {
  MTuple tuple;              ///< next sample arranged to follow prev
  Permutation plan;          ///< tuple[i] == next[plan[i]]
  double cost = 0.0;         ///< sum of matched distances
  /// Another optimal matching yields a different tuple.
  bool tie = false;
};

/// Arranges the points of `next` (any order) to minimize the summed distance to
/// `prev` position by position; ties go to the lexicographically smallest plan.
MatchStep match_step(const PointDomain& domain, const MTuple& prev, const MTuple& next);

/// Sum of positionwise distances.
double positional_cost(const PointDomain& domain, const MTuple& a, const MTuple& b);

struct SupportExpansion {
  MTuple multiset;                         ///< sorted, each support point with its multiplicity
  std::vector<std::size_t> multiplicity;   ///< per support point, in support order
};

/// Chooses multiplicities for `support` (|support| <= |prev|) close to `prev`:
/// every coordinate of prev votes for its nearest support point (ties to the
/// lower index), then empty support points are filled by moving single votes
/// off points with at least two, cheapest added distance first.
SupportExpansion expand_support(const PointDomain& domain, const MTuple& prev, const MTuple& support);

}  // namespace symlift

#pragma once

// Point domains, m-tuples and the canonical forms of the three quotients of
// X^m: the symmetric product (sorting), the support quotient (sorted distinct
// support) and the per-piece sheet quotient (primitive arrangement).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ranges>
#include <stdexcept>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symlift/error.hpp"

namespace symlift {

/// A point of X. Euclidean points carry their coordinates; label points carry
/// a single coordinate holding the label's rank in its domain.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  static Point label(std::size_t rank) { return Point{static_cast<double>(rank)}; }

  std::span<const double> coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

using MTuple = std::vector<Point>;

enum class DomainKind { labels, euclidean };

/// The ambient space X: total order plus metric.
class PointDomain {
 public:
  /// Label domain; `names` must be strictly increasing (rank order is name order).
  static PointDomain labels(std::vector<std::string> names = {});
  static PointDomain euclidean(std::size_t dim);

  DomainKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& label_names() const { return names_; }

  /// Discrete 0/1 metric for labels, Euclidean metric for coordinates.
  double distance(const Point& a, const Point& b) const;
  bool contains(const Point& p) const;

  /// Rank of `name` in the label table; nullopt when absent.
  std::optional<std::size_t> rank_of(const std::string& name) const;

 private:
  DomainKind kind_ = DomainKind::euclidean;
  std::size_t dim_ = 1;
  std::vector<std::string> names_;
};

/// A bijection of {0..m-1} acting on tuples by position: (t_sigma)[i] = t[map[i]].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> map);

  static Permutation identity(std::size_t m);

  std::size_t size() const { return map_.size(); }
  std::size_t operator[](std::size_t i) const { return map_[i]; }
  const std::vector<std::size_t>& map() const { return map_; }

  Permutation inverse() const;
  /// The permutation that applies `*this` first and then `after`.
  Permutation then(const Permutation& after) const;

  template <std::ranges::random_access_range R>
  auto apply(const R& t) const {
    std::vector<std::ranges::range_value_t<R>> out;
    out.reserve(map_.size());
    for (std::size_t i : map_) out.push_back(t[i]);
    return out;
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// j-vector of a coincidence pattern: j0 singletons plus the non-decreasing
/// sizes (each >= 2) of the coinciding blocks.
struct JVector {
  std::size_t j0 = 0;
  std::vector<std::size_t> parts;

  std::size_t m() const;
  friend bool operator==(const JVector&, const JVector&) = default;
};

/// A set partition of positions {0..m-1}; identifies the piece of X^m that
/// contains a tuple. Blocks are sorted internally and ordered by first element.
class PieceId {
 public:
  PieceId() = default;
  /// Normalizes block order; throws std::invalid_argument if the blocks do
  /// not partition {0..m-1}.
  explicit PieceId(std::vector<std::vector<std::size_t>> blocks);

  /// The all-singletons pattern on m positions.
  static PieceId principal(std::size_t m);
  /// Builds the pattern from a restricted growth string (block label per position).
  static PieceId from_labels(std::span<const std::size_t> labels);

  std::size_t m() const { return m_; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  bool is_principal() const { return blocks_.size() == m_; }
  JVector jvector() const;
  /// Block size multiset, sorted ascending.
  std::vector<std::size_t> shape() const;
  /// Block index of every position.
  std::vector<std::size_t> block_of() const;
  /// Pattern after relabeling positions by sigma (positions of t_sigma).
  PieceId relabeled(const Permutation& sigma) const;
  /// True when every block of `*this` lies inside a block of `coarser`.
  bool refines(const PieceId& coarser) const;

  friend bool operator==(const PieceId&, const PieceId&) = default;
  friend auto operator<=>(const PieceId&, const PieceId&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::vector<std::size_t>> blocks_;
};

/// Canonical representative of [t]_phi: the tuple sorted by the domain order.
class SPClass {
 public:
  SPClass() = default;
  static SPClass of(std::span<const Point> t);
  /// Accepts an already sorted sequence; throws std::invalid_argument otherwise.
  static SPClass from_sorted(std::vector<Point> points);

  std::size_t m() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  friend bool operator==(const SPClass&, const SPClass&) = default;

 private:
  std::vector<Point> points_;
};

/// Canonical representative of the support class: strictly increasing support.
class FClass {
 public:
  FClass() = default;
  static FClass of(std::span<const Point> t);
  /// Accepts a strictly increasing sequence; throws std::invalid_argument otherwise.
  static FClass from_sorted(std::vector<Point> support);

  std::size_t size() const { return support_.size(); }
  const std::vector<Point>& support() const { return support_; }
  friend bool operator==(const FClass&, const FClass&) = default;

 private:
  std::vector<Point> support_;
};

/// Raised when eps-clustering does not separate the points cleanly.
class AmbiguousCoincidence : public Error {
 public:
  AmbiguousCoincidence(double gap, double diameter, double eps);
  /// Smallest distance between two different clusters.
  double gap() const { return gap_; }
  /// Largest cluster diameter.
  double diameter() const { return diameter_; }

 private:
  double gap_;
  double diameter_;
};

class GroupTooLarge : public Error {
 public:
  explicit GroupTooLarge(std::size_t bound);
};

// Generic canonical forms, usable on any totally ordered value type.

template <std::ranges::forward_range R>
auto sorted_copy(const R& t) {
  std::vector<std::ranges::range_value_t<R>> out(std::ranges::begin(t), std::ranges::end(t));
  std::sort(out.begin(), out.end());
  return out;
}

template <std::ranges::forward_range R>
auto support_of(const R& t) {
  auto out = sorted_copy(t);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Exact coincidence pattern of a tuple of values.
template <std::ranges::random_access_range R>
PieceId exact_pattern(const R& t) {
  const std::size_t m = std::ranges::size(t);
  std::vector<std::size_t> labels(m);
  std::vector<std::size_t> firsts;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t b = 0;
    while (b < firsts.size() && !(t[firsts[b]] == t[i])) ++b;
    if (b == firsts.size()) firsts.push_back(i);
    labels[i] = b;
  }
  return PieceId::from_labels(labels);
}

/// Coincidence pattern of t. Exact equality for label domains (eps must be 0);
/// single-linkage clusters at eps for Euclidean domains. Throws
/// AmbiguousCoincidence when a cluster's diameter exceeds eps or two clusters
/// lie within 2*eps of each other.
PieceId classify(const PointDomain& domain, std::span<const Point> t, double eps = 0.0);

SPClass sp_canonical(std::span<const Point> t);
FClass f_canonical(std::span<const Point> t);

struct PrimitiveArrangement {
  MTuple tuple;        ///< t_sigma, of primitive type
  Permutation sigma;   ///< tuple[i] == t[sigma[i]]
  PieceId pattern;     ///< classify(t)
};

/// Rearranges t so that coinciding blocks come first and contiguous, ordered
/// by (size descending, smallest value ascending), followed by the singletons
/// in ascending order. Members inside a block are ascending; ties by position.
PrimitiveArrangement primitive_rep(const PointDomain& domain, std::span<const Point> t,
                                   double eps = 0.0);

/// Canonical member of the sheet-quotient orbit of t (the primitive arrangement).
MTuple theta_canonical(const PointDomain& domain, std::span<const Point> t, double eps = 0.0);

/// One representative per block (its smallest member) followed by the
/// singletons, in primitive order. The result lies in the principal piece.
MTuple project_piece(const PointDomain& domain, std::span<const Point> t, double eps = 0.0);

/// Positional projection onto a fixed pattern: the value of each block, blocks
/// in order of their first position. On tuples of pattern `piece` this is a
/// bijection onto principal tuples of length piece.block_count().
template <std::ranges::random_access_range R>
auto project_positions(const R& t, const PieceId& piece) {
  std::vector<std::ranges::range_value_t<R>> out;
  for (const auto& b : piece.blocks()) out.push_back(t[b[0]]);
  return out;
}

/// Inverse of project_positions: writes reduced[k] into every position of block k.
template <std::ranges::random_access_range R>
auto embed_positions(const R& reduced, const PieceId& piece) {
  std::vector<std::ranges::range_value_t<R>> out(piece.m());
  for (std::size_t k = 0; k < piece.blocks().size(); ++k) {
    for (std::size_t i : piece.blocks()[k]) out[i] = reduced[k];
  }
  return out;
}

/// All elements of the subgroup generated by `generators` (closure by BFS).
/// Throws GroupTooLarge once the closure exceeds `bound` elements.
std::vector<Permutation> generate_group(std::size_t m, std::span<const Permutation> generators,
                                        std::size_t bound = 40320);

/// Order-minimum element of the orbit of t under <generators>.
template <std::ranges::random_access_range R>
auto orbit_canonical(const R& t, std::span<const Permutation> generators,
                     std::size_t bound = 40320) {
  const std::size_t m = std::ranges::size(t);
  if (m > 8) throw std::invalid_argument("orbit_canonical: m must be at most 8");
  std::vector<std::ranges::range_value_t<R>> best(std::ranges::begin(t), std::ranges::end(t));
  for (const Permutation& g : generate_group(m, generators, bound)) {
    auto candidate = g.apply(t);
    if (candidate < best) best = std::move(candidate);
  }
  return best;
}

}  // namespace symlift

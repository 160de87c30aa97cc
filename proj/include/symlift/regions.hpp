#pragma once

// Sampled n-regions over SP_m(X) or F_m(X): grid model, segmentation into
// constant-pattern components, passing events and the discrete structural checks.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "symlift/core.hpp"

namespace symlift {

enum class RegionMode { sp, f };

/// A grid of samples stored row-major (the last axis varies fastest). In sp
/// mode each sample is a sorted m-tuple; in f mode a strictly increasing support
/// of at most m points.
struct SampledRegion {
  PointDomain domain = PointDomain::euclidean(1);
  RegionMode mode = RegionMode::sp;
  std::size_t m = 0;
  std::vector<std::size_t> shape;
  double eps = 0.0;
  std::vector<MTuple> samples;
  /// Optional per-axis coordinates; empty means uniform on [0, 1].
  std::vector<std::vector<double>> axes;

  std::size_t n() const { return shape.size(); }
  std::size_t node_count() const;
  std::vector<std::size_t> index_of(std::size_t node) const;
  std::size_t node_of(const std::vector<std::size_t>& index) const;
  /// Neighbour of `node` one step along `axis` (dir = +1 or -1), if inside the grid.
  std::optional<std::size_t> step(std::size_t node, std::size_t axis, int dir) const;
  /// Coordinate of `node` along `axis`.
  double coordinate(std::size_t node, std::size_t axis) const;

  /// Checks shape, sample sizes, ordering and domain membership; throws InputError.
  void validate() const;
};

/// Reorders the axes: axis k of the result is axis order[k] of `region`.
SampledRegion permute_axes(const SampledRegion& region, const std::vector<std::size_t>& order);

/// Raised when a node cannot be classified cleanly at the region's eps.
class ClassificationAmbiguity : public Error {
 public:
  ClassificationAmbiguity(std::size_t node, double gap, double diameter);
  std::size_t node() const { return node_; }
  double gap() const { return gap_; }
  double diameter() const { return diameter_; }

 private:
  std::size_t node_;
  double gap_;
  double diameter_;
};

struct PassingEvent {
  std::size_t id = 0;
  std::size_t from = 0;  ///< lower node of the edge
  std::size_t to = 0;    ///< from + one step along `axis`
  std::size_t axis = 0;
  PieceId from_piece;
  PieceId to_piece;
  /// Endpoints counted as passing-through: the side with the coarser pattern,
  /// or both when the two patterns have equally many blocks.
  std::vector<std::size_t> passing;
};

struct Segment {
  std::size_t id = 0;
  PieceId piece;
  std::vector<std::size_t> nodes;   ///< ascending
  std::vector<std::size_t> events;  ///< ids of adjacent events, ascending
};

struct Segmentation {
  std::vector<PieceId> node_pattern;
  std::vector<std::size_t> node_segment;
  std::vector<Segment> segments;  ///< ordered by lowest node
  std::vector<PassingEvent> events;  ///< ordered by (from, axis)
};

/// Pattern of one sample: classify() in sp mode; in f mode the principal
/// pattern on the support size (the support itself must be eps-separated).
PieceId node_pattern(const SampledRegion& region, std::size_t node);

/// Flood fill of constant-pattern components over axis-adjacent nodes.
/// Throws ClassificationAmbiguity when a node does not classify.
Segmentation segment(const SampledRegion& region);

struct EmptyInteriorVerdict {
  bool holds = true;
  std::vector<std::size_t> passing_nodes;  ///< ascending
  /// A node whose whole unit ball (itself and every axis neighbour) is passing.
  std::optional<std::vector<std::size_t>> ball;
};

EmptyInteriorVerdict check_empty_interior(const SampledRegion& region, const Segmentation& seg);

struct SinglePieceVerdict {
  bool single = true;
  std::vector<PieceId> patterns;  ///< distinct patterns, ascending
  /// "no events" and "one pattern" agree, as they must.
  bool consistent = true;
};

SinglePieceVerdict check_single_piece(const SampledRegion& region, const Segmentation& seg);

}  // namespace symlift

#pragma once

// Discrete lifting of sampled regions in SP_m(X) / F_m(X) to X^m: matching
// steps inside constant-pattern segments, gluing across passing events, and
// holonomy / sheet-consistency checks.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "symlift/assignment.hpp"
#include "symlift/regions.hpp"

namespace symlift {

struct LiftOptions {
  /// Seed tuple for node 0. Must canonicalize to the first sample. When unset
  /// the primitive arrangement of the first sample is used.
  std::optional<MTuple> seed;
  /// At a tied gluing step, prefer the arrangement closest to the linear
  /// extrapolation of the lifted side, when that arrangement is also optimal.
  bool extrapolate_ties = true;
};

struct TieBreak {
  std::size_t node = 0;  ///< node whose arrangement was tied
  std::size_t from = 0;  ///< lifted neighbour it was matched against
  std::string rule;      ///< "lex" or "extrapolated"
};

struct LiftDiagnostics {
  /// Largest summed positionwise distance across one grid edge.
  double max_step_displacement = 0.0;
  /// Largest single-position distance across one grid edge.
  double max_position_step = 0.0;
  /// Largest distance between a lifted tuple's canonical form and its sample.
  double round_trip_residual = 0.0;
  std::vector<TieBreak> ties;
};

struct SegmentLift {
  std::size_t seed_node = 0;
  /// Event whose limit tuple seeded the segment; unset for the first segment.
  std::optional<std::size_t> glued_via;
};

struct LiftResult {
  std::vector<MTuple> tuples;  ///< one per node, row-major
  Segmentation segmentation;
  std::vector<SegmentLift> segments;
  /// f mode: multiplicity of each support point at each node; empty in sp mode.
  std::vector<std::vector<std::size_t>> multiplicities;
  LiftDiagnostics diagnostics;
};

/// The lift of one segment is not single-valued: either the two paths around a
/// unit square disagree, or an edge closing a loop through the segment joins
/// tuples that are not an optimal matching.
class HolonomyError : public Error {
 public:
  HolonomyError(std::vector<std::size_t> nodes, MTuple first, MTuple second);
  /// Square corners c00, c10, c01, c11, or the two endpoints of the edge.
  const std::vector<std::size_t>& nodes() const { return nodes_; }
  const MTuple& first() const { return first_; }
  const MTuple& second() const { return second_; }

 private:
  std::vector<std::size_t> nodes_;
  MTuple first_;
  MTuple second_;
};

/// An event joins two lifted segments whose tuples are not an optimal matching.
class ConflictingSheet : public Error {
 public:
  ConflictingSheet(std::size_t event, MTuple from, MTuple to, double cost, double optimal);
  std::size_t event() const { return event_; }
  /// Lifted tuples at the two endpoints of the event.
  const MTuple& from() const { return from_; }
  const MTuple& to() const { return to_; }
  double cost() const { return cost_; }
  double optimal() const { return optimal_; }

 private:
  std::size_t event_;
  MTuple from_;
  MTuple to_;
  double cost_;
  double optimal_;
};

/// A lift does not fit the region it claims to lift.
class InputMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// Lifts the whole region. Throws InputError, ClassificationAmbiguity,
/// HolonomyError or ConflictingSheet.
LiftResult lift_region(const SampledRegion& region, const LiftOptions& options = {});

/// Hausdorff distance between two finite point sets.
double hausdorff(const PointDomain& domain, const MTuple& a, const MTuple& b);

struct VerifyCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  double max_position_step = 0.0;
  double max_sample_step = 0.0;

  bool ok() const;
};

/// Checks a lift against its region: exact round trip at every node,
/// continuity (largest per-position step at most the largest Hausdorff step of
/// the samples plus 2*eps) and, in sp mode, a constant pattern on each segment.
/// Throws InputMismatch when the lift has the wrong number or size of tuples.
VerifyReport verify(const SampledRegion& region, const std::vector<MTuple>& tuples);

}  // namespace symlift

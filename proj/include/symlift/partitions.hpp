#pragma once

// Integer-partition calculus behind the piece decomposition of X^m.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symlift/core.hpp"

namespace symlift {

/// tau_alpha = [1^a1 2^a2 ... m^am]; alpha[i-1] counts the parts of size i.
struct Partition {
  std::vector<std::size_t> alpha;

  std::size_t m() const;
  /// Total number of parts, sum of alpha_i.
  std::size_t part_count() const;
  /// Parts in descending order, e.g. [2,1,1] for [1^2 2^1].
  std::vector<std::size_t> parts() const;
  /// Exponent notation such as "[1^2 2]".
  std::string notation() const;

  static Partition from_parts(std::span<const std::size_t> parts);

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;
};

inline constexpr std::size_t kMaxPartitionM = 30;
inline constexpr std::size_t kMaxPieceM = 10;

/// All partitions of m in ascending lexicographic order of alpha. 1 <= m <= 30.
std::vector<Partition> enumerate_partitions(std::size_t m);

JVector jvector_of(const Partition& tau);
Partition partition_of(const JVector& j);
Partition partition_of(const PieceId& piece);

/// Partitions of m grouped by part count (the ~ relation).
struct PartitionClassTable {
  std::size_t m = 0;
  /// Classes ordered by decreasing part count, so the principal class [1^m]
  /// comes first; members in ascending lexicographic order of alpha.
  std::vector<std::vector<Partition>> classes;

  std::size_t M() const { return classes.size(); }
  /// m_alpha for each class.
  std::vector<std::size_t> class_sizes() const;
  /// Index of the class containing tau.
  std::size_t class_of(const Partition& tau) const;
};

PartitionClassTable sim_classes(std::size_t m);

bool sim_related(const Partition& a, const Partition& b);
/// Two pieces are related when they have the same number of blocks.
bool pieces_related(const PieceId& a, const PieceId& b);

/// All set partitions of {0..m-1} (one per coincidence pattern), in
/// lexicographic order of their restricted growth strings. m <= 10.
std::vector<PieceId> enumerate_pieces(std::size_t m);
/// Patterns whose block-size multiset matches one of `selected`.
std::vector<PieceId> enumerate_pieces(std::size_t m, std::span<const Partition> selected);

/// Number of set partitions of {0..m-1} with block shape tau.
std::uint64_t count_set_partitions(const Partition& tau);

/// |{x in X^m : pattern(x) == piece}| for |X| = q: the falling factorial q^(r)
/// with r the number of blocks. Throws InputError on overflow.
std::uint64_t count_piece_points(std::uint64_t q, const PieceId& piece);

}  // namespace symlift

#pragma once

// Finite topological spaces as families of open bitmasks, the boundary
// operators, quotient topologies of X^m, and an exhaustive lemma auditor.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symlift/error.hpp"

namespace symlift {

using Mask = std::uint32_t;

inline constexpr std::size_t kMaxEnumerateN = 4;
inline constexpr std::size_t kMaxTopologyN = 10;

class FiniteTopology {
 public:
  FiniteTopology() = default;

  /// Validates that `opens` contains the empty and full sets and is closed under
  /// pairwise union and intersection; throws InputError otherwise.
  static FiniteTopology from_opens(std::size_t n, std::vector<Mask> opens);
  /// The topology whose minimal neighbourhood of point x is minimal[x]
  /// (minimal[x] must contain x and be consistent with a preorder).
  static FiniteTopology from_minimal_opens(std::vector<Mask> minimal);
  static FiniteTopology discrete(std::size_t n);
  static FiniteTopology indiscrete(std::size_t n);

  std::size_t n() const { return n_; }
  Mask full() const { return n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1; }
  /// Open sets in ascending mask order.
  const std::vector<Mask>& opens() const { return opens_; }
  bool is_open(Mask s) const;
  bool is_closed(Mask s) const { return is_open(full() & ~s); }
  /// Smallest open set containing x.
  Mask minimal_open(std::size_t x) const { return minimal_[x]; }
  bool connected() const;

  Mask interior(Mask a) const;
  Mask closure(Mask a) const;
  Mask boundary(Mask a) const { return closure(a) & ~interior(a); }
  /// Points of the boundary having an open neighbourhood U with int(U \ A) empty.
  Mask boundary_interior(Mask a) const;
  /// Points of the boundary all of whose open neighbourhoods U have int(U \ A) nonempty.
  Mask boundary_exterior(Mask a) const;

  friend bool operator==(const FiniteTopology& x, const FiniteTopology& y) {
    return x.n_ == y.n_ && x.opens_ == y.opens_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Mask> opens_;
  std::vector<Mask> minimal_;

  void compute_minimal();
};

/// The five boundary operators evaluated on one subset.
struct BoundaryOperators {
  Mask interior = 0;
  Mask closure = 0;
  Mask boundary = 0;
  Mask boundary_interior = 0;
  Mask boundary_exterior = 0;
};

BoundaryOperators boundary_operators(const FiniteTopology& t, Mask a);

/// Every topology on {0..n-1}, ordered by their open families read as binary
/// numbers (bit S set when S is open), so the indiscrete topology comes first.
std::vector<FiniteTopology> enumerate_topologies(std::size_t n);

/// Whether gamma (point images) is continuous from y to z.
bool is_continuous(const FiniteTopology& y, const FiniteTopology& z,
                   const std::vector<std::size_t>& gamma);

/// Passing-through points of gamma against the pieces of z: gamma(p) lies on the
/// boundary of some piece and every open neighbourhood of p meets two pieces.
Mask passings_through(const FiniteTopology& y, const FiniteTopology& z,
                      const std::vector<std::size_t>& gamma, const std::vector<Mask>& pieces);

/// Point names used in reports: a, b, c, ...
std::string point_name(std::size_t i);
std::string format_set(Mask s, std::size_t n);

// ---------------------------------------------------------------------------
// Auditor

enum class LemmaKind { single, pair, family, map_subset, map_pieces };

struct LemmaInfo {
  std::string id;
  std::string statement;
  LemmaKind kind;
  /// Largest n the sweep supports.
  std::size_t max_n;
  /// Smallest n_max at which the exhaustive sweep finds a counterexample;
  /// nullopt when none exists up to max_n.
  std::optional<std::size_t> fails_from;
};

const std::vector<LemmaInfo>& lemma_registry();
const LemmaInfo& lemma_info(const std::string& id);

/// Replayable witness of a failed statement.
struct Certificate {
  FiniteTopology space;                  ///< X, or the target Z for map lemmas
  std::vector<Mask> subsets;             ///< A, B, a family, or the pieces of Z
  std::optional<FiniteTopology> source;  ///< Y for map lemmas
  std::vector<std::size_t> map;          ///< gamma(y) for y in Y
  std::string lhs;                       ///< formatted sides of the failed identity
  std::string rhs;
};

struct AuditReport {
  std::string lemma;
  std::string statement;
  std::size_t n_max = 0;
  std::string universe;
  std::uint64_t cases = 0;
  bool holds = true;
  std::optional<Certificate> certificate;
  /// The registry's expectation at this n_max.
  bool expected_holds = true;

  bool matches_expectation() const { return holds == expected_holds; }
};

/// Exhaustive sweep of every topology (and subset choice, and continuous map
/// from a connected source for map lemmas) on 1..n_max points. The first
/// counterexample in sweep order is reported regardless of thread count.
/// Throws InputError for unknown ids or n_max out of range.
AuditReport audit(const std::string& lemma, std::size_t n_max, unsigned threads = 1);

/// Re-evaluates the lemma on the certificate; true when it really is a counterexample.
bool certificate_violates(const std::string& lemma, const Certificate& c);

// ---------------------------------------------------------------------------
// Quotients of X^m

/// A finite space given by minimal open neighbourhoods of its elements.
struct QuotientSpace {
  /// Canonical representative of each class as point indices of X: the sorted
  /// tuple for the symmetric product, the sorted support for the support quotient.
  std::vector<std::vector<std::size_t>> elements;
  /// Class index of every tuple of X^m, tuples encoded in base n with
  /// position 0 most significant.
  std::vector<std::size_t> class_of;
  /// Minimal open neighbourhood of each class, as sorted class indices.
  std::vector<std::vector<std::size_t>> minimal_open;

  std::size_t size() const { return elements.size(); }
  /// A set of classes (membership flags) is open when it contains the minimal
  /// neighbourhood of each of its members.
  bool is_open(const std::vector<bool>& members) const;
};

struct QuotientReport {
  std::size_t m = 0;
  QuotientSpace sp;
  QuotientSpace f;
  std::uint64_t basis_opens = 0;
  bool sp_map_open = true;
  bool f_map_open = true;
  /// Factors of the first basis box whose image is not open, if any.
  std::optional<std::vector<Mask>> sp_open_witness;
  std::optional<std::vector<Mask>> f_open_witness;
  /// phi^{-1}(phi(V)) equals the union of the permuted copies of V.
  bool sp_saturation = true;
  /// The support saturation of V equals its union over partition and permutation images.
  bool f_saturation = true;
};

inline constexpr std::uint64_t kMaxProductSize = 1000000;

enum class QuotientKind { symmetric_product, support };

/// Builds one quotient of X^m with its quotient topology, no map checks.
/// Throws InputError when n^m exceeds kMaxProductSize.
QuotientSpace build_quotient(const FiniteTopology& x, std::size_t m, QuotientKind kind);

/// Builds both quotients with their quotient topologies and checks openness and
/// the saturation identities on every product basis open. Throws InputError
/// when n^m exceeds kMaxProductSize.
QuotientReport build_quotients(const FiniteTopology& x, std::size_t m);

}  // namespace symlift

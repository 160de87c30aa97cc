#include "symlift/finitetop.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "symlift/partitions.hpp"

namespace symlift {

namespace {

bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

}  // namespace

// ---------------------------------------------------------------------------
// FiniteTopology

FiniteTopology FiniteTopology::from_opens(std::size_t n, std::vector<Mask> opens) {
  if (n > kMaxTopologyN) throw InputError("topologies are limited to " + std::to_string(kMaxTopologyN) + " points");
  FiniteTopology t;
  t.n_ = n;
  const Mask full = t.full();
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  for (Mask u : opens) {
    if (!subset_of(u, full)) throw InputError("open set outside the ground set");
  }
  t.opens_ = std::move(opens);
  if (!t.is_open(0) || !t.is_open(full)) throw InputError("open family must contain the empty and full sets");
  for (Mask u : t.opens_) {
    for (Mask v : t.opens_) {
      if (!t.is_open(u | v) || !t.is_open(u & v)) {
        throw InputError("open family is not closed under union and intersection");
      }
    }
  }
  t.compute_minimal();
  return t;
}

FiniteTopology FiniteTopology::from_minimal_opens(std::vector<Mask> minimal) {
  const std::size_t n = minimal.size();
  if (n > kMaxTopologyN) throw InputError("topologies are limited to " + std::to_string(kMaxTopologyN) + " points");
  for (std::size_t x = 0; x < n; ++x) {
    if (!(minimal[x] >> x & 1U)) throw InputError("minimal neighbourhood must contain its point");
    for (std::size_t y = 0; y < n; ++y) {
      if ((minimal[x] >> y & 1U) && !subset_of(minimal[y], minimal[x])) {
        throw InputError("minimal neighbourhoods are not transitive");
      }
    }
  }
  FiniteTopology t;
  t.n_ = n;
  for (Mask s = 0; s <= t.full(); ++s) {
    bool open = true;
    for (std::size_t x = 0; x < n && open; ++x) {
      if (s >> x & 1U) open = subset_of(minimal[x], s);
    }
    if (open) t.opens_.push_back(s);
  }
  t.minimal_ = std::move(minimal);
  return t;
}

FiniteTopology FiniteTopology::discrete(std::size_t n) {
  std::vector<Mask> minimal(n);
  for (std::size_t x = 0; x < n; ++x) minimal[x] = Mask{1} << x;
  return from_minimal_opens(std::move(minimal));
}

FiniteTopology FiniteTopology::indiscrete(std::size_t n) {
  FiniteTopology t;
  t.n_ = n;
  t.opens_ = {0};
  if (n > 0) t.opens_.push_back(t.full());
  t.compute_minimal();
  return t;
}

void FiniteTopology::compute_minimal() {
  minimal_.assign(n_, full());
  for (Mask u : opens_) {
    for (std::size_t x = 0; x < n_; ++x) {
      if (u >> x & 1U) minimal_[x] &= u;
    }
  }
}

bool FiniteTopology::is_open(Mask s) const { return std::binary_search(opens_.begin(), opens_.end(), s); }

bool FiniteTopology::connected() const {
  for (Mask u : opens_) {
    if (u != 0 && u != full() && is_open(full() & ~u)) return false;
  }
  return true;
}

Mask FiniteTopology::interior(Mask a) const {
  Mask out = 0;
  for (Mask u : opens_) {
    if (subset_of(u, a)) out |= u;
  }
  return out;
}

Mask FiniteTopology::closure(Mask a) const { return full() & ~interior(full() & ~a); }

Mask FiniteTopology::boundary_interior(Mask a) const {
  const Mask bd = boundary(a);
  Mask out = 0;
  for (std::size_t x = 0; x < n_; ++x) {
    if (!(bd >> x & 1U)) continue;
    for (Mask u : opens_) {
      if ((u >> x & 1U) && interior(u & ~a) == 0) {
        out |= Mask{1} << x;
        break;
      }
    }
  }
  return out;
}

Mask FiniteTopology::boundary_exterior(Mask a) const {
  const Mask bd = boundary(a);
  Mask out = 0;
  for (std::size_t x = 0; x < n_; ++x) {
    if (!(bd >> x & 1U)) continue;
    bool all = true;
    for (Mask u : opens_) {
      if ((u >> x & 1U) && interior(u & ~a) == 0) {
        all = false;
        break;
      }
    }
    if (all) out |= Mask{1} << x;
  }
  return out;
}

BoundaryOperators boundary_operators(const FiniteTopology& t, Mask a) {
  return {t.interior(a), t.closure(a), t.boundary(a), t.boundary_interior(a), t.boundary_exterior(a)};
}

std::vector<FiniteTopology> enumerate_topologies(std::size_t n) {
  if (n < 1 || n > kMaxEnumerateN) {
    throw InputError("topology enumeration needs 1 <= n <= " + std::to_string(kMaxEnumerateN));
  }
  // Topologies on a finite set correspond to preorders; choose every point's
  // minimal neighbourhood and keep the transitive choices.
  const Mask others = (Mask{1} << (n - 1)) - 1;
  const std::uint64_t combos = std::uint64_t{1} << ((n - 1) * n);
  std::vector<FiniteTopology> out;
  for (std::uint64_t code = 0; code < combos; ++code) {
    std::vector<Mask> minimal(n);
    for (std::size_t x = 0; x < n; ++x) {
      const Mask bits = static_cast<Mask>(code >> ((n - 1) * x)) & others;
      // spread the n-1 bits over the points other than x
      const Mask low = bits & ((Mask{1} << x) - 1);
      const Mask high = (bits >> x) << (x + 1);
      minimal[x] = low | high | (Mask{1} << x);
    }
    bool transitive = true;
    for (std::size_t x = 0; x < n && transitive; ++x) {
      for (std::size_t y = 0; y < n && transitive; ++y) {
        if (minimal[x] >> y & 1U) transitive = subset_of(minimal[y], minimal[x]);
      }
    }
    if (transitive) out.push_back(FiniteTopology::from_minimal_opens(std::move(minimal)));
  }
  // Compare open families as binary numbers: highest differing member decides.
  std::sort(out.begin(), out.end(), [](const FiniteTopology& a, const FiniteTopology& b) {
    return std::lexicographical_compare(a.opens().rbegin(), a.opens().rend(), b.opens().rbegin(),
                                        b.opens().rend());
  });
  return out;
}

bool is_continuous(const FiniteTopology& y, const FiniteTopology& z, const std::vector<std::size_t>& gamma) {
  for (Mask v : z.opens()) {
    Mask pre = 0;
    for (std::size_t p = 0; p < y.n(); ++p) {
      if (v >> gamma[p] & 1U) pre |= Mask{1} << p;
    }
    if (!y.is_open(pre)) return false;
  }
  return true;
}

Mask passings_through(const FiniteTopology& y, const FiniteTopology& z, const std::vector<std::size_t>& gamma,
                      const std::vector<Mask>& pieces) {
  Mask on_boundary = 0;
  for (Mask piece : pieces) on_boundary |= z.boundary(piece);
  auto piece_of = [&](std::size_t point) {
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (pieces[i] >> point & 1U) return i;
    }
    return pieces.size();
  };
  Mask out = 0;
  for (std::size_t p = 0; p < y.n(); ++p) {
    if (!(on_boundary >> gamma[p] & 1U)) continue;
    // the minimal neighbourhood is the smallest open set around p
    const Mask nb = y.minimal_open(p);
    const std::size_t home = piece_of(gamma[p]);
    bool mixed = false;
    for (std::size_t q = 0; q < y.n() && !mixed; ++q) {
      if (nb >> q & 1U) mixed = piece_of(gamma[q]) != home;
    }
    if (mixed) out |= Mask{1} << p;
  }
  return out;
}

std::string point_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "p" + std::to_string(i);
}

std::string format_set(Mask s, std::size_t n) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(s >> i & 1U)) continue;
    if (!first) out += ",";
    first = false;
    out += point_name(i);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Auditor

namespace {

struct Violation {
  std::string lhs;
  std::string rhs;
};

// nullopt: hypotheses not met; inner nullopt: statement holds.
using Outcome = std::optional<std::optional<Violation>>;

using SetCheck = std::function<Outcome(const FiniteTopology&, const std::vector<Mask>&)>;
using MapCheck = std::function<Outcome(const FiniteTopology& y, const FiniteTopology& z,
                                       const std::vector<std::size_t>& gamma, const std::vector<Mask>&)>;

Outcome compare(Mask lhs, Mask rhs, std::size_t n) {
  if (lhs == rhs) return std::optional<Violation>{};
  return std::optional<Violation>{Violation{format_set(lhs, n), format_set(rhs, n)}};
}

bool pairwise_disjoint(const std::vector<Mask>& family) {
  Mask seen = 0;
  for (Mask s : family) {
    if (s & seen) return false;
    seen |= s;
  }
  return true;
}

Mask image_preimage(const FiniteTopology& y, const std::vector<std::size_t>& gamma, Mask b) {
  Mask pre = 0;
  for (std::size_t p = 0; p < y.n(); ++p) {
    if (b >> gamma[p] & 1U) pre |= Mask{1} << p;
  }
  return pre;
}

bool hausdorff(const FiniteTopology& t) {
  for (std::size_t x = 0; x < t.n(); ++x) {
    for (std::size_t y = x + 1; y < t.n(); ++y) {
      if (t.minimal_open(x) & t.minimal_open(y)) return false;
    }
  }
  return true;
}

struct LemmaDef {
  LemmaInfo info;
  SetCheck set_check;
  MapCheck map_check;
};

const std::vector<LemmaDef>& definitions() {
  static const std::vector<LemmaDef> defs = [] {
    std::vector<LemmaDef> d;
    auto set_lemma = [&](std::string id, std::string statement, LemmaKind kind,
                         std::optional<std::size_t> fails_from, SetCheck check) {
      d.push_back({{std::move(id), std::move(statement), kind, kMaxEnumerateN, fails_from}, std::move(check), {}});
    };
    auto map_lemma = [&](std::string id, std::string statement, LemmaKind kind,
                         std::optional<std::size_t> fails_from, MapCheck check) {
      d.push_back({{std::move(id), std::move(statement), kind, 3, fails_from}, {}, std::move(check)});
    };

    set_lemma("exterior-boundary-eq-closure-boundary", "bd(cl A) = bdE(A)", LemmaKind::single, std::nullopt,
              [](const FiniteTopology& t, const std::vector<Mask>& s) {
                return compare(t.boundary(t.closure(s[0])), t.boundary_exterior(s[0]), t.n());
              });
    set_lemma("int-closure-eq-int-union-interior-boundary", "int(cl A) = int(A) u bdI(A)", LemmaKind::single,
              std::nullopt, [](const FiniteTopology& t, const std::vector<Mask>& s) {
                return compare(t.interior(t.closure(s[0])), t.interior(s[0]) | t.boundary_interior(s[0]), t.n());
              });
    set_lemma("interior-boundary-intersection", "bdI(A n B) = bdI(A) n bdI(B)", LemmaKind::pair, 2,
              [](const FiniteTopology& t, const std::vector<Mask>& s) {
                return compare(t.boundary_interior(s[0] & s[1]),
                               t.boundary_interior(s[0]) & t.boundary_interior(s[1]), t.n());
              });
    set_lemma("exterior-boundary-intersection", "bdE(A n B) = bdE(A) n bdE(B)", LemmaKind::pair, 2,
              [](const FiniteTopology& t, const std::vector<Mask>& s) {
                return compare(t.boundary_exterior(s[0] & s[1]),
                               t.boundary_exterior(s[0]) & t.boundary_exterior(s[1]), t.n());
              });
    set_lemma("int-closure-intersection", "int(cl(A n B)) = int(cl A) n int(cl B)", LemmaKind::pair, 2,
              [](const FiniteTopology& t, const std::vector<Mask>& s) {
                return compare(t.interior(t.closure(s[0] & s[1])),
                               t.interior(t.closure(s[0])) & t.interior(t.closure(s[1])), t.n());
              });
    set_lemma("int-closure-complement-of-empty-interior", "int(B) = {} implies int(cl(X \\ B)) = X",
              LemmaKind::single, std::nullopt, [](const FiniteTopology& t, const std::vector<Mask>& s) -> Outcome {
                if (t.interior(s[0]) != 0) return std::nullopt;
                return compare(t.interior(t.closure(t.full() & ~s[0])), t.full(), t.n());
              });
    set_lemma("boundary-union-empty-interior", "A n B = {} implies int(bd A u bd B) = {}", LemmaKind::pair, 2,
              [](const FiniteTopology& t, const std::vector<Mask>& s) -> Outcome {
                if (s[0] & s[1]) return std::nullopt;
                return compare(t.interior(t.boundary(s[0]) | t.boundary(s[1])), 0, t.n());
              });
    set_lemma("boundary-family-empty-interior", "pairwise disjoint A_j implies int(u bd A_j) = {}",
              LemmaKind::family, 2, [](const FiniteTopology& t, const std::vector<Mask>& s) {
                Mask u = 0;
                for (Mask a : s) u |= t.boundary(a);
                return compare(t.interior(u), 0, t.n());
              });
    set_lemma("closed-empty-interior-union",
              "A, B closed, disjoint, int(A) = int(B) = {} implies int(A u B) = {}", LemmaKind::pair, std::nullopt,
              [](const FiniteTopology& t, const std::vector<Mask>& s) -> Outcome {
                const Mask a = s[0], b = s[1];
                if ((a & b) || !t.is_closed(a) || !t.is_closed(b) || t.interior(a) || t.interior(b)) {
                  return std::nullopt;
                }
                return compare(t.interior(a | b), 0, t.n());
              });
    set_lemma("closed-empty-interior-family",
              "pairwise disjoint closed A_j with empty interior imply int(u A_j) = {}", LemmaKind::family,
              std::nullopt, [](const FiniteTopology& t, const std::vector<Mask>& s) -> Outcome {
                Mask u = 0;
                for (Mask a : s) {
                  if (!t.is_closed(a) || t.interior(a)) return std::nullopt;
                  u |= a;
                }
                return compare(t.interior(u), 0, t.n());
              });

    map_lemma("preimage-empty-interior", "Y connected, gamma continuous, int(B) = {} implies int(gamma^-1 B) = {}",
              LemmaKind::map_subset, 2,
              [](const FiniteTopology& y, const FiniteTopology& z, const std::vector<std::size_t>& gamma,
                 const std::vector<Mask>& s) -> Outcome {
                if (z.interior(s[0]) != 0) return std::nullopt;
                return compare(y.interior(image_preimage(y, gamma, s[0])), 0, y.n());
              });
    map_lemma("passings-through-empty-interior", "Y connected, gamma continuous implies int(P(gamma)) = {}",
              LemmaKind::map_pieces, 2,
              [](const FiniteTopology& y, const FiniteTopology& z, const std::vector<std::size_t>& gamma,
                 const std::vector<Mask>& pieces) -> Outcome {
                return compare(y.interior(passings_through(y, z, gamma, pieces)), 0, y.n());
              });
    map_lemma("passings-through-nowhere-dense", "Y connected, gamma continuous implies int(cl P(gamma)) = {}",
              LemmaKind::map_pieces, 2,
              [](const FiniteTopology& y, const FiniteTopology& z, const std::vector<std::size_t>& gamma,
                 const std::vector<Mask>& pieces) -> Outcome {
                return compare(y.interior(y.closure(passings_through(y, z, gamma, pieces))), 0, y.n());
              });
    map_lemma("no-passing-single-piece",
              "Y connected Hausdorff, gamma continuous, P(gamma) = {} implies gamma(Y) lies in one piece",
              LemmaKind::map_pieces, std::nullopt,
              [](const FiniteTopology& y, const FiniteTopology& z, const std::vector<std::size_t>& gamma,
                 const std::vector<Mask>& pieces) -> Outcome {
                if (!hausdorff(y) || passings_through(y, z, gamma, pieces) != 0) return std::nullopt;
                Mask image = 0;
                for (std::size_t g : gamma) image |= Mask{1} << g;
                for (Mask piece : pieces) {
                  if (subset_of(image, piece)) return std::optional<Violation>{};
                }
                return std::optional<Violation>{Violation{format_set(image, z.n()), "a subset of one piece"}};
              });
    return d;
  }();
  return defs;
}

const LemmaDef& definition(const std::string& id) {
  for (const auto& d : definitions()) {
    if (d.info.id == id) return d;
  }
  throw InputError("unknown lemma: " + id);
}

bool is_map_kind(LemmaKind k) { return k == LemmaKind::map_subset || k == LemmaKind::map_pieces; }

const std::vector<FiniteTopology>& topologies_cached(std::size_t n) {
  static std::once_flag flags[kMaxEnumerateN + 1];
  static std::vector<FiniteTopology> cache[kMaxEnumerateN + 1];
  std::call_once(flags[n], [n] { cache[n] = enumerate_topologies(n); });
  return cache[n];
}

// Families of pairwise disjoint nonempty subsets: every point is either left
// out (label 0) or put in set label-1, labels in first-use order.
std::vector<std::vector<Mask>> disjoint_families(std::size_t n) {
  std::vector<std::vector<Mask>> out;
  std::vector<std::size_t> label(n, 0);
  while (true) {
    std::size_t next = 1;
    bool ok = true;
    for (std::size_t l : label) {
      if (l == 0) continue;
      if (l > next) {
        ok = false;
        break;
      }
      if (l == next) ++next;
    }
    if (ok && next > 1) {
      std::vector<Mask> fam(next - 1, 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (label[i] > 0) fam[label[i] - 1] |= Mask{1} << i;
      }
      out.push_back(std::move(fam));
    }
    std::size_t i = n;
    while (i > 0 && label[i - 1] == n) label[--i] = 0;
    if (i == 0) break;
    ++label[i - 1];
  }
  return out;
}

std::vector<std::vector<Mask>> subset_choices(LemmaKind kind, std::size_t n) {
  const Mask full = (Mask{1} << n) - 1;
  std::vector<std::vector<Mask>> out;
  switch (kind) {
    case LemmaKind::single:
    case LemmaKind::map_subset:
      for (Mask a = 0; a <= full; ++a) out.push_back({a});
      break;
    case LemmaKind::pair:
      for (Mask a = 0; a <= full; ++a) {
        for (Mask b = 0; b <= full; ++b) out.push_back({a, b});
      }
      break;
    case LemmaKind::family:
      out = disjoint_families(n);
      break;
    case LemmaKind::map_pieces:
      for (const PieceId& p : enumerate_pieces(n)) {
        std::vector<Mask> pieces;
        for (const auto& block : p.blocks()) {
          Mask s = 0;
          for (std::size_t i : block) s |= Mask{1} << i;
          pieces.push_back(s);
        }
        out.push_back(std::move(pieces));
      }
      break;
  }
  return out;
}

struct UnitResult {
  std::uint64_t cases = 0;
  std::optional<Certificate> certificate;
};

struct Unit {
  std::size_t n;      // ground size of X (or Z)
  std::size_t index;  // topology index
};

UnitResult run_set_unit(const LemmaDef& def, const Unit& u) {
  const FiniteTopology& t = topologies_cached(u.n)[u.index];
  UnitResult r;
  for (const auto& s : subset_choices(def.info.kind, u.n)) {
    const Outcome o = def.set_check(t, s);
    if (!o) continue;
    ++r.cases;
    if (*o) {
      r.certificate = Certificate{t, s, std::nullopt, {}, (*o)->lhs, (*o)->rhs};
      return r;
    }
  }
  return r;
}

UnitResult run_map_unit(const LemmaDef& def, const Unit& u, std::size_t n_max) {
  const FiniteTopology& z = topologies_cached(u.n)[u.index];
  const auto choices = subset_choices(def.info.kind, u.n);
  UnitResult r;
  for (std::size_t ny = 1; ny <= n_max; ++ny) {
    for (const FiniteTopology& y : topologies_cached(ny)) {
      if (!y.connected()) continue;
      std::vector<std::size_t> gamma(ny, 0);
      while (true) {
        if (is_continuous(y, z, gamma)) {
          for (const auto& s : choices) {
            const Outcome o = def.map_check(y, z, gamma, s);
            if (!o) continue;
            ++r.cases;
            if (*o) {
              r.certificate = Certificate{z, s, y, gamma, (*o)->lhs, (*o)->rhs};
              return r;
            }
          }
        }
        std::size_t i = ny;
        while (i > 0 && gamma[i - 1] == u.n - 1) gamma[--i] = 0;
        if (i == 0) break;
        ++gamma[i - 1];
      }
    }
  }
  return r;
}

std::string describe_universe(const LemmaDef& def, std::size_t n_max) {
  std::size_t count = 0;
  for (std::size_t n = 1; n <= n_max; ++n) count += topologies_cached(n).size();
  std::string spaces = "all " + std::to_string(count) + " topologies on 1.." + std::to_string(n_max) + " points";
  switch (def.info.kind) {
    case LemmaKind::single:
      return spaces + "; every subset A";
    case LemmaKind::pair:
      return spaces + "; every ordered subset pair (A, B)";
    case LemmaKind::family:
      return spaces + "; every family of pairwise disjoint nonempty subsets";
    case LemmaKind::map_subset:
      return "targets Z: " + spaces + "; connected sources Y on 1.." + std::to_string(n_max) +
             " points; every continuous map; every subset B of Z";
    case LemmaKind::map_pieces:
      return "targets Z: " + spaces + "; connected sources Y on 1.." + std::to_string(n_max) +
             " points; every continuous map; every decomposition of Z into pieces";
  }
  return spaces;
}

}  // namespace

const std::vector<LemmaInfo>& lemma_registry() {
  static const std::vector<LemmaInfo> infos = [] {
    std::vector<LemmaInfo> out;
    for (const auto& d : definitions()) out.push_back(d.info);
    return out;
  }();
  return infos;
}

const LemmaInfo& lemma_info(const std::string& id) { return definition(id).info; }

AuditReport audit(const std::string& lemma, std::size_t n_max, unsigned threads) {
  const LemmaDef& def = definition(lemma);
  if (n_max < 1 || n_max > def.info.max_n) {
    throw InputError("audit of " + lemma + " needs 1 <= n <= " + std::to_string(def.info.max_n));
  }
  std::vector<Unit> units;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t i = 0; i < topologies_cached(n).size(); ++i) units.push_back({n, i});
  }

  const bool maps = is_map_kind(def.info.kind);
  std::vector<UnitResult> results(units.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_fail{std::numeric_limits<std::size_t>::max()};
  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= units.size()) return;
      // units after a known failure cannot change the reported one
      if (k > first_fail.load()) continue;
      results[k] = maps ? run_map_unit(def, units[k], n_max) : run_set_unit(def, units[k]);
      if (results[k].certificate) {
        std::size_t cur = first_fail.load();
        while (k < cur && !first_fail.compare_exchange_weak(cur, k)) {
        }
      }
    }
  };
  const unsigned count = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(units.size())));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  }

  AuditReport report;
  report.lemma = def.info.id;
  report.statement = def.info.statement;
  report.n_max = n_max;
  report.universe = describe_universe(def, n_max);
  report.expected_holds = !def.info.fails_from || n_max < *def.info.fails_from;
  for (std::size_t k = 0; k < units.size(); ++k) {
    report.cases += results[k].cases;
    if (results[k].certificate) {
      report.holds = false;
      report.certificate = results[k].certificate;
      break;
    }
  }
  return report;
}

bool certificate_violates(const std::string& lemma, const Certificate& c) {
  const LemmaDef& def = definition(lemma);
  if (is_map_kind(def.info.kind)) {
    if (!c.source || c.map.size() != c.source->n() || !c.source->connected()) return false;
    for (std::size_t g : c.map) {
      if (g >= c.space.n()) return false;
    }
    if (!is_continuous(*c.source, c.space, c.map)) return false;
    if (def.info.kind == LemmaKind::map_pieces) {
      Mask cover = 0;
      for (Mask p : c.subsets) {
        if (p == 0 || (cover & p)) return false;
        cover |= p;
      }
      if (cover != c.space.full()) return false;
    }
    const Outcome o = def.map_check(*c.source, c.space, c.map, c.subsets);
    return o && *o;
  }
  for (Mask s : c.subsets) {
    if (!subset_of(s, c.space.full())) return false;
  }
  if (def.info.kind == LemmaKind::family && !pairwise_disjoint(c.subsets)) return false;
  const Outcome o = def.set_check(c.space, c.subsets);
  return o && *o;
}

// ---------------------------------------------------------------------------
// Quotients

bool QuotientSpace::is_open(const std::vector<bool>& members) const {
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (!members[c]) continue;
    for (std::size_t d : minimal_open[c]) {
      if (!members[d]) return false;
    }
  }
  return true;
}

namespace {

struct Product {
  std::size_t n;
  std::size_t m;
  std::uint64_t size;

  std::vector<std::size_t> decode(std::uint64_t code) const {
    std::vector<std::size_t> t(m);
    for (std::size_t i = m; i-- > 0;) {
      t[i] = static_cast<std::size_t>(code % n);
      code /= n;
    }
    return t;
  }
  std::uint64_t encode(const std::vector<std::size_t>& t) const {
    std::uint64_t code = 0;
    for (std::size_t v : t) code = code * n + v;
    return code;
  }
};

// Every code of the box factors[0] x ... x factors[m-1].
void box_codes(const Product& p, const std::vector<Mask>& factors, std::vector<std::uint64_t>& out) {
  out.clear();
  std::vector<std::size_t> t(p.m, 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t code) {
    if (i == p.m) {
      out.push_back(code);
      return;
    }
    for (std::size_t x = 0; x < p.n; ++x) {
      if (factors[i] >> x & 1U) rec(i + 1, code * p.n + x);
    }
  };
  rec(0, 0);
}

QuotientSpace make_quotient(const FiniteTopology& x, const Product& p, bool support) {
  QuotientSpace q;
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::vector<std::size_t>> keys(p.size);
  for (std::uint64_t code = 0; code < p.size; ++code) {
    std::vector<std::size_t> t = p.decode(code);
    std::sort(t.begin(), t.end());
    if (support) t.erase(std::unique(t.begin(), t.end()), t.end());
    index.emplace(t, 0);
    keys[code] = std::move(t);
  }
  for (auto& [key, idx] : index) {
    idx = q.elements.size();
    q.elements.push_back(key);
  }
  q.class_of.resize(p.size);
  std::vector<std::vector<std::uint64_t>> members(q.size());
  for (std::uint64_t code = 0; code < p.size; ++code) {
    q.class_of[code] = index.at(keys[code]);
    members[q.class_of[code]].push_back(code);
  }

  // Minimal open of a class: close {c} under "contains the class of some point
  // of the product neighbourhood of a member".
  std::vector<std::uint64_t> box;
  std::vector<Mask> factors(p.m);
  q.minimal_open.resize(q.size());
  for (std::size_t c = 0; c < q.size(); ++c) {
    std::vector<bool> in(q.size(), false);
    std::vector<std::size_t> queue{c};
    in[c] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::uint64_t code : members[queue[head]]) {
        const auto t = p.decode(code);
        for (std::size_t i = 0; i < p.m; ++i) factors[i] = x.minimal_open(t[i]);
        box_codes(p, factors, box);
        for (std::uint64_t b : box) {
          const std::size_t d = q.class_of[b];
          if (!in[d]) {
            in[d] = true;
            queue.push_back(d);
          }
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    q.minimal_open[c] = std::move(queue);
  }
  return q;
}

Product checked_product(const FiniteTopology& x, std::size_t m) {
  if (m < 1) throw InputError("m must be positive");
  const std::size_t n = x.n();
  if (n < 1) throw InputError("X must be nonempty");
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (size > kMaxProductSize / n) throw InputError("n^m exceeds " + std::to_string(kMaxProductSize));
    size *= n;
  }
  return Product{n, m, size};
}

}  // namespace

QuotientSpace build_quotient(const FiniteTopology& x, std::size_t m, QuotientKind kind) {
  return make_quotient(x, checked_product(x, m), kind == QuotientKind::support);
}

QuotientReport build_quotients(const FiniteTopology& x, std::size_t m) {
  const Product p = checked_product(x, m);
  const std::uint64_t size = p.size;

  QuotientReport r;
  r.m = m;
  r.sp = make_quotient(x, p, false);
  r.f = make_quotient(x, p, true);

  // Basis: all boxes of opens when affordable, else boxes of minimal neighbourhoods.
  std::vector<Mask> factor_opens;
  std::uint64_t all_boxes = 1;
  bool full_basis = true;
  for (std::size_t i = 0; i < m && full_basis; ++i) {
    all_boxes *= x.opens().size();
    full_basis = all_boxes <= 100000;
  }
  if (full_basis) {
    factor_opens = x.opens();
  } else {
    for (std::size_t pt = 0; pt < p.n; ++pt) factor_opens.push_back(x.minimal_open(pt));
    std::sort(factor_opens.begin(), factor_opens.end());
    factor_opens.erase(std::unique(factor_opens.begin(), factor_opens.end()), factor_opens.end());
  }

  // Support saturation through partitions: for a support of k points, every
  // partition of m into k parts, every assignment of parts to the points, and
  // every arrangement of the resulting multiset.
  std::map<std::vector<std::size_t>, std::vector<std::uint64_t>> psi_cache;
  const auto partitions = enumerate_partitions(m);
  auto psi_images = [&](const std::vector<std::size_t>& supp) -> const std::vector<std::uint64_t>& {
    auto it = psi_cache.find(supp);
    if (it != psi_cache.end()) return it->second;
    std::vector<std::uint64_t> codes;
    for (const Partition& tau : partitions) {
      if (tau.part_count() != supp.size()) continue;
      std::vector<std::size_t> parts = tau.parts();
      std::sort(parts.begin(), parts.end());
      do {
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < supp.size(); ++i) t.insert(t.end(), parts[i], supp[i]);
        std::sort(t.begin(), t.end());
        do {
          codes.push_back(p.encode(t));
        } while (std::next_permutation(t.begin(), t.end()));
      } while (std::next_permutation(parts.begin(), parts.end()));
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return psi_cache.emplace(supp, std::move(codes)).first->second;
  };

  auto members_of = [&](const QuotientSpace& q) {
    std::vector<std::vector<std::uint64_t>> out(q.size());
    for (std::uint64_t code = 0; code < size; ++code) out[q.class_of[code]].push_back(code);
    return out;
  };
  const auto sp_members = members_of(r.sp);
  const auto f_members = members_of(r.f);

  // Image of a box as a class-membership vector plus the list of hit classes.
  auto image = [](const QuotientSpace& q, const std::vector<std::uint64_t>& codes, std::vector<bool>& flags,
                  std::vector<std::size_t>& hit) {
    for (std::size_t c : hit) flags[c] = false;
    hit.clear();
    for (std::uint64_t code : codes) {
      const std::size_t c = q.class_of[code];
      if (!flags[c]) {
        flags[c] = true;
        hit.push_back(c);
      }
    }
  };
  auto saturate = [](const std::vector<std::size_t>& hit, const std::vector<std::vector<std::uint64_t>>& members) {
    std::vector<std::uint64_t> out;
    for (std::size_t c : hit) out.insert(out.end(), members[c].begin(), members[c].end());
    std::sort(out.begin(), out.end());
    return out;
  };
  auto normalize = [](std::vector<std::uint64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };

  std::vector<std::size_t> sigma(m);
  std::vector<std::size_t> choice(m, 0);
  std::vector<Mask> factors(m);
  std::vector<std::uint64_t> box;
  std::vector<bool> sp_img(r.sp.size(), false), f_img(r.f.size(), false);
  std::vector<std::size_t> sp_hit, f_hit;
  while (true) {
    for (std::size_t i = 0; i < m; ++i) factors[i] = factor_opens[choice[i]];
    box_codes(p, factors, box);
    ++r.basis_opens;

    image(r.sp, box, sp_img, sp_hit);
    image(r.f, box, f_img, f_hit);
    if (!r.sp.is_open(sp_img) && r.sp_map_open) {
      r.sp_map_open = false;
      r.sp_open_witness = factors;
    }
    if (!r.f.is_open(f_img) && r.f_map_open) {
      r.f_map_open = false;
      r.f_open_witness = factors;
    }

    // phi: direct saturation vs union of permuted boxes
    std::vector<std::uint64_t> via;
    for (std::uint64_t code : box) {
      const auto t = p.decode(code);
      std::iota(sigma.begin(), sigma.end(), std::size_t{0});
      do {
        std::vector<std::size_t> u(m);
        for (std::size_t i = 0; i < m; ++i) u[i] = t[sigma[i]];
        via.push_back(p.encode(u));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    normalize(via);
    r.sp_saturation = r.sp_saturation && saturate(sp_hit, sp_members) == via;

    // varphi: direct saturation vs partition route
    via.clear();
    for (std::uint64_t code : box) {
      const auto& codes = psi_images(r.f.elements[r.f.class_of[code]]);
      via.insert(via.end(), codes.begin(), codes.end());
    }
    normalize(via);
    r.f_saturation = r.f_saturation && saturate(f_hit, f_members) == via;

    std::size_t i = m;
    while (i > 0 && choice[i - 1] == factor_opens.size() - 1) choice[--i] = 0;
    if (i == 0) break;
    ++choice[i - 1];
  }
  return r;
}

}  // namespace symlift

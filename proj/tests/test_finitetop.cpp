#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "symlift/finitetop.hpp"

using namespace symlift;
using namespace symlift::testing;

namespace {

constexpr Mask A_ = 1, B_ = 2;  // {a}, {b}

// Oracle: every family of subsets of {0..n-1} that satisfies the axioms.
std::set<std::vector<Mask>> brute_topologies(std::size_t n) {
  const std::size_t subsets = std::size_t{1} << n;
  const Mask full = static_cast<Mask>(subsets - 1);
  std::set<std::vector<Mask>> out;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
    if (!(fam & 1U) || !(fam >> full & 1U)) continue;
    bool ok = true;
    for (Mask u = 0; u <= full && ok; ++u) {
      if (!(fam >> u & 1U)) continue;
      for (Mask v = 0; v <= full && ok; ++v) {
        if (fam >> v & 1U) ok = (fam >> (u | v) & 1U) && (fam >> (u & v) & 1U);
      }
    }
    if (!ok) continue;
    std::vector<Mask> opens;
    for (Mask u = 0; u <= full; ++u) {
      if (fam >> u & 1U) opens.push_back(u);
    }
    out.insert(opens);
  }
  return out;
}

// Operators through minimal neighbourhoods, an independent route.
Mask min_interior(const FiniteTopology& t, Mask a) {
  Mask out = 0;
  for (std::size_t x = 0; x < t.n(); ++x) {
    if ((t.minimal_open(x) & ~a) == 0) out |= Mask{1} << x;
  }
  return out;
}
Mask min_closure(const FiniteTopology& t, Mask a) {
  Mask out = 0;
  for (std::size_t x = 0; x < t.n(); ++x) {
    if (t.minimal_open(x) & a) out |= Mask{1} << x;
  }
  return out;
}
Mask min_boundary_interior(const FiniteTopology& t, Mask a) {
  const Mask bd = min_closure(t, a) & ~min_interior(t, a);
  Mask out = 0;
  for (std::size_t x = 0; x < t.n(); ++x) {
    if ((bd >> x & 1U) && min_interior(t, t.minimal_open(x) & ~a) == 0) out |= Mask{1} << x;
  }
  return out;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) { return binomial(n, k); }

// Brute force: is the preimage of a class set open in the product topology?
bool preimage_open(const FiniteTopology& x, std::size_t m, const QuotientSpace& q, const std::vector<bool>& members) {
  const auto tuples = all_tuples(static_cast<int>(x.n()), m);
  for (std::size_t code = 0; code < tuples.size(); ++code) {
    if (!members[q.class_of[code]]) continue;
    // every tuple in the product neighbourhood must be inside too
    for (std::size_t other = 0; other < tuples.size(); ++other) {
      bool inside = true;
      for (std::size_t i = 0; i < m && inside; ++i) {
        inside = x.minimal_open(static_cast<std::size_t>(tuples[code][i])) >> tuples[other][i] & 1U;
      }
      if (inside && !members[q.class_of[other]]) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("enumerate_topologies matches the axiom filter") {
  const std::vector<std::size_t> counts{1, 4, 29, 355};
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto tops = enumerate_topologies(n);
    CHECK(tops.size() == counts[n - 1]);
    std::set<std::vector<Mask>> got;
    for (const auto& t : tops) got.insert(t.opens());
    CHECK(got.size() == tops.size());
    if (n <= 3) CHECK(got == brute_topologies(n));
  }
  CHECK(enumerate_topologies(2).front() == FiniteTopology::indiscrete(2));
  CHECK(enumerate_topologies(3).back() == FiniteTopology::discrete(3));
  CHECK_THROWS_AS(enumerate_topologies(0), InputError);
  CHECK_THROWS_AS(enumerate_topologies(5), InputError);
}

TEST_CASE("from_opens validates the axioms") {
  CHECK_THROWS_AS(FiniteTopology::from_opens(2, {0, 1}), InputError);
  CHECK_THROWS_AS(FiniteTopology::from_opens(2, {1, 3}), InputError);
  CHECK_THROWS_AS(FiniteTopology::from_opens(3, {0, 1, 2, 7}), InputError);
  const auto t = FiniteTopology::from_opens(2, {0, B_, 3});
  CHECK(t.minimal_open(0) == 3);
  CHECK(t.minimal_open(1) == B_);
}

TEST_CASE("boundary operators on small spaces") {
  const auto sierpinski = FiniteTopology::from_opens(2, {0, B_, 3});
  const auto s = boundary_operators(sierpinski, B_);
  CHECK(s.boundary == A_);
  CHECK(s.boundary_exterior == 0);
  CHECK(s.boundary_interior == A_);
  CHECK(sierpinski.interior(sierpinski.closure(B_)) == 3);
  CHECK((s.interior | s.boundary_interior) == 3);

  const auto ind = FiniteTopology::indiscrete(2);
  const auto i = boundary_operators(ind, A_);
  CHECK(i.boundary == 3);
  CHECK(i.boundary_interior == 3);
  CHECK(i.boundary_exterior == 0);

  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& t : enumerate_topologies(n)) {
      const auto e = boundary_operators(t, 0);
      CHECK(e.interior == 0);
      CHECK(e.closure == 0);
      CHECK(e.boundary == 0);
      CHECK(e.boundary_interior == 0);
      CHECK(e.boundary_exterior == 0);
    }
  }
}

TEST_CASE("operator identities over every space on up to 4 points") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& t : enumerate_topologies(n)) {
      for (Mask a = 0; a <= t.full(); ++a) {
        const auto ops = boundary_operators(t, a);
        REQUIRE(ops.interior == min_interior(t, a));
        REQUIRE(ops.closure == min_closure(t, a));
        REQUIRE(ops.interior == (t.full() & ~t.closure(t.full() & ~a)));
        REQUIRE((ops.boundary_interior & ops.boundary_exterior) == 0);
        REQUIRE((ops.boundary_interior | ops.boundary_exterior) == ops.boundary);
        REQUIRE(ops.boundary_interior == min_boundary_interior(t, a));
      }
    }
  }
}

TEST_CASE("connectedness and continuity") {
  CHECK(FiniteTopology::indiscrete(3).connected());
  CHECK_FALSE(FiniteTopology::discrete(2).connected());
  CHECK(FiniteTopology::discrete(1).connected());
  const auto sierpinski = FiniteTopology::from_opens(2, {0, B_, 3});
  CHECK(sierpinski.connected());
  CHECK(is_continuous(sierpinski, sierpinski, {0, 1}));
  CHECK_FALSE(is_continuous(sierpinski, sierpinski, {1, 0}));
  CHECK(is_continuous(FiniteTopology::discrete(2), sierpinski, {1, 0}));
  CHECK(is_continuous(sierpinski, FiniteTopology::indiscrete(3), {2, 0}));
}

TEST_CASE("registered lemma verdicts") {
  const auto ext = audit("exterior-boundary-eq-closure-boundary", 3);
  CHECK(ext.holds);
  CHECK(ext.matches_expectation());
  CHECK(ext.cases == 2 + 4 * 4 + 29 * 8);
  CHECK(audit("int-closure-eq-int-union-interior-boundary", 3).holds);
  CHECK(audit("exterior-boundary-eq-closure-boundary", 2).holds);

  for (const char* id : {"interior-boundary-intersection", "int-closure-intersection"}) {
    const auto r = audit(id, 2);
    CHECK_FALSE(r.holds);
    CHECK(r.matches_expectation());
    REQUIRE(r.certificate);
    const Certificate& c = *r.certificate;
    CHECK(c.space == FiniteTopology::indiscrete(2));
    CHECK(c.subsets == std::vector<Mask>{A_, B_});
    CHECK(c.lhs == "{}");
    CHECK(c.rhs == "{a,b}");
    CHECK(certificate_violates(id, c));
    CHECK(audit(id, 1).holds);
  }

  for (const auto& info : lemma_registry()) {
    for (std::size_t n = 1; n <= info.max_n; ++n) {
      const auto r = audit(info.id, n);
      CHECK_MESSAGE(r.matches_expectation(), info.id << " at n=" << n);
      CHECK(r.certificate.has_value() == !r.holds);
      if (r.certificate) CHECK(certificate_violates(info.id, *r.certificate));
    }
  }

  CHECK_THROWS_AS(audit("no-such-lemma", 2), InputError);
  CHECK_THROWS_AS(audit("preimage-empty-interior", 4), InputError);
  CHECK_THROWS_AS(audit("interior-boundary-intersection", 5), InputError);
}

TEST_CASE("audit results do not depend on the thread count") {
  for (const auto& info : lemma_registry()) {
    const auto a = audit(info.id, info.max_n, 1);
    const auto b = audit(info.id, info.max_n, 4);
    CHECK(a.holds == b.holds);
    CHECK(a.cases == b.cases);
    if (a.certificate && b.certificate) {
      CHECK(a.certificate->space == b.certificate->space);
      CHECK(a.certificate->subsets == b.certificate->subsets);
      CHECK(a.certificate->map == b.certificate->map);
    }
  }
}

TEST_CASE("certificates are checked on replay") {
  Certificate bogus{FiniteTopology::discrete(2), {A_, B_}, std::nullopt, {}, "", ""};
  CHECK_FALSE(certificate_violates("interior-boundary-intersection", bogus));
  auto r = audit("preimage-empty-interior", 2);
  REQUIRE(r.certificate);
  Certificate c = *r.certificate;
  CHECK(certificate_violates("preimage-empty-interior", c));
  c.source = FiniteTopology::discrete(2);
  c.map = {0, 1};
  CHECK_FALSE(certificate_violates("preimage-empty-interior", c));  // disconnected source
}

TEST_CASE("passing-through points") {
  // Y = Z = indiscrete pair, pieces {a} and {b}: both points pass through.
  const auto ind = FiniteTopology::indiscrete(2);
  CHECK(passings_through(ind, ind, {0, 1}, {A_, B_}) == 3);
  CHECK(passings_through(ind, ind, {0, 0}, {A_, B_}) == 0);
  // Sierpinski source: only the point whose neighbourhood is everything passes.
  const auto sierpinski = FiniteTopology::from_opens(2, {0, B_, 3});
  CHECK(passings_through(sierpinski, ind, {0, 1}, {A_, B_}) == A_);
}

TEST_CASE("quotient cardinalities of discrete spaces") {
  const auto r2 = build_quotients(FiniteTopology::discrete(3), 2);
  CHECK(r2.sp.size() == 6);
  CHECK(r2.f.size() == 6);
  const auto r3 = build_quotients(FiniteTopology::discrete(3), 3);
  CHECK(r3.sp.size() == 10);
  CHECK(r3.f.size() == 7);

  for (std::size_t q = 1; q <= 5; ++q) {
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto r = build_quotients(FiniteTopology::discrete(q), m);
      std::uint64_t f_count = 0;
      for (std::size_t k = 1; k <= m; ++k) f_count += choose(q, k);
      CHECK(r.sp.size() == choose(q + m - 1, m));
      CHECK(r.f.size() == f_count);
      CHECK(r.sp_map_open);
      CHECK(r.f_map_open);
    }
  }
  CHECK_THROWS_AS(build_quotients(FiniteTopology::discrete(10), 7), InputError);
}

TEST_CASE("m = 1 quotients reproduce X") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& t : enumerate_topologies(n)) {
      const auto r = build_quotients(t, 1);
      for (const QuotientSpace* q : {&r.sp, &r.f}) {
        REQUIRE(q->size() == n);
        for (std::size_t x = 0; x < n; ++x) {
          CHECK(q->elements[x] == std::vector<std::size_t>{x});
          Mask nb = 0;
          for (std::size_t c : q->minimal_open[x]) nb |= Mask{1} << c;
          CHECK(nb == t.minimal_open(x));
        }
      }
    }
  }
}

TEST_CASE("quotient topologies, openness and saturation on small spaces") {
  std::map<std::pair<std::size_t, std::size_t>, int> f_not_open;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& t : enumerate_topologies(n)) {
      for (std::size_t m = 1; m <= 3; ++m) {
        const auto r = build_quotients(t, m);
        CHECK(r.sp_map_open);
        if (!r.f_map_open) {
          ++f_not_open[{n, m}];
          // the witness box really has a non-open image
          REQUIRE(r.f_open_witness);
          std::vector<bool> image(r.f.size(), false);
          for (const auto& raw : all_tuples(static_cast<int>(n), m)) {
            bool inside = true;
            for (std::size_t i = 0; i < m; ++i) inside = inside && ((*r.f_open_witness)[i] >> raw[i] & 1U);
            std::uint64_t code = 0;
            for (int v : raw) code = code * n + static_cast<std::uint64_t>(v);
            if (inside) image[r.f.class_of[code]] = true;
          }
          CHECK_FALSE(preimage_open(t, m, r.f, image));
        }
        CHECK(r.sp_saturation);
        CHECK(r.f_saturation);
        if (m == 2 || (m == 3 && n <= 2)) {
          for (const QuotientSpace* q : {&r.sp, &r.f}) {
            for (std::uint64_t s = 0; s < (std::uint64_t{1} << q->size()); ++s) {
              std::vector<bool> members(q->size());
              for (std::size_t c = 0; c < q->size(); ++c) members[c] = s >> c & 1U;
              REQUIRE(q->is_open(members) == preimage_open(t, m, *q, members));
            }
          }
        }
      }
    }
  }
  // The support map is open on every space except 21 non-T1 spaces on three
  // points at m = 3; the symmetric product map is open everywhere.
  CHECK(f_not_open.size() == 1);
  CHECK(f_not_open[{3, 3}] == 21);
}

TEST_CASE("support map is not open on a non-T1 space") {
  // opens {}, {a}, X; V = {a} x {a} x X. (b,b,a) has support {a,b} = phi(a,a,b),
  // but its neighbourhood contains (b,c,a) with support {a,b,c}, not in phi(V).
  const auto t = FiniteTopology::from_opens(3, {0, 1, 7});
  const auto r = build_quotients(t, 3);
  CHECK_FALSE(r.f_map_open);
  CHECK(r.sp_map_open);
  CHECK(r.f_saturation);
  CHECK(build_quotients(FiniteTopology::discrete(3), 3).f_map_open);
}

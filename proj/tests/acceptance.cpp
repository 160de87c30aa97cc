// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "region_support.hpp"
#include "support.hpp"
#include "symlift/assignment.hpp"
#include "symlift/cli.hpp"
#include "symlift/finitetop.hpp"
#include "symlift/io.hpp"
#include "symlift/lifting.hpp"
#include "symlift/partitions.hpp"

using namespace symlift;
using namespace symlift::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double elapsed = seconds_since(t0);
  if (limit_s > 0 && elapsed > limit_s) {
    o.require(false, "took " + std::to_string(elapsed) + " s, limit " + std::to_string(limit_s) + " s");
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d %s  %s (%.2f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), elapsed,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

void note(const std::string& text) { std::printf("             info  %s\n", text.c_str()); }

// p(m) by the recursion p(n, k) = p(n, k-1) + p(n-k, k).
std::uint64_t partition_count(int n, int k) {
  if (n == 0) return 1;
  if (n < 0 || k == 0) return 0;
  return partition_count(n, k - 1) + partition_count(n - k, k);
}

bool rows_of_discrete(std::size_t q, std::size_t m, std::uint64_t& product) {
  product = ipow(q, m);
  return product <= 100000;
}

}  // namespace

int main() {
  report(1, "quotient cardinalities", 10.0, [] {
    Outcome o;
    for (std::size_t q = 1; q <= 5; ++q) {
      for (std::size_t m = 1; m <= 4; ++m) {
        std::uint64_t product = 0;
        if (!rows_of_discrete(q, m, product)) continue;
        const auto x = FiniteTopology::discrete(q);
        const auto sp_q = build_quotient(x, m, QuotientKind::symmetric_product);
        const auto f_q = build_quotient(x, m, QuotientKind::support);
        std::uint64_t f_formula = 0;
        for (std::size_t k = 1; k <= m; ++k) f_formula += binomial(q, k);
        std::set<std::vector<int>> sp, f;
        for (const auto& t : all_tuples(static_cast<int>(q), m)) {
          sp.insert(sorted_copy(t));
          f.insert(support_of(t));
        }
        const std::string at = " at q=" + std::to_string(q) + " m=" + std::to_string(m);
        o.require(sp_q.size() == binomial(q + m - 1, m), "|SP_m|" + at);
        o.require(sp.size() == sp_q.size(), "SP oracle" + at);
        o.require(f_q.size() == f_formula, "|F_m|" + at);
        o.require(f.size() == f_q.size(), "F oracle" + at);
        if (m == 2) o.require(sp_q.size() == f_q.size(), "|SP_2| != |F_2|" + at);
      }
    }
    return o;
  });

  report(2, "piece decomposition", 10.0, [] {
    Outcome o;
    for (std::size_t q = 1; q <= 5; ++q) {
      for (std::size_t m = 1; m <= 4; ++m) {
        std::uint64_t product = 0;
        if (!rows_of_discrete(q, m, product)) continue;
        const auto pieces = enumerate_pieces(m);
        const std::set<PieceId> distinct(pieces.begin(), pieces.end());
        o.require(distinct.size() == pieces.size(), "duplicate pieces");
        std::map<PieceId, std::uint64_t> hits;
        std::uint64_t covered = 0;
        for (const auto& t : all_tuples(static_cast<int>(q), m)) {
          const PieceId p = classify(PointDomain::labels(), as_labels(t));
          o.require(distinct.count(p) == 1, "tuple outside every piece");
          ++hits[p];
          ++covered;
        }
        std::uint64_t sum = 0;
        for (const auto& p : pieces) {
          sum += count_piece_points(q, p);
          o.require(hits[p] == count_piece_points(q, p), "piece count mismatch");
        }
        o.require(covered == product, "pieces do not cover X^m");
        o.require(sum == product, "sum of piece counts != q^m");
      }
    }
    return o;
  });

  report(3, "partition calculus", 1.0, [] {
    Outcome o;
    const std::uint64_t expected[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (std::size_t m = 1; m <= 10; ++m) {
      const auto parts = enumerate_partitions(m);
      const std::uint64_t oracle = partition_count(static_cast<int>(m), static_cast<int>(m));
      o.require(oracle == expected[m - 1], "recursive oracle disagrees with the reference values");
      o.require(parts.size() == oracle, "p(" + std::to_string(m) + ")");
      const auto table = sim_classes(m);
      std::size_t total = 0;
      for (std::size_t s : table.class_sizes()) total += s;
      o.require(total == parts.size(), "class sizes do not sum to p(m)");
      for (const auto& p : parts) o.require(partition_of(jvector_of(p)) == p, "j-vector round trip");
    }
    return o;
  });

  report(4, "topology audit", 60.0, [] {
    Outcome o;
    o.require(enumerate_topologies(2).size() == 4, "4 topologies on 2 points");
    o.require(enumerate_topologies(3).size() == 29, "29 topologies on 3 points");
    for (const char* id : {"exterior-boundary-eq-closure-boundary", "int-closure-eq-int-union-interior-boundary"}) {
      const auto r = audit(id, 3, cli::thread_budget());
      o.require(r.holds, std::string(id) + " must hold");
    }
    for (const char* id : {"interior-boundary-intersection", "int-closure-intersection"}) {
      const auto r = audit(id, 3, cli::thread_budget());
      o.require(!r.holds && r.certificate.has_value(), std::string(id) + " needs a certificate");
      if (r.certificate) {
        o.require(r.certificate->space == FiniteTopology::indiscrete(2), std::string(id) + " certificate space");
        o.require(certificate_violates(id, *r.certificate), std::string(id) + " certificate does not replay");
      }
    }
    std::uint64_t map_cases = 0;
    for (const auto& info : lemma_registry()) {
      if (info.kind != LemmaKind::map_subset && info.kind != LemmaKind::map_pieces) continue;
      const auto r = audit(info.id, 3, cli::thread_budget());
      map_cases += r.cases;
      o.require(r.matches_expectation(), info.id + " disagrees with its registered expectation");
      if (r.certificate) o.require(certificate_violates(info.id, *r.certificate), info.id + " certificate");
    }
    o.detail = o.pass ? std::to_string(map_cases) + " map cases swept" : o.detail;
    return o;
  });

  report(5, "openness and saturation of both quotient maps (discrete X, q <= 3, m <= 3)", 60.0, [] {
    Outcome o;
    for (std::size_t q = 1; q <= 3; ++q) {
      for (std::size_t m = 1; m <= 3; ++m) {
        const auto r = build_quotients(FiniteTopology::discrete(q), m);
        const std::string at = " at q=" + std::to_string(q) + " m=" + std::to_string(m);
        o.require(r.sp_map_open, "symmetric-product map not open" + at);
        o.require(r.f_map_open, "support map not open" + at);
        o.require(r.sp_saturation, "symmetric-product saturation" + at);
        o.require(r.f_saturation, "support saturation" + at);
      }
    }
    // Same checks over every topology on at most 3 points.
    std::size_t spaces = 0, sp_open = 0, f_open = 0, sat = 0;
    for (std::size_t q = 1; q <= 3; ++q) {
      for (const auto& t : enumerate_topologies(q)) {
        for (std::size_t m = 1; m <= 3; ++m) {
          const auto r = build_quotients(t, m);
          ++spaces;
          sp_open += r.sp_map_open;
          f_open += r.f_map_open;
          sat += r.sp_saturation && r.f_saturation;
        }
      }
    }
    note("all topologies on <= 3 points, m <= 3: " + std::to_string(spaces) + " cases; symmetric-product map open in " +
         std::to_string(sp_open) + ", support map open in " + std::to_string(f_open) + ", both saturations exact in " +
         std::to_string(sat));
    return o;
  });

  report(6, "matching optimality against m! enumeration", 5.0, [] {
    Outcome o;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto d = PointDomain::euclidean(2);
    for (std::size_t m = 2; m <= 6; ++m) {
      const auto perms = all_permutations(m);
      for (int trial = 0; trial < 200; ++trial) {
        MTuple prev, next;
        for (std::size_t i = 0; i < m; ++i) {
          prev.push_back(Point{u(rng), u(rng)});
          next.push_back(Point{u(rng), u(rng)});
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : perms) {
          double c = 0.0;
          for (std::size_t i = 0; i < m; ++i) c += d.distance(prev[i], next[p[i]]);
          best = std::min(best, c);
        }
        o.require(match_step(d, prev, next).cost == best, "cost differs from brute force at m=" + std::to_string(m));
      }
    }
    return o;
  });

  report(7, "lift round trip on 100 random paths", 0.0, [] {
    Outcome o;
    std::mt19937_64 rng(7);
    double slowest = 0.0;
    for (int path = 0; path < 100; ++path) {
      const std::size_t m = 1 + static_cast<std::size_t>(path) % 5;
      const auto w = random_walk(rng, m, 1000);
      const auto t0 = Clock::now();
      const auto res = lift_region(w.region);
      const auto v = verify(w.region, res.tuples);
      const double elapsed = seconds_since(t0);
      slowest = std::max(slowest, elapsed);
      const std::string at = " on path " + std::to_string(path);
      o.require(elapsed < 1.0, "over 1 s" + at);
      o.require(res.diagnostics.round_trip_residual == 0.0, "nonzero residual" + at);
      for (const auto& c : v.checks) o.require(c.pass, c.name + " failed" + at);
      for (std::size_t k = 0; k < w.truth.size(); ++k) {
        o.require(sorted_copy(res.tuples[k]) == w.region.samples[k], "round trip" + at);
      }
    }
    if (o.pass) o.detail = "slowest path " + std::to_string(slowest) + " s";
    return o;
  });

  report(8, "crossing and antipodal fixtures", 0.0, [] {
    Outcome o;
    const auto crossing = load_fixture("crossing.json");
    const auto res = lift_region(crossing);
    for (std::size_t k = 0; k < 21; ++k) {
      const double t = (static_cast<double>(k) - 10.0) / 10.0;
      o.require(res.tuples[k] == reals({t, -t}), "crossing lift is not (t,-t) at node " + std::to_string(k));
    }
    const auto interior = check_empty_interior(crossing, res.segmentation);
    o.require(interior.passing_nodes.size() == 1, "expected exactly one passing node");
    o.require(std::abs(res.diagnostics.max_step_displacement - 0.2) <= 1e-12, "max step displacement != 0.2");
    const auto anti = load_fixture("antipodal.json");
    const auto a = lift_region(anti);
    const MTuple &first = a.tuples.front(), &last = a.tuples.back();
    o.require(near(first[0], last[1]) && near(first[1], last[0]) && !near(first[0], last[0]),
              "antipodal endpoints not permuted");
    for (const auto* r : {&crossing, &anti}) {
      const auto x = io::dump(io::tuples_to_json(*r, lift_region(*r).tuples));
      const auto y = io::dump(io::tuples_to_json(*r, lift_region(*r).tuples));
      o.require(x == y, "lift serialization differs between runs");
    }
    return o;
  });

  report(9, "f-mode support jump", 0.0, [] {
    Outcome o;
    const auto r = load_fixture("support_jump.json");
    const auto res = lift_region(r);
    o.require(res.multiplicities[0] == std::vector<std::size_t>{2}, "multiplicity (2) at the start");
    for (std::size_t k = 1; k < r.node_count(); ++k) {
      o.require(res.multiplicities[k] == std::vector<std::size_t>{1, 1}, "multiplicity (1,1) after the jump");
    }
    for (std::size_t k = 0; k < r.node_count(); ++k) {
      o.require(f_canonical(res.tuples[k]).support() == r.samples[k], "FClass round trip at node " + std::to_string(k));
    }
    return o;
  });

  report(10, "50x50 rotating pair", 10.0, [] {
    Outcome o;
    const auto r = rotating_pair(50, 50, 1.2, 1.8);
    const auto res = lift_region(r);
    for (const auto& c : verify(r, res.tuples).checks) o.require(c.pass, c.name + " failed");
    const auto t = permute_axes(r, {1, 0});
    const auto rt = lift_region(t);
    for (std::size_t i = 0; i < 50; ++i) {
      for (std::size_t j = 0; j < 50; ++j) {
        o.require(rt.tuples[t.node_of({j, i})] == res.tuples[r.node_of({i, j})], "transposed lift differs");
      }
    }
    return o;
  });

  report(11, "under-sampled braid is an obstruction", 0.0, [] {
    Outcome o;
    std::istringstream in;
    std::ostringstream out, err;
    const int code = cli::run({"lift", fixture_path("braid.json")}, in, out, err);
    o.require(code == cli::kExitObstruction, "exit code " + std::to_string(code));
    const bool named = err.str().find("HolonomyError") != std::string::npos ||
                       err.str().find("ConflictingSheet") != std::string::npos;
    o.require(named, "no obstruction diagnostic");
    o.require(out.str().find("\"lift\":") == std::string::npos, "a lift was emitted");
    return o;
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

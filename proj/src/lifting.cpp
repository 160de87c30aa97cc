#include "symlift/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace symlift {

namespace {

std::string format_tuple(const MTuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) os << ", ";
    if (t[i].dim() == 1) {
      os << t[i][0];
    } else {
      os << '[';
      for (std::size_t k = 0; k < t[i].dim(); ++k) os << (k ? "," : "") << t[i][k];
      os << ']';
    }
  }
  os << ')';
  return os.str();
}

struct Advance {
  MatchStep step;
  std::vector<std::size_t> multiplicity;
};

class Lifter {
 public:
  Lifter(const SampledRegion& region, const LiftOptions& options) : r_(region), opt_(options) {
    out_.segmentation = segment(region);
    const std::size_t count = region.node_count();
    out_.tuples.assign(count, {});
    lifted_.assign(count, false);
    out_.segments.assign(out_.segmentation.segments.size(), {});
    if (r_.mode == RegionMode::f) out_.multiplicities.assign(count, {});
  }

  LiftResult run() {
    lift_segment(0, seed_tuple());
    const auto& events = out_.segmentation.events;
    std::vector<bool> used(events.size(), false);
    for (bool progress = true; progress;) {
      progress = false;
      for (const auto& e : events) {
        if (lifted_[e.from] == lifted_[e.to]) continue;
        glue(e);
        used[e.id] = true;
        progress = true;
        break;
      }
    }
    for (const auto& e : events) {
      if (!used[e.id]) check_sheet(e);
    }
    diagnose();
    return std::move(out_);
  }

 private:
  const SampledRegion& r_;
  const LiftOptions& opt_;
  LiftResult out_;
  std::vector<bool> lifted_;

  MTuple seed_tuple() {
    const MTuple& first = r_.samples[0];
    if (opt_.seed) {
      const MTuple& s = *opt_.seed;
      if (s.size() != r_.m) throw InputError("seed must have m points");
      const bool ok = r_.mode == RegionMode::sp ? sp_canonical(s).points() == first
                                                : f_canonical(s).support() == first;
      if (!ok) throw InputError("seed does not lie over the first sample");
      if (r_.mode == RegionMode::f) out_.multiplicities[0] = multiplicity_of(s, first);
      return s;
    }
    if (r_.mode == RegionMode::sp) return theta_canonical(r_.domain, first, r_.eps);
    MTuple cycled;
    for (std::size_t i = 0; i < r_.m; ++i) cycled.push_back(first[i % first.size()]);
    const SupportExpansion e = expand_support(r_.domain, cycled, first);
    out_.multiplicities[0] = e.multiplicity;
    return theta_canonical(r_.domain, e.multiset, r_.eps);
  }

  static std::vector<std::size_t> multiplicity_of(const MTuple& t, const MTuple& support) {
    std::vector<std::size_t> mult(support.size(), 0);
    for (const Point& p : t) {
      const auto it = std::lower_bound(support.begin(), support.end(), p);
      ++mult[static_cast<std::size_t>(it - support.begin())];
    }
    return mult;
  }

  Advance advance(const MTuple& prev, std::size_t node) const {
    Advance a;
    if (r_.mode == RegionMode::sp) {
      a.step = match_step(r_.domain, prev, r_.samples[node]);
    } else {
      SupportExpansion e = expand_support(r_.domain, prev, r_.samples[node]);
      a.step = match_step(r_.domain, prev, e.multiset);
      a.multiplicity = std::move(e.multiplicity);
    }
    return a;
  }

  void assign(std::size_t node, const Advance& a, const MTuple& tuple) {
    out_.tuples[node] = tuple;
    lifted_[node] = true;
    if (r_.mode == RegionMode::f) out_.multiplicities[node] = a.multiplicity;
  }

  void lift_segment(std::size_t seed_node, const MTuple& seed) {
    const std::size_t sid = out_.segmentation.node_segment[seed_node];
    out_.segments[sid].seed_node = seed_node;
    out_.tuples[seed_node] = seed;
    lifted_[seed_node] = true;
    std::vector<std::size_t> queue{seed_node};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (std::size_t axis = 0; axis < r_.n(); ++axis) {
        for (int dir : {-1, 1}) {
          const auto v = r_.step(u, axis, dir);
          if (!v || lifted_[*v] || out_.segmentation.node_segment[*v] != sid) continue;
          const Advance a = advance(out_.tuples[u], *v);
          if (a.step.tie) out_.diagnostics.ties.push_back({*v, u, "lex"});
          assign(*v, a, a.step.tuple);
          queue.push_back(*v);
        }
      }
    }
    check_holonomy(sid);
  }

  void check_holonomy(std::size_t sid) const {
    const auto& seg = out_.segmentation;
    auto inside = [&](std::optional<std::size_t> node) {
      return node && seg.node_segment[*node] == sid;
    };
    for (std::size_t c00 : seg.segments[sid].nodes) {
      for (std::size_t a = 0; a < r_.n(); ++a) {
        for (std::size_t b = a + 1; b < r_.n(); ++b) {
          const auto c10 = r_.step(c00, a, 1);
          const auto c01 = r_.step(c00, b, 1);
          if (!inside(c10) || !inside(c01)) continue;
          const auto c11 = r_.step(*c10, b, 1);
          if (!inside(c11)) continue;
          const MTuple& base = out_.tuples[c00];
          const MTuple p1 = advance(advance(base, *c10).step.tuple, *c11).step.tuple;
          const MTuple p2 = advance(advance(base, *c01).step.tuple, *c11).step.tuple;
          const std::vector<std::size_t> sq{c00, *c10, *c01, *c11};
          if (p1 != p2) throw HolonomyError(sq, p1, p2);
          if (p1 != out_.tuples[*c11]) throw HolonomyError(sq, p1, out_.tuples[*c11]);
        }
      }
    }
    // Edges off the propagation tree close loops (possibly around a hole of
    // the segment); each must still be an optimal matching.
    for (std::size_t u : seg.segments[sid].nodes) {
      for (std::size_t a = 0; a < r_.n(); ++a) {
        const auto v = r_.step(u, a, 1);
        if (!inside(v)) continue;
        const Advance next = advance(out_.tuples[u], *v);
        if (!same_cost(positional_cost(r_.domain, out_.tuples[u], out_.tuples[*v]), next.step.cost)) {
          throw HolonomyError({u, *v}, next.step.tuple, out_.tuples[*v]);
        }
      }
    }
  }

  void glue(const PassingEvent& e) {
    const bool forward = lifted_[e.from];
    const std::size_t u = forward ? e.from : e.to;
    const std::size_t w = forward ? e.to : e.from;
    const Advance a = advance(out_.tuples[u], w);
    MTuple seed = a.step.tuple;
    if (a.step.tie) {
      std::string rule = "lex";
      const auto beyond = r_.step(u, e.axis, forward ? -1 : 1);
      if (opt_.extrapolate_ties && r_.domain.kind() == DomainKind::euclidean && beyond && lifted_[*beyond]) {
        const MTuple& here = out_.tuples[u];
        const MTuple& back = out_.tuples[*beyond];
        MTuple guess;
        for (std::size_t i = 0; i < here.size(); ++i) {
          std::vector<double> c(here[i].dim());
          for (std::size_t k = 0; k < c.size(); ++k) c[k] = 2.0 * here[i][k] - back[i][k];
          guess.emplace_back(std::move(c));
        }
        const MatchStep alt = match_step(r_.domain, guess, a.step.tuple);
        if (same_cost(positional_cost(r_.domain, here, alt.tuple), a.step.cost)) {
          seed = alt.tuple;
          rule = "extrapolated";
        }
      }
      out_.diagnostics.ties.push_back({w, u, rule});
    }
    const std::size_t sid = out_.segmentation.node_segment[w];
    if (r_.mode == RegionMode::f) out_.multiplicities[w] = a.multiplicity;
    lift_segment(w, seed);
    out_.segments[sid].glued_via = e.id;
  }

  void check_sheet(const PassingEvent& e) const {
    const MTuple& a = out_.tuples[e.from];
    const MTuple& b = out_.tuples[e.to];
    const double cost = positional_cost(r_.domain, a, b);
    const double optimal = match_step(r_.domain, a, b).cost;
    if (!same_cost(cost, optimal)) throw ConflictingSheet(e.id, a, b, cost, optimal);
  }

  void diagnose() {
    auto& d = out_.diagnostics;
    for (std::size_t u = 0; u < out_.tuples.size(); ++u) {
      for (std::size_t axis = 0; axis < r_.n(); ++axis) {
        const auto v = r_.step(u, axis, 1);
        if (!v) continue;
        double sum = 0.0;
        for (std::size_t i = 0; i < r_.m; ++i) {
          const double dist = r_.domain.distance(out_.tuples[u][i], out_.tuples[*v][i]);
          sum += dist;
          d.max_position_step = std::max(d.max_position_step, dist);
        }
        d.max_step_displacement = std::max(d.max_step_displacement, sum);
      }
      const MTuple& s = r_.samples[u];
      double residual = 0.0;
      if (r_.mode == RegionMode::sp) {
        const auto canon = sp_canonical(out_.tuples[u]).points();
        residual = canon == s ? 0.0 : positional_cost(r_.domain, canon, s);
      } else {
        const auto canon = f_canonical(out_.tuples[u]).support();
        residual = canon == s ? 0.0 : hausdorff(r_.domain, canon, s);
      }
      d.round_trip_residual = std::max(d.round_trip_residual, residual);
    }
  }
};

std::string loop_text(const std::vector<std::size_t>& nodes, const MTuple& a, const MTuple& b) {
  std::string where = nodes.size() == 4 ? "square" : "edge";
  for (std::size_t i = 0; i < nodes.size(); ++i) where += (i ? "," : " ") + std::to_string(nodes[i]);
  return "holonomy around " + where + ": " + format_tuple(a) + " vs " + format_tuple(b);
}

}  // namespace

HolonomyError::HolonomyError(std::vector<std::size_t> nodes, MTuple first, MTuple second)
    : Error(loop_text(nodes, first, second)),
      nodes_(std::move(nodes)),
      first_(std::move(first)),
      second_(std::move(second)) {}

ConflictingSheet::ConflictingSheet(std::size_t event, MTuple from, MTuple to, double cost, double optimal)
    : Error("event " + std::to_string(event) + " joins " + format_tuple(from) + " to " + format_tuple(to) +
            " at matching cost " + std::to_string(cost) + " above the optimum " + std::to_string(optimal)),
      event_(event),
      from_(std::move(from)),
      to_(std::move(to)),
      cost_(cost),
      optimal_(optimal) {}

LiftResult lift_region(const SampledRegion& region, const LiftOptions& options) {
  Lifter lifter(region, options);
  return lifter.run();
}

double hausdorff(const PointDomain& domain, const MTuple& a, const MTuple& b) {
  auto directed = [&](const MTuple& x, const MTuple& y) {
    double worst = 0.0;
    for (const Point& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& q : y) best = std::min(best, domain.distance(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

VerifyReport verify(const SampledRegion& region, const std::vector<MTuple>& tuples) {
  region.validate();
  const std::size_t count = region.node_count();
  if (tuples.size() != count) {
    throw InputMismatch("lift has " + std::to_string(tuples.size()) + " tuples, region has " +
                        std::to_string(count) + " nodes");
  }
  for (std::size_t node = 0; node < count; ++node) {
    if (tuples[node].size() != region.m) throw InputMismatch("lift tuple " + std::to_string(node) + " must have m points");
    for (const Point& p : tuples[node]) {
      if (!region.domain.contains(p)) throw InputMismatch("lift tuple " + std::to_string(node) + " leaves the domain");
    }
  }
  VerifyReport rep;

  VerifyCheck round{"round-trip", true, "every node"};
  for (std::size_t node = 0; node < count && round.pass; ++node) {
    const bool same = region.mode == RegionMode::sp ? sp_canonical(tuples[node]).points() == region.samples[node]
                                                    : f_canonical(tuples[node]).support() == region.samples[node];
    if (!same) {
      round.pass = false;
      round.detail = "node " + std::to_string(node) + ": " + format_tuple(tuples[node]) +
                     " does not lie over its sample";
    }
  }
  rep.checks.push_back(round);

  std::optional<std::size_t> worst_node;
  for (std::size_t u = 0; u < count; ++u) {
    for (std::size_t axis = 0; axis < region.n(); ++axis) {
      const auto v = region.step(u, axis, 1);
      if (!v) continue;
      rep.max_sample_step =
          std::max(rep.max_sample_step, hausdorff(region.domain, region.samples[u], region.samples[*v]));
      for (std::size_t i = 0; i < region.m; ++i) {
        const double d = region.domain.distance(tuples[u][i], tuples[*v][i]);
        if (d > rep.max_position_step) {
          rep.max_position_step = d;
          worst_node = u;
        }
      }
    }
  }
  const double bound = rep.max_sample_step + 2.0 * region.eps;
  VerifyCheck cont{"continuity", true, ""};
  cont.pass = rep.max_position_step <= bound * (1.0 + kTieTolerance) + kTieTolerance;
  std::ostringstream os;
  os << "max position step " << rep.max_position_step << ", bound " << bound;
  if (!cont.pass && worst_node) os << " (exceeded at node " << *worst_node << ")";
  cont.detail = os.str();
  rep.checks.push_back(cont);

  if (region.mode == RegionMode::sp) {
    const Segmentation seg = segment(region);
    VerifyCheck pat{"segment-pattern", true, "constant on every segment"};
    for (const auto& s : seg.segments) {
      const PieceId first = classify(region.domain, tuples[s.nodes.front()], region.eps);
      for (std::size_t node : s.nodes) {
        if (classify(region.domain, tuples[node], region.eps) != first) {
          pat.pass = false;
          pat.detail = "segment " + std::to_string(s.id) + " changes pattern at node " + std::to_string(node);
          break;
        }
      }
      if (!pat.pass) break;
    }
    rep.checks.push_back(pat);
  }
  return rep;
}

}  // namespace symlift

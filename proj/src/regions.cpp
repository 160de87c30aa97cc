#include "symlift/regions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace symlift {

std::size_t SampledRegion::node_count() const {
  std::size_t c = 1;
  for (std::size_t s : shape) c *= s;
  return c;
}

std::vector<std::size_t> SampledRegion::index_of(std::size_t node) const {
  std::vector<std::size_t> idx(shape.size());
  for (std::size_t a = shape.size(); a-- > 0;) {
    idx[a] = node % shape[a];
    node /= shape[a];
  }
  return idx;
}

std::size_t SampledRegion::node_of(const std::vector<std::size_t>& index) const {
  std::size_t node = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) node = node * shape[a] + index[a];
  return node;
}

std::optional<std::size_t> SampledRegion::step(std::size_t node, std::size_t axis, int dir) const {
  std::size_t stride = 1;
  for (std::size_t a = axis + 1; a < shape.size(); ++a) stride *= shape[a];
  const std::size_t pos = node / stride % shape[axis];
  if (dir > 0) {
    if (pos + 1 >= shape[axis]) return std::nullopt;
    return node + stride;
  }
  if (pos == 0) return std::nullopt;
  return node - stride;
}

double SampledRegion::coordinate(std::size_t node, std::size_t axis) const {
  const std::size_t pos = index_of(node)[axis];
  if (!axes.empty()) return axes[axis][pos];
  return shape[axis] == 1 ? 0.0 : static_cast<double>(pos) / static_cast<double>(shape[axis] - 1);
}

void SampledRegion::validate() const {
  if (m == 0) throw InputError("m must be positive");
  if (shape.empty()) throw InputError("region needs at least one axis");
  for (std::size_t s : shape) {
    if (s == 0) throw InputError("shape extents must be positive");
  }
  if (samples.size() != node_count()) {
    throw InputError("expected " + std::to_string(node_count()) + " samples, got " + std::to_string(samples.size()));
  }
  if (!(eps >= 0) || !std::isfinite(eps)) throw InputError("eps must be finite and >= 0");
  if (domain.kind() == DomainKind::labels && eps != 0) throw InputError("label domains require eps = 0");
  if (!axes.empty()) {
    if (axes.size() != shape.size()) throw InputError("axes must list one coordinate array per axis");
    for (std::size_t a = 0; a < shape.size(); ++a) {
      if (axes[a].size() != shape[a]) throw InputError("axis " + std::to_string(a) + " has the wrong length");
      for (std::size_t i = 1; i < axes[a].size(); ++i) {
        if (!(axes[a][i] > axes[a][i - 1])) throw InputError("axis coordinates must increase");
      }
    }
  }
  for (std::size_t node = 0; node < samples.size(); ++node) {
    const MTuple& s = samples[node];
    const std::string where = "sample " + std::to_string(node);
    for (const Point& p : s) {
      if (!domain.contains(p)) throw InputError(where + " has a point outside the domain");
    }
    if (mode == RegionMode::sp) {
      if (s.size() != m) throw InputError(where + " must have exactly m points");
      if (!std::is_sorted(s.begin(), s.end())) throw InputError(where + " is not sorted");
    } else {
      if (s.empty() || s.size() > m) throw InputError(where + " must have 1..m support points");
      for (std::size_t i = 1; i < s.size(); ++i) {
        if (!(s[i - 1] < s[i])) throw InputError(where + " support must be strictly increasing");
      }
    }
  }
}

SampledRegion permute_axes(const SampledRegion& region, const std::vector<std::size_t>& order) {
  SampledRegion out = region;
  for (std::size_t k = 0; k < order.size(); ++k) out.shape[k] = region.shape[order[k]];
  if (!region.axes.empty()) {
    for (std::size_t k = 0; k < order.size(); ++k) out.axes[k] = region.axes[order[k]];
  }
  for (std::size_t node = 0; node < region.node_count(); ++node) {
    const auto idx = region.index_of(node);
    std::vector<std::size_t> moved(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) moved[k] = idx[order[k]];
    out.samples[out.node_of(moved)] = region.samples[node];
  }
  return out;
}

ClassificationAmbiguity::ClassificationAmbiguity(std::size_t node, double gap, double diameter)
    : Error("node " + std::to_string(node) + " is ambiguous at this eps (cluster gap " + std::to_string(gap) +
            ", cluster diameter " + std::to_string(diameter) + ")"),
      node_(node),
      gap_(gap),
      diameter_(diameter) {}

PieceId node_pattern(const SampledRegion& region, std::size_t node) {
  const MTuple& s = region.samples[node];
  try {
    const PieceId p = classify(region.domain, s, region.eps);
    if (region.mode == RegionMode::sp) return p;
    if (!p.is_principal()) throw ClassificationAmbiguity(node, 0.0, 0.0);
    return PieceId::principal(s.size());
  } catch (const AmbiguousCoincidence& e) {
    throw ClassificationAmbiguity(node, e.gap(), e.diameter());
  }
}

Segmentation segment(const SampledRegion& region) {
  region.validate();
  const std::size_t count = region.node_count();
  Segmentation seg;
  seg.node_pattern.reserve(count);
  for (std::size_t node = 0; node < count; ++node) seg.node_pattern.push_back(node_pattern(region, node));

  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  seg.node_segment.assign(count, unset);
  for (std::size_t start = 0; start < count; ++start) {
    if (seg.node_segment[start] != unset) continue;
    Segment s;
    s.id = seg.segments.size();
    s.piece = seg.node_pattern[start];
    std::vector<std::size_t> queue{start};
    seg.node_segment[start] = s.id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (std::size_t axis = 0; axis < region.n(); ++axis) {
        for (int dir : {-1, 1}) {
          const auto v = region.step(u, axis, dir);
          if (v && seg.node_segment[*v] == unset && seg.node_pattern[*v] == s.piece) {
            seg.node_segment[*v] = s.id;
            queue.push_back(*v);
          }
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    s.nodes = std::move(queue);
    seg.segments.push_back(std::move(s));
  }

  for (std::size_t u = 0; u < count; ++u) {
    for (std::size_t axis = 0; axis < region.n(); ++axis) {
      const auto v = region.step(u, axis, 1);
      if (!v || seg.node_pattern[u] == seg.node_pattern[*v]) continue;
      PassingEvent e;
      e.id = seg.events.size();
      e.from = u;
      e.to = *v;
      e.axis = axis;
      e.from_piece = seg.node_pattern[u];
      e.to_piece = seg.node_pattern[*v];
      const std::size_t bu = e.from_piece.block_count(), bv = e.to_piece.block_count();
      if (bu <= bv) e.passing.push_back(u);
      if (bv <= bu) e.passing.push_back(*v);
      seg.segments[seg.node_segment[u]].events.push_back(e.id);
      seg.segments[seg.node_segment[*v]].events.push_back(e.id);
      seg.events.push_back(std::move(e));
    }
  }
  for (auto& s : seg.segments) {
    std::sort(s.events.begin(), s.events.end());
    s.events.erase(std::unique(s.events.begin(), s.events.end()), s.events.end());
  }
  return seg;
}

EmptyInteriorVerdict check_empty_interior(const SampledRegion& region, const Segmentation& seg) {
  EmptyInteriorVerdict v;
  std::vector<bool> passing(region.node_count(), false);
  for (const auto& e : seg.events) {
    for (std::size_t node : e.passing) passing[node] = true;
  }
  for (std::size_t node = 0; node < passing.size(); ++node) {
    if (passing[node]) v.passing_nodes.push_back(node);
  }
  for (std::size_t node : v.passing_nodes) {
    std::vector<std::size_t> ball{node};
    bool all = true;
    for (std::size_t axis = 0; axis < region.n() && all; ++axis) {
      for (int dir : {-1, 1}) {
        const auto nb = region.step(node, axis, dir);
        if (!nb) continue;
        if (!passing[*nb]) {
          all = false;
          break;
        }
        ball.push_back(*nb);
      }
    }
    // a lone node without neighbours has no interior to speak of
    if (all && ball.size() > 1) {
      std::sort(ball.begin(), ball.end());
      v.holds = false;
      v.ball = std::move(ball);
      break;
    }
  }
  return v;
}

SinglePieceVerdict check_single_piece(const SampledRegion& region, const Segmentation& seg) {
  (void)region;
  SinglePieceVerdict v;
  const std::set<PieceId> distinct(seg.node_pattern.begin(), seg.node_pattern.end());
  v.patterns.assign(distinct.begin(), distinct.end());
  v.single = v.patterns.size() == 1;
  v.consistent = seg.events.empty() == v.single;
  return v;
}

}  // namespace symlift

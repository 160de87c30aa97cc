#include "symlift/core.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace symlift {

// ---------------------------------------------------------------- domains

PointDomain PointDomain::labels(std::vector<std::string> names) {
  if (!std::is_sorted(names.begin(), names.end()) ||
      std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw std::invalid_argument("label names must be strictly increasing");
  }
  PointDomain d;
  d.kind_ = DomainKind::labels;
  d.dim_ = 1;
  d.names_ = std::move(names);
  return d;
}

PointDomain PointDomain::euclidean(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("euclidean domain needs dim >= 1");
  PointDomain d;
  d.kind_ = DomainKind::euclidean;
  d.dim_ = dim;
  return d;
}

double PointDomain::distance(const Point& a, const Point& b) const {
  if (kind_ == DomainKind::labels) return a == b ? 0.0 : 1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool PointDomain::contains(const Point& p) const {
  if (p.dim() != dim_) return false;
  if (kind_ == DomainKind::labels) {
    const double r = p[0];
    if (r < 0 || r != std::floor(r)) return false;
    return names_.empty() || r < static_cast<double>(names_.size());
  }
  return std::all_of(p.coords().begin(), p.coords().end(),
                     [](double v) { return std::isfinite(v); });
}

std::optional<std::size_t> PointDomain::rank_of(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

// ------------------------------------------------------------ permutations

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t v : map_) {
    if (v >= map_.size() || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t m) {
  std::vector<std::size_t> map(m);
  std::iota(map.begin(), map.end(), std::size_t{0});
  return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& after) const {
  // apply(after, apply(this, t))[i] = t[map_[after[i]]]
  std::vector<std::size_t> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) out[i] = map_[after.map_[i]];
  return Permutation(std::move(out));
}

// ------------------------------------------------------------------ pieces

std::size_t JVector::m() const {
  return j0 + std::accumulate(parts.begin(), parts.end(), std::size_t{0});
}

PieceId::PieceId(std::vector<std::vector<std::size_t>> blocks) {
  std::size_t m = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("PieceId: empty block");
    std::sort(b.begin(), b.end());
    m += b.size();
  }
  std::vector<bool> seen(m, false);
  for (const auto& b : blocks) {
    for (std::size_t i : b) {
      if (i >= m || seen[i]) throw std::invalid_argument("PieceId: blocks do not partition positions");
      seen[i] = true;
    }
  }
  std::sort(blocks.begin(), blocks.end());
  m_ = m;
  blocks_ = std::move(blocks);
}

PieceId PieceId::principal(std::size_t m) {
  std::vector<std::vector<std::size_t>> blocks(m);
  for (std::size_t i = 0; i < m; ++i) blocks[i] = {i};
  return PieceId(std::move(blocks));
}

PieceId PieceId::from_labels(std::span<const std::size_t> labels) {
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= blocks.size()) blocks.resize(labels[i] + 1);
    blocks[labels[i]].push_back(i);
  }
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return PieceId(std::move(blocks));
}

JVector PieceId::jvector() const {
  JVector j;
  for (const auto& b : blocks_) {
    if (b.size() == 1) {
      ++j.j0;
    } else {
      j.parts.push_back(b.size());
    }
  }
  std::sort(j.parts.begin(), j.parts.end());
  return j;
}

std::vector<std::size_t> PieceId::shape() const {
  std::vector<std::size_t> s;
  for (const auto& b : blocks_) s.push_back(b.size());
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<std::size_t> PieceId::block_of() const {
  std::vector<std::size_t> out(m_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (std::size_t i : blocks_[b]) out[i] = b;
  }
  return out;
}

PieceId PieceId::relabeled(const Permutation& sigma) const {
  // position i of t_sigma holds t[sigma[i]]
  const Permutation inv = sigma.inverse();
  std::vector<std::vector<std::size_t>> blocks = blocks_;
  for (auto& b : blocks) {
    for (auto& i : b) i = inv[i];
  }
  return PieceId(std::move(blocks));
}

bool PieceId::refines(const PieceId& coarser) const {
  if (m_ != coarser.m_) return false;
  const auto owner = coarser.block_of();
  return std::all_of(blocks_.begin(), blocks_.end(), [&](const auto& b) {
    return std::all_of(b.begin(), b.end(), [&](std::size_t i) { return owner[i] == owner[b[0]]; });
  });
}

// ------------------------------------------------------------ canonicals

SPClass SPClass::of(std::span<const Point> t) {
  SPClass c;
  c.points_ = sorted_copy(t);
  return c;
}

SPClass SPClass::from_sorted(std::vector<Point> points) {
  if (!std::is_sorted(points.begin(), points.end())) {
    throw std::invalid_argument("SPClass: points are not sorted");
  }
  SPClass c;
  c.points_ = std::move(points);
  return c;
}

FClass FClass::of(std::span<const Point> t) {
  FClass c;
  c.support_ = support_of(t);
  return c;
}

FClass FClass::from_sorted(std::vector<Point> support) {
  for (std::size_t i = 1; i < support.size(); ++i) {
    if (!(support[i - 1] < support[i])) {
      throw std::invalid_argument("FClass: support is not strictly increasing");
    }
  }
  if (support.empty()) throw std::invalid_argument("FClass: empty support");
  FClass c;
  c.support_ = std::move(support);
  return c;
}

SPClass sp_canonical(std::span<const Point> t) { return SPClass::of(t); }
FClass f_canonical(std::span<const Point> t) { return FClass::of(t); }

AmbiguousCoincidence::AmbiguousCoincidence(double gap, double diameter, double eps)
    : Error([&] {
        std::ostringstream os;
        os << "ambiguous coincidence at eps=" << eps << ": cluster gap " << gap
           << ", cluster diameter " << diameter;
        return os.str();
      }()),
      gap_(gap),
      diameter_(diameter) {}

GroupTooLarge::GroupTooLarge(std::size_t bound)
    : Error("generated group exceeds " + std::to_string(bound) + " elements") {}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

PieceId classify(const PointDomain& domain, std::span<const Point> t, double eps) {
  if (eps < 0 || !std::isfinite(eps)) throw std::invalid_argument("eps must be finite and >= 0");
  if (domain.kind() == DomainKind::labels) {
    if (eps != 0.0) throw std::invalid_argument("label domains classify exactly (eps = 0)");
    return exact_pattern(t);
  }

  const std::size_t m = t.size();
  std::vector<double> dist(m * m, 0.0);
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = domain.distance(t[i], t[j]);
      dist[i * m + j] = dist[j * m + i] = d;
      if (d <= eps) parent[find_root(parent, i)] = find_root(parent, j);
    }
  }

  std::vector<std::size_t> label(m);
  std::vector<std::size_t> root_label;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find_root(parent, i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      label[i] = roots.size() - 1;
    } else {
      label[i] = static_cast<std::size_t>(it - roots.begin());
    }
  }

  double diameter = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (label[i] == label[j]) {
        diameter = std::max(diameter, dist[i * m + j]);
      } else {
        gap = std::min(gap, dist[i * m + j]);
      }
    }
  }
  if (diameter > eps || (eps > 0 && gap <= 2 * eps)) {
    throw AmbiguousCoincidence(gap, diameter, eps);
  }
  return PieceId::from_labels(label);
}

PrimitiveArrangement primitive_rep(const PointDomain& domain, std::span<const Point> t,
                                   double eps) {
  PieceId pattern = classify(domain, t, eps);

  struct Group {
    std::vector<std::size_t> members;  // sorted by (value, position)
  };
  std::vector<Group> blocks;
  std::vector<std::size_t> singles;
  for (const auto& b : pattern.blocks()) {
    if (b.size() == 1) {
      singles.push_back(b[0]);
      continue;
    }
    Group g{b};
    std::stable_sort(g.members.begin(), g.members.end(),
                     [&](std::size_t x, std::size_t y) { return t[x] < t[y]; });
    blocks.push_back(std::move(g));
  }
  std::stable_sort(blocks.begin(), blocks.end(), [&](const Group& a, const Group& b) {
    if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
    return t[a.members[0]] < t[b.members[0]];
  });
  std::stable_sort(singles.begin(), singles.end(),
                   [&](std::size_t x, std::size_t y) { return t[x] < t[y]; });

  std::vector<std::size_t> map;
  map.reserve(t.size());
  for (const auto& g : blocks) map.insert(map.end(), g.members.begin(), g.members.end());
  map.insert(map.end(), singles.begin(), singles.end());

  Permutation sigma(std::move(map));
  MTuple tuple = sigma.apply(t);
  return {std::move(tuple), std::move(sigma), std::move(pattern)};
}

MTuple theta_canonical(const PointDomain& domain, std::span<const Point> t, double eps) {
  return primitive_rep(domain, t, eps).tuple;
}

MTuple project_piece(const PointDomain& domain, std::span<const Point> t, double eps) {
  const PrimitiveArrangement prim = primitive_rep(domain, t, eps);
  const PieceId arranged = prim.pattern.relabeled(prim.sigma);
  // Blocks of the arranged tuple are contiguous runs; keep the first of each.
  MTuple out;
  std::vector<std::size_t> owner = arranged.block_of();
  for (std::size_t i = 0; i < prim.tuple.size(); ++i) {
    if (i == 0 || owner[i] != owner[i - 1]) out.push_back(prim.tuple[i]);
  }
  return out;
}

std::vector<Permutation> generate_group(std::size_t m, std::span<const Permutation> generators,
                                        std::size_t bound) {
  for (const auto& g : generators) {
    if (g.size() != m) throw std::invalid_argument("generator has wrong degree");
  }
  std::set<Permutation> seen{Permutation::identity(m)};
  std::vector<Permutation> frontier{Permutation::identity(m)};
  std::vector<Permutation> out{Permutation::identity(m)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& g : frontier) {
      for (const auto& s : generators) {
        Permutation h = g.then(s);
        if (seen.insert(h).second) {
          if (seen.size() > bound) throw GroupTooLarge(bound);
          out.push_back(h);
          next.push_back(std::move(h));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace symlift

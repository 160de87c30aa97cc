#include "symlift/partitions.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace symlift {

std::size_t Partition::m() const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += (i + 1) * alpha[i];
  return s;
}

std::size_t Partition::part_count() const {
  return std::accumulate(alpha.begin(), alpha.end(), std::size_t{0});
}

std::vector<std::size_t> Partition::parts() const {
  std::vector<std::size_t> out;
  for (std::size_t i = alpha.size(); i-- > 0;) out.insert(out.end(), alpha[i], i + 1);
  return out;
}

std::string Partition::notation() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!first) os << ' ';
    first = false;
    os << (i + 1);
    if (alpha[i] > 1) os << '^' << alpha[i];
  }
  os << ']';
  return os.str();
}

Partition Partition::from_parts(std::span<const std::size_t> parts) {
  const std::size_t m = std::accumulate(parts.begin(), parts.end(), std::size_t{0});
  Partition p;
  p.alpha.assign(m, 0);
  for (std::size_t s : parts) {
    if (s == 0) throw std::invalid_argument("partition parts must be positive");
    ++p.alpha[s - 1];
  }
  return p;
}

namespace {

void check_m(std::size_t m, std::size_t max) {
  if (m < 1 || m > max) {
    throw InputError("m must be in [1, " + std::to_string(max) + "], got " + std::to_string(m));
  }
}

// Parts in non-increasing order, each at most `cap`.
void emit_partitions(std::size_t rest, std::size_t cap, std::vector<std::size_t>& parts,
                     std::vector<Partition>& out) {
  if (rest == 0) {
    out.push_back(Partition::from_parts(parts));
    return;
  }
  for (std::size_t p = std::min(rest, cap); p >= 1; --p) {
    parts.push_back(p);
    emit_partitions(rest - p, p, parts, out);
    parts.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(std::size_t m) {
  check_m(m, kMaxPartitionM);
  std::vector<Partition> out;
  std::vector<std::size_t> parts;
  emit_partitions(m, m, parts, out);
  std::sort(out.begin(), out.end());
  return out;
}

JVector jvector_of(const Partition& tau) {
  JVector j;
  j.j0 = tau.alpha.empty() ? 0 : tau.alpha[0];
  for (std::size_t i = 1; i < tau.alpha.size(); ++i) j.parts.insert(j.parts.end(), tau.alpha[i], i + 1);
  return j;
}

Partition partition_of(const JVector& j) {
  if (!std::is_sorted(j.parts.begin(), j.parts.end())) {
    throw std::invalid_argument("j-vector parts must be non-decreasing");
  }
  Partition p;
  p.alpha.assign(j.m(), 0);
  if (j.j0 > 0) p.alpha[0] = j.j0;
  for (std::size_t s : j.parts) {
    if (s < 2) throw std::invalid_argument("j-vector parts must be at least 2");
    ++p.alpha[s - 1];
  }
  return p;
}

Partition partition_of(const PieceId& piece) {
  const auto shape = piece.shape();
  return Partition::from_parts(shape);
}

std::vector<std::size_t> PartitionClassTable::class_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& c : classes) out.push_back(c.size());
  return out;
}

std::size_t PartitionClassTable::class_of(const Partition& tau) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!classes[i].empty() && classes[i][0].part_count() == tau.part_count()) return i;
  }
  throw std::invalid_argument("partition does not belong to this table");
}

PartitionClassTable sim_classes(std::size_t m) {
  PartitionClassTable table;
  table.m = m;
  for (const Partition& p : enumerate_partitions(m)) {
    auto it = std::find_if(table.classes.begin(), table.classes.end(), [&](const auto& c) {
      return c[0].part_count() == p.part_count();
    });
    if (it == table.classes.end()) {
      table.classes.push_back({p});
    } else {
      it->push_back(p);
    }
  }
  std::sort(table.classes.begin(), table.classes.end(), [](const auto& a, const auto& b) {
    return a[0].part_count() > b[0].part_count();
  });
  return table;
}

bool sim_related(const Partition& a, const Partition& b) {
  return a.m() == b.m() && a.part_count() == b.part_count();
}

bool pieces_related(const PieceId& a, const PieceId& b) {
  return a.m() == b.m() && a.block_count() == b.block_count();
}

std::vector<PieceId> enumerate_pieces(std::size_t m) {
  check_m(m, kMaxPieceM);
  std::vector<PieceId> out;
  // Restricted growth strings: labels[0] = 0, labels[i] <= 1 + max(labels[0..i)).
  std::vector<std::size_t> labels(m, 0);
  std::vector<std::size_t> prefix_max(m, 0);
  while (true) {
    out.push_back(PieceId::from_labels(labels));
    std::size_t i = m;
    while (i-- > 1) {
      if (labels[i] <= prefix_max[i - 1]) break;
    }
    if (i == 0 || i >= m) break;
    ++labels[i];
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
    for (std::size_t k = i + 1; k < m; ++k) {
      labels[k] = 0;
      prefix_max[k] = prefix_max[k - 1];
    }
  }
  return out;
}

std::vector<PieceId> enumerate_pieces(std::size_t m, std::span<const Partition> selected) {
  std::vector<PieceId> out;
  for (PieceId& piece : enumerate_pieces(m)) {
    const Partition shape = partition_of(piece);
    if (std::find(selected.begin(), selected.end(), shape) != selected.end()) {
      out.push_back(std::move(piece));
    }
  }
  return out;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw InputError("count overflows 64 bits");
  }
  return a * b;
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f = checked_mul(f, i);
  return f;
}

}  // namespace

std::uint64_t count_set_partitions(const Partition& tau) {
  std::uint64_t denom = 1;
  for (std::size_t i = 0; i < tau.alpha.size(); ++i) {
    for (std::size_t k = 0; k < tau.alpha[i]; ++k) denom = checked_mul(denom, factorial(i + 1));
    denom = checked_mul(denom, factorial(tau.alpha[i]));
  }
  return factorial(tau.m()) / denom;
}

std::uint64_t count_piece_points(std::uint64_t q, const PieceId& piece) {
  if (q == 0) throw InputError("domain size q must be at least 1");
  const std::size_t r = piece.block_count();
  if (r > q) return 0;
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < r; ++i) c = checked_mul(c, q - i);
  return c;
}

}  // namespace symlift

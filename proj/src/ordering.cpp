#include "adiclab/ordering.hpp"

#include <set>
#include <string>

#include "adiclab/error.hpp"

namespace adiclab {

namespace {

std::uint64_t key(Vertex v) { return (std::uint64_t{v.x} << 32) | v.y; }

std::string show(Vertex v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MissingBit: return "MissingBit";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::MaximalPrefix: return "MaximalPrefix";
    case ErrorKind::MinimalPrefix: return "MinimalPrefix";
    case ErrorKind::WindowEscapesColumn: return "WindowEscapesColumn";
    case ErrorKind::KinkPreconditionFailed: return "KinkPreconditionFailed";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::LevelBelowK: return "LevelBelowK";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InconsistentLengths: return "InconsistentLengths";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ResourceCap: return "ResourceCap";
  }
  return "Unknown";
}

OrderingTable OrderingTable::constant(int bit) {
  if (bit != 0 && bit != 1) throw Error(ErrorKind::InvalidArgument, "constant bit must be 0 or 1");
  return OrderingTable(Constant{bit});
}

OrderingTable OrderingTable::seeded(std::uint64_t seed, double bias) {
  if (!(bias >= 0.0 && bias <= 1.0)) throw Error(ErrorKind::InvalidArgument, "bias must lie in [0,1]");
  return OrderingTable(Seeded{seed, bias});
}

OrderingTable OrderingTable::explicit_bits(const BitMap& bits, std::uint32_t max_level,
                                           std::optional<int> fill) {
  if (fill && *fill != 0 && *fill != 1) throw Error(ErrorKind::InvalidArgument, "fill must be 0 or 1");
  OrderingTable t(Explicit{max_level, fill});
  for (const auto& [v, b] : bits) {
    if (!fill && v.level() > max_level)
      throw Error(ErrorKind::InvalidArgument, "bit at " + show(v) + " lies above maxLevel");
  }
  t.set_listed(bits);
  return t;
}

OrderingTable OrderingTable::tree(std::uint32_t depth) {
  OrderingTable t(Tree{depth});
  t.set_listed(build_tree_embedding(depth).bits);
  return t;
}

OrderingTable OrderingTable::with_overrides(const BitMap& bits) const {
  OrderingTable t = *this;
  BitMap merged = listed_;
  for (const auto& [v, b] : bits) merged[v] = b;
  t.set_listed(merged);
  return t;
}

OrderingTable OrderingTable::restricted() const {
  OrderingTable t = *this;
  t.restricted_ = true;
  return t;
}

void OrderingTable::set_listed(const BitMap& bits) {
  listed_.clear();
  lookup_.clear();
  for (const auto& [v, b] : bits) {
    if (!v.interior()) throw Error(ErrorKind::InvalidArgument, "bit listed at boundary vertex " + show(v));
    if (b != 0 && b != 1) throw Error(ErrorKind::InvalidArgument, "bit at " + show(v) + " must be 0 or 1");
    listed_[v] = b;
    lookup_[key(v)] = static_cast<std::uint8_t>(b);
  }
}

OrderBit OrderingTable::query(Vertex v) const {
  if (!v.interior()) return OrderBit::BothExtremal;
  if (const auto* e = std::get_if<Explicit>(&kind_); e && !e->fill && v.level() > e->max_level)
    throw Error(ErrorKind::MissingBit, "no bit at " + show(v) + " beyond level " + std::to_string(e->max_level));
  if (restricted_ && (v.x == 1 || v.y == 1)) return OrderBit::Zero;
  if (auto it = lookup_.find(key(v)); it != lookup_.end()) return it->second ? OrderBit::One : OrderBit::Zero;
  int b = std::visit(
      [&](const auto& k) -> int {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return k.bit;
        } else if constexpr (std::is_same_v<K, Seeded>) {
          std::uint64_t h = mix64(k.seed ^ mix64(key(v)));
          double u = static_cast<double>(h >> 11) * 0x1.0p-53;
          return u < k.bias ? 0 : 1;
        } else if constexpr (std::is_same_v<K, Explicit>) {
          if (k.fill) return *k.fill;
          throw Error(ErrorKind::MissingBit, "no bit listed at " + show(v));
        } else {
          return 0;
        }
      },
      kind_);
  return b ? OrderBit::One : OrderBit::Zero;
}

int OrderingTable::bit(Vertex v) const {
  OrderBit b = query(v);
  if (b == OrderBit::BothExtremal) throw Error(ErrorKind::InvalidArgument, "boundary vertex " + show(v) + " has no bit");
  return b == OrderBit::One ? 1 : 0;
}

TreeEmbedding build_tree_embedding(std::uint32_t depth) {
  if (depth > 24) throw Error(ErrorKind::BoundExceeded, "tree depth above 24");
  TreeEmbedding t;
  std::set<Vertex> used{Vertex{0, 0}};
  std::vector<Vertex> leaves{Vertex{0, 0}};
  t.stage_levels.push_back(0);
  t.stage_leaves.push_back(leaves);

  auto enter = [&](Vertex v, bool a_step) {
    if (!used.insert(v).second) throw Error(ErrorKind::InvalidArgument, "tree paths intersect at " + show(v));
    if (v.interior()) t.bits[v] = a_step ? 1 : 0;
  };

  // Leaf t at height 2t sends children to heights 4t and 4t+2; splitting on
  // the first step and moving up before across keeps the paths disjoint.
  for (std::uint32_t s = 0; s < depth; ++s) {
    const std::uint32_t steps = 2u << s;
    std::vector<Vertex> next;
    for (std::uint32_t i = 0; i < leaves.size(); ++i) {
      for (int child = 0; child < 2; ++child) {
        Vertex v = leaves[i];
        const std::uint32_t target = 4 * i + 2 * child;
        for (std::uint32_t k = 0; k < steps; ++k) {
          bool a_step = (k == 0) ? child == 0 : v.y >= target;
          if (a_step) ++v.x; else ++v.y;
          enter(v, a_step);
        }
        next.push_back(v);
      }
    }
    leaves = std::move(next);
    t.stage_levels.push_back(leaves.front().level());
    t.stage_leaves.push_back(leaves);
  }
  return t;
}

}  // namespace adiclab

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

namespace adiclab {

struct Vertex {
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  std::uint32_t level() const { return x + y; }
  bool interior() const { return x > 0 && y > 0; }
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

// Bit at an interior vertex: One means the edge from (x-1,y) is the smaller one.
enum class OrderBit : std::uint8_t { Zero, One, BothExtremal };

using BitMap = std::map<Vertex, int>;

// Edge orderings of the Pascal graph. Immutable after construction, so
// concurrent queries are safe.
class OrderingTable {
 public:
  struct Constant { int bit = 0; };
  struct Seeded { std::uint64_t seed = 0; double bias = 0.5; };
  // Listed bits only; queries above max_level, or of unlisted vertices when
  // no fill is given, throw MissingBit.
  struct Explicit { std::uint32_t max_level = 0; std::optional<int> fill; };
  struct Tree { std::uint32_t depth = 0; };
  using Kind = std::variant<Constant, Seeded, Explicit, Tree>;

  static OrderingTable constant(int bit);
  // bias is the probability of a 0 bit.
  static OrderingTable seeded(std::uint64_t seed, double bias = 0.5);
  static OrderingTable explicit_bits(const BitMap& bits, std::uint32_t max_level,
                                     std::optional<int> fill = std::nullopt);
  static OrderingTable tree(std::uint32_t depth);

  // Listed bits replace whatever the base kind says.
  OrderingTable with_overrides(const BitMap& bits) const;
  // Forces bits at (x,1) and (1,y) to 0.
  OrderingTable restricted() const;

  OrderBit query(Vertex v) const;
  // Interior vertices only.
  int bit(Vertex v) const;

  const Kind& kind() const { return kind_; }
  const BitMap& listed_bits() const { return listed_; }
  bool is_restricted() const { return restricted_; }

 private:
  explicit OrderingTable(Kind kind) : kind_(kind) {}
  void set_listed(const BitMap& bits);

  Kind kind_;
  BitMap listed_;
  std::unordered_map<std::uint64_t, std::uint8_t> lookup_;
  bool restricted_ = false;
};

// Binary tree of vertex-disjoint paths whose edges are all minimal.
// Stage s has 2^s leaves at level 2(2^s - 1).
struct TreeEmbedding {
  BitMap bits;
  std::vector<std::uint32_t> stage_levels;
  std::vector<std::vector<Vertex>> stage_leaves;
};

TreeEmbedding build_tree_embedding(std::uint32_t depth);

std::uint64_t mix64(std::uint64_t x);

}  // namespace adiclab

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "adiclab/adic.hpp"

namespace adiclab {

inline constexpr std::size_t kDefaultBlockBytes = std::size_t{2} << 30;

// Memo of 1-coding basic blocks for one ordering, grown level by level.
// Readers share the lock; growth takes it exclusively.
class BlockTable {
 public:
  explicit BlockTable(OrderingTable xi, std::size_t max_bytes = kDefaultBlockBytes);

  const std::string& block(Vertex v) const;
  const OrderingTable& ordering() const { return xi_; }
  std::size_t bytes() const;

 private:
  void grow_to(std::uint32_t level) const;

  OrderingTable xi_;
  std::size_t max_bytes_;
  mutable std::shared_mutex mu_;
  mutable std::deque<std::vector<std::string>> levels_;  // indexed by level, then y
  mutable std::size_t bytes_ = 0;
};

std::string basic_block(const OrderingTable& xi, std::uint32_t x, std::uint32_t y);

// Blocks over level-k cylinder symbols; (x,y) must sit at level >= k.
SymbolWord basic_block_k(const OrderingTable& xi, std::uint32_t k, std::uint32_t x, std::uint32_t y);
// Every vertex at `level`, indexed by y.
std::vector<SymbolWord> level_blocks_k(const OrderingTable& xi, std::uint32_t k, std::uint32_t level);

struct Census {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::optional<Vertex> vertex;  // lowest vertex whose block has these counts
};

Census symbol_census(const std::string& w);

// Distinct B(x,y) over restricted orderings; at most 2^max_free_bits orderings.
std::set<std::string> enumerate_blocks(std::uint32_t x, std::uint32_t y, std::uint32_t max_free_bits = 20);

// Every length-n factor of some B(x,y) with x+y <= L.
std::set<std::string> language_words(const OrderingTable& xi, std::size_t n, std::uint32_t L);
bool language_contains(const OrderingTable& xi, const std::string& w, std::uint32_t L);

struct Complexity {
  std::size_t count = 0;
  bool stabilized = false;  // same count at L-2, L-1 and L
  std::vector<std::size_t> by_level;
};

Complexity complexity(const OrderingTable& xi, std::size_t n, std::uint32_t L);

struct BigLanguageCount {
  std::size_t count = 0;
  std::size_t orderings = 0;
  std::uint32_t family_k = 0;  // row-2 family B(k,2) enumerated exhaustively when it fits
};

inline constexpr std::uint32_t kFamilyMaxBits = 20;

// Distinct n-words over the row-2 family (when it has at most kFamilyMaxBits
// free bits) plus `ordering_budget` seeded orderings.
BigLanguageCount big_language_count(std::size_t n, std::uint32_t level_cap, std::size_t ordering_budget,
                                    std::uint64_t seed = 0);

struct PairSeparation {
  std::size_t first = 0;
  std::size_t second = 0;
  std::optional<std::int64_t> coordinate;
};

struct FaithfulnessReport {
  std::size_t pairs = 0;
  std::size_t separated = 0;
  std::vector<PairSeparation> failures;
  std::map<std::int64_t, std::size_t> coordinate_histogram;
};

FaithfulnessReport faithfulness_probe(const OrderingTable& xi, std::uint32_t L, std::uint32_t k,
                                      std::uint32_t delta);

}  // namespace adiclab

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "adiclab/core.hpp"

namespace adiclab {

PathPrefix successor(const OrderingTable& xi, const PathPrefix& p);
// Canonical continuation: the first of A, B that is the smaller edge at an
// interior range; failing that, the step that leaves the boundary.
Step minimal_continuation(const OrderingTable& xi, Vertex v);
PathPrefix extend_minimally(const OrderingTable& xi, const PathPrefix& p, std::uint32_t level);
PathPrefix predecessor(const OrderingTable& xi, const PathPrefix& p);

// The s-th path (1-based, in ordering rank) to the level-k vertex (k-m, m).
struct CylSymbol {
  std::uint32_t k = 0;
  std::uint32_t m = 0;
  std::uint64_t s = 0;
  friend auto operator<=>(const CylSymbol&, const CylSymbol&) = default;
};

using SymbolWord = std::vector<CylSymbol>;

CylSymbol symbol_of(const OrderingTable& xi, const PathPrefix& p, std::uint32_t k);
// The path a symbol stands for, and its first letter.
PathPrefix symbol_path(const OrderingTable& xi, const CylSymbol& c);
std::string project_first_letter(const OrderingTable& xi, const SymbolWord& w);

// k-coding of T^t p for t in [t0, t1].
SymbolWord orbit_coding(const OrderingTable& xi, const PathPrefix& p, std::uint32_t k, std::int64_t t0,
                        std::int64_t t1);

enum class EdgeStatus { Max, Min };
enum class Turn { LR, RL };

struct KinkCase {
  EdgeStatus a1;  // status of the edge leaving (i,j) along the path
  EdgeStatus a2;  // status of the other edge leaving (i,j)
  Turn a3;        // LR when the path steps to (i+1,j)
  friend bool operator==(const KinkCase&, const KinkCase&) = default;
};

std::array<KinkCase, 8> all_kink_cases();
std::string kink_case_name(const KinkCase& c);
std::size_t kink_case_index(const KinkCase& c);

struct KinkSite {
  KinkCase kase;
  Vertex corner;  // (i,j) at level n
  BigNat return_time;
};

BigNat kink_return_time(const KinkCase& c, std::uint32_t n, std::uint32_t j);
KinkSite kink_classify(const OrderingTable& xi, const PathPrefix& p, std::uint32_t n);

struct KinkVerdict {
  KinkSite site;
  bool agrees = false;
  std::uint32_t level_used = 0;
};

// Iterates the successor r_n times and compares the first n edges.
KinkVerdict kink_verify(const OrderingTable& xi, const PathPrefix& p, std::uint32_t n,
                        std::uint32_t level_cap = 64);
// Same check with an arbitrary iterate count; used to probe r_n - 1 and r_n + 1.
bool agrees_after(const OrderingTable& xi, const PathPrefix& p, std::uint32_t n, const BigNat& iterates,
                  std::uint32_t level_cap = 64);

std::uint64_t binom_mod(std::uint64_t n, std::uint64_t k, std::uint64_t q);
bool is_prime(std::uint64_t q);

struct RowCheck {
  bool row_formula_holds = false;  // C(q^s-2,k) = (-1)^k (k+1) mod q
  bool next_row_nonzero = false;   // every C(q^s-1,k) is a unit mod q
  std::uint64_t first_failure = 0;
};

RowCheck weakmixing_row_check(std::uint64_t q, std::uint32_t s, std::uint64_t bound = 100'000'000);

struct WeakMixingVertex {
  std::uint64_t n = 0;
  std::uint64_t j = 0;
  std::array<std::uint64_t, 4> residues{};  // the four return-time forms mod q
};

WeakMixingVertex weakmixing_vertex_search(std::uint64_t q, std::uint32_t s,
                                          std::uint64_t bound = 100'000'000);

}  // namespace adiclab

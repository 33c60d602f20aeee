#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adiclab/coding.hpp"

namespace adiclab {

// C_i = a^i b and D_j = a b^j, both with index >= 2.
struct CDToken {
  char kind = 'C';
  std::uint32_t index = 2;
  std::string word() const;
  std::string name() const;
  friend bool operator==(const CDToken&, const CDToken&) = default;
};

std::vector<CDToken> decompose_CD(const std::string& w);

struct DecodedBlock {
  Vertex vertex;
  std::vector<CDToken> tokens;
  BitMap bits;  // bits at (u,v) with u,v >= 2 that the block determines
  OrderingTable ordering() const;
};

DecodedBlock decode_ordering(const std::string& w);

struct Factor {
  Vertex vertex;
  std::size_t offset = 0;
  std::size_t length = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

// Unrolls B^k(v) down to the level-m blocks it is made of.
std::vector<Factor> factor_block(const OrderingTable& xi, std::uint32_t k, Vertex v, std::uint32_t m);

struct FactorizationFailure {
  Vertex vertex;
  std::uint32_t m = 0;
  std::uint64_t tilings = 0;  // saturates at 2
};

inline constexpr std::uint32_t kFactorizationMaxLevel = 20;

struct FactorizationCheck {
  bool unique = true;
  std::size_t checked = 0;
  std::vector<FactorizationFailure> failures;
};

// Tiles are all level-m blocks, matched as words; a tiling count saturates at 2.
FactorizationCheck unique_factorization_check(const OrderingTable& xi, std::uint32_t k, std::uint32_t n);
std::uint64_t count_tilings(const OrderingTable& xi, std::uint32_t k, Vertex v, std::uint32_t m);

// Whole word when it alternates, else its longest alternating prefix and suffix.
struct CondensedForm {
  bool full = true;
  std::string prefix;
  std::string suffix;
  std::string to_string() const;
  friend bool operator==(const CondensedForm&, const CondensedForm&) = default;
};

CondensedForm condensed_form(const std::string& w);
CondensedForm condense_concat(const CondensedForm& lhs, const CondensedForm& rhs);

// Alternation summary with run lengths saturated at `cap` and max_ab, max_ba
// at cap - 1. max_ab is the longest alternating factor starting with a, so
// (ab)^j occurs iff max_ab >= 2j.
struct AltState {
  bool full = true;
  char first = 'a';
  char last = 'a';
  std::uint8_t len_l = 0;
  std::uint8_t len_r = 0;
  std::uint8_t max_ab = 0;
  std::uint8_t max_ba = 0;
  friend auto operator<=>(const AltState&, const AltState&) = default;
};

inline constexpr std::uint8_t kAltCap = 19;

AltState alt_state(const std::string& w, std::uint8_t cap = kAltCap);
AltState alt_concat(const AltState& lhs, const AltState& rhs, std::uint8_t cap = kAltCap);

enum class Verdict { Excluded, NotExcluded };
std::string to_string(Verdict v);

struct PhaseResult {
  Verdict verdict = Verdict::Excluded;
  std::uint32_t level = 0;
  std::optional<Vertex> witness;  // first vertex carrying both runs
  std::size_t states = 0;         // distinct level tuples, or largest per-vertex set
};

struct AlternationReport {
  std::uint32_t j = 0;
  PhaseResult exact;
  std::uint64_t orderings_covered = 0;
  PhaseResult over;
  PhaseResult conditioned;
};

// Reachable states per vertex, union over every ordering, levels 1..L.
using ReachableSets = std::vector<std::vector<std::set<AltState>>>;
ReachableSets alternation_reachable(std::uint32_t L, std::uint8_t cap = kAltCap);

AlternationReport alternation_exclusion(std::uint32_t L, std::uint32_t j, std::uint32_t exact_level = 7,
                                        std::uint32_t condition_level = 5);

enum class RunPattern { BAB, ABA };  // b a^l b or a b^l a

struct ContextReport {
  std::size_t occurrences = 0;
  std::size_t clipped = 0;                      // context reaches the block edge
  std::map<std::string, std::size_t> contexts;  // radius-3 run neighbourhoods
};

// Every occurrence of the run pattern inside B(x,y), x+y <= L, with the
// three neighbouring runs on each side. Outermost runs are cut to one letter.
ContextReport run_context_report(const OrderingTable& xi, std::uint32_t l, std::uint32_t L, RunPattern pattern);
// True when the context around its central run agrees with some run of the
// same kind inside one of `superwords` on their overlap.
bool context_fits(const std::string& context, RunPattern pattern, std::uint32_t l,
                  const std::vector<std::string>& superwords);

struct IntersectionReport {
  std::size_t common = 0;
  std::vector<std::string> offending;  // common words with two a's and two b's
};

IntersectionReport intersection_probe(const OrderingTable& xi, const OrderingTable& eta, std::size_t n,
                                      std::uint32_t L);

enum class PeriodicStatus { Found, Inconclusive };

struct PeriodicEvidence {
  std::string period;
  PeriodicStatus status = PeriodicStatus::Inconclusive;
  std::string window;        // absent factor of period^infinity
  std::size_t search_cap = 0;  // largest window length examined
  BigNat proof_bound;          // 3M + 1 with M the largest block length at level 4(p+1)
};

PeriodicEvidence periodic_exclusion(const OrderingTable& xi, const std::string& period, std::uint32_t L);
// Primitive words of length p using both letters, one per rotation class.
std::vector<std::string> primitive_periods(std::uint32_t p);

}  // namespace adiclab

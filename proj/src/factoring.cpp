#include "adiclab/factoring.hpp"

#include <algorithm>
#include <functional>

namespace adiclab {

std::string CDToken::word() const {
  return kind == 'C' ? std::string(index, 'a') + "b" : "a" + std::string(index, 'b');
}

std::string CDToken::name() const { return std::string(1, kind) + std::to_string(index); }

std::vector<CDToken> decompose_CD(const std::string& w) {
  if (w.empty()) throw Error(ErrorKind::ParseError, "empty word", 0);
  std::vector<CDToken> out;
  std::size_t i = 0;
  while (i < w.size()) {
    if (w[i] != 'a') throw Error(ErrorKind::ParseError, "token must start with 'a'", i);
    std::size_t j = i;
    while (j < w.size() && w[j] == 'a') ++j;
    if (j == w.size()) throw Error(ErrorKind::ParseError, "a-run without a closing 'b'", i);
    std::size_t e = j;
    while (e < w.size() && w[e] == 'b') ++e;
    if (w[j] != 'b') throw Error(ErrorKind::ParseError, "letter outside {a,b}", j);
    const std::size_t run = j - i;
    if (run >= 2) {
      out.push_back({'C', static_cast<std::uint32_t>(run)});
      i = j + 1;
    } else if (e - j >= 2) {
      out.push_back({'D', static_cast<std::uint32_t>(e - j)});
      i = e;
    } else {
      throw Error(ErrorKind::ParseError, "'ab' is not a token", i);
    }
  }
  return out;
}

OrderingTable DecodedBlock::ordering() const {
  return OrderingTable::explicit_bits(bits, vertex.level(), 0).restricted();
}

namespace {

using TokenIt = std::vector<CDToken>::const_iterator;

class Decoder {
 public:
  void run(Vertex v, TokenIt lo, TokenIt hi) {
    if (v.x == 1 || v.y == 1) {
      const CDToken want = v.y == 1 ? CDToken{'C', v.x} : CDToken{'D', v.y};
      if (hi - lo != 1 || *lo != want) fail("segment does not match " + want.name());
      return;
    }
    if (auto it = seen_.find(v); it != seen_.end()) {
      if (!std::equal(lo, hi, it->second.first, it->second.second)) fail("repeated sub-block differs");
      return;
    }
    seen_[v] = {lo, hi};
    auto find_once = [&](CDToken t) {
      auto p = std::find(lo, hi, t);
      if (p == hi || std::find(p + 1, hi, t) != hi) fail(t.name() + " must occur exactly once");
      return p;
    };
    const auto c = find_once({'C', v.x});
    const auto d = find_once({'D', v.y});
    const int bit = c < d ? 0 : 1;
    bits_[v] = bit;
    const Vertex first = bit == 0 ? Vertex{v.x, v.y - 1} : Vertex{v.x - 1, v.y};
    const Vertex second = bit == 0 ? Vertex{v.x - 1, v.y} : Vertex{v.x, v.y - 1};
    const auto want = static_cast<std::size_t>(binomial_u64(first.level(), first.x));
    std::size_t have = 0;
    auto cut = lo;
    while (cut != hi && have < want) have += (cut++)->index + 1;
    if (have != want) fail("split point falls inside a token");
    run(first, lo, cut);
    run(second, cut, hi);
  }

  BitMap bits() const { return bits_; }

 private:
  [[noreturn]] static void fail(const std::string& why) { throw Error(ErrorKind::InconsistentLengths, why); }

  BitMap bits_;
  std::map<Vertex, std::pair<TokenIt, TokenIt>> seen_;
};

}  // namespace

DecodedBlock decode_ordering(const std::string& w) {
  if (w == "ab") return DecodedBlock{Vertex{1, 1}, {}, {}};
  DecodedBlock out;
  out.tokens = decompose_CD(w);
  std::uint32_t x = 1, y = 1;
  bool any_c = false, any_d = false;
  for (const auto& t : out.tokens) {
    if (t.kind == 'C') { x = std::max(x, t.index); any_c = true; }
    else { y = std::max(y, t.index); any_d = true; }
  }
  if (!(any_c && any_d) && out.tokens.size() != 1)
    throw Error(ErrorKind::InconsistentLengths, "a block with several tokens needs both kinds");
  out.vertex = Vertex{x, y};
  if (binomial(x + y, x) != w.size())
    throw Error(ErrorKind::InconsistentLengths, "length differs from C(x+y,x)");
  Decoder dec;
  dec.run(out.vertex, out.tokens.begin(), out.tokens.end());
  out.bits = dec.bits();
  if (basic_block(out.ordering(), x, y) != w)
    throw Error(ErrorKind::InconsistentLengths, "decoded ordering does not reproduce the word");
  return out;
}

std::vector<Factor> factor_block(const OrderingTable& xi, std::uint32_t k, Vertex v, std::uint32_t m) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "coding depth must be positive");
  if (m < k) throw Error(ErrorKind::LevelBelowK, "factor level lies below the coding level");
  if (m > v.level()) throw Error(ErrorKind::InvalidArgument, "factor level lies above the vertex");
  std::vector<Factor> out;
  std::function<void(Vertex, std::size_t)> unroll = [&](Vertex u, std::size_t offset) {
    if (u.level() == m) {
      out.push_back({u, offset, static_cast<std::size_t>(binomial_u64(u.level(), u.x))});
      return;
    }
    if (u.y == 0) return unroll(Vertex{u.x - 1, 0}, offset);
    if (u.x == 0) return unroll(Vertex{0, u.y - 1}, offset);
    const Vertex down{u.x, u.y - 1}, left{u.x - 1, u.y};
    const bool left_first = xi.bit(u) == 1;
    const Vertex first = left_first ? left : down;
    const Vertex second = left_first ? down : left;
    unroll(first, offset);
    unroll(second, offset + static_cast<std::size_t>(binomial_u64(first.level(), first.x)));
  };
  unroll(v, 0);
  return out;
}

std::uint64_t count_tilings(const OrderingTable& xi, std::uint32_t k, Vertex v, std::uint32_t m) {
  if (m < k) throw Error(ErrorKind::LevelBelowK, "tile level lies below the coding level");
  const SymbolWord word = basic_block_k(xi, k, v.x, v.y);
  const auto tiles = level_blocks_k(xi, k, m);
  std::vector<std::uint64_t> ways(word.size() + 1, 0);
  ways[0] = 1;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (ways[i] == 0) continue;
    for (std::uint32_t y = 0; y <= m; ++y) {
      const SymbolWord& t = tiles[y];
      if (i + t.size() > word.size() || !std::equal(t.begin(), t.end(), word.begin() + static_cast<std::ptrdiff_t>(i)))
        continue;
      ways[i + t.size()] = std::min<std::uint64_t>(2, ways[i + t.size()] + ways[i]);
    }
  }
  return ways.back();
}

FactorizationCheck unique_factorization_check(const OrderingTable& xi, std::uint32_t k, std::uint32_t n) {
  if (k > n) throw Error(ErrorKind::InvalidArgument, "coding level exceeds n");
  if (n > kFactorizationMaxLevel) throw Error(ErrorKind::SizeCap, "factorization check limited to level 20");
  FactorizationCheck out;
  for (std::uint32_t level = k + 1; level <= n; ++level) {
    for (std::uint32_t y = 0; y <= level; ++y) {
      const Vertex v{level - y, y};
      for (std::uint32_t m = k; m < level; ++m) {
        ++out.checked;
        const std::uint64_t t = count_tilings(xi, k, v, m);
        if (t != 1) {
          out.unique = false;
          out.failures.push_back({v, m, t});
        }
      }
    }
  }
  return out;
}

std::string CondensedForm::to_string() const { return full ? prefix : prefix + "*" + suffix; }

namespace {

bool alternates(const std::string& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return false;
  return true;
}

}  // namespace

CondensedForm condensed_form(const std::string& w) {
  if (alternates(w)) return {true, w, w};
  std::size_t p = 1;
  while (w[p] != w[p - 1]) ++p;
  std::size_t s = w.size() - 1;
  while (w[s] != w[s - 1]) --s;
  return {false, w.substr(0, p), w.substr(s)};
}

CondensedForm condense_concat(const CondensedForm& lhs, const CondensedForm& rhs) {
  if (lhs.full && lhs.prefix.empty()) return rhs;
  if (rhs.full && rhs.prefix.empty()) return lhs;
  const bool joins = lhs.suffix.back() != rhs.prefix.front();
  if (lhs.full && rhs.full) {
    if (joins) return {true, lhs.prefix + rhs.prefix, lhs.prefix + rhs.prefix};
    return {false, lhs.prefix, rhs.suffix};
  }
  CondensedForm out{false, lhs.prefix, rhs.suffix};
  if (lhs.full && joins) out.prefix = lhs.prefix + rhs.prefix;
  if (rhs.full && joins) out.suffix = lhs.suffix + rhs.suffix;
  return out;
}

namespace {

struct Run {
  char letter;
  std::size_t start;
  std::size_t length;
};

std::vector<Run> runs_of(const std::string& w) {
  std::vector<Run> out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    out.push_back({w[i], i, j - i});
    i = j;
  }
  return out;
}

char centre_letter(RunPattern p) { return p == RunPattern::BAB ? 'a' : 'b'; }

}  // namespace

ContextReport run_context_report(const OrderingTable& xi, std::uint32_t l, std::uint32_t L, RunPattern pattern) {
  constexpr std::size_t kRadius = 3;
  const char centre = centre_letter(pattern);
  BlockTable table(xi);
  ContextReport rep;
  for (std::uint32_t level = 1; level <= L; ++level) {
    for (std::uint32_t y = 0; y <= level; ++y) {
      const auto runs = runs_of(table.block(Vertex{level - y, y}));
      for (std::size_t i = 1; i + 1 < runs.size(); ++i) {
        if (runs[i].letter != centre || runs[i].length != l) continue;
        ++rep.occurrences;
        const std::size_t lo = i >= kRadius ? i - kRadius : 0;
        const std::size_t hi = std::min(runs.size() - 1, i + kRadius);
        if (i < kRadius || i + kRadius >= runs.size()) ++rep.clipped;
        std::string ctx;
        for (std::size_t r = lo; r <= hi; ++r) {
          const bool outer = (r == i - kRadius && i >= kRadius) || r == i + kRadius;
          if (r == i) ctx += '[';
          ctx += std::string(outer ? 1 : runs[r].length, runs[r].letter);
          if (r == i) ctx += ']';
        }
        ++rep.contexts[ctx];
      }
    }
  }
  return rep;
}

bool context_fits(const std::string& context, RunPattern pattern, std::uint32_t l,
                  const std::vector<std::string>& superwords) {
  const auto open = context.find('[');
  const auto close = context.find(']');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw Error(ErrorKind::InvalidArgument, "context lacks a bracketed centre run");
  const std::string plain = context.substr(0, open) + context.substr(open + 1, close - open - 1) +
                            context.substr(close + 1);
  const auto centre_at = static_cast<std::ptrdiff_t>(open);
  const char centre = centre_letter(pattern);
  for (const auto& w : superwords) {
    const auto runs = runs_of(w);
    for (std::size_t i = 1; i + 1 < runs.size(); ++i) {
      if (runs[i].letter != centre || runs[i].length != l) continue;
      const std::ptrdiff_t shift = static_cast<std::ptrdiff_t>(runs[i].start) - centre_at;
      bool ok = true;
      for (std::ptrdiff_t c = 0; ok && c < static_cast<std::ptrdiff_t>(plain.size()); ++c) {
        const std::ptrdiff_t at = c + shift;
        if (at >= 0 && at < static_cast<std::ptrdiff_t>(w.size())) ok = plain[c] == w[at];
      }
      if (ok) return true;
    }
  }
  return false;
}

IntersectionReport intersection_probe(const OrderingTable& xi, const OrderingTable& eta, std::size_t n,
                                      std::uint32_t L) {
  const auto lhs = language_words(xi, n, L);
  const auto rhs = language_words(eta, n, L);
  IntersectionReport rep;
  for (const auto& w : lhs) {
    if (!rhs.count(w)) continue;
    ++rep.common;
    const auto as = std::count(w.begin(), w.end(), 'a');
    if (as >= 2 && static_cast<std::size_t>(as) + 2 <= w.size()) rep.offending.push_back(w);
  }
  return rep;
}

std::vector<std::string> primitive_periods(std::uint32_t p) {
  if (p == 0 || p > 20) throw Error(ErrorKind::InvalidArgument, "period length must lie in [1,20]");
  std::set<std::string> out;
  for (std::uint32_t mask = 1; mask + 1 < (1u << p); ++mask) {
    std::string w;
    for (std::uint32_t i = 0; i < p; ++i) w += ((mask >> i) & 1) ? 'b' : 'a';
    bool primitive = true;
    for (std::uint32_t d = 1; d < p && primitive; ++d)
      if (p % d == 0 && w == (w.substr(d) + w.substr(0, d))) primitive = false;
    if (!primitive) continue;
    std::string best = w;
    for (std::uint32_t r = 1; r < p; ++r) best = std::min(best, w.substr(r) + w.substr(0, r));
    out.insert(best);
  }
  return {out.begin(), out.end()};
}

PeriodicEvidence periodic_exclusion(const OrderingTable& xi, const std::string& period, std::uint32_t L) {
  if (period.find('a') == std::string::npos || period.find('b') == std::string::npos)
    throw Error(ErrorKind::InvalidArgument, "period must use both letters");
  PeriodicEvidence ev;
  ev.period = period;
  const std::size_t p = period.size();
  const std::uint64_t r4 = 4 * (p + 1);
  ev.proof_bound = 3 * binomial(r4, r4 / 2) + 1;
  const BigNat longest = L == 0 ? BigNat(0) : binomial(L, L / 2);
  ev.search_cap = static_cast<std::size_t>(std::min<BigNat>({ev.proof_bound, longest + 1, BigNat(4096)}));
  for (std::size_t n = 1; n <= ev.search_cap; ++n) {
    for (std::size_t rot = 0; rot < p; ++rot) {
      std::string window;
      for (std::size_t i = 0; i < n; ++i) window += period[(rot + i) % p];
      if (!language_contains(xi, window, L)) {
        ev.status = PeriodicStatus::Found;
        ev.window = window;
        return ev;
      }
    }
  }
  return ev;
}

}  // namespace adiclab

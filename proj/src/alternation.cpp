#include <algorithm>
#include <unordered_set>

#include "adiclab/factoring.hpp"

namespace adiclab {

namespace {

std::uint8_t sat(unsigned v, std::uint8_t cap) { return static_cast<std::uint8_t>(std::min<unsigned>(v, cap)); }

char flip(char c) { return c == 'a' ? 'b' : 'a'; }

// Longest alternating factors starting with a and with b inside one run. Run
// lengths saturate at cap, so the spans are only exact below cap - 1.
std::pair<std::uint8_t, std::uint8_t> run_spans(char start, unsigned len, std::uint8_t cap) {
  const std::uint8_t top = cap - 1;
  if (len >= cap) return {top, top};
  const unsigned other = len == 0 ? 0 : len - 1;
  return start == 'a' ? std::pair{sat(len, top), sat(other, top)} : std::pair{sat(other, top), sat(len, top)};
}

}  // namespace

AltState alt_state(const std::string& w, std::uint8_t cap) {
  if (w.empty()) throw Error(ErrorKind::InvalidArgument, "empty word has no alternation state");
  AltState s;
  s.first = w.front();
  s.last = w.back();
  const auto cf = condensed_form(w);
  s.full = cf.full;
  s.len_l = sat(static_cast<unsigned>(cf.prefix.size()), cap);
  s.len_r = sat(static_cast<unsigned>(cf.suffix.size()), cap);
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i + 1;
    while (j < w.size() && w[j] != w[j - 1]) ++j;
    const auto [ab, ba] = run_spans(w[i], static_cast<unsigned>(j - i), cap);
    s.max_ab = std::max(s.max_ab, ab);
    s.max_ba = std::max(s.max_ba, ba);
    i = j;
  }
  return s;
}

AltState alt_concat(const AltState& lhs, const AltState& rhs, std::uint8_t cap) {
  AltState s;
  s.first = lhs.first;
  s.last = rhs.last;
  s.max_ab = std::max(lhs.max_ab, rhs.max_ab);
  s.max_ba = std::max(lhs.max_ba, rhs.max_ba);
  const bool joins = lhs.last != rhs.first;
  s.full = lhs.full && rhs.full && joins;
  s.len_l = lhs.full && joins ? sat(lhs.len_l + rhs.len_l, cap) : lhs.len_l;
  s.len_r = rhs.full && joins ? sat(lhs.len_r + rhs.len_r, cap) : rhs.len_r;
  if (joins) {
    // The alternating suffix of lhs starts with `last` when its length is odd.
    const char start = lhs.len_r % 2 == 1 ? lhs.last : flip(lhs.last);
    const auto [ab, ba] = run_spans(start, lhs.len_r + rhs.len_l, cap);
    s.max_ab = std::max(s.max_ab, ab);
    s.max_ba = std::max(s.max_ba, ba);
  }
  return s;
}

std::string to_string(Verdict v) { return v == Verdict::Excluded ? "EXCLUDED" : "NOT-EXCLUDED"; }

namespace {

const AltState kA = alt_state("a");
const AltState kB = alt_state("b");

using Row = std::vector<std::set<AltState>>;

Row boundary_row(std::uint32_t l) {
  Row row(l + 1);
  row[0] = {kA};
  row[l] = {kB};
  return row;
}

// One level of the per-vertex union over both bit choices.
Row advance_sets(const Row& prev, std::uint32_t l, std::uint8_t cap) {
  Row row = boundary_row(l);
  for (std::uint32_t y = 1; y < l; ++y) {
    const auto& down = prev[y - 1];
    const auto& left = prev[y];
    for (const auto& d : down)
      for (const auto& e : left) {
        row[y].insert(alt_concat(d, e, cap));
        row[y].insert(alt_concat(e, d, cap));
      }
  }
  return row;
}

std::optional<std::uint32_t> both_runs(const Row& row, std::uint8_t need) {
  for (std::uint32_t y = 0; y < row.size(); ++y)
    for (const auto& s : row[y])
      if (s.max_ab >= need && s.max_ba >= need) return y;
  return std::nullopt;
}

struct TupleHash {
  std::size_t operator()(const std::vector<AltState>& t) const {
    std::uint64_t h = t.size();
    for (const auto& s : t) {
      const std::uint64_t packed = (std::uint64_t{s.full} << 56) | (std::uint64_t(s.first) << 48) |
                                   (std::uint64_t(s.last) << 40) | (std::uint64_t{s.len_l} << 24) |
                                   (std::uint64_t{s.len_r} << 16) | (std::uint64_t{s.max_ab} << 8) | s.max_ba;
      h = mix64(h ^ packed);
    }
    return static_cast<std::size_t>(h);
  }
};

using TupleSet = std::unordered_set<std::vector<AltState>, TupleHash>;

// Exact joint states for all orderings up to `level`; equal tuples behave
// identically from then on, so only distinct ones are kept.
std::vector<TupleSet> exact_levels(std::uint32_t level, std::uint8_t cap) {
  std::vector<TupleSet> out(level + 1);
  out[1].insert({kA, kB});
  for (std::uint32_t l = 2; l <= level; ++l) {
    for (const auto& prev : out[l - 1]) {
      const std::uint32_t free = l - 1;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free); ++mask) {
        std::vector<AltState> t(l + 1);
        t[0] = kA;
        t[l] = kB;
        for (std::uint32_t y = 1; y < l; ++y) {
          const bool left_first = (mask >> (y - 1)) & 1;
          t[y] = left_first ? alt_concat(prev[y], prev[y - 1], cap) : alt_concat(prev[y - 1], prev[y], cap);
        }
        out[l].insert(std::move(t));
      }
    }
  }
  return out;
}

}  // namespace

ReachableSets alternation_reachable(std::uint32_t L, std::uint8_t cap) {
  ReachableSets out(L + 1);
  if (L == 0) return out;
  out[1] = boundary_row(1);
  for (std::uint32_t l = 2; l <= L; ++l) out[l] = advance_sets(out[l - 1], l, cap);
  return out;
}

AlternationReport alternation_exclusion(std::uint32_t L, std::uint32_t j, std::uint32_t exact_level,
                                        std::uint32_t condition_level) {
  if (j == 0) throw Error(ErrorKind::InvalidArgument, "j must be positive");
  if (2 * j + 1 > kAltCap) throw Error(ErrorKind::CapExceeded, "j must satisfy 2j+1 <= 19");
  if (L < 1) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  const auto cap = static_cast<std::uint8_t>(2 * j + 1);
  const auto need = static_cast<std::uint8_t>(2 * j);
  AlternationReport rep;
  rep.j = j;

  const std::uint32_t top = std::min(L, exact_level);
  const auto exact = exact_levels(top, cap);
  rep.exact.level = top;
  rep.orderings_covered = std::uint64_t{1} << ((top >= 2 ? (top - 1) * top / 2 : 0));
  for (std::uint32_t l = 1; l <= top && rep.exact.verdict == Verdict::Excluded; ++l) {
    rep.exact.states = std::max(rep.exact.states, exact[l].size());
    for (const auto& t : exact[l]) {
      Row row(t.size());
      for (std::size_t y = 0; y < t.size(); ++y) row[y] = {t[y]};
      if (auto y = both_runs(row, need)) {
        rep.exact.verdict = Verdict::NotExcluded;
        rep.exact.witness = Vertex{l - *y, *y};
        break;
      }
    }
  }

  auto sweep = [&](PhaseResult& res, Row row, std::uint32_t from) {
    res.level = L;
    for (std::uint32_t l = from; l <= L; ++l) {
      if (l > from) row = advance_sets(row, l, cap);
      for (const auto& s : row) res.states = std::max(res.states, s.size());
      if (auto y = both_runs(row, need)) {
        res.verdict = Verdict::NotExcluded;
        res.witness = Vertex{l - *y, *y};
        return;
      }
    }
  };

  sweep(rep.over, boundary_row(1), 1);

  // Same propagation, restarted from each exact joint state at condition_level.
  const std::uint32_t base = std::min({condition_level, top, L});
  rep.conditioned.level = L;
  for (const auto& t : exact[base]) {
    Row row(t.size());
    for (std::size_t y = 0; y < t.size(); ++y) row[y] = {t[y]};
    PhaseResult part;
    sweep(part, row, base);
    rep.conditioned.states = std::max(rep.conditioned.states, part.states);
    if (part.verdict == Verdict::NotExcluded) {
      rep.conditioned.verdict = Verdict::NotExcluded;
      rep.conditioned.witness = part.witness;
      break;
    }
  }
  return rep;
}

}  // namespace adiclab

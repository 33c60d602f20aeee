#include "adiclab/adic.hpp"

#include <string>

namespace adiclab {

namespace {

Step other(Step s) { return s == Step::A ? Step::B : Step::A; }

Vertex advance(Vertex v, Step s) { return s == Step::A ? Vertex{v.x + 1, v.y} : Vertex{v.x, v.y + 1}; }

Vertex retreat(Vertex v, Step s) { return s == Step::A ? Vertex{v.x - 1, v.y} : Vertex{v.x, v.y - 1}; }

// Swap the lowest edge with the wrong extremity and refill below it.
PathPrefix shift(const OrderingTable& xi, const PathPrefix& p, bool forward) {
  std::vector<Vertex> ranges;
  ranges.reserve(p.length());
  Vertex v;
  for (Step s : p.steps()) ranges.push_back(v = advance(v, s));
  for (std::size_t k = 0; k < p.length(); ++k) {
    const Vertex u = ranges[k];
    if (!u.interior()) continue;
    const bool movable = forward ? !is_max_edge(xi, u, p[k]) : !is_min_edge(xi, u, p[k]);
    if (!movable) continue;
    const Step swapped = other(p[k]);
    PathPrefix below = extreme_path(xi, retreat(u, swapped), forward ? Extreme::Min : Extreme::Max);
    std::vector<Step> steps = below.steps();
    steps.push_back(swapped);
    steps.insert(steps.end(), p.steps().begin() + static_cast<std::ptrdiff_t>(k) + 1, p.steps().end());
    return PathPrefix(std::move(steps));
  }
  if (forward) throw Error(ErrorKind::MaximalPrefix, "prefix is maximal in its column");
  throw Error(ErrorKind::MinimalPrefix, "prefix is minimal in its column");
}

}  // namespace

PathPrefix successor(const OrderingTable& xi, const PathPrefix& p) { return shift(xi, p, true); }
PathPrefix predecessor(const OrderingTable& xi, const PathPrefix& p) { return shift(xi, p, false); }

CylSymbol symbol_of(const OrderingTable& xi, const PathPrefix& p, std::uint32_t k) {
  if (p.length() < k) throw Error(ErrorKind::LevelBelowK, "path shorter than the coding depth");
  PathPrefix head = p.truncated(k);
  Vertex v = head.terminal();
  return CylSymbol{k, v.y, static_cast<std::uint64_t>(rank(xi, head)) + 1};
}

PathPrefix symbol_path(const OrderingTable& xi, const CylSymbol& c) {
  if (c.m > c.k) throw Error(ErrorKind::InvalidArgument, "symbol column outside its level");
  return unrank(xi, Vertex{c.k - c.m, c.m}, BigNat(c.s) - 1);
}

std::string project_first_letter(const OrderingTable& xi, const SymbolWord& w) {
  std::string out;
  out.reserve(w.size());
  for (const auto& c : w) out.push_back(letter(symbol_path(xi, c)[0]));
  return out;
}

SymbolWord orbit_coding(const OrderingTable& xi, const PathPrefix& p, std::uint32_t k, std::int64_t t0,
                        std::int64_t t1) {
  if (p.length() < k) throw Error(ErrorKind::LevelBelowK, "path shorter than the coding depth");
  if (t1 < t0) return {};
  const BigNat r = rank(xi, p);
  const BigNat size = path_count(p.terminal());
  if (r + t0 < 0 || r + t1 >= size) throw Error(ErrorKind::WindowEscapesColumn, "window leaves the column");
  PathPrefix q = unrank(xi, p.terminal(), r + t0);
  SymbolWord out;
  out.reserve(static_cast<std::size_t>(t1 - t0 + 1));
  for (std::int64_t t = t0;; ++t) {
    out.push_back(symbol_of(xi, q, k));
    if (t == t1) break;
    q = successor(xi, q);
  }
  return out;
}

std::array<KinkCase, 8> all_kink_cases() {
  std::array<KinkCase, 8> out{};
  std::size_t i = 0;
  for (auto a1 : {EdgeStatus::Max, EdgeStatus::Min})
    for (auto a2 : {EdgeStatus::Max, EdgeStatus::Min})
      for (auto a3 : {Turn::LR, Turn::RL}) out[i++] = KinkCase{a1, a2, a3};
  return out;
}

std::size_t kink_case_index(const KinkCase& c) {
  return (c.a1 == EdgeStatus::Min ? 4 : 0) + (c.a2 == EdgeStatus::Min ? 2 : 0) + (c.a3 == Turn::RL ? 1 : 0);
}

std::string kink_case_name(const KinkCase& c) {
  std::string s = "(";
  s += c.a1 == EdgeStatus::Max ? "max," : "min,";
  s += c.a2 == EdgeStatus::Max ? "max," : "min,";
  s += c.a3 == Turn::LR ? "LR)" : "RL)";
  return s;
}

BigNat kink_return_time(const KinkCase& c, std::uint32_t n, std::uint32_t j) {
  using enum EdgeStatus;
  if (c.a1 == Max && c.a2 == Min) return binomial(n, j);
  if (c.a1 == Min && c.a2 == Max) return binomial(n + 1, j) + binomial(n, j + 1);
  const bool same_turn = (c.a1 == Min) == (c.a3 == Turn::RL);
  return same_turn ? binomial(n + 1, j + 1) : binomial(n + 1, j);
}

KinkSite kink_classify(const OrderingTable& xi, const PathPrefix& p, std::uint32_t n) {
  if (p.length() < n + 2) throw Error(ErrorKind::KinkPreconditionFailed, "path does not reach level n+2");
  const Vertex corner = p.vertex_at(n);
  if (!corner.interior()) throw Error(ErrorKind::KinkPreconditionFailed, "corner vertex lies on the boundary");
  const Vertex v1 = p.vertex_at(n + 1);
  const Vertex v2 = p.vertex_at(n + 2);
  if (v2 != Vertex{corner.x + 1, corner.y + 1})
    throw Error(ErrorKind::KinkPreconditionFailed, "path does not turn at the corner");
  if (!is_min_edge(xi, v2, p[n + 1]))
    throw Error(ErrorKind::KinkPreconditionFailed, "edge into (i+1,j+1) is not minimal");
  const Step out = p[n];
  const Step alt = other(out);
  KinkCase c;
  c.a1 = is_max_edge(xi, v1, out) ? EdgeStatus::Max : EdgeStatus::Min;
  c.a2 = is_max_edge(xi, advance(corner, alt), alt) ? EdgeStatus::Max : EdgeStatus::Min;
  c.a3 = out == Step::A ? Turn::LR : Turn::RL;
  return KinkSite{c, corner, kink_return_time(c, n, corner.y)};
}

namespace {

std::optional<PathPrefix> iterate(const OrderingTable& xi, PathPrefix q, const BigNat& times) {
  constexpr std::uint64_t kStepLimit = 1u << 22;
  try {
    if (times <= kStepLimit) {
      for (auto left = static_cast<std::uint64_t>(times); left > 0; --left) q = successor(xi, q);
      return q;
    }
    const BigNat target = rank(xi, q) + times;
    if (target >= path_count(q.terminal())) return std::nullopt;
    return unrank(xi, q.terminal(), target);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MaximalPrefix) return std::nullopt;
    throw;
  }
}

bool agrees_with_level(const OrderingTable& xi, const PathPrefix& p, std::uint32_t n, const BigNat& times,
                       std::uint32_t level_cap, std::uint32_t& level_used) {
  std::uint32_t level = n + 2;
  for (;;) {
    PathPrefix start = extend_minimally(xi, p, level);
    if (auto moved = iterate(xi, start, times)) {
      level_used = level;
      return moved->truncated(n) == start.truncated(n);
    }
    if (level >= level_cap) throw Error(ErrorKind::WindowEscapesColumn, "iterates leave the column below the level cap");
    level = std::min(level_cap, 2 * level);
  }
}

}  // namespace

Step minimal_continuation(const OrderingTable& xi, Vertex v) {
  // Boundary edges are only vacuously minimal, so an edge that wins a real
  // comparison at an interior vertex goes first.
  for (Step s : {Step::A, Step::B}) {
    const Vertex to = advance(v, s);
    if (to.interior() && is_min_edge(xi, to, s)) return s;
  }
  return v.y == 0 && v.x > 0 ? Step::B : Step::A;
}

PathPrefix extend_minimally(const OrderingTable& xi, const PathPrefix& p, std::uint32_t level) {
  PathPrefix q = p.truncated(level);
  while (q.length() < level) q.push(minimal_continuation(xi, q.terminal()));
  return q;
}

KinkVerdict kink_verify(const OrderingTable& xi, const PathPrefix& p, std::uint32_t n, std::uint32_t level_cap) {
  KinkVerdict v;
  v.site = kink_classify(xi, p, n);
  v.agrees = agrees_with_level(xi, p, n, v.site.return_time, level_cap, v.level_used);
  return v;
}

bool agrees_after(const OrderingTable& xi, const PathPrefix& p, std::uint32_t n, const BigNat& iterates,
                  std::uint32_t level_cap) {
  std::uint32_t unused = 0;
  return agrees_with_level(xi, p, n, iterates, level_cap, unused);
}

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  for (a %= q; e; e >>= 1, a = mulmod(a, a, q))
    if (e & 1) r = mulmod(r, a, q);
  return r;
}

class Lucas {
 public:
  explicit Lucas(std::uint64_t q) : q_(q), fact_(q) {
    if (!is_prime(q)) throw Error(ErrorKind::InvalidArgument, "modulus must be prime");
    if (q > 50'000'000) throw Error(ErrorKind::BoundExceeded, "modulus too large for the factorial table");
    fact_[0] = 1 % q;
    for (std::uint64_t i = 1; i < q; ++i) fact_[i] = mulmod(fact_[i - 1], i, q);
  }

  std::uint64_t operator()(std::uint64_t n, std::uint64_t k) const {
    std::uint64_t r = 1 % q_;
    while (n || k) {
      const std::uint64_t ni = n % q_, ki = k % q_;
      if (ki > ni) return 0;
      r = mulmod(r, small(ni, ki), q_);
      n /= q_;
      k /= q_;
    }
    return r;
  }

 private:
  std::uint64_t small(std::uint64_t n, std::uint64_t k) const {
    const std::uint64_t den = mulmod(fact_[k], fact_[n - k], q_);
    return mulmod(fact_[n], powmod(den, q_ - 2, q_), q_);
  }

  std::uint64_t q_;
  std::vector<std::uint64_t> fact_;
};

std::uint64_t checked_power(std::uint64_t q, std::uint32_t s, std::uint64_t bound) {
  if (s == 0) throw Error(ErrorKind::InvalidArgument, "exponent must be positive");
  std::uint64_t p = 1;
  for (std::uint32_t i = 0; i < s; ++i) {
    if (p > bound / q) throw Error(ErrorKind::BoundExceeded, "q^s exceeds the configured bound");
    p *= q;
  }
  return p;
}

}  // namespace

std::uint64_t binom_mod(std::uint64_t n, std::uint64_t k, std::uint64_t q) { return Lucas(q)(n, k); }

RowCheck weakmixing_row_check(std::uint64_t q, std::uint32_t s, std::uint64_t bound) {
  const Lucas c(q);
  const std::uint64_t n0 = checked_power(q, s, bound) - 2;
  RowCheck out{true, true, 0};
  for (std::uint64_t k = 0; k <= n0; ++k) {
    const std::uint64_t want = mulmod((k + 1) % q, (k % 2 == 0) ? 1 % q : q - 1, q);
    if (c(n0, k) != want && out.row_formula_holds) {
      out.row_formula_holds = false;
      out.first_failure = k;
    }
  }
  for (std::uint64_t k = 0; k <= n0 + 1; ++k) {
    if (c(n0 + 1, k) == 0) {
      out.next_row_nonzero = false;
      break;
    }
  }
  return out;
}

WeakMixingVertex weakmixing_vertex_search(std::uint64_t q, std::uint32_t s, std::uint64_t bound) {
  const Lucas c(q);
  const std::uint64_t qs = checked_power(q, s, bound);
  if (qs < 4) throw Error(ErrorKind::InvalidArgument, "q^s must be at least 4");
  const std::uint64_t n = qs - 2;
  for (std::uint64_t j = 1; j + 1 <= n; ++j) {
    if ((j + 1) % q == 0 || (j + 2) % q != 0) continue;
    WeakMixingVertex v{n, j, {c(n, j), c(n + 1, j + 1), c(n + 1, j), (c(n + 1, j) + c(n, j + 1)) % q}};
    bool units = true;
    for (auto r : v.residues) units = units && r != 0;
    if (units) return v;
  }
  throw Error(ErrorKind::NotFound, "no vertex on row q^s-2 satisfies the divisibility pattern");
}

}  // namespace adiclab

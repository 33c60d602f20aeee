// One PASS/FAIL line per acceptance criterion. Tolerances and time limits
// are fixed here. Criteria listed in kKnownFailures are expected to print
// FAIL; the process exits nonzero if any other criterion fails or if a
// known failure starts passing.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "adiclab/bratteli.hpp"
#include "adiclab/factoring.hpp"
#include "adiclab/presets.hpp"
#include "kink_configs.hpp"
#include "oracles.hpp"

using namespace adiclab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// AC10: raw word tilings of a block by level-m blocks are not unique for
// many orderings, and never for one-letter tiles.
const std::set<int> kKnownFailures{10};

std::string runs(std::initializer_list<std::pair<char, int>> parts) {
  std::string out;
  for (auto [c, n] : parts) out.append(static_cast<std::size_t>(n), c);
  return out;
}

std::string power(const std::string& w, int times) {
  std::string out;
  for (int i = 0; i < times; ++i) out += w;
  return out;
}

// ---------------------------------------------------------------- AC1
Outcome worked_decoding() {
  const std::string expected = runs({{'a', 1}, {'b', 3}, {'a', 1}, {'b', 2}, {'a', 2}, {'b', 1}, {'a', 3}, {'b', 1},
                                     {'a', 1}, {'b', 2}, {'a', 2}, {'b', 1}, {'a', 3}, {'b', 1}, {'a', 1}, {'b', 2},
                                     {'a', 2}, {'b', 1}, {'a', 4}, {'b', 1}});
  const std::string block = basic_block(decoded_4_3(), 4, 3);
  std::string tokens;
  for (const auto& t : decompose_CD(block)) tokens += t.name();
  const auto d = decode_ordering(block);
  const BitMap want{{{2, 2}, 1}, {{2, 3}, 1}, {{3, 2}, 0}, {{3, 3}, 1}, {{4, 2}, 1}, {{4, 3}, 1}};
  const bool ok = block == expected && tokens == "D3D2C2C3D2C2C3D2C2C4" && d.bits == want && d.vertex == Vertex{4, 3};
  return {ok, "block " + block + ", tokens " + tokens + ", bits " + std::to_string(d.bits.size())};
}

// ---------------------------------------------------------------- AC2
Outcome counting_identities() {
  std::size_t checked = 0, bad = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BlockTable table(OrderingTable::seeded(seed));
    for (std::uint32_t n = 1; n <= 20; ++n)
      for (std::uint32_t y = 0; y <= n; ++y) {
        const std::uint32_t x = n - y;
        const std::string& b = table.block({x, y});
        const auto c = symbol_census(b);
        const BigNat a = x ? binomial(n - 1, x - 1) : BigNat(0);
        const BigNat bb = y ? binomial(n - 1, y - 1) : BigNat(0);
        ++checked;
        if (BigNat(b.size()) != binomial(n, x) || BigNat(c.a) != a || BigNat(c.b) != bb) ++bad;
      }
  }
  return {bad == 0, std::to_string(checked) + " blocks, " + std::to_string(bad) + " mismatches"};
}

// ---------------------------------------------------------------- AC3
Outcome restricted_enumeration() {
  std::ostringstream detail;
  bool ok = true;
  for (std::uint32_t x = 2; x <= 4; ++x)
    for (std::uint32_t y = 2; y <= 4; ++y) {
      const std::uint32_t free_bits = (x - 1) * (y - 1);
      const auto blocks = enumerate_blocks(x, y);
      ok = ok && blocks.size() == (std::size_t{1} << free_bits);
      // decode(encode(bits)) == bits over every assignment of the free bits.
      std::set<std::string> encoded;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_bits); ++mask) {
        BitMap bits;
        std::uint32_t i = 0;
        for (std::uint32_t u = 2; u <= x; ++u)
          for (std::uint32_t v = 2; v <= y; ++v) bits[{u, v}] = static_cast<int>((mask >> i++) & 1);
        const auto xi = OrderingTable::explicit_bits(bits, x + y, 0).restricted();
        const std::string w = basic_block(xi, x, y);
        encoded.insert(w);
        const auto d = decode_ordering(w);
        ok = ok && d.vertex == Vertex{x, y} && d.bits == bits;
      }
      ok = ok && encoded == blocks;
      // encode(decode(w)) == w on the enumerated set.
      for (const auto& w : blocks) {
        const auto d = decode_ordering(w);
        ok = ok && basic_block(d.ordering(), x, y) == w;
      }
      detail << "(" << x << "," << y << "):" << blocks.size() << " ";
    }
  return {ok, detail.str()};
}

// ---------------------------------------------------------------- AC4
Outcome kink_return_times() {
  const auto cases = all_kink_cases();
  std::vector<std::size_t> seen(8, 0), agreed(8, 0);
  std::size_t first_return = 0;
  std::mt19937_64 rng(4100);
  constexpr std::size_t kTrials = 1000;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto& c = cases[t % 8];
    const auto n = static_cast<std::uint32_t>(2 + rng() % 11);
    const auto i = static_cast<std::uint32_t>(1 + rng() % (n - 1));
    const auto cfg = kinkgen::make(c, i, n - i, rng());
    const auto v = kink_verify(cfg.xi, cfg.path, cfg.n);
    const std::size_t idx = kink_case_index(v.site.kase);
    ++seen[idx];
    if (v.agrees && v.site.kase == c && v.site.return_time == kink_return_time(c, n, n - i)) ++agreed[idx];
    // Agreement fails one step earlier, so the return time is exact.
    if (!agrees_after(cfg.xi, cfg.path, cfg.n, v.site.return_time - 1)) ++first_return;
  }
  bool ok = first_return == kTrials;
  std::ostringstream detail;
  for (std::size_t k = 0; k < 8; ++k) {
    ok = ok && seen[k] >= 50 && agreed[k] == seen[k];
    detail << kink_case_name(cases[k]) << " " << agreed[k] << "/" << seen[k] << " ";
  }
  detail << "; disagree at r-1 in " << first_return << "/" << kTrials;
  return {ok, detail.str()};
}

// ---------------------------------------------------------------- AC5
Outcome alternation() {
  const bool blocks = basic_block(alternating_a(), 3, 3) == "a" + power("ab", 9) + "b" &&
                      basic_block(alternating_b(), 3, 3) == "b" + power("ba", 9) + "a";
  const auto r = alternation_exclusion(12, 9, 7, 5);
  const bool ok = blocks && r.exact.verdict == Verdict::Excluded && r.exact.level == 7 &&
                  r.conditioned.verdict == Verdict::Excluded && r.conditioned.level == 12;
  std::ostringstream detail;
  detail << "exact " << to_string(r.exact.verdict) << " to " << r.exact.level << " (" << r.orderings_covered
         << " orderings); conditioned over-approximation " << to_string(r.conditioned.verdict) << " to "
         << r.conditioned.level << "; unconditioned " << to_string(r.over.verdict);
  if (r.over.witness) detail << " at (" << r.over.witness->x << "," << r.over.witness->y << ")";
  return {ok, detail.str()};
}

// ---------------------------------------------------------------- AC6
Outcome odometer_examples() {
  const IdWord base{1, 0, 2};
  IdWord base2 = base;
  base2.insert(base2.end(), base.begin(), base.end());
  const OrderedDiagram three({1, 3, 2}, {{{0}, {0}, {0}}, {base, base2}});
  const bool fig_a = is_uniformly_ordered(three, 2) == base;

  const OrderedDiagram four({1, 2, 3, 2}, {{{0}, {0}}, {{0}, {0, 1}, {1}}, {base, base2}});
  const auto t4 = telescope(four, {0, 1, 3});
  const bool fig_b = !is_uniformly_ordered(four, 2) && t4.coding(2, 0) == IdWord{0, 1, 0, 1} &&
                     t4.coding(2, 1) == IdWord{0, 1, 0, 1, 0, 1, 0, 1};

  const OrderedDiagram bad({1, 3, 3, 2}, {{{0}, {0}, {0}}, {{0, 1}, {1, 2}, {1, 2}}, {{0, 1}, {0, 2}}});
  const auto t8 = telescope(bad, {0, 1, 3});
  const IdWord v1v2v2v3{0, 1, 1, 2};
  const bool fig_c = !is_uniformly_ordered(bad, 2) && !is_uniformly_ordered(bad, 3) &&
                     t8.coding(2, 0) == v1v2v2v3 && t8.coding(2, 1) == v1v2v2v3 &&
                     is_uniformly_ordered(t8, 2) == v1v2v2v3 && odometer_certificate(bad, 2).found;
  return {fig_a && fig_b && fig_c, std::string("three-into-two ") + (fig_a ? "ok" : "bad") + ", abab " +
                                       (fig_b ? "ok" : "bad") + ", v1v2v2v3 " + (fig_c ? "ok" : "bad")};
}

// ---------------------------------------------------------------- AC7
Outcome monte_carlo() {
  bool ok = true;
  std::ostringstream detail;
  std::vector<Shape> shapes;
  for (std::size_t targets : {2, 3}) {
    const Shape s = Shape::constant(2, targets, 1);
    shapes.push_back(s);
    // Each target orders its two edges one of two ways.
    std::size_t total = 0, uniform = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << targets); ++mask) {
      std::vector<IdWord> codings;
      for (std::size_t w = 0; w < targets; ++w) codings.push_back((mask >> w) & 1 ? IdWord{1, 0} : IdWord{0, 1});
      ++total;
      uniform += uniform_base(codings).has_value();
    }
    const Rational exhaustive = Rational(uniform) / Rational(total);
    ok = ok && exhaustive == *exact_uniform_probability(s) && exhaustive == Rational(1, targets == 2 ? 2 : 4);
    detail << "V=" << targets << ": " << uniform << "/" << total << " ";
  }
  const auto rep = monte_carlo_uniform(shapes, 100000, 20240601);
  for (const auto& lv : rep.levels) {
    ok = ok && lv.within_3_sigma;
    detail << "freq " << lv.frequency << " (3 sigma " << 3 * lv.sigma << ") ";
  }
  return {ok, detail.str()};
}

// ---------------------------------------------------------------- AC8
Outcome weak_mixing() {
  bool ok = true;
  for (std::uint64_t q : {2, 3, 5, 7})
    for (std::uint32_t s = 1; s <= 5; ++s) {
      const auto r = weakmixing_row_check(q, s);
      ok = ok && r.row_formula_holds && r.next_row_nonzero;
    }
  const std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97, 101, 997};
  std::mt19937_64 rng(88);
  std::size_t bad = 0;
  for (int t = 0; t < 10000; ++t) {
    const std::uint64_t n = rng() % 1200;
    const std::uint64_t k = rng() % (n + 2);
    const std::uint64_t q = primes[rng() % primes.size()];
    if (binom_mod(n, k, q) != static_cast<std::uint64_t>(binomial(n, k) % q)) ++bad;
  }
  return {ok && bad == 0, "rows for q in {2,3,5,7}, s<=5; " + std::to_string(bad) + "/10000 residue mismatches"};
}

// ---------------------------------------------------------------- AC9
Outcome faithfulness() {
  std::size_t pairs = 0, separated = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = faithfulness_probe(OrderingTable::seeded(seed), 6, 3, 6);
    pairs += r.pairs;
    separated += r.separated;
  }
  return {pairs > 0 && pairs == separated, std::to_string(separated) + "/" + std::to_string(pairs) + " pairs separated"};
}

// ---------------------------------------------------------------- AC10
Outcome unique_factorization() {
  std::size_t seeded_ok = 0;
  std::string example;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = unique_factorization_check(OrderingTable::seeded(seed), 3, 8);
    if (r.unique) {
      ++seeded_ok;
    } else if (example.empty()) {
      const auto& f = r.failures.front();
      example = "seed " + std::to_string(seed) + " (" + std::to_string(f.vertex.x) + "," + std::to_string(f.vertex.y) +
                ") m=" + std::to_string(f.m);
    }
  }
  std::size_t restricted_ok = 0, restricted_total = 0;
  for (std::uint64_t mask = 0; mask < 512; ++mask) {
    BitMap bits;
    std::uint32_t i = 0;
    for (std::uint32_t u = 2; u <= 4; ++u)
      for (std::uint32_t v = 2; v <= 4; ++v) bits[{u, v}] = static_cast<int>((mask >> i++) & 1);
    const auto xi = OrderingTable::explicit_bits(bits, 8, 0).restricted();
    ++restricted_total;
    if (unique_factorization_check(xi, 1, 8).unique) ++restricted_ok;
  }
  return {seeded_ok == 100 && restricted_ok == restricted_total,
          "k=3: " + std::to_string(seeded_ok) + "/100 unique (first failure " + example + "); k=1: " +
              std::to_string(restricted_ok) + "/" + std::to_string(restricted_total) + " unique"};
}

// ---------------------------------------------------------------- AC11
Outcome complexity_counts() {
  // Windows of every length up to 12, read off successor orbits through
  // each column at level 24. Words are coded as bits with a = 0.
  constexpr std::uint32_t kLevel = 24;
  constexpr std::size_t kMaxN = 12;
  const auto zero = OrderingTable::constant(0);
  std::vector<std::vector<bool>> seen(kMaxN + 1);
  for (std::size_t n = 1; n <= kMaxN; ++n) seen[n].assign(std::size_t{1} << n, false);
  for (std::uint32_t y = 0; y <= kLevel; ++y) {
    PathPrefix p = extreme_path(zero, {kLevel - y, y}, Extreme::Min);
    std::uint32_t code = 0;
    std::size_t pos = 0;
    for (;;) {
      code = ((code << 1) | (p[0] == Step::B ? 1u : 0u)) & ((1u << kMaxN) - 1);
      ++pos;
      for (std::size_t n = 1; n <= std::min(pos, kMaxN); ++n) seen[n][code & ((1u << n) - 1)] = true;
      try {
        p = successor(zero, p);
      } catch (const Error&) {
        break;
      }
    }
  }
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t n = 1; n <= kMaxN; ++n) {
    const auto oracle = static_cast<std::size_t>(std::count(seen[n].begin(), seen[n].end(), true));
    const auto c = complexity(zero, n, kLevel);
    ok = ok && c.stabilized && c.count == oracle;
    if (c.count != oracle) detail << "n=" << n << " " << c.count << "!=" << oracle << " ";
  }
  detail << "n<=12 match oracle: " << (ok ? "yes" : "no") << "; ratios to n^3/6 for n in [20,40]:";
  bool in_band = true;
  for (std::size_t n = 20; n <= 40; n += 5) {
    const auto c = complexity(zero, n, 2 * static_cast<std::uint32_t>(n) + 8);
    const double ratio = static_cast<double>(c.count) / (static_cast<double>(n * n * n) / 6.0);
    in_band = in_band && ratio >= 0.7 && ratio <= 1.3 && c.stabilized;
    detail << " " << n << ":" << ratio;
  }
  if (!in_band) detail << " (warning: ratio outside [0.7,1.3])";
  return {ok, detail.str()};
}

// ---------------------------------------------------------------- AC12
Outcome small_subshift() {
  std::ostringstream detail;
  const auto xi = alternating_a(), eta = alternating_b();
  const auto probe = intersection_probe(xi, eta, 60, 20);
  bool ok = probe.offending.empty();
  detail << "common 60-words " << probe.common << ", offending " << probe.offending.size() << "; contexts";

  for (std::uint32_t l = 7; l <= 10; ++l) {
    const std::string al(l, 'a'), al1(l - 1, 'a'), al2(l + 1, 'a');
    const std::vector<std::string> supers_xi{"b" + al + "b" + al + "b" + al1 + "b", "b" + al + "b" + al1 + "b"};
    std::vector<std::string> supers_eta{"b" + al + "b" + al + "bbab", "b" + al1 + "b" + al + "bab",
                                        "b" + al1 + "b" + al + "b" + al2 + "b", "b" + al + "b" + al + "bba"};
    for (int k = 4; k <= 40; ++k) supers_eta.push_back("b" + al + "b" + al + std::string(k - 1, 'b') + "a");
    const auto rx = run_context_report(xi, l, 16, RunPattern::BAB);
    const auto re = run_context_report(eta, l, 16, RunPattern::BAB);
    std::size_t misfit = 0, shared = 0;
    for (const auto& [ctx, count] : rx.contexts) {
      misfit += !context_fits(ctx, RunPattern::BAB, l, supers_xi);
      shared += re.contexts.count(ctx);
    }
    for (const auto& [ctx, count] : re.contexts) misfit += !context_fits(ctx, RunPattern::BAB, l, supers_eta);
    ok = ok && rx.occurrences > 0 && re.occurrences > 0 && misfit == 0 && shared == 0;
    detail << " l=" << l << ":" << rx.contexts.size() << "/" << re.contexts.size() << (misfit ? " misfit" : "");
  }

  std::size_t found = 0, tried = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto eta_s = OrderingTable::seeded(seed);
    for (std::uint32_t p = 2; p <= 4; ++p)
      for (const auto& period : primitive_periods(p)) {
        ++tried;
        const auto e = periodic_exclusion(eta_s, period, 18);
        if (e.status == PeriodicStatus::Found && !language_contains(eta_s, e.window, 18) &&
            power(period, 60).find(e.window) != std::string::npos)
          ++found;
      }
  }
  ok = ok && found == tried;
  detail << "; periodic windows " << found << "/" << tried;
  return {ok, detail.str()};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked decoding example", 1, worked_decoding},
      {2, "counting identities", 30, counting_identities},
      {3, "restricted block enumeration", 60, restricted_enumeration},
      {4, "kink return times", 120, kink_return_times},
      {5, "alternation exclusion", 600, alternation},
      {6, "odometer certificates", 1, odometer_examples},
      {7, "monte carlo uniform levels", 30, monte_carlo},
      {8, "weak-mixing residues", 10, weak_mixing},
      {9, "faithfulness probe", 300, faithfulness},
      {10, "unique factorization", 300, unique_factorization},
      {11, "complexity counts", 600, complexity_counts},
      {12, "small subshift", 900, small_subshift},
  };
  bool surprise = false;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    const bool known = kKnownFailures.count(c.id) > 0;
    std::printf("AC%-2d %s  %s  [%.2fs / %.0fs]  %s%s%s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs,
                c.limit_seconds, o.detail.c_str(), in_time ? "" : "  (over time limit)",
                !pass && known ? "  (known failure)" : "");
    std::fflush(stdout);
    if (pass == known) surprise = true;
  }
  return surprise ? 1 : 0;
}

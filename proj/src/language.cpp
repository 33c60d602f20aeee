#include <unordered_set>

#include "adiclab/coding.hpp"

namespace adiclab {

namespace {

// Prefix and suffix of a block cut to `keep` letters. Every factor of length
// keep+1 either lies in a parent block or straddles the join of the two.
struct Sketch {
  std::string pre;
  std::string suf;
};

template <class Visit>
void walk_junctions(const OrderingTable& xi, std::size_t keep, std::uint32_t L, Visit&& visit) {
  const Sketch a{std::string("a").substr(0, keep), std::string("a").substr(0, keep)};
  const Sketch b{std::string("b").substr(0, keep), std::string("b").substr(0, keep)};
  std::vector<Sketch> row{a, b};
  visit(1u, std::string_view{}, 0);
  for (std::uint32_t l = 2; l <= L; ++l) {
    std::vector<Sketch> next(l + 1);
    next[0] = a;
    next[l] = b;
    for (std::uint32_t y = 1; y < l; ++y) {
      const bool left_first = xi.bit(Vertex{l - y, y}) == 1;
      const Sketch& first = left_first ? row[y] : row[y - 1];
      const Sketch& second = left_first ? row[y - 1] : row[y];
      const std::string join = first.suf + second.pre;
      visit(l, std::string_view(join), first.suf.size());
      Sketch s;
      s.pre = first.pre.size() < keep ? (first.pre + second.pre).substr(0, keep) : first.pre;
      if (second.suf.size() < keep) {
        const std::string t = first.suf + second.suf;
        s.suf = t.substr(t.size() > keep ? t.size() - keep : 0);
      } else {
        s.suf = second.suf;
      }
      next[y] = std::move(s);
    }
    row = std::move(next);
    visit(l, std::string_view{}, 0);
  }
}

void check_length(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "window length must be positive");
}

}  // namespace

std::set<std::string> language_words(const OrderingTable& xi, std::size_t n, std::uint32_t L) {
  check_length(n);
  std::unordered_set<std::string> seen;
  if (L >= 1 && n == 1) seen = {"a", "b"};
  if (n > 1) {
    walk_junctions(xi, n - 1, L, [&](std::uint32_t, std::string_view join, std::size_t cut) {
      if (join.size() < n) return;
      const std::size_t first = cut + 1 > n ? cut + 1 - n : 0;
      for (std::size_t i = first; i < cut && i + n <= join.size(); ++i) seen.emplace(join.substr(i, n));
    });
  }
  return {seen.begin(), seen.end()};
}

bool language_contains(const OrderingTable& xi, const std::string& w, std::uint32_t L) {
  check_length(w.size());
  if (w.size() == 1) return L >= 1 && (w == "a" || w == "b");
  bool found = false;
  walk_junctions(xi, w.size() - 1, L, [&](std::uint32_t, std::string_view join, std::size_t) {
    if (!found && join.size() >= w.size() && join.find(w) != std::string_view::npos) found = true;
  });
  return found;
}

Complexity complexity(const OrderingTable& xi, std::size_t n, std::uint32_t L) {
  check_length(n);
  Complexity c;
  c.by_level.assign(L + 1, 0);
  std::unordered_set<std::string> seen;
  if (n == 1) {
    for (std::uint32_t l = 1; l <= L; ++l) c.by_level[l] = 2;
  } else {
    walk_junctions(xi, n - 1, L, [&](std::uint32_t l, std::string_view join, std::size_t cut) {
      if (join.empty()) {
        c.by_level[l] = seen.size();
        return;
      }
      if (join.size() < n) return;
      const std::size_t first = cut + 1 > n ? cut + 1 - n : 0;
      for (std::size_t i = first; i < cut && i + n <= join.size(); ++i) seen.emplace(join.substr(i, n));
    });
  }
  c.count = c.by_level[L];
  c.stabilized = L >= 3 && c.by_level[L] == c.by_level[L - 1] && c.by_level[L - 1] == c.by_level[L - 2];
  return c;
}

BigLanguageCount big_language_count(std::size_t n, std::uint32_t level_cap, std::size_t ordering_budget,
                                    std::uint64_t seed) {
  check_length(n);
  BigLanguageCount out;
  std::uint32_t k = 2;
  while (static_cast<std::size_t>(k + 1) * (k + 2) / 2 < n) ++k;
  out.family_k = k;
  std::set<std::string> all;
  auto absorb = [&](const OrderingTable& xi) {
    auto words = language_words(xi, n, level_cap);
    all.insert(words.begin(), words.end());
    ++out.orderings;
  };
  // Row-2 family: free bits at (u,2), 2 <= u <= k, everything else 0.
  const std::uint64_t family = k - 1 > kFamilyMaxBits ? 0 : (std::uint64_t{1} << (k - 1));
  for (std::uint64_t mask = 0; mask < family; ++mask) {
    BitMap bits;
    for (std::uint32_t u = 2; u <= k; ++u) bits[Vertex{u, 2}] = static_cast<int>((mask >> (u - 2)) & 1);
    absorb(OrderingTable::constant(0).with_overrides(bits).restricted());
  }
  for (std::uint64_t i = 0; i < ordering_budget; ++i) absorb(OrderingTable::seeded(mix64(seed + i)));
  out.count = all.size();
  return out;
}

}  // namespace adiclab

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

#include "adiclab/coding.hpp"

namespace adiclab {

BlockTable::BlockTable(OrderingTable xi, std::size_t max_bytes) : xi_(std::move(xi)), max_bytes_(max_bytes) {}

std::size_t BlockTable::bytes() const {
  std::shared_lock lock(mu_);
  return bytes_;
}

void BlockTable::grow_to(std::uint32_t level) const {
  std::unique_lock lock(mu_);
  while (levels_.size() <= level) {
    const auto l = static_cast<std::uint32_t>(levels_.size());
    const std::size_t need = l >= 63 ? SIZE_MAX : (std::size_t{1} << l);
    if (need > max_bytes_ || bytes_ + need > max_bytes_)
      throw Error(ErrorKind::ResourceCap, "block memo would exceed its byte cap at level " + std::to_string(l));
    std::vector<std::string> row(l + 1);
    if (l > 0) {
      const auto& prev = levels_.back();
      row[0] = "a";
      row[l] = "b";
      for (std::uint32_t y = 1; y < l; ++y) {
        const std::string& down = prev[y - 1];  // (x, y-1)
        const std::string& left = prev[y];      // (x-1, y)
        row[y] = xi_.bit(Vertex{l - y, y}) == 1 ? left + down : down + left;
      }
    }
    for (const auto& s : row) bytes_ += s.size();
    levels_.push_back(std::move(row));
  }
}

const std::string& BlockTable::block(Vertex v) const {
  if (v.level() == 0) throw Error(ErrorKind::InvalidArgument, "the root has no block");
  {
    std::shared_lock lock(mu_);
    if (levels_.size() > v.level()) return levels_[v.level()][v.y];
  }
  grow_to(v.level());
  std::shared_lock lock(mu_);
  return levels_[v.level()][v.y];
}

namespace {

// Blocks on the rectangle [0,x] x [0,y] for an arbitrary bit source.
template <class Word, class Bit>
Word rectangle_block(std::uint32_t x, std::uint32_t y, std::uint32_t base_level,
                     const std::function<Word(Vertex)>& base, Bit bit) {
  std::vector<std::vector<Word>> g(x + 1, std::vector<Word>(y + 1));
  for (std::uint32_t n = base_level; n <= x + y; ++n) {
    for (std::uint32_t u = (n > y ? n - y : 0); u <= std::min(n, x); ++u) {
      const std::uint32_t v = n - u;
      Word& w = g[u][v];
      if (n == base_level) {
        w = base(Vertex{u, v});
      } else if (v == 0) {
        w = g[u - 1][0];
      } else if (u == 0) {
        w = g[0][v - 1];
      } else {
        const Word& down = g[u][v - 1];
        const Word& left = g[u - 1][v];
        w = bit(Vertex{u, v}) == 1 ? left : down;
        const Word& tail = bit(Vertex{u, v}) == 1 ? down : left;
        w.insert(w.end(), tail.begin(), tail.end());
      }
    }
  }
  return g[x][y];
}

std::string letter_base(Vertex v) { return v.x > 0 ? "a" : "b"; }

SymbolWord column_symbols(std::uint32_t k, Vertex v) {
  const std::uint64_t size = binomial_u64(k, v.y);
  SymbolWord out;
  out.reserve(size);
  for (std::uint64_t s = 1; s <= size; ++s) out.push_back(CylSymbol{k, v.y, s});
  return out;
}

}  // namespace

std::string basic_block(const OrderingTable& xi, std::uint32_t x, std::uint32_t y) {
  if (x + y == 0) throw Error(ErrorKind::InvalidArgument, "the root has no block");
  return rectangle_block<std::string>(x, y, 1, letter_base, [&](Vertex v) { return xi.bit(v); });
}

SymbolWord basic_block_k(const OrderingTable& xi, std::uint32_t k, std::uint32_t x, std::uint32_t y) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "coding depth must be positive");
  if (x + y < k) throw Error(ErrorKind::LevelBelowK, "vertex lies below the coding level");
  return rectangle_block<SymbolWord>(
      x, y, k, [&](Vertex v) { return column_symbols(k, v); }, [&](Vertex v) { return xi.bit(v); });
}

std::vector<SymbolWord> level_blocks_k(const OrderingTable& xi, std::uint32_t k, std::uint32_t level) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "coding depth must be positive");
  if (level < k) throw Error(ErrorKind::LevelBelowK, "level lies below the coding level");
  std::vector<SymbolWord> row(k + 1);
  for (std::uint32_t y = 0; y <= k; ++y) row[y] = column_symbols(k, Vertex{k - y, y});
  for (std::uint32_t l = k + 1; l <= level; ++l) {
    std::vector<SymbolWord> next(l + 1);
    next[0] = row[0];
    next[l] = row[l - 1];
    for (std::uint32_t y = 1; y < l; ++y) {
      const SymbolWord& down = row[y - 1];
      const SymbolWord& left = row[y];
      const bool left_first = xi.bit(Vertex{l - y, y}) == 1;
      SymbolWord w = left_first ? left : down;
      const SymbolWord& tail = left_first ? down : left;
      w.insert(w.end(), tail.begin(), tail.end());
      next[y] = std::move(w);
    }
    row = std::move(next);
  }
  return row;
}

Census symbol_census(const std::string& w) {
  Census c;
  for (char ch : w) {
    if (ch == 'a') ++c.a;
    else if (ch == 'b') ++c.b;
    else throw Error(ErrorKind::InvalidArgument, "census expects a word over {a,b}");
  }
  if (c.a == 1 && c.b == 0) c.vertex = Vertex{1, 0};
  else if (c.a == 0 && c.b == 1) c.vertex = Vertex{0, 1};
  if (c.vertex || c.a == 0 || c.b == 0) return c;
  // Interior blocks have #a : #b = x : y.
  const std::uint64_t g = std::gcd(c.a, c.b);
  const std::uint64_t x0 = c.a / g, y0 = c.b / g;
  for (std::uint64_t t = 1;; ++t) {
    const std::uint64_t x = t * x0, y = t * y0;
    const BigNat na = binomial(x + y - 1, x - 1);
    if (na > c.a) break;
    if (na == c.a && binomial(x + y - 1, y - 1) == c.b) {
      c.vertex = Vertex{static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)};
      break;
    }
  }
  return c;
}

std::set<std::string> enumerate_blocks(std::uint32_t x, std::uint32_t y, std::uint32_t max_free_bits) {
  if (x + y == 0) throw Error(ErrorKind::InvalidArgument, "the root has no block");
  std::vector<Vertex> free;
  for (std::uint32_t u = 2; u <= x; ++u)
    for (std::uint32_t v = 2; v <= y; ++v) free.push_back(Vertex{u, v});
  if (free.size() > max_free_bits || free.size() >= 63)
    throw Error(ErrorKind::SizeCap, std::to_string(free.size()) + " free bits exceed the enumeration cap");
  std::vector<std::vector<int>> index(x + 1, std::vector<int>(y + 1, -1));
  for (std::size_t i = 0; i < free.size(); ++i) index[free[i].x][free[i].y] = static_cast<int>(i);
  std::set<std::string> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    auto bit = [&](Vertex v) {
      const int i = index[v.x][v.y];
      return i < 0 ? 0 : static_cast<int>((mask >> i) & 1);
    };
    out.insert(rectangle_block<std::string>(x, y, 1, letter_base, bit));
  }
  return out;
}

FaithfulnessReport faithfulness_probe(const OrderingTable& xi, std::uint32_t L, std::uint32_t k,
                                      std::uint32_t delta) {
  if (k == 0 || k > L) throw Error(ErrorKind::InvalidArgument, "coding depth must lie in [1, L]");
  if (L > 16) throw Error(ErrorKind::SizeCap, "pairwise probe limited to L <= 16");
  const std::uint32_t top = L + delta;
  const auto columns = level_blocks_k(xi, k, top);

  struct Placed {
    std::uint32_t y;
    std::int64_t rank;
    std::int64_t size;
  };
  std::vector<Placed> placed;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << L); ++bits) {
    std::vector<Step> steps(L);
    for (std::uint32_t i = 0; i < L; ++i) steps[i] = ((bits >> i) & 1) ? Step::B : Step::A;
    const PathPrefix q = extend_minimally(xi, PathPrefix(std::move(steps)), top);
    const Vertex v = q.terminal();
    placed.push_back({v.y, static_cast<std::int64_t>(rank(xi, q)), static_cast<std::int64_t>(columns[v.y].size())});
  }

  FaithfulnessReport rep;
  for (std::size_t i = 0; i < placed.size(); ++i) {
    for (std::size_t j = i + 1; j < placed.size(); ++j) {
      const Placed& p = placed[i];
      const Placed& q = placed[j];
      const std::int64_t lo = std::max(-p.rank, -q.rank);
      const std::int64_t hi = std::min(p.size - 1 - p.rank, q.size - 1 - q.rank);
      std::optional<std::int64_t> hit;
      for (std::int64_t d = 0; !hit && (d <= hi || -d >= lo); ++d) {
        for (std::int64_t t : {d, -d}) {
          if (t < lo || t > hi) continue;
          if (columns[p.y][p.rank + t] != columns[q.y][q.rank + t]) {
            hit = t;
            break;
          }
        }
      }
      ++rep.pairs;
      if (hit) {
        ++rep.separated;
        ++rep.coordinate_histogram[*hit];
      } else {
        rep.failures.push_back({i, j, std::nullopt});
      }
    }
  }
  return rep;
}

}  // namespace adiclab

#include <algorithm>
#include <set>

#include "adiclab/core.hpp"

namespace adiclab {

BigNat binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigNat r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw Error(ErrorKind::BoundExceeded, "binomial exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

PathPrefix PathPrefix::from_string(const std::string& letters) {
  std::vector<Step> steps;
  steps.reserve(letters.size());
  for (char c : letters) {
    if (c == 'a') steps.push_back(Step::A);
    else if (c == 'b') steps.push_back(Step::B);
    else throw Error(ErrorKind::InvalidArgument, "path letters must be 'a' or 'b'");
  }
  return PathPrefix(std::move(steps));
}

Vertex PathPrefix::terminal() const { return vertex_at(steps_.size()); }

Vertex PathPrefix::vertex_at(std::size_t level) const {
  Vertex v;
  for (std::size_t i = 0; i < level; ++i) {
    if (steps_[i] == Step::A) ++v.x; else ++v.y;
  }
  return v;
}

std::string PathPrefix::to_string() const {
  std::string s;
  for (Step st : steps_) s.push_back(letter(st));
  return s;
}

PathPrefix PathPrefix::truncated(std::size_t level) const {
  return PathPrefix({steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(std::min(level, steps_.size()))});
}

bool is_min_edge(const OrderingTable& xi, Vertex range, Step s) {
  switch (xi.query(range)) {
    case OrderBit::BothExtremal: return true;
    case OrderBit::One: return s == Step::A;
    case OrderBit::Zero: return s == Step::B;
  }
  return false;
}

bool is_max_edge(const OrderingTable& xi, Vertex range, Step s) {
  switch (xi.query(range)) {
    case OrderBit::BothExtremal: return true;
    case OrderBit::One: return s == Step::B;
    case OrderBit::Zero: return s == Step::A;
  }
  return false;
}

BigNat path_count(Vertex v) { return binomial(v.level(), v.x); }

BigNat rank(const OrderingTable& xi, const PathPrefix& p) {
  BigNat r = 0;
  Vertex v;
  for (Step s : p.steps()) {
    if (s == Step::A) ++v.x; else ++v.y;
    if (!v.interior() || !is_max_edge(xi, v, s)) continue;
    // Every path through the other source, continued by the smaller edge, precedes p.
    Vertex other = s == Step::A ? Vertex{v.x, v.y - 1} : Vertex{v.x - 1, v.y};
    r += path_count(other);
  }
  return r;
}

PathPrefix unrank(const OrderingTable& xi, Vertex v, const BigNat& r) {
  if (r < 0 || r >= path_count(v)) throw Error(ErrorKind::RankOutOfRange, "rank outside the column");
  BigNat left = r;
  std::vector<Step> rev;
  rev.reserve(v.level());
  while (v.level() > 0) {
    Step s;
    if (v.y == 0) s = Step::A;
    else if (v.x == 0) s = Step::B;
    else {
      Step smaller = xi.bit(v) == 1 ? Step::A : Step::B;
      Vertex src = smaller == Step::A ? Vertex{v.x - 1, v.y} : Vertex{v.x, v.y - 1};
      BigNat below = path_count(src);
      if (left < below) {
        s = smaller;
      } else {
        left -= below;
        s = smaller == Step::A ? Step::B : Step::A;
      }
    }
    rev.push_back(s);
    if (s == Step::A) --v.x; else --v.y;
  }
  std::reverse(rev.begin(), rev.end());
  return PathPrefix(std::move(rev));
}

namespace {

Step extreme_step(const OrderingTable& xi, Vertex v, Extreme which) {
  if (v.y == 0) return Step::A;
  if (v.x == 0) return Step::B;
  bool a_smaller = xi.bit(v) == 1;
  return (a_smaller == (which == Extreme::Min)) ? Step::A : Step::B;
}

Vertex source(Vertex v, Step s) { return s == Step::A ? Vertex{v.x - 1, v.y} : Vertex{v.x, v.y - 1}; }

}  // namespace

PathPrefix extreme_path(const OrderingTable& xi, Vertex v, Extreme which) {
  std::vector<Step> rev;
  rev.reserve(v.level());
  while (v.level() > 0) {
    Step s = extreme_step(xi, v, which);
    rev.push_back(s);
    v = source(v, s);
  }
  std::reverse(rev.begin(), rev.end());
  return PathPrefix(std::move(rev));
}

Rational cylinder_measure(const PathPrefix& p, const Rational& alpha) {
  if (alpha <= 0 || alpha >= 1) throw Error(ErrorKind::AlphaOutOfRange, "alpha must lie strictly between 0 and 1");
  Vertex v = p.terminal();
  Rational m = 1;
  for (std::uint32_t i = 0; i < v.x; ++i) m *= 1 - alpha;
  for (std::uint32_t i = 0; i < v.y; ++i) m *= alpha;
  return m;
}

double cylinder_measure(const PathPrefix& p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::AlphaOutOfRange, "alpha must lie strictly between 0 and 1");
  Vertex v = p.terminal();
  double m = 1.0;
  for (std::uint32_t i = 0; i < v.x; ++i) m *= 1.0 - alpha;
  for (std::uint32_t i = 0; i < v.y; ++i) m *= alpha;
  return m;
}

std::size_t count_extremal_prefixes(const OrderingTable& xi, std::uint32_t level, Extreme which,
                                    std::optional<std::uint32_t> horizon) {
  const std::uint32_t h = horizon.value_or(2 * level + 2);
  if (h < level) throw Error(ErrorKind::InvalidArgument, "horizon below level");
  std::set<std::uint32_t> reached;
  for (std::uint32_t y = 0; y <= h; ++y) {
    Vertex v{h - y, y};
    while (v.level() > level) v = source(v, extreme_step(xi, v, which));
    reached.insert(v.y);
  }
  return reached.size();
}

}  // namespace adiclab

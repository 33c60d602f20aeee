#include "adiclab/bratteli.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

namespace adiclab {

OrderedDiagram::OrderedDiagram(std::vector<std::size_t> levels, std::vector<std::vector<IdWord>> coding)
    : levels_(std::move(levels)), coding_(std::move(coding)) {
  if (levels_.empty() || levels_[0] != 1) throw Error(ErrorKind::InvalidArgument, "level 0 must hold the root alone");
  if (coding_.size() + 1 != levels_.size())
    throw Error(ErrorKind::InvalidArgument, "need one coding table per level after the root");
  for (std::size_t n = 1; n < levels_.size(); ++n) {
    const auto& table = coding_[n - 1];
    if (levels_[n] == 0 || table.size() != levels_[n])
      throw Error(ErrorKind::InvalidArgument, "level " + std::to_string(n) + " has the wrong number of codings");
    std::vector<bool> hit(levels_[n - 1], false);
    for (const auto& word : table) {
      if (word.empty()) throw Error(ErrorKind::InvalidArgument, "every vertex needs an incoming edge");
      for (auto id : word) {
        if (id >= levels_[n - 1]) throw Error(ErrorKind::InvalidArgument, "source id out of range");
        hit[id] = true;
      }
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      throw Error(ErrorKind::InvalidArgument, "every vertex of level " + std::to_string(n - 1) + " needs an outgoing edge");
  }
}

const IdWord& OrderedDiagram::coding(std::size_t n, std::size_t w) const {
  if (n == 0 || n > depth() || w >= levels_[n]) throw Error(ErrorKind::InvalidArgument, "no such vertex");
  return coding_[n - 1][w];
}

const std::vector<IdWord>& OrderedDiagram::level_coding(std::size_t n) const {
  if (n == 0 || n > depth()) throw Error(ErrorKind::InvalidArgument, "no such level");
  return coding_[n - 1];
}

const IdWord& vertex_coding(const OrderedDiagram& d, std::size_t n, std::size_t w) { return d.coding(n, w); }

IdWord primitive_root(const IdWord& w) {
  if (w.empty()) return w;
  std::vector<std::size_t> pi(w.size(), 0);
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && w[i] != w[k]) k = pi[k - 1];
    if (w[i] == w[k]) ++k;
    pi[i] = k;
  }
  const std::size_t p = w.size() - pi.back();
  return w.size() % p == 0 ? IdWord(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p)) : w;
}

std::optional<IdWord> uniform_base(const std::vector<IdWord>& codings) {
  if (codings.empty()) return std::nullopt;
  IdWord base = primitive_root(codings.front());
  for (std::size_t i = 1; i < codings.size(); ++i)
    if (primitive_root(codings[i]) != base) return std::nullopt;
  return base;
}

std::optional<IdWord> is_uniformly_ordered(const OrderedDiagram& d, std::size_t n) {
  return uniform_base(d.level_coding(n));
}

namespace {

// Codings of level `to` over level `from`.
std::vector<IdWord> composed(const OrderedDiagram& d, std::size_t from, std::size_t to) {
  std::vector<IdWord> words = d.level_coding(to);
  for (std::size_t n = to - 1; n > from; --n) {
    const auto& below = d.level_coding(n);
    for (auto& w : words) {
      IdWord expanded;
      for (auto id : w) expanded.insert(expanded.end(), below[id].begin(), below[id].end());
      w = std::move(expanded);
    }
  }
  return words;
}

}  // namespace

OrderedDiagram telescope(const OrderedDiagram& d, const std::vector<std::size_t>& cuts) {
  if (cuts.size() < 2 || cuts.front() != 0 || cuts.back() != d.depth() ||
      !std::is_sorted(cuts.begin(), cuts.end()) || std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end())
    throw Error(ErrorKind::InvalidArgument, "cuts must increase strictly from 0 to the depth");
  std::vector<std::size_t> levels;
  std::vector<std::vector<IdWord>> coding;
  for (std::size_t c : cuts) levels.push_back(d.vertices(c));
  for (std::size_t i = 1; i < cuts.size(); ++i) coding.push_back(composed(d, cuts[i - 1], cuts[i]));
  return OrderedDiagram(std::move(levels), std::move(coding));
}

OdometerCertificate odometer_certificate(const OrderedDiagram& d, std::size_t search_depth) {
  if (search_depth == 0) throw Error(ErrorKind::InvalidArgument, "search depth must be positive");
  OdometerCertificate cert;
  std::size_t s = 0;
  while (s < d.depth()) {
    bool extended = false;
    for (std::size_t t = s + 1; t <= std::min(d.depth(), s + search_depth); ++t) {
      if (auto base = uniform_base(composed(d, s, t))) {
        cert.windows.push_back({s, t, *base});
        s = t;
        extended = true;
        break;
      }
    }
    if (!extended) break;
  }
  cert.reached = s;
  cert.found = s == d.depth();
  return cert;
}

Shape Shape::constant(std::size_t sources, std::size_t targets, std::uint32_t r) {
  Shape s{sources, targets, std::vector<std::vector<std::uint32_t>>(targets, std::vector<std::uint32_t>(sources, r))};
  s.validate();
  return s;
}

void Shape::validate() const {
  if (sources == 0 || targets == 0 || mult.size() != targets)
    throw Error(ErrorKind::InvalidArgument, "shape needs a targets x sources multiplicity table");
  std::vector<std::uint64_t> out(sources, 0);
  for (const auto& row : mult) {
    if (row.size() != sources) throw Error(ErrorKind::InvalidArgument, "shape row has the wrong width");
    std::uint64_t in = 0;
    for (std::size_t v = 0; v < sources; ++v) {
      in += row[v];
      out[v] += row[v];
    }
    if (in == 0) throw Error(ErrorKind::InvalidArgument, "every target needs an incoming edge");
  }
  if (std::find(out.begin(), out.end(), 0) != out.end())
    throw Error(ErrorKind::InvalidArgument, "every source needs an outgoing edge");
}

namespace {

class KeyedStream {
 public:
  KeyedStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t level, std::uint64_t vertex)
      : key_(mix64(mix64(mix64(mix64(seed) ^ trial) ^ level) ^ vertex)) {}

  std::uint64_t next() { return mix64(key_ ^ mix64(counter_++)); }

  // Unbiased draw from [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t reject = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= reject) return r % bound;
    }
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace

std::vector<IdWord> random_ordering(const Shape& shape, std::uint64_t seed, std::uint64_t trial,
                                    std::uint64_t level) {
  shape.validate();
  std::vector<IdWord> out(shape.targets);
  for (std::size_t w = 0; w < shape.targets; ++w) {
    IdWord& word = out[w];
    for (std::size_t v = 0; v < shape.sources; ++v) word.insert(word.end(), shape.mult[w][v], static_cast<std::uint32_t>(v));
    KeyedStream rng(seed, trial, level, w);
    for (std::size_t i = word.size(); i > 1; --i) std::swap(word[i - 1], word[rng.below(i)]);
  }
  return out;
}

std::optional<Rational> exact_uniform_probability(const Shape& shape) {
  shape.validate();
  for (const auto& row : shape.mult)
    if (row != shape.mult.front()) return std::nullopt;
  // Equal multisets give equal lengths, so uniform means every target draws
  // the same arrangement; there are N = (sum m)! / prod(m!) of them.
  std::uint64_t total = 0;
  BigNat arrangements = 1;
  for (auto m : shape.mult.front()) {
    for (std::uint32_t i = 1; i <= m; ++i) {
      ++total;
      arrangements *= total;
      arrangements /= i;
    }
  }
  Rational p(1);
  for (std::size_t i = 1; i < shape.targets; ++i) p /= Rational(arrangements);
  return p;
}

MonteCarloReport monte_carlo_uniform(const std::vector<Shape>& shapes, std::size_t trials, std::uint64_t seed,
                                     unsigned threads) {
  if (trials == 0) throw Error(ErrorKind::InvalidArgument, "need at least one trial");
  for (const auto& s : shapes) s.validate();
  threads = std::max(1u, threads);
  auto count_range = [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> hits(shapes.size(), 0);
    for (std::size_t t = lo; t < hi; ++t)
      for (std::size_t n = 0; n < shapes.size(); ++n)
        if (uniform_base(random_ordering(shapes[n], seed, t, n + 1))) ++hits[n];
    return hits;
  };
  std::vector<std::future<std::vector<std::size_t>>> parts;
  const std::size_t chunk = (trials + threads - 1) / threads;
  for (std::size_t lo = 0; lo < trials; lo += chunk)
    parts.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, count_range, lo,
                               std::min(trials, lo + chunk)));
  std::vector<std::size_t> hits(shapes.size(), 0);
  for (auto& f : parts) {
    auto h = f.get();
    for (std::size_t n = 0; n < h.size(); ++n) hits[n] += h[n];
  }

  MonteCarloReport rep;
  double running = 0.0;
  for (std::size_t n = 0; n < shapes.size(); ++n) {
    MonteCarloLevel lv;
    lv.uniform = hits[n];
    lv.trials = trials;
    lv.frequency = static_cast<double>(hits[n]) / static_cast<double>(trials);
    lv.exact = exact_uniform_probability(shapes[n]);
    const double p = lv.exact ? static_cast<double>(*lv.exact) : lv.frequency;
    lv.sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    lv.within_3_sigma = !lv.exact || std::abs(lv.frequency - p) <= 3.0 * lv.sigma + 1e-12;
    running += p;
    rep.partial_sums.push_back(running);
    rep.levels.push_back(lv);
  }
  return rep;
}

ProcessSample shape_process(const ShapeProcess& process, std::size_t N, std::uint64_t seed) {
  const std::size_t k = process.shapes.size();
  if (k == 0 || process.initial.size() != k || process.transition.size() != k)
    throw Error(ErrorKind::InvalidArgument, "process needs matching shapes, initial law and transition rows");
  for (const auto& s : process.shapes) s.validate();
  for (std::size_t a = 0; a < k; ++a) {
    if (process.transition[a].size() != k) throw Error(ErrorKind::InvalidArgument, "transition matrix must be square");
    for (std::size_t b = 0; b < k; ++b)
      if (process.transition[a][b] > 0 && process.shapes[a].targets != process.shapes[b].sources)
        throw Error(ErrorKind::ShapeMismatch, "transition joins shapes whose vertex counts differ");
  }
  auto draw = [](const std::vector<double>& weights, double u) {
    double total = 0.0;
    for (double w : weights) total += w;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i] / total;
      if (u < acc) return i;
    }
    return weights.size() - 1;
  };
  KeyedStream chain(seed, 0, 0, UINT64_MAX);
  ProcessSample out{{}, {}, 0, OrderedDiagram({1}, {})};
  std::vector<std::size_t> levels{1, process.shapes[0].sources};
  std::size_t current = draw(process.initial, chain.unit());
  levels[1] = process.shapes[current].sources;
  std::vector<std::vector<IdWord>> coding{std::vector<IdWord>(levels[1], IdWord{0})};
  for (std::size_t n = 0; n < N; ++n) {
    if (n > 0) current = draw(process.transition[current], chain.unit());
    const Shape& s = process.shapes[current];
    out.shape_sequence.push_back(current);
    auto words = random_ordering(s, seed, 0, n + 2);
    const bool uniform = uniform_base(words).has_value();
    out.uniform.push_back(uniform);
    out.uniform_count += uniform;
    levels.push_back(s.targets);
    coding.push_back(std::move(words));
  }
  out.diagram = OrderedDiagram(std::move(levels), std::move(coding));
  return out;
}

OrderedDiagram pascal_as_diagram(const OrderingTable& xi, std::uint32_t L) {
  std::vector<std::size_t> levels{1};
  std::vector<std::vector<IdWord>> coding;
  for (std::uint32_t n = 1; n <= L; ++n) {
    levels.push_back(n + 1);
    std::vector<IdWord> table(n + 1);
    table[0] = {0};
    table[n] = {n - 1};
    for (std::uint32_t y = 1; y < n; ++y) {
      // (x-1,y) has index y on the level below, (x,y-1) has index y-1.
      table[y] = xi.bit(Vertex{n - y, y}) == 1 ? IdWord{y, y - 1} : IdWord{y - 1, y};
    }
    if (n == 1) table = {{0}, {0}};
    coding.push_back(std::move(table));
  }
  return OrderedDiagram(std::move(levels), std::move(coding));
}

}  // namespace adiclab

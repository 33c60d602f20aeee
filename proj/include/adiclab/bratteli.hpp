#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adiclab/core.hpp"

namespace adiclab {

using IdWord = std::vector<std::uint32_t>;

// Level 0 is the root. coding(n, w) lists the level-(n-1) sources of the
// edges into vertex w of level n, smallest edge first.
class OrderedDiagram {
 public:
  OrderedDiagram(std::vector<std::size_t> levels, std::vector<std::vector<IdWord>> coding);

  std::size_t depth() const { return levels_.size() - 1; }
  std::size_t vertices(std::size_t n) const { return levels_.at(n); }
  const std::vector<std::size_t>& levels() const { return levels_; }
  const IdWord& coding(std::size_t n, std::size_t w) const;
  const std::vector<IdWord>& level_coding(std::size_t n) const;

  friend bool operator==(const OrderedDiagram&, const OrderedDiagram&) = default;

 private:
  std::vector<std::size_t> levels_;
  std::vector<std::vector<IdWord>> coding_;  // coding_[n-1][w]
};

const IdWord& vertex_coding(const OrderedDiagram& d, std::size_t n, std::size_t w);

IdWord primitive_root(const IdWord& w);
// Common base word when every coding of the level is a power of it.
std::optional<IdWord> uniform_base(const std::vector<IdWord>& codings);
std::optional<IdWord> is_uniformly_ordered(const OrderedDiagram& d, std::size_t n);

OrderedDiagram telescope(const OrderedDiagram& d, const std::vector<std::size_t>& cuts);

struct UniformWindow {
  std::size_t from = 0;
  std::size_t to = 0;
  IdWord base;
};

struct OdometerCertificate {
  bool found = false;
  std::vector<UniformWindow> windows;
  std::size_t reached = 0;  // last level covered by uniform windows
};

OdometerCertificate odometer_certificate(const OrderedDiagram& d, std::size_t search_depth);

// mult[w][v] edges from source v to target w.
struct Shape {
  std::size_t sources = 0;
  std::size_t targets = 0;
  std::vector<std::vector<std::uint32_t>> mult;

  static Shape constant(std::size_t sources, std::size_t targets, std::uint32_t r);
  void validate() const;
  friend bool operator==(const Shape&, const Shape&) = default;
};

// Uniformly random edge order at every target, keyed by (seed, trial, level, target).
std::vector<IdWord> random_ordering(const Shape& shape, std::uint64_t seed, std::uint64_t trial,
                                    std::uint64_t level);

// Exact chance that a random ordering of the shape is uniform; defined when
// every target sees the same source multiset.
std::optional<Rational> exact_uniform_probability(const Shape& shape);

struct MonteCarloLevel {
  std::size_t uniform = 0;
  std::size_t trials = 0;
  double frequency = 0.0;
  std::optional<Rational> exact;
  double sigma = 0.0;
  bool within_3_sigma = true;
};

struct MonteCarloReport {
  std::vector<MonteCarloLevel> levels;
  std::vector<double> partial_sums;  // running sum of exact (else observed) probabilities
};

MonteCarloReport monte_carlo_uniform(const std::vector<Shape>& shapes, std::size_t trials, std::uint64_t seed,
                                     unsigned threads = 1);

struct ShapeProcess {
  std::vector<Shape> shapes;
  std::vector<double> initial;
  std::vector<std::vector<double>> transition;  // rows sum to 1
};

struct ProcessSample {
  std::vector<std::size_t> shape_sequence;
  std::vector<bool> uniform;  // per sampled level
  std::size_t uniform_count = 0;
  OrderedDiagram diagram;
};

// Prepends a root level with one edge to each source of the first shape.
ProcessSample shape_process(const ShapeProcess& process, std::size_t N, std::uint64_t seed);

OrderedDiagram pascal_as_diagram(const OrderingTable& xi, std::uint32_t L);

}  // namespace adiclab

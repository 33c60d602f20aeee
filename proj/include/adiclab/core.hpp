#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adiclab/error.hpp"
#include "adiclab/ordering.hpp"

namespace adiclab {

using BigNat = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigNat binomial(std::uint64_t n, std::uint64_t k);
// Exact C(n,k) in 64 bits; throws BoundExceeded on overflow.
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);

enum class Step : std::uint8_t { A, B };

inline char letter(Step s) { return s == Step::A ? 'a' : 'b'; }

// A finite path from the root; step i is the edge into level i+1.
class PathPrefix {
 public:
  PathPrefix() = default;
  explicit PathPrefix(std::vector<Step> steps) : steps_(std::move(steps)) {}
  static PathPrefix from_string(const std::string& letters);

  const std::vector<Step>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  Step operator[](std::size_t i) const { return steps_[i]; }
  Vertex terminal() const;
  Vertex vertex_at(std::size_t level) const;
  std::string to_string() const;

  void push(Step s) { steps_.push_back(s); }
  PathPrefix truncated(std::size_t level) const;

  friend bool operator==(const PathPrefix&, const PathPrefix&) = default;

 private:
  std::vector<Step> steps_;
};

// Edge entering `range` by step `s` is the smaller of the two incoming edges.
bool is_min_edge(const OrderingTable& xi, Vertex range, Step s);
bool is_max_edge(const OrderingTable& xi, Vertex range, Step s);

enum class Extreme { Min, Max };

BigNat path_count(Vertex v);
BigNat rank(const OrderingTable& xi, const PathPrefix& p);
PathPrefix unrank(const OrderingTable& xi, Vertex v, const BigNat& r);
PathPrefix extreme_path(const OrderingTable& xi, Vertex v, Extreme which);

// Measure of the cylinder of p for the product measure with P(a-step) = alpha.
Rational cylinder_measure(const PathPrefix& p, const Rational& alpha);
double cylinder_measure(const PathPrefix& p, double alpha);

// Number of level-`level` vertices lying on an all-extreme path that reaches
// `horizon`. Defaults to horizon = 2*level + 2.
std::size_t count_extremal_prefixes(const OrderingTable& xi, std::uint32_t level, Extreme which,
                                    std::optional<std::uint32_t> horizon = std::nullopt);

}  // namespace adiclab

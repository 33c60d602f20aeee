#pragma once

// Builds paths that turn at an interior corner (i,j) with a prescribed
// (a1,a2,a3) pattern by overriding the three bits around the corner.

#include <algorithm>
#include <random>
#include <string>

#include "adiclab/adic.hpp"

namespace kinkgen {

struct Config {
  adiclab::OrderingTable xi;
  adiclab::PathPrefix path;
  std::uint32_t n = 0;
};

inline Config make(const adiclab::KinkCase& c, std::uint32_t i, std::uint32_t j, std::uint64_t seed) {
  using namespace adiclab;
  const bool lr = c.a3 == Turn::LR;
  const bool min1 = c.a1 == EdgeStatus::Min;
  const bool min2 = c.a2 == EdgeStatus::Min;
  // An A-step edge is minimal iff its range bit is 1, a B-step edge iff 0.
  BitMap bits;
  if (lr) {
    bits[{i + 1, j}] = min1 ? 1 : 0;
    bits[{i, j + 1}] = min2 ? 0 : 1;
    bits[{i + 1, j + 1}] = 0;
  } else {
    bits[{i, j + 1}] = min1 ? 0 : 1;
    bits[{i + 1, j}] = min2 ? 1 : 0;
    bits[{i + 1, j + 1}] = 1;
  }
  std::string word = std::string(i, 'a') + std::string(j, 'b');
  std::mt19937_64 rng(seed);
  std::shuffle(word.begin(), word.end(), rng);
  word += lr ? "ab" : "ba";
  return {OrderingTable::seeded(seed).with_overrides(bits), PathPrefix::from_string(word), i + j};
}

}  // namespace kinkgen

#include "adiclab/presets.hpp"

namespace adiclab {

OrderingTable decoded_4_3() {
  return OrderingTable::explicit_bits({{{2, 2}, 1}, {{2, 3}, 1}, {{3, 2}, 0}, {{3, 3}, 1}, {{4, 2}, 1}, {{4, 3}, 1}},
                                      7, 0)
      .restricted();
}

OrderingTable alternating_a() {
  return OrderingTable::explicit_bits(
      {{{1, 1}, 0}, {{2, 1}, 1}, {{1, 2}, 1}, {{3, 1}, 0}, {{2, 2}, 1}, {{1, 3}, 0}}, 4, 0);
}

OrderingTable alternating_b() {
  return OrderingTable::explicit_bits(
      {{{1, 1}, 0}, {{2, 1}, 1}, {{1, 2}, 1}, {{3, 1}, 1}, {{2, 2}, 0}, {{1, 3}, 1}}, 4, 1);
}

std::optional<OrderingTable> preset(std::string_view name) {
  if (name == "constant0") return OrderingTable::constant(0);
  if (name == "constant1") return OrderingTable::constant(1);
  if (name == "decoded-4-3") return decoded_4_3();
  if (name == "alternating-a") return alternating_a();
  if (name == "alternating-b") return alternating_b();
  return std::nullopt;
}

std::vector<std::string> preset_names() {
  return {"constant0", "constant1", "decoded-4-3", "alternating-a", "alternating-b"};
}

}  // namespace adiclab

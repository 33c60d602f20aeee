#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adiclab/ordering.hpp"

namespace adiclab {

// Restricted ordering read off the block of (4,3) with tokens
// D3 D2 C2 C3 D2 C2 C3 D2 C2 C4; unlisted bits are 0.
OrderingTable decoded_4_3();
inline constexpr std::string_view kDecoded43Block = "abbbabbaabaaababbaabaaababbaabaaaab";

// Orderings whose (3,3) blocks are a(ab)^9 b and b(ba)^9 a. Above level 4
// every bit is 0, respectively 1.
OrderingTable alternating_a();
OrderingTable alternating_b();

// constant0, constant1, decoded-4-3, alternating-a, alternating-b.
std::optional<OrderingTable> preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace adiclab

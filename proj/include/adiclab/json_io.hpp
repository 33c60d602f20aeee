#pragma once

#include "json.hpp"

#include "adiclab/bratteli.hpp"
#include "adiclab/factoring.hpp"

namespace adiclab {

using Json = nlohmann::json;

Json to_json(const OrderingTable& xi);
OrderingTable ordering_from_json(const Json& j);

Json to_json(const OrderedDiagram& d);
OrderedDiagram diagram_from_json(const Json& j);

Json to_json(const Shape& s);
Shape shape_from_json(const Json& j);
ShapeProcess process_from_json(const Json& j);

Json to_json(const SymbolWord& w);
SymbolWord symbols_from_json(const Json& j);

Json to_json(Vertex v);
Json to_json(const BitMap& bits);

}  // namespace adiclab

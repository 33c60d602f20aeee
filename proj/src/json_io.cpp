#include "adiclab/json_io.hpp"

namespace adiclab {

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorKind::InvalidArgument, why); }

BitMap bits_from_json(const Json& arr) {
  BitMap bits;
  if (!arr.is_array()) bad("bits must be an array of [x,y,bit]");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 3) bad("each bit entry must be [x,y,bit]");
    bits[Vertex{e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>()}] = e[2].get<int>();
  }
  return bits;
}

}  // namespace

Json to_json(Vertex v) { return Json::array({v.x, v.y}); }

Json to_json(const BitMap& bits) {
  Json arr = Json::array();
  for (const auto& [v, b] : bits) arr.push_back(Json::array({v.x, v.y, b}));
  return arr;
}

Json to_json(const OrderingTable& xi) {
  Json j = std::visit(
      [&](const auto& k) -> Json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, OrderingTable::Constant>) {
          return {{"kind", "constant"}, {"bit", k.bit}};
        } else if constexpr (std::is_same_v<K, OrderingTable::Seeded>) {
          return {{"kind", "seeded"}, {"seed", k.seed}, {"bias", k.bias}};
        } else if constexpr (std::is_same_v<K, OrderingTable::Explicit>) {
          Json e{{"kind", "explicit"}, {"maxLevel", k.max_level}};
          if (k.fill) e["fill"] = *k.fill;
          return e;
        } else {
          return {{"kind", "tree"}, {"depth", k.depth}};
        }
      },
      xi.kind());
  const bool is_tree = std::holds_alternative<OrderingTable::Tree>(xi.kind());
  if (!is_tree && (!xi.listed_bits().empty() || j["kind"] == "explicit")) j["bits"] = to_json(xi.listed_bits());
  if (xi.is_restricted()) j["restricted"] = true;
  return j;
}

OrderingTable ordering_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) bad("ordering needs a kind");
  const std::string kind = j["kind"].get<std::string>();
  std::optional<OrderingTable> t;
  if (kind == "constant") {
    t = OrderingTable::constant(j.at("bit").get<int>());
  } else if (kind == "seeded") {
    t = OrderingTable::seeded(j.at("seed").get<std::uint64_t>(), j.value("bias", 0.5));
  } else if (kind == "explicit") {
    std::optional<int> fill;
    if (j.contains("fill")) fill = j["fill"].get<int>();
    t = OrderingTable::explicit_bits(bits_from_json(j.value("bits", Json::array())),
                                     j.at("maxLevel").get<std::uint32_t>(), fill);
  } else if (kind == "tree") {
    t = OrderingTable::tree(j.at("depth").get<std::uint32_t>());
  } else {
    bad("unknown ordering kind '" + kind + "'");
  }
  if (kind != "explicit" && j.contains("bits")) t = t->with_overrides(bits_from_json(j["bits"]));
  if (j.value("restricted", false)) t = t->restricted();
  return *t;
}

Json to_json(const OrderedDiagram& d) {
  Json coding = Json::array();
  for (std::size_t n = 1; n <= d.depth(); ++n) coding.push_back(d.level_coding(n));
  return {{"levels", d.levels()}, {"coding", coding}};
}

OrderedDiagram diagram_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("levels") || !j.contains("coding")) bad("diagram needs levels and coding");
  return OrderedDiagram(j["levels"].get<std::vector<std::size_t>>(),
                        j["coding"].get<std::vector<std::vector<IdWord>>>());
}

Json to_json(const Shape& s) { return {{"sources", s.sources}, {"targets", s.targets}, {"mult", s.mult}}; }

Shape shape_from_json(const Json& j) {
  const auto sources = j.at("sources").get<std::size_t>();
  const auto targets = j.at("targets").get<std::size_t>();
  if (j.contains("r")) return Shape::constant(sources, targets, j["r"].get<std::uint32_t>());
  Shape s{sources, targets, j.at("mult").get<std::vector<std::vector<std::uint32_t>>>()};
  s.validate();
  return s;
}

ShapeProcess process_from_json(const Json& j) {
  ShapeProcess p;
  for (const auto& s : j.at("shapes")) p.shapes.push_back(shape_from_json(s));
  const std::size_t k = p.shapes.size();
  p.initial = j.contains("initial") ? j["initial"].get<std::vector<double>>() : std::vector<double>(k, 1.0);
  if (j.contains("transition")) {
    p.transition = j["transition"].get<std::vector<std::vector<double>>>();
  } else {
    p.transition.assign(k, std::vector<double>(k, 1.0));
  }
  return p;
}

Json to_json(const SymbolWord& w) {
  Json arr = Json::array();
  for (const auto& c : w) arr.push_back(Json::array({c.k, c.m, c.s}));
  return arr;
}

SymbolWord symbols_from_json(const Json& j) {
  SymbolWord w;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) bad("symbols are [k,m,s] triples");
    w.push_back({e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), e[2].get<std::uint64_t>()});
  }
  return w;
}

}  // namespace adiclab

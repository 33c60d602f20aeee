#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "adiclab/json_io.hpp"
#include "adiclab/presets.hpp"

namespace adiclab::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string ordering;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> level;
  std::string format = "json";
  std::size_t max_mem_mib = kDefaultBlockBytes >> 20;
  unsigned threads = 1;
};

// What a command hands back: a JSON report, an optional table for CSV,
// and whether every checked property held.
struct Report {
  Json body;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool ok = true;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_arg(const std::string& arg) {
  const bool inline_json = !arg.empty() && (arg.front() == '{' || arg.front() == '[');
  const std::string text = inline_json ? arg : read_file(arg);
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw UsageError("bad JSON in '" + arg + "': " + e.what());
  }
}

OrderingTable resolve_ordering(const std::string& spec) {
  if (spec.empty()) throw UsageError("this command needs --ordering");
  if (auto p = preset(spec)) return *p;
  if (spec.rfind("seeded:", 0) == 0) {
    try {
      return OrderingTable::seeded(std::stoull(spec.substr(7)));
    } catch (const std::logic_error&) {
      throw UsageError("bad seed in '" + spec + "'");
    }
  }
  const bool inline_json = spec.front() == '{';
  if (!inline_json && !std::filesystem::exists(spec)) {
    std::string names;
    for (const auto& n : preset_names()) names += " " + n;
    throw UsageError("unknown ordering '" + spec + "' (presets:" + names + ", seeded:<u64>, JSON or a file)");
  }
  return ordering_from_json(parse_json_arg(spec));
}

std::uint64_t need_seed(const Globals& g) {
  if (!g.seed) throw UsageError("this command is randomized and needs --seed");
  return *g.seed;
}

std::string big(const BigNat& n) { return n.str(); }

std::string rational(const Rational& r) {
  std::ostringstream ss;
  ss << r;
  return ss.str();
}

std::string fixed(double d) {
  std::ostringstream ss;
  ss.precision(6);
  ss << std::fixed << d;
  return ss.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Blocks are memoized on disk when ADICLAB_CACHE_DIR is set.
std::string cached_block(const OrderingTable& xi, Vertex v, std::size_t max_bytes) {
  const char* dir = std::getenv("ADICLAB_CACHE_DIR");
  std::filesystem::path file;
  if (dir && *dir) {
    const std::string key = to_json(xi).dump() + "|" + std::to_string(v.x) + "," + std::to_string(v.y);
    std::ostringstream name;
    name << "block-" << std::hex << fnv1a(key) << ".txt";
    file = std::filesystem::path(dir) / name.str();
    if (std::ifstream in(file, std::ios::binary); in) {
      std::string key_line, block;
      std::getline(in, key_line);
      std::getline(in, block);
      if (key_line == key) return block;
    }
  }
  const BlockTable table(xi, max_bytes);
  std::string block = table.block(v);
  if (!file.empty()) {
    std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << to_json(xi).dump() << "|" << v.x << "," << v.y << "\n" << block << "\n";
  }
  return block;
}

Report cmd_block(const Globals& g, std::uint32_t x, std::uint32_t y, std::optional<std::uint32_t> k) {
  const auto xi = resolve_ordering(g.ordering);
  const std::string b = cached_block(xi, {x, y}, g.max_mem_mib << 20);
  const auto census = symbol_census(b);
  const std::uint32_t n = x + y;
  const BigNat want_a = x ? binomial(n - 1, x - 1) : BigNat(0);
  const BigNat want_b = y ? binomial(n - 1, y - 1) : BigNat(0);
  const bool length_ok = BigNat(b.size()) == binomial(n, x);
  const bool census_ok = BigNat(census.a) == want_a && BigNat(census.b) == want_b;

  Report r;
  r.body = {{"vertex", to_json(Vertex{x, y})},
            {"block", b},
            {"length", b.size()},
            {"census", {{"a", census.a}, {"b", census.b}}},
            {"expected", {{"length", big(binomial(n, x))}, {"a", big(want_a)}, {"b", big(want_b)}}},
            {"length_ok", length_ok},
            {"census_ok", census_ok}};
  r.body["census"]["vertex"] = census.vertex ? to_json(*census.vertex) : Json(nullptr);
  if (k) {
    const auto w = basic_block_k(xi, *k, x, y);
    r.body["k"] = *k;
    r.body["k_block"] = to_json(w);
    const bool projects = project_first_letter(xi, w) == b;
    r.body["k_block_projects"] = projects;
    r.ok = projects;
  }
  r.ok = r.ok && length_ok && census_ok;
  return r;
}

Report cmd_decode(const std::string& word) {
  const auto d = decode_ordering(word);
  Json tokens = Json::array();
  for (const auto& t : d.tokens) tokens.push_back(t.name());
  const bool round_trip = basic_block(d.ordering(), d.vertex.x, d.vertex.y) == word;
  Report r;
  r.body = {{"word", word},
            {"vertex", to_json(d.vertex)},
            {"tokens", tokens},
            {"bits", to_json(d.bits)},
            {"round_trip", round_trip}};
  r.ok = round_trip;
  return r;
}

Report cmd_complexity(const Globals& g, std::size_t n_min, std::size_t n_max) {
  if (n_min == 0 || n_min > n_max) throw UsageError("need 1 <= --n-min <= --n-max");
  const auto xi = resolve_ordering(g.ordering);
  const std::uint32_t L = g.level.value_or(24);
  Report r;
  r.header = {"n", "count", "stabilized", "ratio_n3_over_6"};
  Json rows = Json::array();
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const auto c = complexity(xi, n, L);
    const double ratio = static_cast<double>(c.count) / (static_cast<double>(n * n * n) / 6.0);
    rows.push_back({{"n", n}, {"count", c.count}, {"stabilized", c.stabilized}, {"by_level", c.by_level}});
    r.rows.push_back({std::to_string(n), std::to_string(c.count), c.stabilized ? "true" : "false", fixed(ratio)});
  }
  r.body = {{"ordering", to_json(xi)}, {"level", L}, {"rows", rows}};
  return r;
}

Report cmd_odometer(const std::string& file, std::size_t depth) {
  const auto d = diagram_from_json(parse_json_arg(file));
  Json levels = Json::array();
  for (std::size_t n = 1; n <= d.depth(); ++n) {
    const auto base = is_uniformly_ordered(d, n);
    levels.push_back({{"level", n}, {"uniform", base.has_value()}, {"base", base ? Json(*base) : Json(nullptr)}});
  }
  const auto cert = odometer_certificate(d, depth);
  Json windows = Json::array();
  std::vector<std::size_t> cuts{0};
  for (const auto& w : cert.windows) {
    windows.push_back({{"from", w.from}, {"to", w.to}, {"base", w.base}});
    cuts.push_back(w.to);
  }
  Report r;
  r.body = {{"depth", d.depth()},      {"search_depth", depth},  {"levels", levels},
            {"found", cert.found},     {"reached", cert.reached}, {"windows", windows}};
  if (cert.found) r.body["telescoped"] = to_json(telescope(d, cuts));
  return r;
}

std::vector<Shape> shapes_from(const Json& j) {
  std::vector<Shape> shapes;
  if (j.is_array()) {
    for (const auto& s : j) shapes.push_back(shape_from_json(s));
  } else if (j.contains("shapes")) {
    for (const auto& s : j["shapes"]) shapes.push_back(shape_from_json(s));
  } else {
    shapes.push_back(shape_from_json(j));
  }
  if (shapes.empty()) throw UsageError("no shapes given");
  return shapes;
}

Report cmd_montecarlo(const Globals& g, const std::string& file, std::size_t trials) {
  const auto seed = need_seed(g);
  const auto shapes = shapes_from(parse_json_arg(file));
  const auto rep = monte_carlo_uniform(shapes, trials, seed, g.threads);
  Report r;
  r.header = {"level", "uniform", "trials", "frequency", "exact", "sigma", "within_3_sigma", "partial_sum"};
  Json levels = Json::array();
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    const auto& lv = rep.levels[i];
    const std::string exact = lv.exact ? rational(*lv.exact) : "";
    levels.push_back({{"level", i + 1},
                      {"uniform", lv.uniform},
                      {"frequency", lv.frequency},
                      {"exact", lv.exact ? Json(exact) : Json(nullptr)},
                      {"sigma", lv.sigma},
                      {"within_3_sigma", lv.within_3_sigma},
                      {"partial_sum", rep.partial_sums[i]}});
    r.rows.push_back({std::to_string(i + 1), std::to_string(lv.uniform), std::to_string(lv.trials), fixed(lv.frequency),
                      exact, fixed(lv.sigma), lv.within_3_sigma ? "true" : "false", fixed(rep.partial_sums[i])});
    r.ok = r.ok && lv.within_3_sigma;
  }
  r.body = {{"seed", seed}, {"trials", trials}, {"levels", levels}};
  return r;
}

// A path that turns at an interior corner of level n. With a fixed ordering
// the turn is whichever one ends on a minimal edge; otherwise the three bits
// around the corner are set to hit the requested case.
struct KinkTrial {
  OrderingTable xi;
  PathPrefix path;
  std::uint32_t n;
};

KinkTrial kink_trial(const std::optional<OrderingTable>& fixed_xi, std::uint64_t seed, std::uint64_t t,
                     std::uint32_t max_level) {
  std::mt19937_64 rng(mix64(seed ^ mix64(t)));
  const auto n = static_cast<std::uint32_t>(2 + rng() % (max_level - 1));
  const auto i = static_cast<std::uint32_t>(1 + rng() % (n - 1));
  const std::uint32_t j = n - i;
  std::string word = std::string(i, 'a') + std::string(j, 'b');
  std::shuffle(word.begin(), word.end(), rng);
  if (fixed_xi) {
    // B into (i+1,j+1) is minimal iff the bit is 0.
    word += fixed_xi->bit({i + 1, j + 1}) == 0 ? "ab" : "ba";
    return {*fixed_xi, PathPrefix::from_string(word), n};
  }
  const KinkCase c = all_kink_cases()[t % 8];
  const bool lr = c.a3 == Turn::LR;
  const bool min1 = c.a1 == EdgeStatus::Min;
  const bool min2 = c.a2 == EdgeStatus::Min;
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
  word += lr ? "ab" : "ba";
  return {OrderingTable::seeded(mix64(seed + t)).with_overrides(bits), PathPrefix::from_string(word), n};
}

Report cmd_kink(const Globals& g, std::size_t trials) {
  const auto seed = need_seed(g);
  const std::uint32_t max_level = g.level.value_or(12);
  if (max_level < 2) throw UsageError("--level must be at least 2 for kinks");
  std::optional<OrderingTable> fixed_xi;
  if (!g.ordering.empty()) fixed_xi = resolve_ordering(g.ordering);
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_case;  // seen, agreed
  for (const auto& c : all_kink_cases()) by_case[kink_case_name(c)] = {0, 0};
  Json failures = Json::array();
  std::size_t agreed = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto trial = kink_trial(fixed_xi, seed, t, max_level);
    const auto v = kink_verify(trial.xi, trial.path, trial.n);
    auto& slot = by_case[kink_case_name(v.site.kase)];
    ++slot.first;
    if (v.agrees) {
      ++slot.second;
      ++agreed;
    } else {
      failures.push_back({{"trial", t}, {"path", trial.path.to_string()}, {"n", trial.n}});
    }
  }
  Report r;
  r.header = {"case", "instances", "agreed"};
  Json cases = Json::object();
  for (const auto& [name, counts] : by_case) {
    cases[name] = {{"instances", counts.first}, {"agreed", counts.second}};
    r.rows.push_back({name, std::to_string(counts.first), std::to_string(counts.second)});
  }
  r.body = {{"seed", seed}, {"trials", trials}, {"max_level", max_level},
            {"agreed", agreed}, {"cases", cases}, {"failures", failures}};
  if (fixed_xi) r.body["ordering"] = to_json(*fixed_xi);
  r.ok = agreed == trials;
  return r;
}

Json phase_json(const PhaseResult& p) {
  Json j{{"verdict", to_string(p.verdict)}, {"level", p.level}, {"states", p.states}};
  j["witness"] = p.witness ? to_json(*p.witness) : Json(nullptr);
  return j;
}

Report cmd_alternation(const Globals& g, std::uint32_t j, std::uint32_t exact_level, std::uint32_t condition_level) {
  const std::uint32_t L = g.level.value_or(12);
  const auto rep = alternation_exclusion(L, j, exact_level, condition_level);
  Report r;
  r.body = {{"j", rep.j},
            {"level", L},
            {"exact", phase_json(rep.exact)},
            {"orderings_covered", rep.orderings_covered},
            {"over", phase_json(rep.over)},
            {"conditioned", phase_json(rep.conditioned)}};
  return r;
}

Report cmd_smallshift(const Globals& g, std::size_t n) {
  const std::uint32_t L = g.level.value_or(20);
  const auto rep = intersection_probe(alternating_a(), alternating_b(), n, L);
  Report r;
  r.body = {{"n", n}, {"level", L}, {"common", rep.common}, {"offending", rep.offending}};
  r.ok = rep.offending.empty();
  return r;
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.body.dump(2) << "\n";
  } else if (format == "text") {
    flatten(r.body, "", out);
  } else {
    if (r.header.empty()) throw UsageError("csv output is only offered for tables");
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << "\n";
    };
    line(r.header);
    for (const auto& row : r.rows) line(row);
  }
}

bool is_cap(ErrorKind k) {
  return k == ErrorKind::ResourceCap || k == ErrorKind::SizeCap || k == ErrorKind::CapExceeded ||
         k == ErrorKind::BoundExceeded;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pascal adic and ordered Bratteli diagram toolkit", "adiclab-cli"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--ordering", g.ordering, "preset name, seeded:<u64>, inline JSON or a JSON file");
  app.add_option("--seed", g.seed, "seed for randomized commands");
  app.add_option("--level", g.level, "level cap L");
  app.add_option("--format", g.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--max-mem", g.max_mem_mib, "block memory cap in MiB")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);

  std::function<Report()> action;

  auto* block = app.add_subcommand("block", "basic block of a vertex with its letter census");
  std::uint32_t bx = 0, by = 0;
  std::optional<std::uint32_t> bk;
  block->add_option("x", bx)->required();
  block->add_option("y", by)->required();
  block->add_option("-k", bk, "also print the k-coded block");
  block->callback([&] { action = [&] { return cmd_block(g, bx, by, bk); }; });

  auto* decode = app.add_subcommand("decode", "vertex, C/D tokens and ordering bits of a restricted block");
  std::string word;
  decode->add_option("word", word)->required();
  decode->callback([&] { action = [&] { return cmd_decode(word); }; });

  auto* cx = app.add_subcommand("complexity", "window counts of the language up to the level cap");
  std::size_t n_min = 1, n_max = 12;
  cx->add_option("--n-min", n_min);
  cx->add_option("--n-max", n_max);
  cx->callback([&] { action = [&] { return cmd_complexity(g, n_min, n_max); }; });

  auto* odo = app.add_subcommand("odometer", "uniform levels and a telescoping certificate");
  std::string diagram;
  std::size_t depth = 4;
  odo->add_option("diagram", diagram, "diagram JSON file or inline JSON")->required();
  odo->add_option("--depth", depth, "longest window tried per step")->check(CLI::PositiveNumber);
  odo->callback([&] { action = [&] { return cmd_odometer(diagram, depth); }; });

  auto* mc = app.add_subcommand("montecarlo", "frequency of uniform levels under random orderings");
  std::string shapes;
  std::size_t trials = 100000;
  mc->add_option("shapes", shapes, "shape JSON file or inline JSON")->required();
  mc->add_option("--trials", trials)->check(CLI::PositiveNumber);
  mc->callback([&] { action = [&] { return cmd_montecarlo(g, shapes, trials); }; });

  auto* kink = app.add_subcommand("kink", "return times at kinks against successor iteration");
  std::size_t kink_trials = 1000;
  kink->add_option("--trials", kink_trials)->check(CLI::PositiveNumber);
  kink->callback([&] { action = [&] { return cmd_kink(g, kink_trials); }; });

  auto* alt = app.add_subcommand("alternation", "rule out blocks holding both long alternations");
  std::uint32_t aj = 9, exact_level = 7, condition_level = 5;
  alt->add_option("--j", aj);
  alt->add_option("--exact-level", exact_level);
  alt->add_option("--condition-level", condition_level);
  alt->callback([&] { action = [&] { return cmd_alternation(g, aj, exact_level, condition_level); }; });

  auto* small = app.add_subcommand("smallshift", "common n-words of the two alternating orderings");
  std::size_t sn = 60;
  small->add_option("--n", sn)->check(CLI::PositiveNumber);
  small->callback([&] { action = [&] { return cmd_smallshift(g, sn); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const Report r = action();
    emit(r, g.format, out);
    return r.ok ? 0 : 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return is_cap(e.kind()) ? 3 : 2;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 3;
  }
}

}  // namespace adiclab::cli

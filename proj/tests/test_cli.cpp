#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "adiclab/json_io.hpp"
#include "adiclab/presets.hpp"
#include "commands.hpp"

using namespace adiclab;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kTelescoping =
    R"({"levels":[1,3,3,2],"coding":[[[0],[0],[0]],[[0,1],[1,2],[1,2]],[[0,1],[0,2]]]})";
const std::string kSwapping = R"({"levels":[1,2,2,2],"coding":[[[0],[0]],[[0,1],[1,0]],[[0,1],[1,0]]]})";

}  // namespace

TEST_CASE("block") {
  const auto trivial = run({"block", "1", "1", "--ordering", "constant0"});
  CHECK(trivial.code == 0);
  CHECK(trivial.json()["block"] == "ab");

  const auto worked = run({"--ordering", "decoded-4-3", "block", "4", "3"});
  CHECK(worked.code == 0);
  CHECK(worked.json()["block"] == std::string(kDecoded43Block));

  // Census against binomials, and the flag order does not matter.
  const auto census = run({"block", "6", "5", "--ordering", "seeded:9", "-k", "3"});
  REQUIRE(census.code == 0);
  const auto j = census.json();
  CHECK(j["length"] == 462);
  CHECK(j["census"]["a"] == 252);
  CHECK(j["census"]["b"] == 210);
  CHECK(j["census"]["vertex"] == Json::array({6, 5}));
  CHECK(j["k_block"].size() == 462);
  CHECK(j["k_block_projects"] == true);

  const auto inline_json = run({"block", "2", "2", "--ordering", R"({"kind":"constant","bit":1})"});
  CHECK(inline_json.json()["block"] == basic_block(OrderingTable::constant(1), 2, 2));
}

TEST_CASE("decode") {
  CHECK(run({"decode", "aab"}).json()["vertex"] == Json::array({2, 1}));
  const auto worked = run({"decode", std::string(kDecoded43Block)});
  REQUIRE(worked.code == 0);
  const auto j = worked.json();
  CHECK(j["tokens"] == Json::array({"D3", "D2", "C2", "C3", "D2", "C2", "C3", "D2", "C2", "C4"}));
  CHECK(j["bits"] == to_json(decoded_4_3().listed_bits()));
  CHECK(j["round_trip"] == true);
  // Round trip on every restricted block of (3,3).
  for (const auto& w : enumerate_blocks(3, 3)) {
    const auto r = run({"decode", w});
    CHECK(r.code == 0);
    CHECK(r.json()["vertex"] == Json::array({3, 3}));
  }
  CHECK(run({"decode", "abab"}).code == 2);
}

TEST_CASE("complexity") {
  const auto smoke = run({"complexity", "--ordering", "constant0", "--n-min", "1", "--n-max", "2", "--level", "8"});
  CHECK(smoke.code == 0);
  CHECK(smoke.json()["rows"][0]["count"] == 2);

  const auto csv = run({"complexity", "--ordering", "constant0", "--n-min", "5", "--n-max", "5", "--level", "16",
                        "--format", "csv"});
  CHECK(csv.out == "n,count,stabilized,ratio_n3_over_6\n5,24,true,1.152000\n");

  const auto j = run({"complexity", "--ordering", "seeded:4", "--n-min", "3", "--n-max", "6", "--level", "14"}).json();
  const auto xi = OrderingTable::seeded(4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(j["rows"][i]["count"] == complexity(xi, i + 3, 14).count);
  CHECK(run({"complexity", "--ordering", "constant0", "--n-min", "4", "--n-max", "2"}).code == 2);
}

TEST_CASE("odometer") {
  const auto swap = run({"odometer", kSwapping, "--depth", "3"});
  CHECK(swap.code == 0);
  CHECK(swap.json()["found"] == false);
  CHECK(swap.json()["reached"] == 1);

  const auto worked = run({"odometer", kTelescoping, "--depth", "2"}).json();
  CHECK(worked["found"] == true);
  CHECK(worked["levels"][1]["uniform"] == false);
  CHECK(worked["levels"][2]["uniform"] == false);
  CHECK(worked["windows"][1]["base"] == Json::array({0, 1, 1, 2}));
  CHECK(worked["telescoped"]["coding"][1][0] == Json::array({0, 1, 1, 2}));

  const auto d = diagram_from_json(Json::parse(kTelescoping));
  CHECK(worked["telescoped"] == to_json(telescope(d, {0, 1, 3})));
  CHECK(run({"odometer", "/no/such/file.json"}).code == 2);
  CHECK(run({"odometer", R"({"levels":[2]})"}).code == 2);
}

TEST_CASE("montecarlo") {
  const std::string one = R"({"sources":1,"targets":3,"r":2})";
  const auto smoke = run({"montecarlo", one, "--trials", "50", "--seed", "1"});
  CHECK(smoke.code == 0);
  CHECK(smoke.json()["levels"][0]["frequency"] == 1.0);

  const std::string shapes = R"([{"sources":2,"targets":2,"r":1},{"sources":2,"targets":3,"r":1}])";
  const auto r = run({"montecarlo", shapes, "--trials", "20000", "--seed", "7", "--threads", "2"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["levels"][0]["exact"] == "1/2");
  CHECK(j["levels"][1]["exact"] == "1/4");
  CHECK(j["levels"][1]["partial_sum"].get<double>() == doctest::Approx(0.75));
  CHECK(run({"montecarlo", shapes, "--trials", "20000", "--seed", "7", "--threads", "1"}).out == r.out);
  CHECK(run({"montecarlo", shapes}).code == 2);
}

TEST_CASE("kink") {
  const auto smoke = run({"kink", "--seed", "1", "--trials", "8", "--level", "4"});
  CHECK(smoke.code == 0);
  CHECK(smoke.json()["agreed"] == 8);

  const auto all = run({"kink", "--seed", "2", "--trials", "400", "--format", "csv"});
  CHECK(all.code == 0);
  CHECK(all.out.find("(min,max,RL),50,50") != std::string::npos);

  const auto fixed = run({"kink", "--seed", "2", "--trials", "100", "--ordering", "alternating-a"}).json();
  CHECK(fixed["agreed"] == 100);
  CHECK(fixed["failures"].empty());
  CHECK(run({"kink", "--trials", "3"}).code == 2);
}

TEST_CASE("alternation") {
  const auto small = run({"alternation", "--j", "2", "--level", "6", "--exact-level", "4", "--condition-level", "3"});
  CHECK(small.code == 0);
  CHECK(small.json()["exact"]["verdict"] == "NOT-EXCLUDED");

  const auto j = run({"alternation", "--j", "9", "--level", "9", "--exact-level", "6", "--condition-level", "4"}).json();
  CHECK(j["exact"]["verdict"] == "EXCLUDED");
  CHECK(j["conditioned"]["verdict"] == "EXCLUDED");
  CHECK(j["orderings_covered"] == 1u << 15);
  CHECK(run({"alternation", "--j", "10"}).code == 3);
  CHECK(run({"alternation", "--j", "0"}).code == 2);
}

TEST_CASE("smallshift") {
  const auto smoke = run({"smallshift", "--n", "3", "--level", "8"});
  CHECK(smoke.code == 0);
  const auto j = run({"smallshift", "--n", "60", "--level", "20"}).json();
  CHECK(j["offending"].empty());
  const auto direct = intersection_probe(alternating_a(), alternating_b(), 60, 20);
  CHECK(j["common"] == direct.common);
  // Shorter windows still see a^i b a^j style words with two b's.
  const auto probe = intersection_probe(alternating_a(), alternating_b(), 20, 14);
  const auto r = run({"smallshift", "--n", "20", "--level", "14"});
  CHECK(r.json()["offending"].size() == probe.offending.size());
  CHECK(r.code == (probe.offending.empty() ? 0 : 1));
}

TEST_CASE("determinism, formats and usage errors") {
  const std::vector<std::string> args{"kink", "--seed", "5", "--trials", "64"};
  CHECK(run(args).out == run(args).out);
  const auto text = run({"block", "2", "1", "--ordering", "constant0", "--format", "text"});
  CHECK(text.out.find("block: aab\n") != std::string::npos);
  CHECK(run({"block", "2", "1", "--ordering", "constant0", "--format", "csv"}).code == 2);
  CHECK(run({"block", "2", "1", "--ordering", "constant0", "--format", "xml"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"block", "2"}).code == 2);
  CHECK(run({"block", "2", "2"}).code == 2);
  CHECK(run({"block", "2", "2", "--ordering", "nope"}).code == 2);
  CHECK(run({"block", "20", "20", "--ordering", "constant0", "--max-mem", "1"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("block cache directory") {
  const auto dir = std::filesystem::temp_directory_path() / "adiclab-cli-test-cache";
  std::filesystem::remove_all(dir);
  ::setenv("ADICLAB_CACHE_DIR", dir.c_str(), 1);
  const auto first = run({"block", "5", "4", "--ordering", "seeded:3"});
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  const auto second = run({"block", "5", "4", "--ordering", "seeded:3"});
  CHECK(second.out == first.out);
  CHECK(second.json()["block"] == basic_block(OrderingTable::seeded(3), 5, 4));
  ::unsetenv("ADICLAB_CACHE_DIR");
  std::filesystem::remove_all(dir);
}

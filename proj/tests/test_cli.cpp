#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "shiftforge/cli.hpp"
#include "shiftforge/json_io.hpp"

using namespace shiftforge;

namespace {

std::string data(const char* name) { return std::string(SHIFTFORGE_DATA_DIR) + "/" + name; }

struct Run {
  int code = 0;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("count and entropy") {
  auto r = cli({"count", "--sft", data("golden.json"), "--window", "30"});
  REQUIRE(r.code == 0);
  Json j = parse_json(r.out);
  CHECK(j["schema"] == "shiftforge-report/1");
  CHECK(j["command"] == "count");
  CHECK(j["tier"] == "exact-1D");
  CHECK(j["result"]["count"] == "2178309");
  auto e = cli({"entropy", "--sft", data("golden.json"), "--window", "30"});
  REQUIRE(e.code == 0);
  Json je = parse_json(e.out);
  CHECK(je["result"]["entropy"].get<double>() == doctest::Approx(0.4865).epsilon(1e-3));
  auto d2 = cli({"entropy", "--sft", data("golden2d.json"), "--window", "3", "--margin", "1"});
  REQUIRE(d2.code == 0);
  CHECK(parse_json(d2.out)["tier"] == "local-margin");
}

TEST_CASE("tiling commands") {
  auto r = cli({"tiling", "verify", "--tiling", data("box2x2.json"), "--window", "4"});
  CHECK(r.code == 0);
  auto a = cli({"tiling", "approx", "--tiling", data("box3.json"), "--window", "10", "--k", "2"});
  REQUIRE(a.code == 0);
  CHECK(parse_json(a.out)["command"] == "tiling approx");
  auto bad = cli({"tiling", "encode", "--tiling", data("bad_shape.json"), "--window", "4"});
  CHECK(bad.code == 2);
}

TEST_CASE("comb writes a report and a CSV") {
  std::string out = "/tmp/shiftforge_cli_comb.json", csv = "/tmp/shiftforge_cli_comb.csv";
  auto r = cli({"comb", "--sft", data("golden.json"), "--L", "4", "--window", "24", "--out", out, "--csv", csv});
  REQUIRE(r.code == 0);
  Json j = read_json_file(out);
  CHECK(j["result"]["terminal"] == true);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("census") != std::string::npos);
  std::remove(out.c_str());
  std::remove(csv.c_str());
}

TEST_CASE("cover and counterexample commands") {
  auto b = cli({"cover", "build", "--sofic", data("even.json"), "--L", "3"});
  REQUIRE(b.code == 0);
  Json jb = parse_json(b.out);
  CHECK(jb["result"]["projects_onto"] == true);
  CHECK(jb["result"]["typing_violations"] == 0);
  auto g = cli({"cover", "gap", "--sft", data("golden.json"), "--factor", data("full2.json"), "--window", "10"});
  REQUIRE(g.code == 0);
  auto f = cli({"cx", "freq", "--levels", "3"});
  REQUIRE(f.code == 0);
  auto n = cli({"cx", "find", "--n", "3"});
  REQUIRE(n.code == 0);
  CHECK(parse_json(n.out)["result"]["center"] == 20288);
  auto z = cli({"cx", "refute", "--n", "3", "--k", "4"});
  CHECK(z.code == 2);  // n <= k is refused
}

TEST_CASE("exit codes and diagnostics") {
  CHECK(cli({}).code == 2);
  auto u = cli({"count", "--sft", data("golden.json"), "--window", "3", "--bogus"});
  CHECK(u.code == 2);
  CHECK(u.err.find("error:") != std::string::npos);
  CHECK(cli({"count", "--sft", "/nonexistent.json", "--window", "3"}).code == 2);
  std::string bad = "/tmp/shiftforge_cli_bad.json";
  {
    std::ofstream o(bad);
    o << "{\"dim\": 1,";
  }
  auto m = cli({"count", "--sft", bad, "--window", "3"});
  CHECK(m.code == 2);
  CHECK(m.err.find("byte") != std::string::npos);
  std::remove(bad.c_str());
  auto v = cli({"validate", data("bad_shape.json")});
  CHECK(v.code == 0);
  CHECK(v.out.find("origin") != std::string::npos);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("reports are deterministic") {
  std::vector<std::string> comb{"comb", "--sft", data("golden.json"), "--L", "6", "--eps", "0.3", "--window", "60"};
  CHECK(cli(comb).out == cli(comb).out);
  std::vector<std::string> gap{"cover", "gap", "--sofic", data("even.json"), "--L", "3", "--seed", "9"};
  CHECK(cli(gap).out == cli(gap).out);
}

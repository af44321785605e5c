#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "catch_amalgamated.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "skeinhom/surface.hpp"

using nlohmann::json;
using namespace skeinhom;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is folded into out when asked.
Run run(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(SKEINHOM_CLI) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(SKEINHOM_DATA) + "/" + name; }

std::string hom_args(const std::string& spec, const std::string& t, const std::string& s) {
  return "--spec " + data(spec) + " --t " + data(t) + " --s " + data(s);
}

}  // namespace

TEST_CASE("tl basis lists Catalan many matchings", "[cli]") {
  auto r = run("tl basis 6 --out json");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["count"] == oracle::catalan(3));
  CHECK(j["matchings"].size() == 5);
  CHECK(j["matchings"][0] == "[1,0,3,2,5,4]");
  CHECK(run("tl basis 7").code == 3);
}

TEST_CASE("spin theta prints quantum integers by name", "[cli]") {
  auto r = run("spin theta 1 1 0");
  CHECK(r.code == 0);
  CHECK(r.out == "[2] = q^-1 + q\n");
  CHECK(run("spin theta 1 1 2").out == "[3] = q^-2 + 1 + q^2\n");
  CHECK(run("spin theta 1 1 1").out == "0\n");
}

TEST_CASE("surface hom matches the library and is deterministic", "[cli]") {
  const std::string args = "surface hom " + hom_args("annulus.json", "circle.json", "circle.json") +
                           " --hmin -2 --qmax 4 --out json";
  auto first = run(args);
  REQUIRE(first.code == 0);
  for (int threads : {1, 2, 8}) {
    auto again = run(args + " --threads " + std::to_string(threads));
    CHECK(again.code == 0);
    CHECK(again.out == first.out);
  }
  auto j = json::parse(first.out);
  const Window w{-2, 0, 0, 4};
  const auto h = hom_homology(HomComplex(standard_annulus(), essential_circle(), essential_circle(), -1, {}, w.hmin), w);
  REQUIRE(j["cells"].size() == h.cells.size());
  std::size_t k = 0;
  for (const auto& [ij, c] : h.cells) {
    const auto& cell = j["cells"][k++];
    CHECK(cell["i"] == ij.first);
    CHECK(cell["j"] == ij.second);
    CHECK(cell["betti"] == c.betti);
    CHECK(cell["torsion"].get<std::vector<std::int64_t>>() == c.torsion);
  }
  CHECK(j["window"]["hmin"] == -2);
}

TEST_CASE("csv output has the fixed columns", "[cli]") {
  auto r = run("--out csv surface hom " + hom_args("annulus.json", "circle.json", "circle.json") + " --hmin -3 --qmax 6");
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "command,i,j,betti,torsion\n"
        "surface hom,-3,6,1,\n"
        "surface hom,-2,6,1,\n"
        "surface hom,-1,2,1,\n"
        "surface hom,-1,4,0,2\n"
        "surface hom,0,0,1,\n"
        "surface hom,0,2,1,\n");
}

TEST_CASE("h0 of the disk arc and the coarsening check", "[cli]") {
  auto r = run("surface h0 " + hom_args("disk.json", "arc.json", "arc.json") + " --qmax 4 --out json");
  REQUIRE(r.code == 0);
  const auto h = json::parse(r.out);
  std::vector<int> ranks;
  for (const auto& e : h["ranks"]) ranks.push_back(e["rank"]);
  CHECK(ranks == std::vector<int>{1, 0, 1, 0, 0});

  auto c = run("coarsen-check " + hom_args("annulus2.json", "circle2.json", "circle2.json") +
               " --seam g2 --hmin -2 --qmax 4 --depth 3 --out json");
  REQUIRE(c.code == 0);
  auto j = json::parse(c.out);
  CHECK(j["tables_agree"] == true);
  CHECK(j["cone_acyclic"] == true);
  CHECK(j["fine"]["cells"] == j["coarse"]["cells"]);
}

TEST_CASE("spin pairing and crosscheck", "[cli]") {
  auto p = run("spin pairing --net " + data("triangle112.json") + " --out json");
  REQUIRE(p.code == 0);
  auto j = json::parse(p.out);
  CHECK(j["value"] == "q^-2 + 1 + q^2");
  CHECK(j["series"] == json::parse("[[-2, 1], [0, 1], [2, 1]]"));
  auto x = run("spin crosscheck --scenario bproj2 --order 9 --out json");
  REQUIRE(x.code == 0);
  j = json::parse(x.out);
  CHECK(j["mismatches"].empty());
  CHECK(j["computed"] == json::parse("[[1, 1], [3, -1], [5, 1], [7, -1], [9, 1]]"));
  CHECK(j["prediction"] == "q / (1 + q^2)");
}

TEST_CASE("exit codes and error reports", "[cli]") {
  CHECK(run("spin crosscheck --scenario bproj2 --order 9 --depth 2").code == 2);
  auto spec = run("--out json surface hom " + hom_args("dangling.json", "arc.json", "arc.json"), true);
  CHECK(spec.code == 3);
  auto e = json::parse(spec.out);
  CHECK(e["error"]["code"] == "spec");
  CHECK(e["error"]["message"].get<std::string>().find("seam 'g'") != std::string::npos);
  auto boundary = run("spin pairing --net " + data("triangle112.json") + " --with " + data("triangle110.json"), true);
  CHECK(boundary.code == 3);
  CHECK(boundary.out.find("arc 'c'") != std::string::npos);
  auto bad = run("spin pairing --net " + data("triangle111.json"), true);
  CHECK(bad.code == 1);
  CHECK(bad.out.find("[admissibility]") != std::string::npos);
  CHECK(run("--frobnicate tl basis 4").code == 64);
  CHECK(run("tl basis 4 --hmin 1 --hmax 0").code == 64);
  CHECK(run("bproj --strands 2").code == 64);
  CHECK(run("surface hom " + hom_args("annulus.json", "arc.json", "circle.json"), true).code == 3);
}

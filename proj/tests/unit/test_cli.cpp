#include <doctest.h>

#include <filesystem>
#include <random>
#include <fstream>
#include <sstream>

#include "chromatic/serialize.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using chromatic::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("chromatic-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("build writes a protocol complex") {
  TempDir dir;
  auto r = run({"build", "--model", "is", "--task", "majority0", "--rounds", "1", "--out", dir / "p.json"});
  CHECK(r.code == 0);
  auto j = chromatic::Json::parse(slurp(dir / "p.json"));
  CHECK(j["facets"].size() == 104);
  // The loader accepts what build writes, unchanged.
  CHECK(chromatic::dump(chromatic::complex_to_json(chromatic::complex_from_json(j))) == slurp(dir / "p.json"));

  auto partial = run({"build", "--model", "tas", "--partial-qualify", "tas-loser", "--out", dir / "t.json"});
  CHECK(partial.code == 0);
  CHECK(chromatic::Json::parse(slurp(dir / "t.json"))["facets"].size() == 90);
}

TEST_CASE("solve reports witnesses and certificates") {
  TempDir dir;
  REQUIRE(run({"build", "--scenario", "ub1", "--out", dir / "ub.json"}).code == 0);
  auto ok = run({"solve", "--task", "majority0", "--protocol", dir / "ub.json", "--witness", dir / "w.json"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("solvable\n", 0) == 0);
  CHECK(chromatic::Json::parse(slurp(dir / "w.json")).size() == 54);

  REQUIRE(run({"build", "--scenario", "is1", "--out", dir / "is.json"}).code == 0);
  auto no = run({"solve", "--task", "majority0", "--protocol", dir / "is.json", "--witness", dir / "c.json"});
  CHECK(no.code == 1);
  CHECK(chromatic::Json::parse(slurp(dir / "c.json"))["verdict"] == "unsolvable");

  auto courteous = run({"solve", "--task", "majority0", "--protocol", dir / "ub.json", "--algorithm", "courteous"});
  CHECK(courteous.code == 0);
  CHECK(courteous.out == "valid\nviolations: 0\n");
}

TEST_CASE("eval with expectations") {
  TempDir dir;
  REQUIRE(run({"build", "--scenario", "is1", "--out", dir / "is.json"}).code == 0);
  auto all_false = run({"eval", "--complex", dir / "is.json", "--formula-str", "Phi", "--expect", "false"});
  CHECK(all_false.code == 0);
  CHECK(all_false.out.find("true at 0 of 104 worlds") != std::string::npos);
  CHECK(run({"eval", "--complex", dir / "is.json", "--formula-str", "Phi", "--expect", "true"}).code == 1);

  std::ofstream(dir / "f.txt") << "(K a (= input a 0))\n";
  auto one = run({"eval", "--complex", dir / "is.json", "--formula", dir / "f.txt", "--world", "0"});
  CHECK(one.code == 0);
  CHECK(one.out.rfind("w0 ", 0) == 0);
  CHECK(run({"eval", "--complex", dir / "is.json", "--formula-str", "(K a", "--all"}).code == 2);
  CHECK(run({"eval", "--complex", dir / "is.json", "--formula-str", "true", "--world", "500"}).code == 2);
}

TEST_CASE("obstruct writes a report") {
  TempDir dir;
  REQUIRE(run({"build", "--scenario", "is1", "--out", dir / "is.json"}).code == 0);
  auto r = run({"obstruct", "--task", "majority0", "--protocol", dir / "is.json", "--formula-str", "Phi", "--world",
                "0", "--out", dir / "o.json"});
  CHECK(r.code == 0);
  CHECK(chromatic::Json::parse(slurp(dir / "o.json"))["verdict"] == "obstruction-confirmed");
}

TEST_CASE("muddy children demo") {
  auto r = run({"demo", "muddy-children"});
  CHECK(r.code == 0);
  for (const char* line : {"initial: 8 worlds", "announce: at least one child is muddy: 7 worlds",
                           "question 1: nobody raises their hand: 4 worlds",
                           "question 2: nobody raises their hand: 1 world", "  100 knows own mud: pink\n",
                           "  111 knows own mud: pink blue yellow\n"}) {
    CHECK_MESSAGE(r.out.find(line) != std::string::npos, line);
  }
  CHECK(run({"demo", "muddy-children", "--children", "4"}).out.find("question 3: nobody raises their hand: 1 world") !=
        std::string::npos);
}

TEST_CASE("export") {
  TempDir dir;
  REQUIRE(run({"build", "--scenario", "tas1", "--out", dir / "t.json"}).code == 0);
  auto dot = run({"export", "--complex", dir / "t.json", "--format", "dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("graph dual {", 0) == 0);
  CHECK(run({"export", "--complex", dir / "t.json", "--format", "json", "--out", dir / "copy.json"}).code == 0);
  CHECK(slurp(dir / "copy.json") == slurp(dir / "t.json"));
}

TEST_CASE("exit codes for bad usage and bad input") {
  TempDir dir;
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"build"}).code == 2);
  CHECK(run({"build", "--model", "gossip"}).code == 2);
  CHECK(run({"build", "--scenario", "ub1", "--model", "is"}).code == 2);
  CHECK(run({"build", "--model", "is", "--agents", "a,a"}).code == 2);
  CHECK(run({"demo", "muddy-children", "--children", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"eval", "--complex", dir / "missing.json", "--formula-str", "true"}).code == 3);
  std::ofstream(dir / "junk.json") << "{ not json";
  CHECK(run({"export", "--complex", dir / "junk.json"}).code == 3);
  std::ofstream(dir / "bad.json") << R"({"agents":["a","b"],"vertices":[],"facets":[["x","y"]]})";
  CHECK(run({"export", "--complex", dir / "bad.json"}).code == 3);
  REQUIRE(run({"build", "--scenario", "is2", "--out", dir / "is2.json"}).code == 0);
  CHECK(run({"solve", "--task", "majority0", "--protocol", dir / "is2.json", "--algorithm", "tas-two-round"}).code == 3);
}

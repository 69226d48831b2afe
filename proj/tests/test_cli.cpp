#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "kposet/analysis.hpp"
#include "kposet/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "kposet-cli-tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(KPOSET_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ostringstream o, e;
  o << std::ifstream(out).rdbuf();
  e << std::ifstream(err).rdbuf();
  r.out = o.str();
  r.err = e.str();
  return r;
}

std::string data(const std::string& name) {
  return std::string(KPOSET_DATA_DIR) + "/" + name;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("classify") {
  const auto r = run("classify " + data("tent.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "tent k=2 card=aleph0\n");

  CHECK(run("classify " + data("point.json")).out == "point\n");
  // An aleph0-fan has many maximal nodes.
  CHECK(run("classify " + data("fan.json")).exit_code == 1);
}

TEST_CASE("validate") {
  const auto r = run("validate " + data("tent.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("k-poset: yes") != std::string::npos);
  CHECK(r.out.find("proper: yes") != std::string::npos);
  CHECK(r.out.find("card: aleph0") != std::string::npos);

  write(work_dir() / "chain.json",
        R"({"nodes": ["w", "v", "m"], "covers": [["w", "v"], ["v", "m"]]})");
  const auto bad = run("validate " + (work_dir() / "chain.json").string());
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("k-poset: no") != std::string::npos);
  CHECK(bad.out.find("violation k3") != std::string::npos);

  write(work_dir() / "cycle.json", R"({"nodes": ["a", "b"], "covers": [["a","b"],["b","a"]]})");
  CHECK(run("validate " + (work_dir() / "cycle.json").string()).exit_code == 2);
  CHECK(run("validate " + (work_dir() / "missing.json").string()).exit_code == 2);

  // A K-poset whose classes disagree with |U| is flagged as improper.
  write(work_dir() / "lopsided.json", R"({
    "nodes": ["m", "t", "t1", "t2"],
    "covers": [["t", "m"], ["t1", "t"], ["t2", "t"]],
    "classes": [
      {"up": ["m"], "low": "t1", "card": "aleph0"},
      {"up": ["m"], "low": "t2", "card": "beta"}
    ]
  })");
  const auto lopsided = run("validate " + (work_dir() / "lopsided.json").string());
  CHECK(lopsided.exit_code == 1);
  CHECK(lopsided.out.find("k-poset: yes") != std::string::npos);
  CHECK(lopsided.out.find("proper: no") != std::string::npos);
  CHECK(lopsided.out.find("violation proper") != std::string::npos);
}

TEST_CASE("split then verify-map") {
  const fs::path out = work_dir() / "split";
  const auto r = run("split " + data("d2.json") + " m --out-dir " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("fiber: m#1 m#2") != std::string::npos);
  REQUIRE(fs::exists(out / "upper.json"));
  REQUIRE(fs::exists(out / "map.json"));

  const std::string verify_args =
      (out / "upper.json").string() + " " + data("d2.json") + " " + (out / "map.json").string();
  const auto ok = run("verify-map " + verify_args);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "ok\n");

  // Drop one fiber node from the map: the preimage no longer matches.
  std::ostringstream buf;
  buf << std::ifstream(out / "map.json").rdbuf();
  std::string tampered = buf.str();
  const auto at = tampered.find("\"m#1\", ");
  REQUIRE(at != std::string::npos);
  tampered.erase(at, 7);
  write(out / "tampered.json", tampered);
  const auto bad = run("verify-map " + (out / "upper.json").string() + " " + data("d2.json") +
                       " " + (out / "tampered.json").string());
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("violation fiber") != std::string::npos);
}

TEST_CASE("simplify writes the chain directory") {
  const fs::path out = work_dir() / "chain";
  const auto r = run("simplify " + data("d2.json") + " --out-dir " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("e-sequence: 1 0") != std::string::npos);
  CHECK(fs::exists(out / "stage0.json"));
  CHECK(fs::exists(out / "stage1.json"));
  CHECK(fs::exists(out / "map1.json"));
  CHECK(fs::exists(out / "summary.json"));
  CHECK(!fs::exists(out / "map0.json"));

  std::ostringstream buf;
  buf << std::ifstream(out / "summary.json").rdbuf();
  CHECK(buf.str().find("\"e_sequence\": [1, 0]") != std::string::npos);

  // Each written stage verifies against the one before it.
  const std::string verify_args = (out / "stage1.json").string() + " " +
                                  (out / "stage0.json").string() + " " +
                                  (out / "map1.json").string();
  CHECK(run("verify-map " + verify_args).exit_code == 0);

  const auto simple = run("simplify " + data("tent.json") + " --out-dir " +
                          (work_dir() / "chain0").string());
  CHECK(simple.exit_code == 0);
  CHECK(simple.out.find("e-sequence: 0") != std::string::npos);
}

TEST_CASE("glue is the inverse surface") {
  const fs::path split_dir = work_dir() / "split2";
  REQUIRE(run("split " + data("d2.json") + " m --out-dir " + split_dir.string()).exit_code == 0);
  const fs::path out = work_dir() / "glued";
  const auto r = run("glue " + (split_dir / "upper.json").string() + " m#1,m#2 --out-dir " +
                     out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("glued: m") != std::string::npos);
  REQUIRE(fs::exists(out / "glued.json"));

  const std::string verify_args = (split_dir / "upper.json").string() + " " +
                                  (out / "glued.json").string() + " " +
                                  (out / "map.json").string();
  CHECK(run("verify-map " + verify_args).exit_code == 0);
  CHECK(run("classify " + (out / "glued.json").string()).out == "not-simple d=2 at m\n");

  CHECK(run("glue " + data("d2.json") + " h1").exit_code == 1);
}

TEST_CASE("gen emits parseable canonical documents") {
  const auto r = run("gen --seed 3 --n-min 3 --n-max2 1 --n-h 1 --card aleph0");
  CHECK(r.exit_code == 0);
  const auto p = kposet::parse_poset(r.out);
  CHECK(kposet::analyze_k(p).is_proper);
  CHECK(kposet::serialize_poset(p) == r.out);

  const auto again = run("gen --seed 3 --n-min 3 --n-max2 1 --n-h 1 --card aleph0");
  CHECK(again.out == r.out);

  CHECK(run("gen --n-min 1 --n-h 2").exit_code == 1);
  CHECK(run("gen --card nonsense").exit_code == 2);
}

TEST_CASE("export-dot") {
  const auto r = run("export-dot " + data("tent.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("digraph", 0) == 0);
  CHECK(r.out.find("shape=ellipse") != std::string::npos);
}

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "kposet/analysis.hpp"
#include "kposet/dot.hpp"
#include "kposet/io.hpp"
#include "kposet/transform.hpp"

using namespace kposet;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("the shipped tent document parses to the aleph0 tent") {
  const auto t = parse_poset(slurp(std::string(KPOSET_DATA_DIR) + "/tent.json"));
  CHECK(t == make_tent(2, CardTag::aleph0()));
  CHECK(classify_single_max(t) == Classification::tent(2, CardTag::aleph0()));
}

TEST_CASE("serialization is canonical") {
  const auto canonical = serialize_poset(make_tent(2, CardTag::aleph0()));
  // Same poset written sloppily: shuffled nodes, redundant transitive cover,
  // split class entries that must merge.
  const std::string sloppy = R"({
    "covers": [["t", "m"], ["t2", "t"], ["t1", "t"], ["t1", "m"]],
    "nodes": ["t2", "m", "t1", "t"],
    "classes": [
      {"up": ["m"], "low": "t2", "card": "aleph0"},
      {"up": ["m"], "low": "t1", "card": "aleph0"},
      {"up": ["m"], "low": "t1", "card": "aleph0"}
    ]
  })";
  CHECK(serialize_poset(parse_poset(sloppy)) == canonical);
}

TEST_CASE("parse round trip is the identity") {
  for (const auto& p :
       {make_point(), make_fan(CardTag::finite(3)), make_fan(CardTag::beta()),
        make_tent(1, CardTag::aleph0()), make_tent(4, CardTag::beta())}) {
    const auto back = parse_poset(serialize_poset(p));
    CHECK(back == p);
    CHECK(serialize_poset(back) == serialize_poset(p));
  }
}

TEST_CASE("parse rejections") {
  CHECK_THROWS_AS(parse_poset(R"({"nodes": []})"), ValidationError);
  CHECK_THROWS_AS(parse_poset(R"({"covers": []})"), ValidationError);
  CHECK_THROWS_AS(parse_poset(R"({"nodes": ["a"], "covers": [["a", "b"]]})"), ValidationError);
  CHECK_THROWS_AS(
      parse_poset(R"({"nodes": ["a"], "classes": [{"up": [], "low": "a", "card": "huge"}]})"),
      ValidationError);

  try {
    parse_poset(R"({"nodes": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]})");
    FAIL("cycle accepted");
  } catch (const ValidationError& e) {
    REQUIRE(!e.violations.empty());
    CHECK(e.violations.front().axiom == "antisymmetry");
  }

  try {
    parse_poset("{\n  \"nodes\": [\"a\",\n");
    FAIL("syntax error accepted");
  } catch (const ParseError& e) {
    CHECK(e.line >= 2);
  }
}

TEST_CASE("dot export of the tent") {
  const auto dot = export_dot(make_tent(2, CardTag::aleph0()));
  CHECK(count_occurrences(dot, "shape=ellipse") == 2);
  CHECK(count_occurrences(dot, " -> ") == 7);  // 3 explicit Hasse edges + 2 per class
  CHECK(count_occurrences(dot, "\"aleph0\"") == 2);
  CHECK(dot.find("digraph") == 0);
  // 4 explicit boxes: the node stanza defaults to box shape.
  CHECK(count_occurrences(dot, "  \"m\";") == 1);
}

TEST_CASE("certificate maps round trip") {
  const auto v = parse_poset(slurp(std::string(KPOSET_DATA_DIR) + "/d2.json"));
  const auto cert = split_at(v, "m");
  const std::string text = serialize_certificate_map(cert);
  const auto back = parse_certificate(cert.upper(), cert.lower(), text);
  CHECK(back.split_node == cert.split_node);
  CHECK(back.fiber == cert.fiber);
  CHECK(back.map.node_map == cert.map.node_map);
  CHECK(back.map.class_map == cert.map.class_map);
  CHECK(verify_splitting(back).empty());
  CHECK(serialize_certificate_map(back) == text);
}

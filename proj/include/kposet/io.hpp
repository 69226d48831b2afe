#pragma once

#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kposet/poset.hpp"
#include "kposet/transform.hpp"

namespace kposet {

struct ParseError : std::runtime_error {
  std::size_t line = 0;
  std::size_t column = 0;
  ParseError(std::size_t l, std::size_t c, const std::string& what)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + what),
        line(l),
        column(c) {}
};

struct ValidationError : std::runtime_error {
  std::vector<Violation> violations;
  explicit ValidationError(std::vector<Violation> v)
      : std::runtime_error(v.empty() ? "invalid document" : v.front().to_string()),
        violations(std::move(v)) {}
};

namespace detail {

inline std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                       std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline std::string class_key_json(const std::vector<NodeId>& ups, const NodeId& low) {
  std::string s = "{\"up\": [";
  for (std::size_t i = 0; i < ups.size(); ++i)
    s += (i ? ", " : "") + json_quote(ups[i]);
  s += "], \"low\": " + json_quote(low);
  return s;
}

}  // namespace detail

// Canonical document bytes: nodes sorted, covers sorted, classes sorted by
// key, fixed layout. Equal posets serialize identically.
inline std::string serialize_poset(const SkeletonPoset& p) {
  std::string out = "{\n  \"nodes\": [";
  const auto& nodes = p.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out += (i ? ", " : "") + detail::json_quote(nodes[i]);
  out += "],\n";

  auto covers = p.cover_pairs();
  std::sort(covers.begin(), covers.end());
  out += "  \"covers\": [";
  for (std::size_t i = 0; i < covers.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += "[" + detail::json_quote(covers[i].first) + ", " +
           detail::json_quote(covers[i].second) + "]";
  }
  out += covers.empty() ? "],\n" : "\n  ],\n";

  out += "  \"classes\": [";
  const auto& classes = p.classes();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += detail::class_key_json(classes[i].ups, classes[i].low);
    out += ", \"card\": " + detail::json_quote(classes[i].card.to_string()) + "}";
  }
  out += classes.empty() ? "]\n" : "\n  ]\n";
  return out + "}\n";
}

namespace detail {

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw ParseError(line, col, "json syntax error");
  }
}

inline void need(bool ok, const std::string& what) {
  if (!ok) throw ValidationError({{"document", {}, what}});
}

inline ClassKey class_key_from_json(const nlohmann::json& j) {
  need(j.is_object() && j.contains("low") && j["low"].is_string(),
       "class keys need up and low");
  std::vector<NodeId> ups;
  if (j.contains("up")) {
    need(j["up"].is_array(), "class up must be an array of labels");
    for (const auto& u : j["up"]) {
      need(u.is_string(), "class up must be an array of labels");
      ups.push_back(u.get<std::string>());
    }
  }
  std::sort(ups.begin(), ups.end());
  return {std::move(ups), j["low"].get<std::string>()};
}

inline ClassRecord class_from_json(const nlohmann::json& j) {
  need(j.is_object() && j.contains("low") && j.contains("card"),
       "class entries need up, low and card");
  ClassRecord c;
  if (j.contains("up")) {
    need(j["up"].is_array(), "class up must be an array of labels");
    for (const auto& u : j["up"]) {
      need(u.is_string(), "class up must be an array of labels");
      c.ups.push_back(u.get<std::string>());
    }
  }
  need(j["low"].is_string(), "class low must be a label");
  c.low = j["low"].get<std::string>();
  need(j["card"].is_string(), "class card must be a string");
  try {
    c.card = CardTag::parse(j["card"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ValidationError({{"document", {c.low}, e.what()}});
  }
  return c;
}

}  // namespace detail

// Reads the JSON document schema: nodes, cover pairs [lower, upper], and
// classes. The transitive closure is computed, duplicate class keys merge by
// cardinal addition, and the result must pass validate().
inline SkeletonPoset parse_poset(const std::string& text) {
  const nlohmann::json j = detail::parse_json(text);
  detail::need(j.is_object() && j.contains("nodes") && j["nodes"].is_array(),
               "document needs a nodes array");
  std::vector<NodeId> nodes;
  for (const auto& n : j["nodes"]) {
    detail::need(n.is_string(), "nodes must be strings");
    nodes.push_back(n.get<std::string>());
  }
  detail::need(!nodes.empty(), "nodes list must not be empty");

  std::vector<std::pair<NodeId, NodeId>> covers;
  if (j.contains("covers")) {
    detail::need(j["covers"].is_array(), "covers must be an array");
    for (const auto& c : j["covers"]) {
      detail::need(c.is_array() && c.size() == 2 && c[0].is_string() && c[1].is_string(),
                   "covers must be [lower, upper] label pairs");
      covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
  }

  std::vector<ClassRecord> classes;
  if (j.contains("classes")) {
    detail::need(j["classes"].is_array(), "classes must be an array");
    for (const auto& c : j["classes"]) classes.push_back(detail::class_from_json(c));
  }

  SkeletonPoset p;
  try {
    p = SkeletonPoset::from_covers(std::move(nodes), covers, std::move(classes));
  } catch (const std::invalid_argument& e) {
    throw ValidationError({{"document", {}, e.what()}});
  }
  auto violations = p.validate();
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return p;
}

// The certificate map alone; the two posets travel in their own documents.
inline std::string serialize_certificate_map(const SplittingCertificate& cert) {
  std::string out = "{\n  \"split_node\": " + detail::json_quote(cert.split_node) + ",\n";
  out += "  \"fiber\": [";
  for (std::size_t i = 0; i < cert.fiber.size(); ++i)
    out += (i ? ", " : "") + detail::json_quote(cert.fiber[i]);
  out += "],\n  \"node_map\": [";
  std::size_t i = 0;
  for (const auto& [src, dst] : cert.map.node_map) {
    out += i++ ? ",\n    " : "\n    ";
    out += "[" + detail::json_quote(src) + ", " + detail::json_quote(dst) + "]";
  }
  out += cert.map.node_map.empty() ? "],\n" : "\n  ],\n";
  out += "  \"class_map\": [";
  i = 0;
  for (const auto& [src, dst] : cert.map.class_map) {
    out += i++ ? ",\n    " : "\n    ";
    out += "[" + detail::class_key_json(src.first, src.second) + "}, " +
           detail::class_key_json(dst.first, dst.second) + "}]";
  }
  out += cert.map.class_map.empty() ? "]\n" : "\n  ]\n";
  return out + "}\n";
}

inline SplittingCertificate parse_certificate(SkeletonPoset upper, SkeletonPoset lower,
                                              const std::string& map_text) {
  const nlohmann::json j = detail::parse_json(map_text);
  detail::need(j.is_object() && j.contains("split_node") && j["split_node"].is_string(),
               "certificate needs a split_node");
  SplittingCertificate cert{j["split_node"].get<std::string>(), {}, PosetMap{}};
  detail::need(j.contains("fiber") && j["fiber"].is_array(), "certificate needs a fiber");
  for (const auto& f : j["fiber"]) {
    detail::need(f.is_string(), "fiber entries must be labels");
    cert.fiber.push_back(f.get<std::string>());
  }
  std::sort(cert.fiber.begin(), cert.fiber.end());

  detail::need(j.contains("node_map") && j["node_map"].is_array(),
               "certificate needs a node_map");
  for (const auto& e : j["node_map"]) {
    detail::need(e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string(),
                 "node_map entries must be [source, target] pairs");
    cert.map.node_map[e[0].get<std::string>()] = e[1].get<std::string>();
  }
  if (j.contains("class_map")) {
    detail::need(j["class_map"].is_array(), "class_map must be an array");
    for (const auto& e : j["class_map"]) {
      detail::need(e.is_array() && e.size() == 2, "class_map entries must be pairs");
      cert.map.class_map[detail::class_key_from_json(e[0])] = detail::class_key_from_json(e[1]);
    }
  }
  cert.map.source = std::move(upper);
  cert.map.target = std::move(lower);
  return cert;
}

}  // namespace kposet

#pragma once

#include <string>

#include "kposet/io.hpp"
#include "kposet/poset.hpp"

namespace kposet {

// GraphViz rendering: explicit nodes as boxes, each class as one ellipse
// labelled with its cardinality, Hasse edges only.
inline std::string export_dot(const SkeletonPoset& p) {
  std::string out = "digraph kposet {\n";
  out += "  rankdir=BT;\n";
  out += "  node [shape=box];\n";
  for (const auto& n : p.nodes())
    out += "  " + detail::json_quote(n) + ";\n";

  std::string class_prefix = "class";
  bool clash = true;
  while (clash) {
    clash = false;
    for (std::size_t i = 0; i < p.classes().size(); ++i)
      if (p.contains(class_prefix + std::to_string(i))) clash = true;
    if (clash) class_prefix = "_" + class_prefix;
  }
  for (std::size_t i = 0; i < p.classes().size(); ++i) {
    const auto& c = p.classes()[i];
    out += "  " + detail::json_quote(class_prefix + std::to_string(i)) +
           " [shape=ellipse, label=" + detail::json_quote(c.card.to_string()) + "];\n";
  }

  auto covers = p.cover_pairs();
  std::sort(covers.begin(), covers.end());
  for (const auto& [lo, hi] : covers)
    out += "  " + detail::json_quote(lo) + " -> " + detail::json_quote(hi) + ";\n";
  for (std::size_t i = 0; i < p.classes().size(); ++i) {
    const auto& c = p.classes()[i];
    const std::string id = detail::json_quote(class_prefix + std::to_string(i));
    out += "  " + detail::json_quote(c.low) + " -> " + id + ";\n";
    for (const auto& up : c.ups)
      out += "  " + id + " -> " + detail::json_quote(up) + ";\n";
  }
  return out + "}\n";
}

}  // namespace kposet

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kposet/poset.hpp"

namespace kposet {

// |U|: explicit node count plus all class cardinalities.
inline CardTag poset_card(const SkeletonPoset& p) {
  CardTag total = CardTag::finite(static_cast<std::uint64_t>(p.size()));
  for (const auto& c : p.classes()) total += c.card;
  return total;
}

struct KReport {
  bool is_k = false;
  bool is_proper = false;
  CardTag card;
  std::vector<Violation> violations;  // axioms: k1 | k2 | k3 | proper | empty
};

namespace detail {

// A virtual 2-chain u > x > w: an explicit x strictly between, or an
// anonymous member of a class keyed under u with low w. Returns the chain as
// witness nodes (the middle is omitted when it is anonymous).
inline std::optional<std::vector<NodeId>> find_two_chain(const SkeletonPoset& p,
                                                         const NodeId& u, const NodeId& w) {
  for (const auto& x : p.nodes())
    if (p.lt(w, x) && p.lt(x, u)) return std::vector<NodeId>{u, x, w};
  for (const auto& c : p.classes())
    if (c.low == w && std::binary_search(c.ups.begin(), c.ups.end(), u))
      return std::vector<NodeId>{u, w};
  return std::nullopt;
}

inline bool has_two_chain(const SkeletonPoset& p, const NodeId& u, const NodeId& w) {
  return find_two_chain(p, u, w).has_value();
}

}  // namespace detail

// Decides both K-poset axioms and the properness refinement in one pass.
// check_k / check_proper below read off the two flags.
inline KReport analyze_k(const SkeletonPoset& p) {
  if (!p.validate().empty())
    throw std::invalid_argument("analyze_k requires a valid poset");

  KReport r;
  r.card = poset_card(p);
  if (p.empty()) {
    r.violations.push_back({"empty", {}, "a spectrum is nonempty"});
    return r;
  }

  const auto mins = p.minimals();
  const auto maxs = p.maximals();

  // Condition 1 (min U and H_2 finite) holds for every skeleton: explicit
  // sets are finite and class members sit at height one by construction.

  // Condition 2: mub of distinct minimal pairs is finite. The one-low class
  // rule makes an infinite mub impossible; assert by recomputation anyway.
  for (std::size_t i = 0; i < mins.size(); ++i)
    for (std::size_t j = i + 1; j < mins.size(); ++j) {
      const VirtualSet bounds = p.mub({mins[i], mins[j]});
      for (const auto& c : bounds.classes)
        if (c.card.is_infinite())
          r.violations.push_back({"k2", {mins[i], mins[j]}, "infinite mub"});
    }

  // Condition 3: every 2-chain u > x > w forces an infinite class [u/w].
  for (const auto& u : p.nodes()) {
    if (p.height(u) != 2) continue;
    for (const auto& w : mins) {
      if (!p.lt(w, u)) continue;
      const auto chain = detail::find_two_chain(p, u, w);
      if (!chain) continue;
      const ClassRecord* c = p.find_class({{u}, w});
      if (!c)
        r.violations.push_back({"k3", *chain, "2-chain without class [u/w]"});
      else if (!c->card.is_infinite())
        r.violations.push_back({"k3", *chain, "class [u/w] is finite"});
    }
  }
  r.is_k = r.violations.empty();

  // Properness: classes keyed by one maximal node are absent or full-size.
  std::vector<Violation> proper_violations;
  for (const auto& u : maxs)
    for (const auto& w : mins) {
      const ClassRecord* c = p.find_class({{u}, w});
      if (c && c->card != r.card)
        proper_violations.push_back(
            {"proper", {u, w}, "class card " + c->card.to_string() + " != " + r.card.to_string()});
    }
  r.is_proper = r.is_k && proper_violations.empty();
  r.violations.insert(r.violations.end(), proper_violations.begin(), proper_violations.end());
  return r;
}

inline KReport check_k(const SkeletonPoset& p) { return analyze_k(p); }
inline KReport check_proper(const SkeletonPoset& p) { return analyze_k(p); }

// H_U: minimal nodes plus explicit height-one nodes above >= 2 minimals.
inline std::vector<NodeId> script_h(const SkeletonPoset& p) {
  std::vector<NodeId> out = p.minimals();
  for (const auto& v : p.nodes()) {
    if (p.height(v) != 1) continue;
    int below = 0;
    for (const auto& w : p.nodes())
      if (p.lt(w, v) && p.is_minimal(w)) ++below;
    if (below >= 2) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline NodeId require_single_max(const SkeletonPoset& p, const char* op) {
  const NodeId* m = p.single_max();
  if (!m)
    throw std::invalid_argument(std::string(op) + ": poset must have exactly one maximal node");
  return *m;
}

}  // namespace detail

// H_U^* = H_U minus the unique maximal node.
inline std::vector<NodeId> script_h_star(const SkeletonPoset& p) {
  const NodeId m = detail::require_single_max(p, "script_h_star");
  std::vector<NodeId> out = script_h(p);
  out.erase(std::remove(out.begin(), out.end(), m), out.end());
  return out;
}

// Lambda_V for a poset with a single maximal node of positive height:
// the height-one part of H^*, together with the H^* nodes seeing none of it
// above them. Ascending label order.
inline std::vector<NodeId> lambda_set(const SkeletonPoset& p) {
  const NodeId m = detail::require_single_max(p, "lambda_set");
  if (p.height(m) < 1)
    throw std::invalid_argument("lambda_set: maximal node must have positive height");

  const std::vector<NodeId> hstar = script_h_star(p);
  std::vector<NodeId> h1;  // H_1 cap H^*
  for (const auto& v : hstar)
    if (p.height(v) == 1) h1.push_back(v);

  std::vector<NodeId> out;
  for (const auto& v : hstar) {
    bool none_above = true;
    for (const auto& a : h1)
      if (p.le(v, a)) none_above = false;
    if (p.height(v) == 1 || none_above) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t d_value(const SkeletonPoset& p) { return lambda_set(p).size(); }

// d_{L_P(m)}(m) for an explicit maximal node m of positive height.
inline std::size_t d_local(const SkeletonPoset& p, const NodeId& m) {
  if (!p.is_maximal(m))
    throw std::invalid_argument("d_local: node is not maximal: " + m);
  if (p.height(m) < 1)
    throw std::invalid_argument("d_local: node has height zero: " + m);
  return d_value(down_poset(p, m));
}

namespace detail {

inline void require_proper(const SkeletonPoset& p, const char* op) {
  if (!analyze_k(p).is_proper)
    throw std::invalid_argument(std::string(op) + ": not a proper K-poset");
}

}  // namespace detail

// e(P): number of explicit maximal nodes of positive height with local d > 1.
// Anonymous maximal members never contribute; their down-sets are 1-fans.
inline std::size_t e_count(const SkeletonPoset& p) {
  detail::require_proper(p, "e_count");
  std::size_t e = 0;
  for (const auto& m : p.maximals())
    if (p.height(m) >= 1 && d_local(p, m) > 1) ++e;
  return e;
}

inline bool is_simple(const SkeletonPoset& p) { return e_count(p) == 0; }

// The three shapes of simple single-max proper K-posets, or the refutation.
struct Classification {
  enum class Kind { Point, Fan, Tent, NotSimpleSingleMax };
  Kind kind = Kind::Point;
  CardTag alpha;        // Fan and Tent
  std::uint64_t k = 0;  // Tent minimal count
  std::string reason;   // NotSimpleSingleMax

  static Classification point() { return {Kind::Point, CardTag::finite(1), 0, ""}; }
  static Classification fan(CardTag a) { return {Kind::Fan, a, 0, ""}; }
  static Classification tent(std::uint64_t k, CardTag a) { return {Kind::Tent, a, k, ""}; }
  static Classification not_simple(std::string why) {
    return {Kind::NotSimpleSingleMax, CardTag::finite(0), 0, std::move(why)};
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Point: return "point";
      case Kind::Fan: return "fan card=" + alpha.to_string();
      case Kind::Tent: return "tent k=" + std::to_string(k) + " card=" + alpha.to_string();
      default: return "not-simple " + reason;
    }
  }

  friend bool operator==(const Classification& a, const Classification& b) {
    return a.kind == b.kind && a.alpha == b.alpha && a.k == b.k;
  }
};

// Decides point / 1-fan / beta-tent for a proper K-poset with a single
// maximal node, or reports the d > 1 witness.
inline Classification classify_single_max(const SkeletonPoset& p) {
  detail::require_proper(p, "classify_single_max");
  const NodeId m = detail::require_single_max(p, "classify_single_max");

  if (p.height(m) == 0) return Classification::point();
  const std::size_t d = d_local(p, m);
  if (d > 1)
    return Classification::not_simple("d=" + std::to_string(d) + " at " + m);
  if (p.height(m) == 1) return Classification::fan(CardTag::finite(1));
  return Classification::tent(p.minimals().size(), poset_card(p));
}

// The three shape constructors used by the classification round trips.
inline SkeletonPoset make_point(const NodeId& label = "x") {
  return SkeletonPoset::from_covers({label}, {});
}

inline SkeletonPoset make_fan(CardTag alpha) {
  if (alpha < CardTag::finite(1))
    throw std::invalid_argument("make_fan: need at least one maximal node");
  std::vector<NodeId> nodes{"u"};
  std::vector<std::pair<NodeId, NodeId>> covers;
  std::vector<ClassRecord> classes;
  if (alpha.is_finite()) {
    for (std::uint64_t i = 1; i <= alpha.count(); ++i) {
      nodes.push_back("m" + std::to_string(i));
      covers.emplace_back("u", nodes.back());
    }
  } else {
    classes.push_back({{}, "u", alpha});
  }
  return SkeletonPoset::from_covers(std::move(nodes), covers, std::move(classes));
}

inline SkeletonPoset make_tent(std::uint64_t k, CardTag alpha) {
  if (k == 0) throw std::invalid_argument("make_tent: k must be positive");
  if (!alpha.is_infinite())
    throw std::invalid_argument("make_tent: tents of a K-poset have infinite classes");
  std::vector<NodeId> nodes{"m", "t"};
  std::vector<std::pair<NodeId, NodeId>> covers{{"t", "m"}};
  std::vector<ClassRecord> classes;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const NodeId ti = "t" + std::to_string(i);
    nodes.push_back(ti);
    covers.emplace_back(ti, "t");
    classes.push_back({{"m"}, ti, alpha});
  }
  return SkeletonPoset::from_covers(std::move(nodes), covers, std::move(classes));
}

}  // namespace kposet

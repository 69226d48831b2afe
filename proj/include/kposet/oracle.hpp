#pragma once

// Test-only brute-force implementations. Everything here recomputes the
// definitions literally on a materialized copy of the poset (each class
// replaced by a few explicit stand-in members) so the answers are
// independent of the primary algorithms they are checked against. Class
// members are pairwise incomparable, so small truncations are order-faithful
// for every predicate exercised.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "kposet/poset.hpp"

namespace kposet::oracle {

struct Materialized {
  SkeletonPoset poset;                     // no classes; members are explicit
  std::map<NodeId, ClassKey> member_of;    // stand-in node -> original class
  std::vector<NodeId> original;            // nodes of the source poset
};

inline Materialized materialize(const SkeletonPoset& p, std::size_t per_class = 3) {
  Materialized out;
  out.original = p.nodes();
  std::vector<NodeId> nodes = p.nodes();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (const auto& a : p.nodes())
    for (const auto& b : p.nodes())
      if (p.lt(a, b)) pairs.emplace_back(a, b);

  std::size_t serial = 0;
  for (const auto& c : p.classes()) {
    const std::size_t take =
        c.card.is_finite() ? std::min<std::size_t>(c.card.count(), per_class) : per_class;
    for (std::size_t j = 0; j < take; ++j) {
      NodeId label = "~" + c.low + "@" + std::to_string(serial) + "." + std::to_string(j);
      while (std::find(nodes.begin(), nodes.end(), label) != nodes.end()) label += "~";
      nodes.push_back(label);
      out.member_of[label] = c.key();
      pairs.emplace_back(c.low, label);
      for (const auto& up : c.ups) pairs.emplace_back(label, up);
    }
    ++serial;
  }
  out.poset = SkeletonPoset::from_covers(nodes, pairs);
  return out;
}

namespace detail {

// Longest chain strictly below u, by direct recursion over the materialized
// relation; no shared machinery with SkeletonPoset::height.
inline int longest_chain_below(const SkeletonPoset& m, const NodeId& u) {
  int best = 0;
  for (const auto& v : m.nodes())
    if (m.lt(v, u)) best = std::max(best, 1 + longest_chain_below(m, v));
  return best;
}

inline bool is_min(const SkeletonPoset& m, const NodeId& u) {
  for (const auto& v : m.nodes())
    if (m.lt(v, u)) return false;
  return true;
}

inline bool is_max(const SkeletonPoset& m, const NodeId& u) {
  for (const auto& v : m.nodes())
    if (m.lt(u, v)) return false;
  return true;
}

}  // namespace detail

inline int brute_height(const SkeletonPoset& p, const NodeId& u) {
  const Materialized m = materialize(p);
  return detail::longest_chain_below(m.poset, u);
}

struct BruteVirtualSet {
  std::vector<NodeId> nodes;       // sorted original explicit nodes
  std::set<ClassKey> class_keys;   // classes whose members qualify
};

inline BruteVirtualSet brute_mub(const SkeletonPoset& p, const std::vector<NodeId>& a) {
  if (a.empty()) throw std::invalid_argument("brute_mub of empty set");
  const Materialized m = materialize(p);
  std::vector<NodeId> ubs;
  for (const auto& v : m.poset.nodes()) {
    bool all = true;
    for (const auto& x : a) all = all && m.poset.le(x, v);
    if (all) ubs.push_back(v);
  }
  BruteVirtualSet out;
  for (const auto& v : ubs) {
    bool minimal = true;
    for (const auto& w : ubs)
      if (m.poset.lt(w, v)) minimal = false;
    if (!minimal) continue;
    auto it = m.member_of.find(v);
    if (it == m.member_of.end())
      out.nodes.push_back(v);
    else
      out.class_keys.insert(it->second);
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  return out;
}

inline BruteVirtualSet brute_mlb(const SkeletonPoset& p, const std::vector<NodeId>& a) {
  if (a.empty()) throw std::invalid_argument("brute_mlb of empty set");
  const Materialized m = materialize(p);
  std::vector<NodeId> lbs;
  for (const auto& v : m.poset.nodes()) {
    bool all = true;
    for (const auto& x : a) all = all && m.poset.le(v, x);
    if (all) lbs.push_back(v);
  }
  BruteVirtualSet out;
  for (const auto& v : lbs) {
    bool maximal = true;
    for (const auto& w : lbs)
      if (m.poset.lt(v, w)) maximal = false;
    if (!maximal) continue;
    auto it = m.member_of.find(v);
    if (it == m.member_of.end())
      out.nodes.push_back(v);
    else
      out.class_keys.insert(it->second);
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  return out;
}

// H by the definition in the materialized poset; stand-in members never
// qualify (each dominates exactly one minimal node).
inline std::vector<NodeId> brute_script_h(const SkeletonPoset& p) {
  const Materialized m = materialize(p);
  std::vector<NodeId> out;
  for (const auto& v : m.poset.nodes()) {
    if (m.member_of.count(v)) continue;
    if (detail::is_min(m.poset, v)) {
      out.push_back(v);
      continue;
    }
    if (detail::longest_chain_below(m.poset, v) != 1) continue;
    int mins_below = 0;
    for (const auto& w : m.poset.nodes())
      if (m.poset.lt(w, v) && detail::is_min(m.poset, w)) ++mins_below;
    if (mins_below >= 2) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Lambda by literal set comprehension on the materialized poset.
inline std::vector<NodeId> brute_lambda(const SkeletonPoset& p) {
  const Materialized m = materialize(p);
  std::vector<NodeId> maxima;
  for (const auto& v : m.poset.nodes())
    if (detail::is_max(m.poset, v)) maxima.push_back(v);
  if (maxima.size() != 1)
    throw std::invalid_argument("brute_lambda: poset must have exactly one maximal node");
  const NodeId top = maxima.front();

  std::vector<NodeId> script_h;
  for (const auto& v : m.poset.nodes()) {
    if (detail::is_min(m.poset, v)) {
      script_h.push_back(v);
      continue;
    }
    if (detail::longest_chain_below(m.poset, v) != 1) continue;
    int mins_below = 0;
    for (const auto& w : m.poset.nodes())
      if (m.poset.lt(w, v) && detail::is_min(m.poset, w)) ++mins_below;
    if (mins_below >= 2) script_h.push_back(v);
  }
  std::vector<NodeId> hstar;
  for (const auto& v : script_h)
    if (v != top) hstar.push_back(v);

  std::vector<NodeId> h1_hstar;
  for (const auto& v : hstar)
    if (detail::longest_chain_below(m.poset, v) == 1) h1_hstar.push_back(v);

  std::vector<NodeId> lambda;
  for (const auto& v : hstar) {
    bool in_h1 = std::find(h1_hstar.begin(), h1_hstar.end(), v) != h1_hstar.end();
    bool sees_none = true;
    for (const auto& a : h1_hstar)
      if (m.poset.le(v, a)) sees_none = false;
    if (in_h1 || sees_none) lambda.push_back(v);
  }
  std::sort(lambda.begin(), lambda.end());
  return lambda;
}

// Connectivity by breadth-first search over the materialized comparability
// graph.
inline bool brute_connected(const SkeletonPoset& p) {
  const Materialized m = materialize(p);
  const auto& nodes = m.poset.nodes();
  if (nodes.size() <= 1) return true;
  std::set<NodeId> seen{nodes.front()};
  std::vector<NodeId> frontier{nodes.front()};
  while (!frontier.empty()) {
    const NodeId at = frontier.back();
    frontier.pop_back();
    for (const auto& next : nodes)
      if (!seen.count(next) && (m.poset.le(at, next) || m.poset.le(next, at))) {
        seen.insert(next);
        frontier.push_back(next);
      }
  }
  return seen.size() == nodes.size();
}

// Exhaustive isomorphism search: every bijection of explicit nodes, classes
// matched afterwards by their mapped keys.
inline bool brute_iso(const SkeletonPoset& p, const SkeletonPoset& q) {
  if (p.size() != q.size() || p.classes().size() != q.classes().size()) return false;
  const auto& pn = p.nodes();
  std::vector<NodeId> perm = q.nodes();
  std::sort(perm.begin(), perm.end());
  do {
    bool ok = true;
    for (std::size_t i = 0; i < pn.size() && ok; ++i)
      for (std::size_t j = 0; j < pn.size() && ok; ++j)
        ok = p.le(pn[i], pn[j]) == q.le(perm[i], perm[j]);
    if (!ok) continue;
    std::map<NodeId, NodeId> f;
    for (std::size_t i = 0; i < pn.size(); ++i) f[pn[i]] = perm[i];
    bool classes_ok = true;
    for (const auto& c : p.classes()) {
      std::vector<NodeId> ups;
      for (const auto& u : c.ups) ups.push_back(f[u]);
      std::sort(ups.begin(), ups.end());
      const ClassRecord* hit = q.find_class({ups, f[c.low]});
      if (!hit || hit->card != c.card) classes_ok = false;
    }
    if (classes_ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// All valid skeletons with at most max_nodes explicit nodes, up to
// label permutation, each decorated with up to three classes drawn from
// {absent, finite(1), aleph0} per (maximal, minimal) pair below it.
inline std::vector<SkeletonPoset> enumerate_skeletons(std::size_t max_nodes) {
  if (max_nodes > 5) throw std::invalid_argument("enumerate_skeletons: budget is 5 nodes");
  static const std::vector<NodeId> name{"a", "b", "c", "d", "e"};

  std::vector<SkeletonPoset> out;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    std::vector<NodeId> labels(name.begin(), name.begin() + n);
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);

    std::vector<SkeletonPoset> bases;
    for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
      std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (mask & (std::size_t{1} << s)) rel[slots[s].first][slots[s].second] = true;
      bool transitive = true;
      for (std::size_t i = 0; i < n && transitive; ++i)
        for (std::size_t j = i + 1; j < n && transitive; ++j)
          for (std::size_t k = j + 1; k < n && transitive; ++k)
            if (rel[i][j] && rel[j][k] && !rel[i][k]) transitive = false;
      if (!transitive) continue;

      std::vector<std::pair<NodeId, NodeId>> pairs;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (rel[i][j]) pairs.emplace_back(labels[i], labels[j]);
      SkeletonPoset base = SkeletonPoset::from_covers(labels, pairs);
      if (!base.validate().empty()) continue;  // drops chains past dimension two

      bool known = false;
      for (const auto& seen : bases) known = known || brute_iso(base, seen);
      if (!known) bases.push_back(std::move(base));
    }

    for (const auto& base : bases) {
      std::vector<std::pair<NodeId, NodeId>> eligible;
      for (const auto& u : base.nodes())
        for (const auto& w : base.nodes())
          if (base.is_maximal(u) && base.is_minimal(w) && base.lt(w, u))
            eligible.emplace_back(u, w);

      std::vector<std::pair<NodeId, NodeId>> pairs;
      for (const auto& a : base.nodes())
        for (const auto& b : base.nodes())
          if (base.lt(a, b)) pairs.emplace_back(a, b);

      std::vector<SkeletonPoset> decorated_seen;
      std::vector<std::size_t> choice(eligible.size(), 0);
      for (;;) {
        std::vector<ClassRecord> classes;
        for (std::size_t i = 0; i < eligible.size(); ++i) {
          if (choice[i] == 0) continue;
          const CardTag card = choice[i] == 1 ? CardTag::finite(1) : CardTag::aleph0();
          classes.push_back({{eligible[i].first}, eligible[i].second, card});
        }
        if (classes.size() <= 3) {
          SkeletonPoset poset = SkeletonPoset::from_covers(base.nodes(), pairs, classes);
          if (!poset.validate().empty())
            throw std::logic_error("enumerate_skeletons: bad decoration");
          bool known = false;
          if (!classes.empty())
            for (const auto& seen : decorated_seen) known = known || brute_iso(poset, seen);
          if (!known) {
            if (!classes.empty()) decorated_seen.push_back(poset);
            out.push_back(std::move(poset));
          }
        }
        std::size_t pos = 0;
        while (pos < choice.size() && choice[pos] == 2) choice[pos++] = 0;
        if (pos == choice.size()) break;
        ++choice[pos];
      }
    }
  }
  return out;
}

}  // namespace kposet::oracle

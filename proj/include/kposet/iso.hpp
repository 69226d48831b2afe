#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "kposet/poset.hpp"

namespace kposet {

// A map between skeleton posets: explicit nodes to explicit nodes, classes
// to classes. Carrier for splitting maps and isomorphism witnesses.
struct PosetMap {
  SkeletonPoset source;
  SkeletonPoset target;
  std::map<NodeId, NodeId> node_map;
  std::map<ClassKey, ClassKey> class_map;

  NodeId apply(const NodeId& u) const {
    auto it = node_map.find(u);
    if (it == node_map.end()) throw std::invalid_argument("node not in map: " + u);
    return it->second;
  }

  // Image of a node set, deduplicated.
  std::vector<NodeId> apply_set(const std::vector<NodeId>& xs) const {
    std::vector<NodeId> out;
    for (const auto& x : xs) out.push_back(apply(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

inline PosetMap identity_map(const SkeletonPoset& p) {
  PosetMap m{p, p, {}, {}};
  for (const auto& u : p.nodes()) m.node_map[u] = u;
  for (const auto& c : p.classes()) m.class_map[c.key()] = c.key();
  return m;
}

namespace detail {

// Iso-invariant node fingerprint used to cut the backtracking search.
struct NodeSig {
  int height;
  int up_degree;
  int down_degree;
  std::vector<std::tuple<int, std::size_t, CardTag::Kind, std::uint64_t>> as_up;
  std::vector<std::tuple<std::size_t, CardTag::Kind, std::uint64_t>> as_low;

  friend bool operator==(const NodeSig& a, const NodeSig& b) {
    return a.height == b.height && a.up_degree == b.up_degree &&
           a.down_degree == b.down_degree && a.as_up == b.as_up && a.as_low == b.as_low;
  }
  friend bool operator<(const NodeSig& a, const NodeSig& b) {
    return std::tie(a.height, a.up_degree, a.down_degree, a.as_up, a.as_low) <
           std::tie(b.height, b.up_degree, b.down_degree, b.as_up, b.as_low);
  }
};

inline NodeSig node_sig(const SkeletonPoset& p, const NodeId& u) {
  NodeSig s;
  s.height = p.height(u);
  s.up_degree = s.down_degree = 0;
  for (const auto& v : p.nodes()) {
    if (p.lt(u, v)) ++s.up_degree;
    if (p.lt(v, u)) ++s.down_degree;
  }
  for (const auto& c : p.classes()) {
    if (std::binary_search(c.ups.begin(), c.ups.end(), u))
      s.as_up.emplace_back(p.height(c.low), c.ups.size(), c.card.kind(), c.card.count());
    if (c.low == u)
      s.as_low.emplace_back(c.ups.size(), c.card.kind(), c.card.count());
  }
  std::sort(s.as_up.begin(), s.as_up.end());
  std::sort(s.as_low.begin(), s.as_low.end());
  return s;
}

inline bool match_classes(const SkeletonPoset& p, const SkeletonPoset& q,
                          const std::map<NodeId, NodeId>& node_map,
                          std::map<ClassKey, ClassKey>& class_map) {
  class_map.clear();
  for (const auto& c : p.classes()) {
    std::vector<NodeId> ups;
    for (const auto& u : c.ups) ups.push_back(node_map.at(u));
    std::sort(ups.begin(), ups.end());
    const ClassKey key{ups, node_map.at(c.low)};
    const ClassRecord* hit = q.find_class(key);
    if (!hit || hit->card != c.card) return false;
    class_map[c.key()] = key;
  }
  return true;
}

}  // namespace detail

// Searches for an order-reflexive bijection of explicit nodes together with a
// class bijection matching (ups image, low image, card) exactly. Backtracking
// seeded by node fingerprints; skeletons are small enough that no canonical
// form is needed.
inline std::optional<PosetMap> iso_check(const SkeletonPoset& p, const SkeletonPoset& q) {
  if (p.size() != q.size() || p.classes().size() != q.classes().size())
    return std::nullopt;
  if (!p.validate().empty() || !q.validate().empty())
    throw std::invalid_argument("iso_check requires valid posets");

  const auto& pn = p.nodes();
  const auto& qn = q.nodes();
  const std::size_t n = pn.size();

  std::vector<detail::NodeSig> psig, qsig;
  for (const auto& u : pn) psig.push_back(detail::node_sig(p, u));
  for (const auto& v : qn) qsig.push_back(detail::node_sig(q, v));
  {
    auto a = psig, b = qsig;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (!(a == b)) return std::nullopt;
  }

  // Assign rare signatures first.
  std::map<detail::NodeSig, int> freq;
  for (const auto& s : psig) ++freq[s];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_pair(freq[psig[a]], pn[a]) < std::make_pair(freq[psig[b]], pn[b]);
  });

  std::vector<int> assign(n, -1);   // p index -> q index
  std::vector<char> used(n, 0);
  std::map<ClassKey, ClassKey> class_map;

  auto backtrack = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == n) {
      std::map<NodeId, NodeId> node_map;
      for (std::size_t i = 0; i < n; ++i) node_map[pn[i]] = qn[assign[i]];
      return detail::match_classes(p, q, node_map, class_map);
    }
    const std::size_t i = order[pos];
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || !(psig[i] == qsig[j])) continue;
      bool ok = true;
      for (std::size_t prev = 0; prev < pos && ok; ++prev) {
        const std::size_t k = order[prev];
        const std::size_t l = static_cast<std::size_t>(assign[k]);
        ok = (p.le(pn[i], pn[k]) == q.le(qn[j], qn[l])) &&
             (p.le(pn[k], pn[i]) == q.le(qn[l], qn[j]));
      }
      if (!ok) continue;
      assign[i] = static_cast<int>(j);
      used[j] = 1;
      if (self(self, pos + 1)) return true;
      assign[i] = -1;
      used[j] = 0;
    }
    return false;
  };

  if (!backtrack(backtrack, 0)) return std::nullopt;

  PosetMap iso{p, q, {}, class_map};
  for (std::size_t i = 0; i < n; ++i) iso.node_map[pn[i]] = qn[assign[i]];
  return iso;
}

}  // namespace kposet

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kposet/cardinal.hpp"

namespace kposet {

// Nodes are identified by opaque labels; two ids are the same node iff the
// labels are equal.
using NodeId = std::string;

// A class is identified inside one poset by its (ups, low) key.
using ClassKey = std::pair<std::vector<NodeId>, NodeId>;

// One anonymous intersection class: card-many height-one nodes, each lying
// strictly above `low` and strictly below every node of `ups`, and
// incomparable to everything else. `ups` empty means the members are maximal.
struct ClassRecord {
  std::vector<NodeId> ups;  // sorted, unique, explicit maximal nodes
  NodeId low;               // explicit minimal node
  CardTag card;

  ClassKey key() const { return {ups, low}; }

  friend bool operator==(const ClassRecord& a, const ClassRecord& b) {
    return a.ups == b.ups && a.low == b.low && a.card == b.card;
  }
  friend bool operator!=(const ClassRecord& a, const ClassRecord& b) { return !(a == b); }
  friend bool operator<(const ClassRecord& a, const ClassRecord& b) {
    return a.key() < b.key();
  }
};

struct Violation {
  std::string axiom;  // reflexivity | antisymmetry | transitivity | dim | class | class-key | ...
  std::vector<NodeId> witnesses;
  std::string message;

  std::string to_string() const {
    std::string s = axiom + ":";
    for (const auto& w : witnesses) s += " " + w;
    if (!message.empty()) s += " (" + message + ")";
    return s;
  }
};

// A set of virtual nodes: explicit nodes plus whole classes.
struct VirtualSet {
  std::vector<NodeId> nodes;         // sorted
  std::vector<ClassRecord> classes;  // sorted by key

  bool has_node(const NodeId& u) const {
    return std::binary_search(nodes.begin(), nodes.end(), u);
  }
  bool has_class(const ClassKey& k) const {
    for (const auto& c : classes)
      if (c.key() == k) return true;
    return false;
  }
  friend bool operator==(const VirtualSet& a, const VirtualSet& b) {
    return a.nodes == b.nodes && a.classes == b.classes;
  }
};

// Finite skeleton of a (possibly infinite) poset of dimension at most two.
// Explicit nodes carry the full order relation, stored reflexively and
// transitively closed; anonymous height-one nodes are carried as ClassRecords.
// Values are immutable after construction.
class SkeletonPoset {
 public:
  SkeletonPoset() = default;

  // Builds from explicit nodes, strict order pairs (covers or any generating
  // relation; the closure is computed), and class records. Duplicate class
  // keys are merged by cardinal addition. Unknown or duplicate labels throw.
  static SkeletonPoset from_covers(std::vector<NodeId> nodes,
                                   const std::vector<std::pair<NodeId, NodeId>>& covers,
                                   std::vector<ClassRecord> classes = {}) {
    SkeletonPoset p;
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 1; i < nodes.size(); ++i)
      if (nodes[i] == nodes[i - 1])
        throw std::invalid_argument("duplicate node label: " + nodes[i]);
    p.nodes_ = std::move(nodes);

    const std::size_t n = p.nodes_.size();
    p.le_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) p.le_[i * n + i] = 1;
    for (const auto& [lo, hi] : covers)
      p.le_[p.index_of(lo) * n + p.index_of(hi)] = 1;
    // Floyd-Warshall reachability; the skeletons are tiny.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (p.le_[i * n + k])
          for (std::size_t j = 0; j < n; ++j)
            if (p.le_[k * n + j]) p.le_[i * n + j] = 1;

    std::map<ClassKey, CardTag> merged;
    for (auto& c : classes) {
      std::sort(c.ups.begin(), c.ups.end());
      c.ups.erase(std::unique(c.ups.begin(), c.ups.end()), c.ups.end());
      for (const auto& u : c.ups) p.index_of(u);
      p.index_of(c.low);
      auto [it, fresh] = merged.emplace(c.key(), c.card);
      if (!fresh) it->second += c.card;
    }
    for (auto& [key, card] : merged)
      p.classes_.push_back(ClassRecord{key.first, key.second, card});

    p.finish();
    return p;
  }

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<ClassRecord>& classes() const { return classes_; }

  bool contains(const NodeId& u) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), u);
  }

  const ClassRecord* find_class(const ClassKey& key) const {
    for (const auto& c : classes_)
      if (c.key() == key) return &c;
    return nullptr;
  }

  bool le(const NodeId& a, const NodeId& b) const {
    return le_[index_of(a) * size() + index_of(b)] != 0;
  }
  bool lt(const NodeId& a, const NodeId& b) const { return a != b && le(a, b); }

  // Height of an explicit node in the virtual poset (class members bump
  // their ups to height two). Only meaningful on valid posets.
  int height(const NodeId& u) const {
    require_order();
    const std::size_t i = index_of(u);
    int h = explicit_heights_[i];
    if (h < 2 && in_some_ups(u)) h = 2;
    return h;
  }

  // Supremum of chain lengths over the virtual poset.
  int dim() const {
    require_order();
    int d = classes_.empty() ? 0 : 1;
    for (const auto& u : nodes_) d = std::max(d, height(u));
    return d;
  }

  // Explicit nodes minimal/maximal in the *virtual* poset. A class low is
  // never maximal (members lie above it); a class up is never minimal.
  std::vector<NodeId> minimals() const {
    std::vector<NodeId> out;
    for (const auto& u : nodes_)
      if (is_minimal(u)) out.push_back(u);
    return out;
  }
  std::vector<NodeId> maximals() const {
    std::vector<NodeId> out;
    for (const auto& u : nodes_)
      if (is_maximal(u)) out.push_back(u);
    return out;
  }

  bool is_minimal(const NodeId& u) const {
    for (const auto& v : nodes_)
      if (lt(v, u)) return false;
    return !in_some_ups(u);
  }
  bool is_maximal(const NodeId& u) const {
    for (const auto& v : nodes_)
      if (lt(u, v)) return false;
    for (const auto& c : classes_)
      if (c.low == u) return false;
    return true;
  }

  // True iff the poset has anonymous maximal nodes (classes with empty ups).
  bool has_anonymous_maxima() const {
    for (const auto& c : classes_)
      if (c.ups.empty()) return true;
    return false;
  }

  // The single maximal node of the virtual poset, if there is exactly one.
  const NodeId* single_max() const {
    if (has_anonymous_maxima()) return nullptr;
    const NodeId* found = nullptr;
    for (const auto& u : nodes_) {
      if (!is_maximal(u)) continue;
      if (found) return nullptr;
      found = &u;
    }
    return found;
  }

  // G(u) / L(u) over virtual nodes; strict variants drop u itself.
  VirtualSet up_set(const NodeId& u, bool strict = false) const {
    VirtualSet out;
    for (const auto& v : nodes_)
      if (le(u, v) && !(strict && v == u)) out.nodes.push_back(v);
    for (const auto& c : classes_)
      if (c.low == u) out.classes.push_back(c);  // members lie strictly above u
    return out;
  }
  VirtualSet down_set(const NodeId& u, bool strict = false) const {
    VirtualSet out;
    for (const auto& v : nodes_)
      if (le(v, u) && !(strict && v == u)) out.nodes.push_back(v);
    for (const auto& c : classes_)
      if (std::binary_search(c.ups.begin(), c.ups.end(), u))
        out.classes.push_back(c);
    return out;
  }

  // Comparables of the (anonymous) members of a class, the member excluded.
  VirtualSet up_set_of_class(const ClassRecord& c) const {
    return VirtualSet{c.ups, {}};
  }
  VirtualSet down_set_of_class(const ClassRecord& c) const {
    return VirtualSet{{c.low}, {}};
  }

  // Minimal upper bounds of a nonempty set of explicit nodes, as virtual
  // nodes. A class appears iff all its members are minimal upper bounds.
  VirtualSet mub(const std::vector<NodeId>& a) const {
    if (a.empty()) throw std::invalid_argument("mub of empty set");
    for (const auto& x : a) index_of(x);

    std::vector<NodeId> ub;
    for (const auto& v : nodes_) {
      bool all = true;
      for (const auto& x : a) all = all && le(x, v);
      if (all) ub.push_back(v);
    }
    // A member exceeds x iff x is the class low, so a class consists of
    // upper bounds iff a == {low}; its low is then a smaller bound.
    std::vector<const ClassRecord*> ub_classes;
    for (const auto& c : classes_) {
      bool all = true;
      for (const auto& x : a) all = all && x == c.low;
      if (all) ub_classes.push_back(&c);
    }

    VirtualSet out;
    for (const auto& v : ub) {
      bool minimal = true;
      for (const auto& w : ub)
        if (lt(w, v)) minimal = false;
      for (const auto* c : ub_classes)
        if (std::binary_search(c->ups.begin(), c->ups.end(), v)) minimal = false;
      if (minimal) out.nodes.push_back(v);
    }
    for (const auto* c : ub_classes)
      if (std::find(ub.begin(), ub.end(), c->low) == ub.end())
        out.classes.push_back(*c);
    return out;
  }

  // Order dual of mub.
  VirtualSet mlb(const std::vector<NodeId>& a) const {
    if (a.empty()) throw std::invalid_argument("mlb of empty set");
    for (const auto& x : a) index_of(x);

    std::vector<NodeId> lb;
    for (const auto& v : nodes_) {
      bool all = true;
      for (const auto& x : a) all = all && le(v, x);
      if (all) lb.push_back(v);
    }
    // A member is below x iff x is in the class ups.
    std::vector<const ClassRecord*> lb_classes;
    for (const auto& c : classes_) {
      bool all = true;
      for (const auto& x : a)
        all = all && std::binary_search(c.ups.begin(), c.ups.end(), x);
      if (all) lb_classes.push_back(&c);
    }

    VirtualSet out;
    for (const auto& v : lb) {
      bool maximal = true;
      for (const auto& w : lb)
        if (lt(v, w)) maximal = false;
      for (const auto* c : lb_classes)
        if (v == c->low) maximal = false;
      if (maximal) out.nodes.push_back(v);
    }
    for (const auto* c : lb_classes) {
      bool max = true;
      for (const auto& u : c->ups)
        if (std::find(lb.begin(), lb.end(), u) != lb.end()) max = false;
      if (max) out.classes.push_back(*c);
    }
    return out;
  }

  // Induced sub-poset on the explicit nodes of `keep`. A class survives with
  // ups intersected with `keep` when some up is kept; classes with empty ups
  // survive only when `keep_maximal_classes` is set and the low is kept.
  // Keeping members whose low is dropped would orphan them, so that throws.
  SkeletonPoset restrict_to(const std::vector<NodeId>& keep,
                            bool keep_maximal_classes) const {
    std::set<NodeId> s;
    for (const auto& u : keep) {
      index_of(u);
      s.insert(u);
    }
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (const auto& a : s)
      for (const auto& b : s)
        if (lt(a, b)) pairs.emplace_back(a, b);
    std::vector<ClassRecord> cls;
    for (const auto& c : classes_) {
      std::vector<NodeId> kept_ups;
      for (const auto& u : c.ups)
        if (s.count(u)) kept_ups.push_back(u);
      const bool keep_members =
          !kept_ups.empty() || (c.ups.empty() && keep_maximal_classes && s.count(c.low));
      if (!keep_members) continue;
      if (!s.count(c.low))
        throw std::invalid_argument("restriction would orphan class members below " + c.low);
      cls.push_back(ClassRecord{std::move(kept_ups), c.low, c.card});
    }
    return from_covers(std::vector<NodeId>(s.begin(), s.end()), pairs, std::move(cls));
  }

  // True iff the comparability graph on virtual nodes is connected. Class
  // members tie their low to each of their ups.
  bool is_connected() const {
    const std::size_t n = size();
    if (n <= 1) return true;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le_[i * n + j]) unite(i, j);
    for (const auto& c : classes_)
      for (const auto& u : c.ups) unite(index_of(c.low), index_of(u));
    const std::size_t root = find(0);
    for (std::size_t i = 1; i < n; ++i)
      if (find(i) != root) return false;
    return true;
  }

  // Checks every representation invariant; empty result means valid.
  std::vector<Violation> validate() const {
    std::vector<Violation> out;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
      if (!le_[i * n + i])
        out.push_back({"reflexivity", {nodes_[i]}, "node not related to itself"});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (le_[i * n + j] && le_[j * n + i])
          out.push_back({"antisymmetry", {nodes_[i], nodes_[j]}, "both directions present"});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le_[i * n + j])
          for (std::size_t k = 0; k < n; ++k)
            if (le_[j * n + k] && !le_[i * n + k])
              out.push_back({"transitivity", {nodes_[i], nodes_[j], nodes_[k]}, ""});
    if (!out.empty()) return out;  // chain and class checks assume a real order

    for (std::size_t i = 0; i < n; ++i)
      if (explicit_heights_[i] > 2) {
        out.push_back({"dim", {nodes_[i]}, "chain of four explicit nodes below"});
        return out;
      }

    std::set<ClassKey> seen;
    for (const auto& c : classes_) {
      if (!seen.insert(c.key()).second)
        out.push_back({"class-key", {c.low}, "duplicate (ups, low) key"});
      if (c.card == CardTag::finite(0))
        out.push_back({"class", {c.low}, "class card must be positive"});
      if (!is_minimal(c.low))
        out.push_back({"class", {c.low}, "class low is not minimal"});
      for (const auto& u : c.ups) {
        if (!lt(c.low, u))
          out.push_back({"class", {c.low, u}, "class low is not below up"});
        if (!is_maximal(u))
          out.push_back({"class", {u}, "class up is not maximal"});
      }
    }
    return out;
  }

  friend bool operator==(const SkeletonPoset& a, const SkeletonPoset& b) {
    return a.nodes_ == b.nodes_ && a.le_ == b.le_ && a.classes_ == b.classes_;
  }
  friend bool operator!=(const SkeletonPoset& a, const SkeletonPoset& b) { return !(a == b); }

  // Strict cover pairs (a, b) among explicit nodes: the transitive reduction.
  std::vector<std::pair<NodeId, NodeId>> cover_pairs() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (const auto& a : nodes_)
      for (const auto& b : nodes_) {
        if (!lt(a, b)) continue;
        bool direct = true;
        for (const auto& c : nodes_)
          if (lt(a, c) && lt(c, b)) direct = false;
        if (direct) out.emplace_back(a, b);
      }
    return out;
  }

 private:
  std::size_t index_of(const NodeId& u) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), u);
    if (it == nodes_.end() || *it != u)
      throw std::invalid_argument("unknown node id: " + u);
    return static_cast<std::size_t>(it - nodes_.begin());
  }

  bool in_some_ups(const NodeId& u) const {
    for (const auto& c : classes_)
      if (std::binary_search(c.ups.begin(), c.ups.end(), u)) return true;
    return false;
  }

  void finish() {
    std::sort(classes_.begin(), classes_.end());
    const std::size_t n = size();
    order_ok_ = true;
    for (std::size_t i = 0; i < n && order_ok_; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (le_[i * n + j] && le_[j * n + i]) {
          order_ok_ = false;
          break;
        }
    explicit_heights_.assign(n, 0);
    if (!order_ok_) return;
    // Longest-path heights over the explicit relation, in topological waves.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j && le_[i * n + j] && explicit_heights_[j] < explicit_heights_[i] + 1 &&
              explicit_heights_[i] < 8) {
            explicit_heights_[j] = explicit_heights_[i] + 1;
            changed = true;
          }
    }
  }

  void require_order() const {
    if (!order_ok_)
      throw std::logic_error("operation on a poset whose relation is not an order");
  }

  std::vector<NodeId> nodes_;         // sorted
  std::vector<char> le_;              // n*n reflexive-transitive closure
  std::vector<ClassRecord> classes_;  // sorted by key
  std::vector<int> explicit_heights_;
  bool order_ok_ = true;
};

// L_P(m) as a standalone poset: the induced sub-poset on the down-set of m.
inline SkeletonPoset down_poset(const SkeletonPoset& p, const NodeId& m) {
  std::vector<NodeId> keep;
  for (const auto& v : p.nodes())
    if (p.le(v, m)) keep.push_back(v);
  return p.restrict_to(keep, false);
}

}  // namespace kposet

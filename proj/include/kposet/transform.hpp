#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kposet/analysis.hpp"
#include "kposet/iso.hpp"
#include "kposet/poset.hpp"

namespace kposet {

// Witness that `upper` is a splitting of `lower` at `split_node`: the map
// collapses exactly the fiber onto the split node, is bijective elsewhere,
// and lifts relations. verify_splitting checks all of it.
struct SplittingCertificate {
  NodeId split_node;
  std::vector<NodeId> fiber;  // sorted maximal nodes of positive height in upper
  PosetMap map;               // source = upper, target = lower

  const SkeletonPoset& upper() const { return map.source; }
  const SkeletonPoset& lower() const { return map.target; }
};

inline SplittingCertificate trivial_certificate(const SkeletonPoset& p, const NodeId& m) {
  return SplittingCertificate{m, {m}, identity_map(p)};
}

// Exhaustive check of the splitting-map conditions on explicit nodes and,
// class-wise, on the anonymous part: fiber shape, bijectivity off the split
// node, class coherence with exact cardinal sums, the lifting property, and
// the dimension/minimum preservation the definitions force.
inline std::vector<Violation> verify_splitting(const SplittingCertificate& cert) {
  std::vector<Violation> out;
  const SkeletonPoset& u = cert.upper();
  const SkeletonPoset& v = cert.lower();

  for (auto viol : u.validate()) {
    viol.axiom = "upper-" + viol.axiom;
    out.push_back(viol);
  }
  for (auto viol : v.validate()) {
    viol.axiom = "lower-" + viol.axiom;
    out.push_back(viol);
  }
  if (!out.empty()) return out;

  if (!v.contains(cert.split_node)) {
    out.push_back({"split-node", {cert.split_node}, "not a node of the lower poset"});
    return out;
  }
  if (!v.is_maximal(cert.split_node) || v.height(cert.split_node) < 1)
    out.push_back({"split-node", {cert.split_node}, "must be maximal of positive height"});

  if (cert.fiber.empty()) out.push_back({"fiber", {}, "fiber is empty"});
  for (const auto& f : cert.fiber) {
    if (!u.contains(f)) {
      out.push_back({"fiber", {f}, "not a node of the upper poset"});
      return out;
    }
    if (!u.is_maximal(f) || u.height(f) < 1)
      out.push_back({"fiber", {f}, "fiber nodes must be maximal of positive height"});
  }

  for (const auto& x : u.nodes())
    if (!cert.map.node_map.count(x)) {
      out.push_back({"map", {x}, "node has no image"});
      return out;
    }
  for (const auto& [x, y] : cert.map.node_map)
    if (!u.contains(x) || !v.contains(y)) {
      out.push_back({"map", {x, y}, "entry outside the posets"});
      return out;
    }

  const auto& f = cert.map.node_map;
  for (const auto& x : u.nodes())
    for (const auto& y : u.nodes())
      if (u.le(x, y) && !v.le(f.at(x), f.at(y)))
        out.push_back({"monotone", {x, y}, "order not preserved"});

  // Fiber = preimage of the split node; bijective everywhere else.
  std::map<NodeId, std::vector<NodeId>> preimages;
  for (const auto& [x, y] : f) preimages[y].push_back(x);
  {
    std::vector<NodeId> fiber_found = preimages.count(cert.split_node)
                                          ? preimages[cert.split_node]
                                          : std::vector<NodeId>{};
    std::sort(fiber_found.begin(), fiber_found.end());
    if (fiber_found != cert.fiber)
      out.push_back({"fiber", fiber_found, "preimage of the split node differs from the fiber"});
  }
  for (const auto& y : v.nodes()) {
    if (y == cert.split_node) continue;
    const std::size_t hits = preimages.count(y) ? preimages[y].size() : 0;
    if (hits != 1)
      out.push_back({"bijection", {y}, "needs exactly one preimage, has " + std::to_string(hits)});
  }

  // Class coherence, and cardinal-exact coverage of every lower class.
  std::map<ClassKey, CardTag> covered;
  for (const auto& c : u.classes()) {
    auto it = cert.map.class_map.find(c.key());
    if (it == cert.map.class_map.end()) {
      out.push_back({"class-map", {c.low}, "class has no image"});
      continue;
    }
    const ClassRecord* tgt = v.find_class(it->second);
    if (!tgt) {
      out.push_back({"class-map", {c.low}, "image class does not exist"});
      continue;
    }
    std::vector<NodeId> ups_image;
    for (const auto& up : c.ups) ups_image.push_back(f.at(up));
    std::sort(ups_image.begin(), ups_image.end());
    ups_image.erase(std::unique(ups_image.begin(), ups_image.end()), ups_image.end());
    if (tgt->ups != ups_image || tgt->low != f.at(c.low))
      out.push_back({"class-coherence", {c.low}, "image key does not match mapped class"});
    auto [cit, fresh] = covered.emplace(it->second, c.card);
    if (!fresh) cit->second += c.card;
  }
  for (const auto& c : v.classes()) {
    auto it = covered.find(c.key());
    if (it == covered.end())
      out.push_back({"class-card", {c.low}, "lower class has no preimage"});
    else if (it->second != c.card)
      out.push_back({"class-card", {c.low}, "preimage cards sum to " + it->second.to_string() +
                                                ", class has " + c.card.to_string()});
  }

  // Lifting: f(x') <= y must be witnessed above x'.
  for (const auto& x : u.nodes())
    for (const auto& y : v.nodes()) {
      if (!v.le(f.at(x), y)) continue;
      bool lifted = false;
      for (const auto& yy : u.nodes())
        if (u.le(x, yy) && f.at(yy) == y) lifted = true;
      if (!lifted) out.push_back({"lifting", {x, y}, "no preimage of y above x"});
    }

  if (!out.empty()) return out;

  if (u.dim() != v.dim())
    out.push_back({"dim-preservation", {}, "dim upper != dim lower"});
  std::vector<NodeId> min_image;
  for (const auto& w : u.minimals()) min_image.push_back(f.at(w));
  std::sort(min_image.begin(), min_image.end());
  min_image.erase(std::unique(min_image.begin(), min_image.end()), min_image.end());
  if (min_image != v.minimals())
    out.push_back({"min-preservation", {}, "image of min upper != min lower"});
  return out;
}

namespace detail {

// Fresh fiber labels: the split node's label with an index suffix,
// lengthening the separator until nothing collides.
inline std::vector<NodeId> fresh_fiber_labels(const SkeletonPoset& p, const NodeId& m,
                                              std::size_t count) {
  std::string sep = "#";
  for (;;) {
    std::vector<NodeId> fresh;
    bool clash = false;
    for (std::size_t i = 1; i <= count; ++i) {
      fresh.push_back(m + sep + std::to_string(i));
      if (p.contains(fresh.back())) clash = true;
    }
    if (!clash) return fresh;
    sep += "#";
  }
}

// The core splitting construction applied to L_P(n) inside P, producing the
// splitting of P at the maximal node n before any properness repair: one
// fresh top per branch anchor, every node routed under the anchors it sees.
// Nodes and classes outside L(n) ride along unchanged.
inline SplittingCertificate split_unrefined(const SkeletonPoset& p, const NodeId& n) {
  if (!p.is_maximal(n) || p.height(n) < 1)
    throw std::invalid_argument("split: node must be maximal of positive height: " + n);

  const SkeletonPoset sub = down_poset(p, n);
  const std::vector<NodeId> lambda = lambda_set(sub);
  if (lambda.size() <= 1) return trivial_certificate(p, n);

  const std::vector<NodeId> hstar = script_h_star(sub);
  std::vector<NodeId> h1;  // H_1 cap H^* of L(n)
  for (const auto& x : hstar)
    if (sub.height(x) == 1) h1.push_back(x);

  // For a node of L(n) \ {n}, the set of fiber indices it goes below.
  auto fiber_indices = [&](const NodeId& low_profile, const std::vector<NodeId>& lam_below) {
    std::vector<std::size_t> idx;
    if (lam_below.size() == 1) {
      const auto it = std::find(lambda.begin(), lambda.end(), lam_below.front());
      idx.push_back(static_cast<std::size_t>(it - lambda.begin()));
      return idx;
    }
    if (lam_below.size() > 1)
      throw std::logic_error("split: two lambda elements below one node");
    // Empty profile: route by the height-one branch anchors over the
    // unique minimal node below.
    for (std::size_t i = 0; i < lambda.size(); ++i)
      if (std::find(h1.begin(), h1.end(), lambda[i]) != h1.end() &&
          sub.le(low_profile, lambda[i]))
        idx.push_back(i);
    if (idx.empty()) throw std::logic_error("split: node relates to no fiber element");
    return idx;
  };

  const std::vector<NodeId> fresh = fresh_fiber_labels(p, n, lambda.size());

  std::vector<NodeId> nodes;
  for (const auto& x : p.nodes())
    if (x != n) nodes.push_back(x);
  nodes.insert(nodes.end(), fresh.begin(), fresh.end());

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (const auto& x : p.nodes())
    for (const auto& y : p.nodes())
      if (x != n && y != n && p.lt(x, y)) pairs.emplace_back(x, y);

  for (const auto& x : sub.nodes()) {
    if (x == n) continue;
    std::vector<NodeId> lam_below;
    for (const auto& a : lambda)
      if (sub.le(a, x)) lam_below.push_back(a);
    NodeId low = x;
    if (lam_below.empty()) {
      std::vector<NodeId> mins_below;
      for (const auto& w : sub.minimals())
        if (sub.le(w, x)) mins_below.push_back(w);
      if (mins_below.size() != 1)
        throw std::logic_error("split: node off lambda dominating several minimals");
      low = mins_below.front();
    }
    for (const std::size_t i : fiber_indices(low, lam_below))
      pairs.emplace_back(x, fresh[i]);
  }

  std::vector<ClassRecord> classes;
  std::map<ClassKey, ClassKey> class_map;
  for (const auto& c : p.classes()) {
    if (!std::binary_search(c.ups.begin(), c.ups.end(), n)) {
      classes.push_back(c);
      class_map[c.key()] = c.key();
      continue;
    }
    // Members of [.. n ../ w] follow the routing of their uniform profile.
    std::vector<NodeId> lam_below;
    if (std::find(lambda.begin(), lambda.end(), c.low) != lambda.end())
      lam_below.push_back(c.low);
    std::vector<NodeId> ups;
    for (const auto& up : c.ups)
      if (up != n) ups.push_back(up);
    for (const std::size_t i : fiber_indices(c.low, lam_below)) ups.push_back(fresh[i]);
    std::sort(ups.begin(), ups.end());
    ClassRecord moved{std::move(ups), c.low, c.card};
    class_map[moved.key()] = c.key();
    classes.push_back(std::move(moved));
  }

  SkeletonPoset upper = SkeletonPoset::from_covers(nodes, pairs, classes);
  if (upper.classes().size() != p.classes().size())
    throw std::logic_error("split: unexpected class key collision");

  PosetMap map{upper, p, {}, std::move(class_map)};
  for (const auto& x : upper.nodes()) map.node_map[x] = x;
  for (const auto& mi : fresh) map.node_map[mi] = n;

  std::vector<NodeId> fiber = fresh;
  std::sort(fiber.begin(), fiber.end());
  return SplittingCertificate{n, std::move(fiber), std::move(map)};
}

}  // namespace detail

// Enlarges or creates the classes [u/w] a splitting leaves deficient, so the
// upper poset becomes a proper K-poset again with the same H, and extends
// the splitting map over the new classes.
inline SplittingCertificate refine(const SplittingCertificate& cert) {
  if (!analyze_k(cert.lower()).is_proper)
    throw std::invalid_argument("refine: lower poset is not a proper K-poset");
  {
    const auto bad = verify_splitting(cert);
    if (!bad.empty())
      throw std::invalid_argument("refine: not a splitting (" + bad.front().to_string() + ")");
  }

  const SkeletonPoset& w = cert.upper();
  const SkeletonPoset& v = cert.lower();
  const CardTag target_card = poset_card(v);

  std::vector<ClassRecord> classes = w.classes();
  std::map<ClassKey, ClassKey> class_map = cert.map.class_map;
  bool changed = false;

  for (const auto& u : w.maximals()) {
    if (w.height(u) != 2) continue;
    for (const auto& low : w.minimals()) {
      if (!w.lt(low, u) || !detail::has_two_chain(w, u, low)) continue;
      const ClassKey key{{u}, low};
      auto hit = std::find_if(classes.begin(), classes.end(),
                              [&](const ClassRecord& c) { return c.key() == key; });
      if (hit != classes.end() && hit->card == target_card) continue;
      changed = true;
      if (hit != classes.end()) {
        hit->card = target_card;
        continue;
      }
      const ClassKey image{{cert.map.node_map.at(u)}, cert.map.node_map.at(low)};
      if (!v.find_class(image))
        throw std::logic_error("refine: proper lower poset lacks class under " + image.first[0]);
      classes.push_back({key.first, key.second, target_card});
      class_map[key] = image;
    }
  }
  if (!changed) return cert;

  SkeletonPoset refined = SkeletonPoset::from_covers(w.nodes(), w.cover_pairs(), classes);
  PosetMap map{refined, v, cert.map.node_map, std::move(class_map)};
  return SplittingCertificate{cert.split_node, cert.fiber, std::move(map)};
}

// Splits a proper K-poset with a single maximal node m into a proper K-poset
// in which every fiber node has local d = 1. When d is already 1 the trivial
// certificate comes back unchanged.
inline SplittingCertificate split_at(const SkeletonPoset& v, const NodeId& m) {
  detail::require_proper(v, "split_at");
  const NodeId* smax = v.single_max();
  if (!smax || *smax != m)
    throw std::invalid_argument("split_at: m must be the unique maximal node");
  if (v.height(m) < 1)
    throw std::invalid_argument("split_at: cannot split a node of height zero");
  return refine(detail::split_unrefined(v, m));
}

// Local d is untouched away from the fiber.
inline std::vector<Violation> check_d_preservation(const SplittingCertificate& cert) {
  if (!verify_splitting(cert).empty())
    throw std::invalid_argument("check_d_preservation: certificate does not verify");
  std::vector<Violation> out;
  const SkeletonPoset& u = cert.upper();
  const SkeletonPoset& v = cert.lower();
  for (const auto& n : u.maximals()) {
    if (std::binary_search(cert.fiber.begin(), cert.fiber.end(), n)) continue;
    const NodeId image = cert.map.node_map.at(n);
    if (!v.is_maximal(image)) {
      out.push_back({"d-preservation", {n, image}, "image is not maximal"});
      continue;
    }
    if (u.height(n) < 1) {
      if (v.height(image) >= 1)
        out.push_back({"d-preservation", {n, image}, "height changed off the fiber"});
      continue;
    }
    if (v.height(image) < 1) {
      out.push_back({"d-preservation", {n, image}, "height changed off the fiber"});
      continue;
    }
    if (d_local(u, n) != d_local(v, image))
      out.push_back({"d-preservation", {n, image}, "local d differs"});
  }
  return out;
}

struct ExpandError : std::invalid_argument {
  NodeId witness;
  ExpandError(const std::string& msg, NodeId w)
      : std::invalid_argument(msg + " (witness " + w + ")"), witness(std::move(w)) {}
};

// Extends a poset map f whose image is down-closed in the target
// to a surjection from a poset containing the source. The returned map
// restricts to f, keeps fiber maxima maximal with unchanged local d, and is
// a splitting map whenever f split its image.
inline std::pair<SkeletonPoset, PosetMap> expand(const PosetMap& f) {
  const SkeletonPoset& x = f.source;
  const SkeletonPoset& z = f.target;
  if (!x.validate().empty() || !z.validate().empty())
    throw std::invalid_argument("expand: posets must validate");

  for (const auto& a : x.nodes())
    if (!f.node_map.count(a)) throw std::invalid_argument("expand: node has no image: " + a);
  for (const auto& [a, b] : f.node_map) {
    x.le(a, a);  // throws on unknown ids
    z.le(b, b);
  }
  for (const auto& a : x.nodes())
    for (const auto& b : x.nodes())
      if (x.le(a, b) && !z.le(f.node_map.at(a), f.node_map.at(b)))
        throw std::invalid_argument("expand: map is not monotone at " + a);

  std::set<NodeId> image;
  for (const auto& a : x.nodes()) image.insert(f.node_map.at(a));

  // Down-set hypothesis on explicit nodes.
  for (const auto& a : x.nodes())
    for (const auto& zn : z.nodes())
      if (z.le(zn, f.node_map.at(a)) && !image.count(zn))
        throw ExpandError("expand: L(f(x)) not contained in the image", a);

  // Class coherence of f, and cardinal-exact coverage of touched classes.
  std::map<ClassKey, CardTag> covered;
  for (const auto& c : x.classes()) {
    auto it = f.class_map.find(c.key());
    if (it == f.class_map.end())
      throw std::invalid_argument("expand: class has no image (low " + c.low + ")");
    const ClassRecord* tgt = z.find_class(it->second);
    if (!tgt) throw std::invalid_argument("expand: image class does not exist (low " + c.low + ")");
    std::vector<NodeId> ups_image;
    for (const auto& up : c.ups) ups_image.push_back(f.node_map.at(up));
    std::sort(ups_image.begin(), ups_image.end());
    ups_image.erase(std::unique(ups_image.begin(), ups_image.end()), ups_image.end());
    if (tgt->ups != ups_image || tgt->low != f.node_map.at(c.low))
      throw std::invalid_argument("expand: class image key mismatch (low " + c.low + ")");
    auto [cit, fresh] = covered.emplace(it->second, c.card);
    if (!fresh) cit->second += c.card;
  }
  for (const auto& c : z.classes()) {
    const bool touched = std::any_of(c.ups.begin(), c.ups.end(),
                                     [&](const NodeId& up) { return image.count(up) != 0; });
    auto it = covered.find(c.key());
    if (touched && it == covered.end())
      throw ExpandError("expand: class members below the image are not covered", c.low);
    if (it != covered.end() && it->second != c.card)
      throw std::invalid_argument("expand: class only partially covered (low " + c.low + ")");
  }

  // Y = X together with the untouched part of Z; relations across go
  // through g. Leftover labels are kept, lengthened if they clash with X.
  std::map<NodeId, NodeId> rename;  // z node -> y label
  std::vector<NodeId> nodes = x.nodes();
  for (const auto& zn : z.nodes()) {
    if (image.count(zn)) continue;
    NodeId label = zn;
    while (std::find(nodes.begin(), nodes.end(), label) != nodes.end()) label += "~";
    rename[zn] = label;
    nodes.push_back(label);
  }

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (const auto& a : x.nodes())
    for (const auto& b : x.nodes())
      if (x.lt(a, b)) pairs.emplace_back(a, b);
  for (const auto& [za, la] : rename)
    for (const auto& [zb, lb] : rename)
      if (z.lt(za, zb)) pairs.emplace_back(la, lb);
  for (const auto& a : x.nodes())
    for (const auto& [zn, label] : rename) {
      if (z.lt(f.node_map.at(a), zn)) pairs.emplace_back(a, label);
      if (z.lt(zn, f.node_map.at(a))) pairs.emplace_back(label, a);
    }

  std::vector<ClassRecord> classes = x.classes();
  std::map<ClassKey, ClassKey> out_class_map;
  for (const auto& c : x.classes()) out_class_map[c.key()] = f.class_map.at(c.key());
  for (const auto& c : z.classes()) {
    if (covered.count(c.key())) continue;  // carried by X already
    std::vector<NodeId> ups;
    for (const auto& up : c.ups) ups.push_back(rename.at(up));
    std::sort(ups.begin(), ups.end());
    NodeId low;
    if (image.count(c.low)) {
      std::vector<NodeId> pre;
      for (const auto& [a, b] : f.node_map)
        if (b == c.low) pre.push_back(a);
      if (pre.size() != 1)
        throw std::invalid_argument("expand: class low " + c.low +
                                    " has several preimages; result not representable");
      low = pre.front();
    } else {
      low = rename.at(c.low);
    }
    ClassRecord moved{std::move(ups), low, c.card};
    out_class_map[moved.key()] = c.key();
    classes.push_back(std::move(moved));
  }

  SkeletonPoset y = SkeletonPoset::from_covers(nodes, pairs, classes);
  PosetMap g{y, z, {}, std::move(out_class_map)};
  for (const auto& a : x.nodes()) g.node_map[a] = f.node_map.at(a);
  for (const auto& [zn, label] : rename) g.node_map[label] = zn;
  return {std::move(y), std::move(g)};
}

// A chain V_l -> ... -> V_0 of verified splittings, listed from the simple
// end down to the original poset; the last stage carries no certificate.
struct ChainStage {
  SkeletonPoset poset;
  std::optional<SplittingCertificate> cert;
};

struct SimplifyingChain {
  std::vector<ChainStage> stages;
  std::size_t length() const { return stages.empty() ? 0 : stages.size() - 1; }
  const SkeletonPoset& simple_end() const { return stages.front().poset; }
  const SkeletonPoset& original() const { return stages.back().poset; }
};

// e-values from the original poset up to the simple end.
inline std::vector<std::size_t> e_sequence(const SimplifyingChain& chain) {
  std::vector<std::size_t> out;
  for (auto it = chain.stages.rbegin(); it != chain.stages.rend(); ++it)
    out.push_back(e_count(it->poset));
  return out;
}

// Repeatedly splits the smallest-labeled maximal node with local d > 1
// until the poset is simple. Each round splits under that node, extends
// over the rest of the poset, and refines back to a proper K-poset; e
// drops every round.
inline SimplifyingChain simplify(const SkeletonPoset& v) {
  detail::require_proper(v, "simplify");

  std::vector<SkeletonPoset> posets{v};
  std::vector<SplittingCertificate> certs;
  std::size_t e = e_count(v);
  while (e > 0) {
    const SkeletonPoset& cur = posets.back();
    NodeId pick;
    for (const auto& m : cur.maximals())
      if (cur.height(m) >= 1 && d_local(cur, m) > 1) {
        pick = m;
        break;  // maximals come back in ascending label order
      }
    if (pick.empty()) throw std::logic_error("simplify: e > 0 but no splittable node");

    SplittingCertificate cert = refine(detail::split_unrefined(cur, pick));
    const std::size_t e_next = e_count(cert.upper());
    if (e_next >= e)
      throw std::logic_error("simplify: e did not decrease at " + pick);
    posets.push_back(cert.upper());
    certs.push_back(std::move(cert));
    e = e_next;
  }

  SimplifyingChain chain;
  for (std::size_t i = posets.size(); i-- > 0;) {
    ChainStage stage{posets[i], std::nullopt};
    if (i > 0) stage.cert = certs[i - 1];
    chain.stages.push_back(std::move(stage));
  }
  return chain;
}

// The quotient identifying a fiber of maximal nodes as one fresh node,
// together with the certificate that the input splits the result there.
inline std::pair<SkeletonPoset, SplittingCertificate> glue(const SkeletonPoset& u,
                                                           std::vector<NodeId> fiber) {
  if (!u.validate().empty()) throw std::invalid_argument("glue: poset must validate");
  std::sort(fiber.begin(), fiber.end());
  fiber.erase(std::unique(fiber.begin(), fiber.end()), fiber.end());
  if (fiber.empty()) throw std::invalid_argument("glue: fiber is empty");
  for (const auto& n : fiber)
    if (!u.is_maximal(n) || u.height(n) < 1)
      throw std::invalid_argument("glue: fiber node must be maximal of positive height: " + n);

  auto in_fiber = [&](const NodeId& n) {
    return std::binary_search(fiber.begin(), fiber.end(), n);
  };

  // Reuse the split node's name when the fiber looks like one it produced.
  NodeId glued;
  {
    const NodeId& first = fiber.front();
    const auto hash = first.find('#');
    const NodeId base = hash == NodeId::npos ? first : first.substr(0, hash);
    bool uniform = hash != NodeId::npos;
    for (const auto& n : fiber) uniform = uniform && n.rfind(base + "#", 0) == 0;
    glued = uniform ? base : first;
    auto taken = [&](const NodeId& g) { return u.contains(g) && !in_fiber(g); };
    while (taken(glued)) glued += "+";
  }

  std::vector<NodeId> nodes;
  for (const auto& n : u.nodes())
    if (!in_fiber(n)) nodes.push_back(n);
  nodes.push_back(glued);

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (const auto& a : u.nodes()) {
    if (in_fiber(a)) continue;
    for (const auto& b : u.nodes())
      if (!in_fiber(b) && u.lt(a, b)) pairs.emplace_back(a, b);
    for (const auto& n : fiber)
      if (u.lt(a, n)) {
        pairs.emplace_back(a, glued);
        break;
      }
  }

  std::vector<ClassRecord> classes;
  std::map<ClassKey, ClassKey> class_map;
  for (const auto& c : u.classes()) {
    std::vector<NodeId> ups;
    bool met_fiber = false;
    for (const auto& up : c.ups) {
      if (in_fiber(up))
        met_fiber = true;
      else
        ups.push_back(up);
    }
    if (met_fiber) ups.push_back(glued);
    std::sort(ups.begin(), ups.end());
    ups.erase(std::unique(ups.begin(), ups.end()), ups.end());
    ClassRecord moved{std::move(ups), c.low, c.card};
    class_map[c.key()] = moved.key();  // collisions merge by cardinal addition
    classes.push_back(std::move(moved));
  }

  SkeletonPoset v = SkeletonPoset::from_covers(nodes, pairs, classes);
  PosetMap map{u, v, {}, std::move(class_map)};
  for (const auto& n : u.nodes()) map.node_map[n] = in_fiber(n) ? glued : n;
  SplittingCertificate cert{glued, fiber, std::move(map)};
  return {std::move(v), std::move(cert)};
}

}  // namespace kposet

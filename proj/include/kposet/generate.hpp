#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kposet/analysis.hpp"
#include "kposet/poset.hpp"

namespace kposet {

// Deterministic PRNG behind all seeded generation: splitmix64 (Steele,
// Lea & Flood). The algorithm is part of the tool's contract so that a given
// seed reproduces the same poset everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  bool coin(std::uint64_t num = 1, std::uint64_t den = 2) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

struct GenParams {
  std::uint64_t n_min = 1;   // minimal nodes
  std::uint64_t n_max2 = 0;  // height-two maximal nodes
  std::uint64_t n_h = 0;     // explicit height-one nodes over >= 2 minimals
  CardTag card = CardTag::aleph0();
  std::uint64_t seed = 0;
};

namespace detail {

// First k elements of a seeded permutation of 0..n-1.
inline std::vector<std::size_t> pick_distinct(SplitMix64& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace detail

// Seeded generation of a proper K-poset. Minimals u1..; height-one nodes
// h1.. over two or more minimals each; height-two maxima m1..; occasional
// plain height-one nodes p.. over a single minimal; classes of the requested
// cardinality wherever the third K-poset condition demands one, plus a few
// classes spanning two maxima. Output is deterministic in the seed and
// always passes check_proper.
inline SkeletonPoset gen_proper(const GenParams& params) {
  if (params.n_min < 1)
    throw std::invalid_argument("gen_proper: need at least one minimal node");
  if (params.n_h > 0 && params.n_min < 2)
    throw std::invalid_argument("gen_proper: height-one H nodes need two minimals");
  if (params.n_max2 > 0 && !params.card.is_infinite())
    throw std::invalid_argument("gen_proper: height-two maxima force infinite classes");

  SplitMix64 rng(params.seed);
  std::vector<NodeId> mins, hs, maxs;
  for (std::uint64_t i = 1; i <= params.n_min; ++i) mins.push_back("u" + std::to_string(i));
  for (std::uint64_t i = 1; i <= params.n_h; ++i) hs.push_back("h" + std::to_string(i));
  for (std::uint64_t i = 1; i <= params.n_max2; ++i) maxs.push_back("m" + std::to_string(i));

  std::vector<NodeId> nodes = mins;
  nodes.insert(nodes.end(), hs.begin(), hs.end());
  nodes.insert(nodes.end(), maxs.begin(), maxs.end());
  std::vector<std::pair<NodeId, NodeId>> covers;
  std::vector<ClassRecord> classes;

  std::vector<std::vector<std::size_t>> under_h(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const std::size_t k = 2 + static_cast<std::size_t>(rng.below(mins.size() - 1));
    under_h[i] = detail::pick_distinct(rng, mins.size(), k);
    for (const std::size_t u : under_h[i]) covers.emplace_back(mins[u], hs[i]);
  }

  if (maxs.empty()) {
    // Dimension at most one: maximal h nodes, fans, or bare points.
    if (hs.empty() && params.card > CardTag::finite(0))
      for (const auto& u : mins) classes.push_back({{}, u, params.card});
  } else {
    std::vector<char> min_covered(mins.size(), 0);

    for (std::size_t i = 0; i < hs.size(); ++i) {
      bool attached = false;
      for (const auto& m : maxs)
        if (rng.coin()) {
          covers.emplace_back(hs[i], m);
          attached = true;
        }
      if (!attached) covers.emplace_back(hs[i], maxs[rng.below(maxs.size())]);
      for (const std::size_t u : under_h[i]) min_covered[u] = 1;
    }

    // A few plain height-one nodes over a single minimal.
    const std::uint64_t n_p = rng.below(mins.size() + 1);
    for (std::uint64_t i = 1; i <= n_p; ++i) {
      const NodeId p = "p" + std::to_string(i);
      nodes.push_back(p);
      const std::size_t u = rng.below(mins.size());
      covers.emplace_back(mins[u], p);
      bool attached = false;
      for (const auto& m : maxs)
        if (rng.coin(1, 3)) {
          covers.emplace_back(p, m);
          attached = true;
        }
      if (!attached) covers.emplace_back(p, maxs[rng.below(maxs.size())]);
      min_covered[u] = 1;
    }

    for (std::size_t u = 0; u < mins.size(); ++u) {
      for (const auto& m : maxs)
        if (rng.coin(1, 4)) {
          covers.emplace_back(mins[u], m);
          min_covered[u] = 1;
        }
      if (!min_covered[u]) covers.emplace_back(mins[u], maxs[rng.below(maxs.size())]);
    }

    {
      SkeletonPoset probe = SkeletonPoset::from_covers(nodes, covers);
      for (const auto& m : maxs) {
        bool grounded = false;
        for (const auto& u : mins) grounded = grounded || probe.lt(u, m);
        if (!grounded) covers.emplace_back(mins[rng.below(mins.size())], m);
      }
    }

    SkeletonPoset draft = SkeletonPoset::from_covers(nodes, covers);

    // Every m node must really have height two; a class below is enough.
    for (const auto& m : maxs)
      if (draft.height(m) < 2) {
        for (const auto& u : mins)
          if (draft.lt(u, m)) {
            classes.push_back({{m}, u, params.card});
            break;
          }
      }

    // Occasionally span two maxima over a shared minimal.
    for (std::size_t a = 0; a < maxs.size(); ++a)
      for (std::size_t b = a + 1; b < maxs.size(); ++b)
        for (const auto& u : mins)
          if (draft.lt(u, maxs[a]) && draft.lt(u, maxs[b]) && rng.coin(1, 4)) {
            classes.push_back({{maxs[a], maxs[b]}, u, params.card});
            break;
          }

    // Condition 3 repair: every 2-chain m > x > u gets a full class [m/u].
    SkeletonPoset with_seeds = SkeletonPoset::from_covers(nodes, covers, classes);
    for (const auto& m : maxs)
      for (const auto& u : mins)
        if (with_seeds.lt(u, m) && detail::has_two_chain(with_seeds, m, u) &&
            !with_seeds.find_class({{m}, u}))
          classes.push_back({{m}, u, params.card});
  }

  SkeletonPoset out = SkeletonPoset::from_covers(nodes, covers, classes);
  if (!out.validate().empty() || !analyze_k(out).is_proper)
    throw std::logic_error("gen_proper: generator produced a non-proper poset");
  return out;
}

}  // namespace kposet

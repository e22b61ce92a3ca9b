#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Independent ground-truth utilities used to cross-check the main solvers:
//  - brute_force_opt: exhaustive best integral orientation (small instances);
//  - enumerate_instances: every instance up to isomorphism within bounds;
//  - canonical_form / fingerprint: stable identity for deduplication;
//  - generator families: fixed constructions and seeded random instances.
//
// Everything here is deliberately simple and separate from the LP and search
// code so the two sides can disagree only when one of them is wrong.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "balansol/errors.hpp"
#include "balansol/graph.hpp"
#include "balansol/rational.hpp"

namespace balansol {

// --- Exhaustive integral optimum -------------------------------------------

struct BruteForceResult {
  Rat optimum;
  Orientation witness;  // first optimal assignment in scan order
};

// Tries every orientation of the non-loop edges (loops are forced) and
// returns the minimum possible makespan.  Ties resolve to the first optimal
// bit pattern, scanning bit 0 = first non-loop edge, bit value 0 = edge.u.
// Throws CapExceededError above 20 non-loop edges.
inline BruteForceResult brute_force_opt(const Graph& g) {
  std::vector<int> free_edges;
  for (const Edge& e : g.edges()) {
    if (!e.is_loop()) free_edges.push_back(e.id);
  }
  if (free_edges.size() > 20) {
    throw CapExceededError("brute force limited to 20 non-loop edges");
  }

  // Work in a common integer scale so load comparisons are exact and cheap.
  std::int64_t scale = 1;
  for (const Edge& e : g.edges()) scale = lcm64_checked(scale, e.w.den());
  std::vector<std::int64_t> w(g.edge_count());
  for (const Edge& e : g.edges()) {
    w[e.id] = e.w.num() * (scale / e.w.den());
  }

  std::vector<std::int64_t> base(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) base[e.u] += w[e.id];
  }

  const std::uint32_t limit = 1u << free_edges.size();
  std::int64_t best = -1;
  std::uint32_t best_mask = 0;
  std::vector<std::int64_t> load(g.vertex_count());
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    load = base;
    for (std::size_t i = 0; i < free_edges.size(); ++i) {
      const Edge& e = g.edge(free_edges[i]);
      load[(mask >> i) & 1 ? e.v : e.u] += w[e.id];
    }
    std::int64_t worst = 0;
    for (std::int64_t l : load) worst = std::max(worst, l);
    if (best < 0 || worst < best) {
      best = worst;
      best_mask = mask;
    }
  }

  BruteForceResult result;
  result.optimum = Rat(best, scale);
  result.witness.assign(g.edge_count(), 0);
  for (const Edge& e : g.edges()) result.witness[e.id] = e.u;
  for (std::size_t i = 0; i < free_edges.size(); ++i) {
    const Edge& e = g.edge(free_edges[i]);
    result.witness[e.id] = (best_mask >> i) & 1 ? e.v : e.u;
  }
  return result;
}

// --- Canonical form and fingerprint ----------------------------------------

namespace detail {

struct CanonEdge {
  int a;
  int b;
  Rat w;
  friend bool operator<(const CanonEdge& x, const CanonEdge& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    if (x.w != y.w) return x.w < y.w;
    return false;
  }
  friend bool operator==(const CanonEdge& x, const CanonEdge& y) {
    return x.a == y.a && x.b == y.b && x.w == y.w;
  }
};

inline std::vector<CanonEdge> relabeled_edge_list(
    const Graph& g, const std::vector<int>& perm) {
  std::vector<CanonEdge> list;
  list.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    int a = perm[e.u];
    int b = perm[e.v];
    if (a > b) std::swap(a, b);
    list.push_back({a, b, e.w});
  }
  std::sort(list.begin(), list.end());
  return list;
}

}  // namespace detail

// Lexicographically smallest relabeled sorted edge list over all vertex
// permutations (exact for up to 8 vertices; larger graphs keep their given
// labeling).  Two graphs related by vertex renaming canonicalize equally.
inline std::vector<detail::CanonEdge> canonical_form(const Graph& g) {
  std::vector<int> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<detail::CanonEdge> best = detail::relabeled_edge_list(g, perm);
  if (g.vertex_count() <= 8) {
    std::vector<int> p = perm;
    while (std::next_permutation(p.begin(), p.end())) {
      std::vector<detail::CanonEdge> cand = detail::relabeled_edge_list(g, p);
      if (std::lexicographical_compare(cand.begin(), cand.end(), best.begin(),
                                       best.end())) {
        best = std::move(cand);
      }
    }
  }
  return best;
}

// 64-bit FNV-1a over the canonical form, rendered as 16 hex digits.
inline std::string fingerprint(const Graph& g) {
  std::ostringstream text;
  text << "n=" << g.vertex_count() << ";";
  for (const auto& e : canonical_form(g)) {
    text << e.a << "-" << e.b << ":" << e.w.to_string() << ";";
  }
  std::uint64_t hash = 1469598103934665603ull;
  for (char c : text.str()) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << hash;
  return out.str();
}

// --- Exhaustive instance enumeration ---------------------------------------

// Calls `emit` once per canonical instance with: exactly n vertices for each
// n in [1, max_vertices], between 1 and max_edges edges, every weight drawn
// from `weight_pool`, every vertex touched by at least one edge, and loops
// included only when `include_loops` is set.  Instances related by vertex
// renaming are emitted once, in a deterministic order.
inline void enumerate_instances(int max_vertices, int max_edges,
                                std::vector<Rat> weight_pool,
                                bool include_loops,
                                const std::function<void(const Graph&)>& emit) {
  if (max_vertices < 1 || max_edges < 1) {
    throw Error("enumeration bounds must be at least 1");
  }
  if (max_vertices > 8) {
    throw CapExceededError("enumeration limited to 8 vertices");
  }
  std::sort(weight_pool.begin(), weight_pool.end());
  weight_pool.erase(std::unique(weight_pool.begin(), weight_pool.end()),
                    weight_pool.end());
  if (weight_pool.empty()) throw Error("weight pool must be non-empty");
  for (const Rat& w : weight_pool) {
    if (!w.is_positive()) throw Error("weight pool entries must be positive");
  }

  for (int n = 1; n <= max_vertices; ++n) {
    // Endpoint slots in lexicographic order: (0,0), (0,1), ..., (n-1,n-1).
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u) {
      for (int v = u; v < n; ++v) {
        if (u == v && !include_loops) continue;
        slots.push_back({u, v});
      }
    }
    if (slots.empty()) continue;
    const int pool_size = static_cast<int>(weight_pool.size());
    const int code_count = static_cast<int>(slots.size()) * pool_size;

    // Permutation remap: applying vertex permutation p to edge code c gives
    // the code of the renamed edge (same weight index, renamed slot).
    std::vector<std::vector<int>> slot_index(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < slots.size(); ++i) {
      slot_index[slots[i].first][slots[i].second] = static_cast<int>(i);
    }
    std::vector<std::vector<int>> code_remap;
    {
      std::vector<int> p(n);
      std::iota(p.begin(), p.end(), 0);
      do {
        std::vector<int> remap(code_count);
        for (int c = 0; c < code_count; ++c) {
          int s = c / pool_size;
          int wi = c % pool_size;
          int a = p[slots[s].first];
          int b = p[slots[s].second];
          if (a > b) std::swap(a, b);
          remap[c] = slot_index[a][b] * pool_size + wi;
        }
        code_remap.push_back(std::move(remap));
      } while (std::next_permutation(p.begin(), p.end()));
    }

    // Depth-first over nondecreasing code sequences (a multiset of edges).
    std::vector<int> chosen;
    std::vector<int> renamed;
    auto is_canonical = [&]() {
      // The chosen sequence is canonical if no vertex renaming produces a
      // lexicographically smaller sorted code sequence.
      for (std::size_t pi = 1; pi < code_remap.size(); ++pi) {
        renamed.clear();
        for (int c : chosen) renamed.push_back(code_remap[pi][c]);
        std::sort(renamed.begin(), renamed.end());
        if (std::lexicographical_compare(renamed.begin(), renamed.end(),
                                         chosen.begin(), chosen.end())) {
          return false;
        }
      }
      return true;
    };
    auto covers_all = [&]() {
      std::vector<char> touched(n, 0);
      for (int c : chosen) {
        touched[slots[c / pool_size].first] = 1;
        touched[slots[c / pool_size].second] = 1;
      }
      for (char t : touched) {
        if (!t) return false;
      }
      return true;
    };
    auto build = [&]() {
      std::vector<Edge> edges;
      for (int c : chosen) {
        Edge e;
        e.id = static_cast<int>(edges.size());
        e.u = slots[c / pool_size].first;
        e.v = slots[c / pool_size].second;
        e.w = weight_pool[c % pool_size];
        edges.push_back(e);
      }
      return Graph(n, std::move(edges));
    };

    // A non-canonical sequence cannot extend to a canonical one (inserting
    // the same code into two sorted sequences preserves strict lexicographic
    // order), so canonicity prunes whole subtrees.
    std::function<void(int)> descend = [&](int min_code) {
      if (!chosen.empty() && covers_all()) emit(build());
      if (static_cast<int>(chosen.size()) == max_edges) return;
      // Uncovered vertices must still be reachable with the edges left.
      std::vector<char> touched(n, 0);
      for (int c : chosen) {
        touched[slots[c / pool_size].first] = 1;
        touched[slots[c / pool_size].second] = 1;
      }
      int uncovered = 0;
      for (char t : touched) {
        if (!t) ++uncovered;
      }
      int remaining = max_edges - static_cast<int>(chosen.size());
      if (uncovered > 2 * remaining) return;
      for (int c = min_code; c < code_count; ++c) {
        chosen.push_back(c);
        if (is_canonical()) descend(c);
        chosen.pop_back();
      }
    };
    descend(0);
  }
}

// Convenience collector for small bounds.
inline std::vector<Graph> enumerate_instances_list(int max_vertices,
                                                   int max_edges,
                                                   std::vector<Rat> pool,
                                                   bool include_loops) {
  std::vector<Graph> out;
  enumerate_instances(max_vertices, max_edges, std::move(pool), include_loops,
                      [&](const Graph& g) { out.push_back(g); });
  return out;
}

// --- Generator families ----------------------------------------------------

// k parallel edges of weight w between two vertices.
inline Graph make_parallel(int k, const Rat& w) {
  if (k < 1) throw Error("parallel family needs at least one edge");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) {
    edges.push_back({i, 0, 1, w});
  }
  return Graph(2, std::move(edges));
}

// A path carrying the given weights, with `stub_count` weight-1 leaf edges
// attached to each end of the path.  Path edges come first (ids 0..), then
// the stubs at the front end, then the stubs at the back end.
inline Graph make_path_big(const std::vector<Rat>& path_weights,
                           int stub_count) {
  if (path_weights.empty()) throw Error("path family needs at least one edge");
  if (stub_count < 0) throw Error("stub count must be nonnegative");
  const int path_vertices = static_cast<int>(path_weights.size()) + 1;
  int n = path_vertices + 2 * stub_count;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < path_weights.size(); ++i) {
    edges.push_back({static_cast<int>(i), static_cast<int>(i),
                     static_cast<int>(i) + 1, path_weights[i]});
  }
  int next_vertex = path_vertices;
  for (int end : {0, path_vertices - 1}) {
    for (int s = 0; s < stub_count; ++s) {
      Edge e;
      e.id = static_cast<int>(edges.size());
      e.u = end;
      e.v = next_vertex++;
      e.w = Rat(1);
      edges.push_back(e);
    }
  }
  return Graph(n, std::move(edges));
}

// Seeded uniform random multigraph: endpoints uniform over ordered pairs
// (loops possible when the endpoints coincide), weights uniform over the
// pool.  The same seed always produces the same instance.
inline Graph make_random(int n, int m, const std::vector<Rat>& pool,
                         std::uint64_t seed) {
  if (n < 1 || m < 0) throw Error("random family needs n >= 1, m >= 0");
  if (pool.empty()) throw Error("weight pool must be non-empty");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::uniform_int_distribution<std::size_t> weight(0, pool.size() - 1);
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    Edge e;
    e.id = i;
    e.u = vertex(rng);
    e.v = vertex(rng);
    e.w = pool[weight(rng)];
    edges.push_back(e);
  }
  return Graph(n, std::move(edges));
}

// Random instances biased toward interesting fractional-vs-integral gaps:
// a weight pool clustered around the big/small boundary plus a tendency to
// duplicate endpoints (parallel edges load single vertices heavily).
inline Graph make_gap_probe(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw Error("gap probe needs n >= 1, m >= 1");
  static const std::vector<Rat> pool = {Rat(1, 4), Rat(1, 3),  Rat(1, 2),
                                        Rat(2, 3), Rat(3, 4), Rat(1)};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::uniform_int_distribution<std::size_t> weight(0, pool.size() - 1);
  std::uniform_int_distribution<int> coin(0, 2);
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    Edge e;
    e.id = i;
    if (!edges.empty() && coin(rng) == 0) {
      // Duplicate an earlier pair of endpoints to create parallel edges.
      std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
      const Edge& prev = edges[pick(rng)];
      e.u = prev.u;
      e.v = prev.v;
    } else {
      e.u = vertex(rng);
      e.v = vertex(rng);
    }
    e.w = pool[weight(rng)];
    edges.push_back(e);
  }
  return Graph(n, std::move(edges));
}

}  // namespace balansol

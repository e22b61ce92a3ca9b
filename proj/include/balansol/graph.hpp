#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Weighted multigraph model plus the plain-text instance format.
//
// An instance is a multigraph with positive rational edge weights; loops and
// parallel edges are allowed.  An orientation assigns each edge a target
// endpoint (loops always point at their own vertex), and the quantity of
// interest is the weighted in-degree profile of the orientation.
//
// File format, one directive per line, '#' starts a comment:
//   vertices <n>
//   edge <u> <v> <weight>     # weight accepts p/q, integer, or decimal
// Edge ids are assigned in file order, starting at 0.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "balansol/errors.hpp"
#include "balansol/rational.hpp"

namespace balansol {

struct Edge {
  int id = 0;
  int u = 0;
  int v = 0;
  Rat w;

  bool is_loop() const { return u == v; }
  // The endpoint other than `side`; for loops this is the same vertex.
  int other_endpoint(int side) const { return u + v - side; }

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.id == b.id && a.u == b.u && a.v == b.v && a.w == b.w;
  }
};

class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges)
      : n_(n), edges_(std::move(edges)) {
    if (n_ <= 0) throw Error("graph needs at least one vertex");
    incident_.assign(n_, {});
    for (const Edge& e : edges_) {
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
        throw Error("edge endpoint out of range");
      }
      if (!e.w.is_positive()) throw Error("edge weights must be positive");
      incident_[e.u].push_back(e.id);
      if (e.v != e.u) incident_[e.v].push_back(e.id);
    }
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_.at(id); }
  // Ids of all edges touching v, in id order; a loop appears once.
  const std::vector<int>& incident(int v) const { return incident_.at(v); }

  Rat total_weight() const {
    Rat sum;
    for (const Edge& e : edges_) sum += e.w;
    return sum;
  }

  Rat max_weight() const {
    Rat best;
    for (const Edge& e : edges_) {
      if (e.w > best) best = e.w;
    }
    return best;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 1;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

// Orientation: target vertex per edge id.  orient[e] must be one of the
// edge's endpoints; loops always carry their own vertex.
using Orientation = std::vector<int>;

inline void check_orientation(const Graph& g, const Orientation& orient) {
  if (static_cast<int>(orient.size()) != g.edge_count()) {
    throw Error("orientation size does not match edge count");
  }
  for (const Edge& e : g.edges()) {
    if (orient[e.id] != e.u && orient[e.id] != e.v) {
      throw Error("orientation targets a non-endpoint");
    }
  }
}

// Total weight currently pointing at v.  A loop contributes once.
inline Rat weighted_in_degree(const Graph& g, const Orientation& orient,
                              int v) {
  Rat sum;
  for (int id : g.incident(v)) {
    if (orient[id] == v) sum += g.edge(id).w;
  }
  return sum;
}

// Largest weighted in-degree over all vertices.
inline Rat makespan(const Graph& g, const Orientation& orient) {
  Rat best;
  for (int v = 0; v < g.vertex_count(); ++v) {
    Rat load = weighted_in_degree(g, orient, v);
    if (load > best) best = load;
  }
  return best;
}

// Same graph with every weight multiplied by `factor` (must be positive).
inline Graph scale_weights(const Graph& g, const Rat& factor) {
  if (!factor.is_positive()) throw Error("scale factor must be positive");
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.w *= factor;
  return Graph(g.vertex_count(), std::move(edges));
}

// Deterministic baseline orientation: edges by decreasing weight (ties by
// ascending id) each go toward the endpoint with the smaller current load,
// ties toward the lower vertex id.  Loops are forced.
inline Orientation greedy_orientation(const Graph& g) {
  std::vector<int> order(g.edge_count());
  for (int i = 0; i < g.edge_count(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Rat& wa = g.edge(a).w;
    const Rat& wb = g.edge(b).w;
    if (wa != wb) return wb < wa;
    return a < b;
  });
  std::vector<Rat> load(g.vertex_count());
  Orientation orient(g.edge_count());
  for (int id : order) {
    const Edge& e = g.edge(id);
    int target;
    if (e.is_loop()) {
      target = e.u;
    } else {
      int lo = std::min(e.u, e.v);
      int hi = std::max(e.u, e.v);
      target = (load[hi] < load[lo]) ? hi : lo;
    }
    orient[id] = target;
    load[target] += e.w;
  }
  return orient;
}

// --- Instance parsing and formatting ---------------------------------------

inline Graph parse_instance(std::istream& in) {
  int n = -1;
  std::vector<Edge> edges;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;  // blank or comment-only line
    if (keyword == "vertices") {
      if (n != -1) fail("duplicate vertices directive");
      long long count = 0;
      if (!(fields >> count) || count < 1) {
        fail("vertices needs a positive count");
      }
      if (count > 1000000) fail("vertex count too large");
      std::string extra;
      if (fields >> extra) fail("trailing text after vertex count");
      n = static_cast<int>(count);
    } else if (keyword == "edge") {
      if (n == -1) fail("edge directive before vertices");
      long long u = -1, v = -1;
      std::string weight_text;
      if (!(fields >> u >> v >> weight_text)) {
        fail("edge needs two endpoints and a weight");
      }
      std::string extra;
      if (fields >> extra) fail("trailing text after edge weight");
      if (u < 0 || u >= n || v < 0 || v >= n) {
        fail("edge endpoint out of range");
      }
      Rat w;
      try {
        w = Rat::parse(weight_text);
      } catch (const ParseError& e) {
        fail(std::string("bad edge weight: ") + e.what());
      }
      if (!w.is_positive()) fail("edge weights must be positive");
      Edge e;
      e.id = static_cast<int>(edges.size());
      e.u = static_cast<int>(u);
      e.v = static_cast<int>(v);
      e.w = w;
      edges.push_back(e);
    } else {
      fail("unknown directive '" + keyword + "'");
    }
  }
  if (n == -1) {
    line_no = 0;
    fail("missing vertices directive");
  }
  return Graph(n, std::move(edges));
}

inline Graph parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

inline Graph parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

inline std::string format_instance(const Graph& g) {
  std::ostringstream out;
  out << "vertices " << g.vertex_count() << "\n";
  for (const Edge& e : g.edges()) {
    out << "edge " << e.u << " " << e.v << " " << e.w.to_string() << "\n";
  }
  return out.str();
}

}  // namespace balansol

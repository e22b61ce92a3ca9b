#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Exact solver for the per-vertex configuration relaxation.
//
// For a threshold tau, a configuration at vertex v is a subset of v's
// incident edges with total weight at most tau.  The relaxation asks for
// nonnegative mass x over (vertex, configuration) pairs such that every
// vertex spends total mass at most 1 and every edge collects mass at least 1
// from configurations containing it at its two endpoints.  The least tau
// admitting such mass is the fractional optimum of the instance; it lower
// bounds the best integral orientation makespan (an orientation is the
// integral special case: each vertex picks its in-edge set with mass 1).
//
// Everything is exact.  Feasibility is decided by a phase-one simplex over
// integers (fraction-free pivoting), and every "feasible" answer carries an
// explicit rational witness that is revalidated before being returned.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "balansol/errors.hpp"
#include "balansol/graph.hpp"
#include "balansol/rational.hpp"

namespace balansol {

constexpr long kDefaultConfigCap = 1L << 20;

// A subset of one vertex's incident edges; ids ascending, weight = total.
struct Config {
  std::vector<int> ids;
  Rat weight;

  friend bool operator==(const Config& a, const Config& b) {
    return a.ids == b.ids && a.weight == b.weight;
  }
};

namespace detail {

inline std::vector<Config> enumerate_configs_impl(const Graph& g, int v,
                                                  const Rat& tau, long cap,
                                                  bool maximal_only) {
  std::vector<Config> out;
  if (tau.is_negative()) return out;  // not even the empty set qualifies

  std::vector<int> order = g.incident(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.edge(a).w != g.edge(b).w) return g.edge(a).w < g.edge(b).w;
    return a < b;
  });

  std::vector<int> current;
  long visited = 0;
  // Explores subsets in binary-counting order over the weight-ascending
  // incident list (first listed edge = most significant bit, 0 = absent).
  // first_excluded is the smallest-weight edge left out along this path: a
  // complete subset is inclusion-maximal exactly when that edge no longer
  // fits the remaining budget.
  std::function<void(std::size_t, const Rat&, const std::optional<Rat>&)> dfs =
      [&](std::size_t i, const Rat& remaining,
          const std::optional<Rat>& first_excluded) {
        if (i == order.size()) {
          if (++visited > cap) {
            throw CapExceededError("configuration count exceeds cap");
          }
          if (!maximal_only || !first_excluded ||
              *first_excluded > remaining) {
            Config c;
            c.ids = current;
            std::sort(c.ids.begin(), c.ids.end());
            c.weight = tau - remaining;
            out.push_back(std::move(c));
          }
          return;
        }
        const Edge& e = g.edge(order[i]);
        dfs(i + 1, remaining, first_excluded ? first_excluded : e.w);
        if (e.w <= remaining) {
          current.push_back(e.id);
          dfs(i + 1, remaining - e.w, first_excluded);
          current.pop_back();
        }
      };
  dfs(0, tau, std::nullopt);
  return out;
}

}  // namespace detail

// Every configuration at v (the empty set included), deterministic order.
inline std::vector<Config> enumerate_configs(const Graph& g, int v,
                                             const Rat& tau,
                                             long cap = kDefaultConfigCap) {
  return detail::enumerate_configs_impl(g, v, tau, cap, false);
}

// Only inclusion-maximal configurations at v, deterministic order.  Mass on
// a non-maximal configuration can always move to a maximal superset (vertex
// totals unchanged, edge coverage only grows), so restricting the relaxation
// to these columns loses nothing.
inline std::vector<Config> enumerate_maximal_configs(
    const Graph& g, int v, const Rat& tau, long cap = kDefaultConfigCap) {
  return detail::enumerate_configs_impl(g, v, tau, cap, true);
}

// --- Primal witnesses ------------------------------------------------------

struct PrimalEntry {
  int vertex = 0;
  Config config;
  Rat x;
};

struct PrimalSolution {
  std::vector<PrimalEntry> entries;
};

// Checks all three constraint families plus structural sanity of entries.
inline bool validate_primal(const Graph& g, const Rat& tau,
                            const PrimalSolution& sol,
                            std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::vector<Rat> vertex_mass(g.vertex_count());
  std::vector<Rat> coverage(g.edge_count());
  for (const PrimalEntry& entry : sol.entries) {
    if (entry.vertex < 0 || entry.vertex >= g.vertex_count()) {
      return fail("entry vertex out of range");
    }
    if (entry.x.is_negative()) return fail("negative mass");
    Rat total;
    int prev = -1;
    for (int id : entry.config.ids) {
      if (id < 0 || id >= g.edge_count()) return fail("edge id out of range");
      if (id <= prev) return fail("config ids not strictly ascending");
      prev = id;
      const Edge& e = g.edge(id);
      if (e.u != entry.vertex && e.v != entry.vertex) {
        return fail("config uses a non-incident edge");
      }
      total += e.w;
      coverage[id] += entry.x;
    }
    if (total != entry.config.weight) return fail("config weight mismatch");
    if (total > tau) return fail("config exceeds threshold");
    vertex_mass[entry.vertex] += entry.x;
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (vertex_mass[v] > Rat(1)) return fail("vertex mass exceeds 1");
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (coverage[e] < Rat(1)) return fail("edge not fully covered");
  }
  return true;
}

// --- Phase-one simplex over integers ---------------------------------------

namespace detail {

// Decides feasibility of: for each vertex row, sum of its columns <= 1; for
// each edge row, sum of covering columns >= 1; all variables nonnegative.
// The tableau stays integral throughout: entries are the true rational
// values times a common positive divisor (the previous pivot element), and
// every pivot divides exactly.  Bland's rule on both the entering column and
// the leaving row guarantees termination.
class PhaseOneSimplex {
 public:
  // x_cols[j] = (vertex row, covered edge rows) of structural column j.
  PhaseOneSimplex(int vertex_rows, int edge_rows,
                  const std::vector<std::pair<int, std::vector<int>>>& x_cols)
      : n_(vertex_rows), m_(edge_rows), x_(static_cast<int>(x_cols.size())) {
    rows_ = n_ + m_;
    cols_ = x_ + m_ + n_ + m_;  // structural, surplus, slack, artificial
    if (static_cast<long long>(rows_ + 1) * (cols_ + 1) > (1LL << 26)) {
      throw CapExceededError("relaxation too large for the exact solver");
    }
    tab_.assign(static_cast<std::size_t>(rows_ + 1) * (cols_ + 1), 0);
    q_ = 1;
    basic_var_.assign(rows_ + 1, -1);
    // Row 0 carries the phase-one objective (total artificial mass) written
    // like a constraint, "sum(row0[c] * var_c) - value = rhs0", so the same
    // pivot update applies to it; the current value is -rhs0 / divisor.
    for (int j = 0; j < x_; ++j) {
      at(1 + x_cols[j].first, j) = 1;
      at(0, j) -= 1 * static_cast<std::int64_t>(x_cols[j].second.size());
      for (int e : x_cols[j].second) at(1 + n_ + e, j) = 1;
    }
    for (int e = 0; e < m_; ++e) {
      at(1 + n_ + e, x_ + e) = -1;       // surplus
      at(0, x_ + e) = 1;                 // -(-1) summed over edge rows
      at(1 + n_ + e, x_ + m_ + n_ + e) = 1;  // artificial (basic)
      at(1 + n_ + e, cols_) = 1;         // rhs
      basic_var_[1 + n_ + e] = x_ + m_ + n_ + e;
      at(0, cols_) -= 1;
    }
    for (int v = 0; v < n_; ++v) {
      at(1 + v, x_ + m_ + v) = 1;  // slack (basic)
      at(1 + v, cols_) = 1;
      basic_var_[1 + v] = x_ + m_ + v;
    }
  }

  // Runs to optimality; true iff all artificial mass was driven to zero.
  bool solve() {
    const int first_artificial = x_ + m_ + n_;
    long pivots = 0;
    while (true) {
      if (++pivots > 200000) {
        throw InvariantError("simplex pivot limit exceeded");
      }
      int enter = -1;
      for (int j = 0; j < first_artificial; ++j) {
        if (at(0, j) < 0) {  // increasing var j decreases artificial mass
          enter = j;
          break;
        }
      }
      if (enter < 0) break;
      int leave = -1;
      for (int i = 1; i <= rows_; ++i) {
        if (at(i, enter) <= 0) continue;
        if (leave < 0) {
          leave = i;
          continue;
        }
        detail::int128 a = detail::int128(at(i, cols_)) * at(leave, enter);
        detail::int128 b = detail::int128(at(leave, cols_)) * at(i, enter);
        if (a < b || (a == b && basic_var_[i] < basic_var_[leave])) leave = i;
      }
      if (leave < 0) {
        throw InvariantError("phase-one objective unbounded");
      }
      pivot(leave, enter);
    }
    return at(0, cols_) == 0;
  }

  // Value of structural column j at the final basic point.
  Rat x_value(int j) const {
    for (int i = 1; i <= rows_; ++i) {
      if (basic_var_[i] == j) return Rat(at(i, cols_), q_);
    }
    return Rat(0);
  }

 private:
  std::int64_t& at(int i, int j) {
    return tab_[static_cast<std::size_t>(i) * (cols_ + 1) + j];
  }
  std::int64_t at(int i, int j) const {
    return tab_[static_cast<std::size_t>(i) * (cols_ + 1) + j];
  }

  void pivot(int r, int c) {
    const std::int64_t p = at(r, c);
    if (p <= 0) throw InvariantError("pivot element must be positive");
    for (int i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const std::int64_t in_col = at(i, c);
      for (int j = 0; j <= cols_; ++j) {
        detail::int128 value =
            detail::int128(p) * at(i, j) - detail::int128(in_col) * at(r, j);
        if (value % q_ != 0) {
          throw InvariantError("fraction-free pivot division not exact");
        }
        value /= q_;
        if (value > std::numeric_limits<std::int64_t>::max() ||
            value < std::numeric_limits<std::int64_t>::min()) {
          throw OverflowError("simplex tableau exceeds the 64-bit range");
        }
        at(i, j) = static_cast<std::int64_t>(value);
      }
    }
    q_ = p;
    basic_var_[r] = c;
  }

  int n_, m_, x_;
  int rows_ = 0, cols_ = 0;
  std::int64_t q_ = 1;
  std::vector<std::int64_t> tab_;
  std::vector<int> basic_var_;
};

}  // namespace detail

// --- Feasibility and the fractional optimum --------------------------------

struct LpDecision {
  bool feasible = false;
  PrimalSolution witness;  // meaningful only when feasible
};

inline LpDecision lp_feasible(const Graph& g, const Rat& tau,
                              long cap = kDefaultConfigCap) {
  LpDecision out;

  // An edge heavier than tau fits in no configuration at either endpoint.
  for (const Edge& e : g.edges()) {
    if (e.w > tau) return out;
  }
  // Total covered weight is at most (number of vertices) * tau.  With no
  // edges there is nothing to cover and the bound does not apply.
  if (g.edge_count() > 0 &&
      g.total_weight() > Rat(g.vertex_count()) * tau)
    return out;
  // If every vertex could absorb its whole neighborhood, any orientation
  // yields an integral witness directly.
  {
    bool all_fit = true;
    for (int v = 0; v < g.vertex_count() && all_fit; ++v) {
      Rat around;
      for (int id : g.incident(v)) around += g.edge(id).w;
      if (around > tau) all_fit = false;
    }
    if (all_fit) {
      Orientation orient = greedy_orientation(g);
      for (int v = 0; v < g.vertex_count(); ++v) {
        Config c;
        for (int id : g.incident(v)) {
          if (orient[id] == v) c.ids.push_back(id);
        }
        if (c.ids.empty()) continue;
        std::sort(c.ids.begin(), c.ids.end());
        for (int id : c.ids) c.weight += g.edge(id).w;
        out.witness.entries.push_back({v, std::move(c), Rat(1)});
      }
      out.feasible = true;
      std::string why;
      if (!validate_primal(g, tau, out.witness, &why)) {
        throw SoundnessError("direct witness failed validation: " + why);
      }
      return out;
    }
  }

  // Full solve over inclusion-maximal columns.
  std::vector<std::pair<int, Config>> columns;
  long budget = cap;
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<Config> configs = enumerate_maximal_configs(g, v, tau, budget);
    for (Config& c : configs) {
      if (c.ids.empty()) continue;
      columns.push_back({v, std::move(c)});
    }
    budget = cap - static_cast<long>(columns.size());
    if (budget <= 0) throw CapExceededError("configuration count exceeds cap");
  }
  std::vector<std::pair<int, std::vector<int>>> x_cols;
  x_cols.reserve(columns.size());
  for (const auto& [v, c] : columns) x_cols.push_back({v, c.ids});

  detail::PhaseOneSimplex simplex(g.vertex_count(), g.edge_count(), x_cols);
  if (!simplex.solve()) return out;

  out.feasible = true;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    Rat value = simplex.x_value(static_cast<int>(j));
    if (value.is_zero()) continue;
    out.witness.entries.push_back(
        {columns[j].first, columns[j].second, value});
  }
  std::string why;
  if (!validate_primal(g, tau, out.witness, &why)) {
    throw SoundnessError("simplex witness failed validation: " + why);
  }
  return out;
}

// Distinct per-vertex incident subset sums up to `limit`, pooled over all
// vertices, 0 included.  The fractional optimum is always one of these.
inline std::vector<Rat> breakpoint_candidates(const Graph& g, const Rat& limit,
                                              long cap = kDefaultConfigCap) {
  std::set<Rat> pooled{Rat(0)};
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::set<Rat> sums{Rat(0)};
    for (int id : g.incident(v)) {
      const Rat& w = g.edge(id).w;
      std::vector<Rat> grown;
      for (const Rat& s : sums) {
        Rat t = s + w;
        if (t <= limit) grown.push_back(t);
      }
      sums.insert(grown.begin(), grown.end());
      if (static_cast<long>(sums.size()) > cap) {
        throw CapExceededError("breakpoint count exceeds cap");
      }
    }
    pooled.insert(sums.begin(), sums.end());
    if (static_cast<long>(pooled.size()) > cap) {
      throw CapExceededError("breakpoint count exceeds cap");
    }
  }
  return {pooled.begin(), pooled.end()};
}

struct OptStarResult {
  Rat value;
  PrimalSolution witness;       // witness at `value`
  std::vector<Rat> breakpoints;  // sorted candidate thresholds that were used
};

// Least threshold at which the relaxation is feasible.  The search space is
// the per-vertex subset-sum grid clipped to [lower bound, greedy makespan];
// feasibility is monotone in the threshold, so a binary search applies.
inline OptStarResult opt_star(const Graph& g, long cap = kDefaultConfigCap) {
  OptStarResult out;
  Rat ub = makespan(g, greedy_orientation(g));
  Rat lb = g.max_weight();
  {
    Rat average = g.total_weight() / Rat(g.vertex_count());
    if (average > lb) lb = average;
  }
  out.breakpoints = breakpoint_candidates(g, ub, cap);

  std::vector<Rat> candidates;
  for (const Rat& b : out.breakpoints) {
    if (b >= lb) candidates.push_back(b);
  }
  if (candidates.empty() || candidates.back() != ub) {
    throw InvariantError("breakpoint grid must contain the greedy makespan");
  }
  // Least feasible candidate.  The greedy makespan (last candidate) is
  // feasible via its integral witness, and every value below the lower
  // bound is infeasible, so the answer lies in this window.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (lp_feasible(g, candidates[mid], cap).feasible) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.value = candidates[lo];
  LpDecision final = lp_feasible(g, out.value, cap);
  if (!final.feasible) {
    throw InvariantError("threshold feasibility lost monotonicity");
  }
  out.witness = std::move(final.witness);
  return out;
}

// Difference of certificate sides: sum of vertex charges minus edge charges.
inline Rat dual_objective(const std::vector<Rat>& y,
                          const std::vector<Rat>& z) {
  Rat total;
  for (const Rat& v : y) total += v;
  for (const Rat& e : z) total -= e;
  return total;
}

// Orientation derived from a fractional witness at threshold tau: each edge
// goes toward the endpoint granting it more witness mass (ties toward the
// lower vertex id; loops forced).  Because a configuration can hold at most
// one edge heavier than tau/2 and the chosen side carries mass >= 1/2, no
// vertex receives more than two such edges.
inline Orientation initial_orientation(const Graph& g, const Rat& tau,
                                       const PrimalSolution& witness) {
  std::vector<Rat> toward_u(g.edge_count()), toward_v(g.edge_count());
  for (const PrimalEntry& entry : witness.entries) {
    for (int id : entry.config.ids) {
      const Edge& e = g.edge(id);
      if (entry.vertex == e.u) {
        toward_u[id] += entry.x;
      } else {
        toward_v[id] += entry.x;
      }
    }
  }
  Orientation orient(g.edge_count());
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      orient[e.id] = e.u;
    } else if (toward_u[e.id] > toward_v[e.id]) {
      orient[e.id] = e.u;
    } else if (toward_v[e.id] > toward_u[e.id]) {
      orient[e.id] = e.v;
    } else {
      orient[e.id] = std::min(e.u, e.v);
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    int heavy = 0;
    for (int id : g.incident(v)) {
      if (orient[id] == v && Rat(2) * g.edge(id).w > tau) ++heavy;
    }
    if (heavy > 2) {
      throw InvariantError(
          "witness-guided orientation produced three heavy in-edges");
    }
  }
  return orient;
}

}  // namespace balansol

#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Local search for arbitrary weights in (0, threshold].  Keeps every
// vertex at no more than two big in-edges throughout, which the starting
// orientation must already satisfy; run_general builds one from the
// fractional relaxation when it is feasible and greedily otherwise.

#include <algorithm>
#include <utility>
#include <vector>

#include "balansol/config_lp.hpp"
#include "balansol/errors.hpp"
#include "balansol/graph.hpp"
#include "balansol/rational.hpp"
#include "balansol/search_engine.hpp"
#include "balansol/search_params.hpp"
#include "balansol/trace.hpp"

namespace balansol {

// Starting orientation used when no fractional witness is available:
// place big edges (weight above half the threshold) so no vertex takes
// more than two, then the rest heaviest-first toward the lighter side.
inline Orientation general_fallback_orientation(const Graph& g,
                                                const Rat& tau) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  const Rat half = tau / Rat(2);
  Orientation tgt(m, -1);
  std::vector<int> big_in(n, 0);
  std::vector<int> bigs;  // non-loop big edges
  for (const Edge& e : g.edges()) {
    if (e.w <= half) continue;
    if (e.is_loop()) {
      tgt[e.id] = e.u;
      ++big_in[e.u];
    } else {
      bigs.push_back(e.id);
    }
  }
  std::sort(bigs.begin(), bigs.end(), [&](int a, int b) {
    const Rat& wa = g.edges()[a].w;
    const Rat& wb = g.edges()[b].w;
    if (wa != wb) return wb < wa;
    return a < b;
  });
  for (int e : bigs) {
    const Edge& ed = g.edges()[e];
    const int lo = std::min(ed.u, ed.v);
    const int hi = std::max(ed.u, ed.v);
    const int pick = big_in[hi] < big_in[lo] ? hi : lo;
    tgt[e] = pick;
    ++big_in[pick];
  }
  bool admissible = true;
  for (int v = 0; v < n; ++v)
    if (big_in[v] > 2) admissible = false;
  if (!admissible) {
    // Greedy failed; try every placement of the non-loop big edges.
    if (bigs.size() > 20)
      throw CapExceededError(
          "too many big edges to search for an admissible start");
    std::vector<int> base(n, 0);
    for (const Edge& e : g.edges())
      if (e.is_loop() && e.w > half) ++base[e.u];
    bool found = false;
    for (std::uint64_t mask = 0;
         mask < (std::uint64_t{1} << bigs.size()) && !found; ++mask) {
      std::vector<int> cnt = base;
      for (size_t i = 0; i < bigs.size(); ++i) {
        const Edge& ed = g.edges()[bigs[i]];
        ++cnt[(mask >> i) & 1 ? ed.v : ed.u];
      }
      bool ok = true;
      for (int v = 0; v < n; ++v)
        if (cnt[v] > 2) ok = false;
      if (!ok) continue;
      for (size_t i = 0; i < bigs.size(); ++i) {
        const Edge& ed = g.edges()[bigs[i]];
        tgt[bigs[i]] = (mask >> i) & 1 ? ed.v : ed.u;
      }
      found = true;
    }
    if (!found)
      throw Error("no starting orientation keeps big in-degrees at two");
  }
  // Remaining edges: heaviest first toward the currently lighter side.
  std::vector<Rat> load(n, Rat(0));
  for (int e = 0; e < m; ++e)
    if (tgt[e] >= 0) load[tgt[e]] = load[tgt[e]] + g.edges()[e].w;
  std::vector<int> rest;
  for (int e = 0; e < m; ++e)
    if (tgt[e] < 0) rest.push_back(e);
  std::sort(rest.begin(), rest.end(), [&](int a, int b) {
    const Rat& wa = g.edges()[a].w;
    const Rat& wb = g.edges()[b].w;
    if (wa != wb) return wb < wa;
    return a < b;
  });
  for (int e : rest) {
    const Edge& ed = g.edges()[e];
    int pick = ed.u;
    if (!ed.is_loop()) {
      const int lo = std::min(ed.u, ed.v);
      const int hi = std::max(ed.u, ed.v);
      pick = load[hi] < load[lo] ? hi : lo;
    }
    tgt[e] = pick;
    load[pick] = load[pick] + ed.w;
  }
  return tgt;
}

inline SearchOutcome run_general_with_init(const Graph& g, const Rat& tau,
                                           Orientation init,
                                           long iteration_cap = kDefaultIterationCap,
                                           const GeneralParams& params = {},
                                           TraceSink* sink = nullptr) {
  const auto broken = check_general_params(params);
  if (!broken.empty())
    throw InvariantError("mode constants fail a guard: " + broken.front());
  if (g.edge_count() == 0) {
    SearchOutcome out;
    out.status = RunStatus::Done;
    out.makespan_normalized = Rat(0);
    return out;
  }
  if (!tau.is_positive())
    throw Error("threshold must be positive to run the search");
  for (const Edge& e : g.edges())
    if (e.w > tau)
      throw ModeViolationError(
          "edge weight exceeds the threshold; no orientation can stay "
          "within budget");
  const Graph gn = scale_weights(g, Rat(1) / tau);
  detail::SearchEngine engine(gn, /*general=*/true, params.R,
                              params.tiny_cutoff(), std::move(init), sink);
  return detail::drive(engine, iteration_cap);
}

// Default starting orientation: derived from a fractional witness when
// the relaxation is feasible at `tau`, from the big-edge placement
// heuristic otherwise.
inline Orientation general_initial_orientation(
    const Graph& g, const Rat& tau, long config_cap = kDefaultConfigCap) {
  if (g.edge_count() == 0) return {};
  for (const Edge& e : g.edges())
    if (e.w > tau)
      throw ModeViolationError(
          "edge weight exceeds the threshold; no orientation can stay "
          "within budget");
  const LpDecision dec = lp_feasible(g, tau, config_cap);
  if (dec.feasible) return initial_orientation(g, tau, dec.witness);
  return general_fallback_orientation(g, tau);
}

inline SearchOutcome run_general(const Graph& g, const Rat& tau,
                                 long iteration_cap = kDefaultIterationCap,
                                 const GeneralParams& params = {},
                                 TraceSink* sink = nullptr,
                                 long config_cap = kDefaultConfigCap) {
  return run_general_with_init(g, tau,
                               general_initial_orientation(g, tau, config_cap),
                               iteration_cap, params, sink);
}

// Re-runs one step on a restored state; true means no action is
// available, i.e. the snapshot really is a stalled state.
inline bool state_is_stuck(const StuckState& st) {
  Rat R, cutoff;
  if (st.general) {
    const GeneralParams p;
    R = p.R;
    cutoff = p.tiny_cutoff();
  } else {
    const SimpleParams p;
    R = p.R;
    cutoff = p.tiny_cutoff();
  }
  detail::SearchEngine engine(st.normalized, st.general, R, cutoff,
                              st.orientation, nullptr);
  engine.restore_queue(st.pending, st.q_sets);
  return engine.step() == detail::SearchEngine::StepResult::Stuck;
}

}  // namespace balansol

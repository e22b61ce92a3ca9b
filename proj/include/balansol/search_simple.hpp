#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Local search for the restricted weight domain: after dividing every
// weight by the threshold, each must lie in (0, 1/2] or equal 1.

#include <utility>

#include "balansol/errors.hpp"
#include "balansol/graph.hpp"
#include "balansol/rational.hpp"
#include "balansol/search_engine.hpp"
#include "balansol/search_params.hpp"
#include "balansol/trace.hpp"

namespace balansol {

// Deterministic starting point: heaviest edges first, each toward the
// endpoint currently carrying less.
inline Orientation simple_initial_orientation(const Graph& g) {
  return greedy_orientation(g);
}

inline SearchOutcome run_simple_with_init(const Graph& g, const Rat& tau,
                                          Orientation init,
                                          long iteration_cap = kDefaultIterationCap,
                                          const SimpleParams& params = {},
                                          TraceSink* sink = nullptr) {
  const auto broken = check_simple_params(params);
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
  const Graph gn = scale_weights(g, Rat(1) / tau);
  if (!simple_mode_allows(gn))
    throw ModeViolationError(
        "simple mode requires every weight over the threshold to lie in "
        "(0, 1/2] or equal 1");
  detail::SearchEngine engine(gn, /*general=*/false, params.R,
                              params.tiny_cutoff(), std::move(init), sink);
  return detail::drive(engine, iteration_cap);
}

inline SearchOutcome run_simple(const Graph& g, const Rat& tau,
                                long iteration_cap = kDefaultIterationCap,
                                const SimpleParams& params = {},
                                TraceSink* sink = nullptr) {
  return run_simple_with_init(g, tau, simple_initial_orientation(g),
                              iteration_cap, params, sink);
}

}  // namespace balansol

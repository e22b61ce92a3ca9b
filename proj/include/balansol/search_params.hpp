#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Mode constants for the two local-search variants and the inequalities
// they must satisfy.  The searches themselves only need R (a vertex is
// acceptable while its in-load stays within 1+R of the threshold) and the
// weight-class cutoffs; beta and mu enter the certificates built from
// stalled searches.  The guard inequalities are exactly what makes those
// certificates come out nonnegative where required and strictly winning
// overall, so violating any of them voids the construction.

#include <string>
#include <vector>

#include "balansol/graph.hpp"
#include "balansol/rational.hpp"

namespace balansol {

// Constants for the restricted weight domain (after normalizing the
// threshold to 1, every weight must lie in (0, 1/2] or equal 1).
struct SimpleParams {
  Rat R{37, 50};
  Rat beta{11, 10};
  Rat mu{1, 100};

  Rat budget() const { return Rat(1) + R; }
  Rat tiny_cutoff() const { return Rat(1) - R; }
};

// Constants for arbitrary weights in (0, 1].
struct GeneralParams {
  Rat R{749, 1000};
  Rat beta{103, 100};
  Rat mu{1, 100};

  Rat budget() const { return Rat(1) + R; }
  Rat tiny_cutoff() const { return Rat(1, 3); }
};

// Weight classes relative to a normalized threshold of 1.
enum class SizeClass { Tiny, Small, Big };

inline SizeClass classify_weight(const Rat& w, const Rat& tiny_cutoff) {
  if (w <= tiny_cutoff) return SizeClass::Tiny;
  if (w <= Rat(1, 2)) return SizeClass::Small;
  return SizeClass::Big;
}

// True when every weight of the normalized instance fits the restricted
// domain (0, 1/2] union {1}.
inline bool simple_mode_allows(const Graph& normalized) {
  for (const Edge& e : normalized.edges()) {
    if (e.w > Rat(1, 2) && e.w != Rat(1)) return false;
  }
  return true;
}

namespace detail {

inline void guard(std::vector<std::string>* out, bool holds,
                  const std::string& text) {
  if (!holds) out->push_back(text);
}

}  // namespace detail

// Returns the violated inequalities (empty means the constants are usable).
inline std::vector<std::string> check_simple_params(const SimpleParams& p) {
  const Rat& R = p.R;
  const Rat& beta = p.beta;
  const Rat& mu = p.mu;
  std::vector<std::string> out;
  detail::guard(&out, Rat(2) * R - mu >= beta, "2R - mu >= beta");
  detail::guard(&out, Rat(3) * R - Rat(2) * beta >= Rat(0),
                "3R - 2*beta >= 0");
  detail::guard(&out, beta * (R - Rat(1, 2)) >= Rat(1) - R,
                "beta*(R - 1/2) >= 1 - R");
  detail::guard(&out, Rat(2) - beta >= Rat(0), "2 - beta >= 0");
  detail::guard(&out, Rat(3) - Rat(2) * beta >= Rat(0), "3 - 2*beta >= 0");
  detail::guard(&out, R > Rat(1, 2) && R < Rat(1), "1/2 < R < 1");
  detail::guard(&out, beta >= Rat(1), "beta >= 1");
  detail::guard(&out, mu.is_positive(), "mu > 0");
  return out;
}

inline std::vector<std::string> check_general_params(const GeneralParams& p) {
  const Rat& R = p.R;
  const Rat& beta = p.beta;
  const Rat& mu = p.mu;
  std::vector<std::string> out;
  detail::guard(&out, Rat(2) * R - mu >= beta, "2R - mu >= beta");
  detail::guard(&out,
                Rat(2) * R + Rat(2, 3) - beta >= beta + (beta - Rat(1)),
                "2R + 2/3 - beta >= beta + (beta - 1)");
  detail::guard(&out, Rat(3) * R - Rat(11, 10) >= beta,
                "3R - 11/10 >= beta");
  detail::guard(&out, beta * (R - Rat(1, 2)) >= Rat(1) - R,
                "beta*(R - 1/2) >= 1 - R");
  detail::guard(&out,
                R + Rat(2, 3) - beta + Rat(4) * R - Rat(11, 5) >= beta,
                "R + 2/3 - beta + 4R - 11/5 >= beta");
  detail::guard(&out, Rat(2) * R + Rat(1) - beta >= beta,
                "2R + 1 - beta >= beta");
  detail::guard(&out,
                Rat(2) * R + Rat(1) - beta >= Rat(2, 5) * beta + Rat(1),
                "2R + 1 - beta >= (2/5)*beta + 1");
  detail::guard(&out, R > Rat(1, 2) && R < Rat(1), "1/2 < R < 1");
  detail::guard(&out, beta >= Rat(1), "beta >= 1");
  detail::guard(&out, mu.is_positive(), "mu > 0");
  return out;
}

}  // namespace balansol

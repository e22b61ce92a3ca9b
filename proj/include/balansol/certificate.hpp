#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Dual certificates of relaxation infeasibility.  A certificate assigns a
// charge z(e) >= 0 to every edge and a capacity y(v) >= 0 to every vertex
// such that every configuration C at threshold tau satisfies
// z(C) <= y(v), yet the total charge strictly exceeds the total capacity.
// Any such pair proves that the fractional relaxation at tau is
// infeasible, i.e. tau is strictly below the fractional optimum.
//
// Certificates are constructed from stalled local-search states: the
// stalled structure (repelled edges, pending flips, combinable marks)
// pins down charges that provably win, with small per-vertex corrections
// whose sums are checked here before the certificate is handed out.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "balansol/config_lp.hpp"
#include "balansol/errors.hpp"
#include "balansol/graph.hpp"
#include "balansol/rational.hpp"
#include "balansol/search_engine.hpp"
#include "balansol/search_general.hpp"
#include "balansol/search_params.hpp"

namespace balansol {

struct DualCertificate {
  std::vector<Rat> z;  // per edge
  std::vector<Rat> y;  // per vertex
};

struct VerifyResult {
  bool accepted = false;
  std::string reason;      // first violated requirement when rejected
  int vertex = -1;         // vertex of the violating configuration
  std::vector<int> config;  // edge ids of the violating configuration
};

// Checks a certificate against the instance at threshold tau, in this
// order: nonnegativity, then per vertex (ascending) every inclusion-
// maximal configuration in enumeration order, then strictness of the
// objective.  Checking maximal configurations suffices because charges
// are nonnegative.
inline VerifyResult verify_certificate(const Graph& g, const Rat& tau,
                                       const DualCertificate& cert,
                                       long config_cap = kDefaultConfigCap) {
  VerifyResult out;
  if (static_cast<int>(cert.z.size()) != g.edge_count() ||
      static_cast<int>(cert.y.size()) != g.vertex_count()) {
    out.reason = "certificate size does not match the instance";
    return out;
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (cert.z[e].is_negative()) {
      out.reason = "negative edge charge at edge " + std::to_string(e);
      return out;
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (cert.y[v].is_negative()) {
      out.reason = "negative vertex capacity at vertex " + std::to_string(v);
      return out;
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    const std::vector<Config> configs =
        enumerate_maximal_configs(g, v, tau, config_cap);
    for (const Config& c : configs) {
      Rat charge;
      for (int id : c.ids) charge += cert.z[id];
      if (charge > cert.y[v]) {
        out.reason = "configuration charge exceeds vertex capacity";
        out.vertex = v;
        out.config = c.ids;
        return out;
      }
    }
  }
  Rat total_y, total_z;
  for (const Rat& y : cert.y) total_y += y;
  for (const Rat& z : cert.z) total_z += z;
  if (!(total_y < total_z)) {
    out.reason = "total capacity is not strictly below total charge";
    return out;
  }
  out.accepted = true;
  return out;
}

// A certificate built for the normalized instance (threshold 1) turns
// into one for the original instance at threshold tau by scaling both
// sides.
inline DualCertificate rescale_certificate(DualCertificate cert,
                                           const Rat& tau) {
  for (Rat& z : cert.z) z = z * tau;
  for (Rat& y : cert.y) y = y * tau;
  return cert;
}

namespace detail {

struct StuckView {
  int n = 0;
  int m = 0;
  std::vector<int> source;          // per edge
  std::vector<bool> in_etilde;      // repelled by its holder
  std::vector<bool> good;           // load within budget
  std::vector<Rat> load;
};

inline StuckView make_stuck_view(const StuckState& st, const Rat& R) {
  const Graph& g = st.normalized;
  StuckView view;
  view.n = g.vertex_count();
  view.m = g.edge_count();
  view.source.resize(view.m);
  view.in_etilde.resize(view.m);
  view.load.assign(view.n, Rat(0));
  const Rat budget = Rat(1) + R;
  for (const Edge& e : g.edges()) {
    const int tgt = st.orientation[e.id];
    view.source[e.id] = e.u + e.v - tgt;
    view.load[tgt] += e.w;
    view.in_etilde[e.id] =
        ((st.repelled[view.source[e.id]] >> e.id) & 1) != 0;
  }
  view.good.resize(view.n);
  for (int v = 0; v < view.n; ++v) view.good[v] = view.load[v] <= budget;
  return view;
}

// Shared tail: vertex capacities from charges plus the per-vertex
// corrections, with the correction sums checked.
inline DualCertificate finish_certificate(const StuckState& st,
                                          const StuckView& view,
                                          std::vector<Rat> z,
                                          const std::vector<Rat>& a,
                                          const std::vector<Rat>& b,
                                          const Rat& mu) {
  Rat sum_a, sum_b;
  for (const Rat& x : a) sum_a += x;
  for (const Rat& x : b) sum_b += x;
  if (!sum_b.is_zero())
    throw StuckStateError("flip-direction corrections do not cancel");
  if (sum_a.is_positive())
    throw StuckStateError("per-vertex corrections sum positive");
  DualCertificate cert;
  cert.z = std::move(z);
  cert.y.assign(view.n, Rat(0));
  const Graph& g = st.normalized;
  for (const Edge& e : g.edges()) cert.y[st.orientation[e.id]] += cert.z[e.id];
  for (int v = 0; v < view.n; ++v) {
    cert.y[v] += a[v] + b[v];
    if (!view.good[v]) cert.y[v] -= mu;
  }
  return cert;
}

}  // namespace detail

// Certificate from a stalled restricted-mode search, in normalized units
// (threshold 1).
inline DualCertificate build_simple_certificate(
    const StuckState& st, const SimpleParams& params = {}) {
  if (st.general)
    throw InvariantError("state came from the general search variant");
  if (!state_is_stuck(st))
    throw StuckStateError("certificate requested for a state that can act");
  const Graph& g = st.normalized;
  const detail::StuckView view = detail::make_stuck_view(st, params.R);
  const Rat tiny_cut = params.tiny_cutoff();

  std::vector<Rat> z(view.m, Rat(0));
  for (const Edge& e : g.edges()) {
    if (!view.in_etilde[e.id]) continue;
    if (e.w == Rat(1))
      z[e.id] = Rat(1);
    else if (e.w > tiny_cut)
      z[e.id] = e.w;
    else
      z[e.id] = params.beta * e.w;
  }

  // Every big pending flip moves a unit of charge; credit the vertex it
  // would leave and debit the one holding it.
  std::vector<Rat> b(view.n, Rat(0));
  const Rat step = Rat(1) - params.R;
  for (const PendingFlip& pf : st.pending) {
    const Edge& e = g.edges()[pf.edge];
    if (e.w != Rat(1)) continue;
    b[view.source[e.id]] += step;
    b[st.orientation[e.id]] -= step;
  }

  std::vector<Rat> a(view.n, Rat(0));
  const Rat bonus = params.beta - Rat(1);
  for (int v = 0; v < view.n; ++v) {
    if (!view.good[v]) continue;
    if (st.vertex_tiny_target[v])
      a[v] = -bonus;
    else if (st.vertex_critical[v])
      a[v] = bonus;
  }
  return detail::finish_certificate(st, view, std::move(z), a, b, params.mu);
}

// Certificate from a stalled general-mode search, in normalized units.
inline DualCertificate build_general_certificate(
    const StuckState& st, const GeneralParams& params = {}) {
  if (!st.general)
    throw InvariantError("state came from the restricted search variant");
  if (!state_is_stuck(st))
    throw StuckStateError("certificate requested for a state that can act");
  const Graph& g = st.normalized;
  const detail::StuckView view = detail::make_stuck_view(st, params.R);
  const Rat tiny_cut = params.tiny_cutoff();
  const Rat half(1, 2);

  // Leading big flips: big pending edges not shadowed by a lighter
  // pending flip from the same vertex.
  std::vector<bool> pending_edge(view.m, false);
  for (const PendingFlip& pf : st.pending) pending_edge[pf.edge] = true;
  std::vector<bool> leading(view.m, false);
  for (int e = 0; e < view.m; ++e) {
    if (!pending_edge[e] || g.edges()[e].w <= half) continue;
    bool lead = true;
    for (int f = 0; f < view.m; ++f) {
      if (f == e || !pending_edge[f]) continue;
      if (view.source[f] == view.source[e] &&
          g.edges()[f].w < g.edges()[e].w)
        lead = false;
    }
    leading[e] = lead;
  }
  std::vector<bool> combinable(view.m, false);
  for (const auto& qs : st.q_sets)
    for (int e : qs) combinable[e] = true;

  std::vector<Rat> z(view.m, Rat(0));
  for (const Edge& e : g.edges()) {
    if (!view.in_etilde[e.id]) continue;
    if (e.w > half) {
      if (leading[e.id] && !combinable[e.id])
        z[e.id] = Rat(1);
      else
        z[e.id] = std::min(e.w, params.R);
    } else if (e.w > tiny_cut) {
      z[e.id] = e.w;
    } else {
      z[e.id] = params.beta * e.w;
    }
  }

  // Leading flips move a unit of charge; a combinable leading flip moves
  // only its reduced charge, so the difference to R flows back.
  std::vector<Rat> b(view.n, Rat(0));
  const Rat step = Rat(1) - params.R;
  for (int e = 0; e < view.m; ++e) {
    if (!leading[e]) continue;
    const int from = st.orientation[e];
    const int to = view.source[e];
    b[to] += step;
    b[from] -= step;
    if (combinable[e]) {
      const Rat rebate = params.R - g.edges()[e].w;
      b[to] -= rebate;
      b[from] += rebate;
    }
  }

  std::vector<Rat> a(view.n, Rat(0));
  const Rat bonus = params.beta - Rat(1);
  for (int v = 0; v < view.n; ++v) {
    if (!view.good[v]) continue;
    if (st.vertex_tiny_target[v])
      a[v] = -bonus;
    else if (st.vertex_critical[v])
      a[v] = bonus;
  }
  return detail::finish_certificate(st, view, std::move(z), a, b, params.mu);
}

enum class CertifyStatus { Certified, NoCertificateDone, CapExceeded };

struct CertifyResult {
  CertifyStatus status = CertifyStatus::NoCertificateDone;
  std::optional<DualCertificate> certificate;  // original units, on Certified
  std::optional<StuckState> stuck;  // stalled state behind the certificate
  Orientation done_orientation;     // on NoCertificateDone
  bool lp_feasible_at_tau = false;
  long iterations = 0;
};

// Tries to prove tau strictly below the fractional optimum.  Either an
// edge alone overflows every configuration (immediate certificate), or
// the general search is run at tau and a stalled state is converted and
// double-checked, or the search finishes within budget and no
// certificate is produced.  Every produced certificate is verified here,
// and accepted certificates are cross-checked against the exact
// relaxation; any disagreement throws SoundnessError.
inline CertifyResult certify_infeasibility(const Graph& g, const Rat& tau,
                                           long iteration_cap = kDefaultIterationCap,
                                           long config_cap = kDefaultConfigCap,
                                           TraceSink* sink = nullptr) {
  CertifyResult out;
  for (const Edge& e : g.edges()) {
    if (e.w > tau) {
      DualCertificate cert;
      cert.z.assign(g.edge_count(), Rat(0));
      cert.z[e.id] = Rat(1);
      cert.y.assign(g.vertex_count(), Rat(0));
      const VerifyResult vr = verify_certificate(g, tau, cert, config_cap);
      if (!vr.accepted)
        throw SoundnessError(
            "overweight-edge certificate failed verification: " + vr.reason);
      if (lp_feasible(g, tau, config_cap).feasible)
        throw SoundnessError(
            "certificate accepted although the relaxation is feasible");
      out.status = CertifyStatus::Certified;
      out.certificate = std::move(cert);
      return out;
    }
  }
  const SearchOutcome run =
      run_general(g, tau, iteration_cap, GeneralParams{}, sink, config_cap);
  out.iterations = run.iterations;
  if (run.status == RunStatus::CapExceeded) {
    out.status = CertifyStatus::CapExceeded;
    return out;
  }
  if (run.status == RunStatus::Done) {
    out.status = CertifyStatus::NoCertificateDone;
    out.done_orientation = run.orientation;
    out.lp_feasible_at_tau = lp_feasible(g, tau, config_cap).feasible;
    return out;
  }
  const GeneralParams params;
  const DualCertificate normalized =
      build_general_certificate(*run.stuck, params);
  const VerifyResult vn =
      verify_certificate(run.stuck->normalized, Rat(1), normalized,
                         config_cap);
  if (!vn.accepted)
    throw SoundnessError("normalized certificate rejected: " + vn.reason);
  DualCertificate cert = rescale_certificate(normalized, tau);
  const VerifyResult vr = verify_certificate(g, tau, cert, config_cap);
  if (!vr.accepted)
    throw SoundnessError("rescaled certificate rejected: " + vr.reason);
  if (lp_feasible(g, tau, config_cap).feasible)
    throw SoundnessError(
        "certificate accepted although the relaxation is feasible");
  out.status = CertifyStatus::Certified;
  out.certificate = std::move(cert);
  out.stuck = std::move(*run.stuck);
  return out;
}

}  // namespace balansol

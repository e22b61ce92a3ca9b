#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Core of both local searches.  The engine keeps an orientation of a
// normalized instance (threshold scaled to 1) together with an ordered
// queue of pending flips, and advances one step at a time:
//
//   * if every vertex is within budget (in-load at most 1+R) it reports
//     done;
//   * else, if some pending flip can be executed without pushing its
//     destination over budget, the lowest-indexed such flip is carried
//     out and the queue is cut back to the point that justified it;
//   * else, if some edge qualifies as a new pending flip, the smallest
//     such edge is appended;
//   * else it reports stuck, the input to certificate construction.
//
// Which edges qualify is governed by a "repelled" relation computed per
// queue prefix: an overloaded vertex repels everything incident to it,
// every vertex repels its loops, and each queued entry makes the vertex
// it would flip to repel the edges that would interfere with that flip.
// An edge may be queued only while its current holder repels it and the
// other endpoint does not.
//
// All arithmetic is exact: weights are scaled to a common integer
// denominator, and incidence sets are bitmasks (at most 64 edges).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "balansol/errors.hpp"
#include "balansol/graph.hpp"
#include "balansol/rational.hpp"
#include "balansol/search_params.hpp"
#include "balansol/trace.hpp"

namespace balansol {

constexpr long kDefaultIterationCap = 1000000;

enum class RunStatus { Done, Stuck, CapExceeded };

enum class FlipKind { Raw, Regular };

struct PendingFlip {
  int edge = -1;
  FlipKind kind = FlipKind::Regular;
  bool operator==(const PendingFlip& o) const {
    return edge == o.edge && kind == o.kind;
  }
};

// Snapshot of a stalled search: enough to reconstruct the engine state
// exactly (orientation plus queue), together with derived views that the
// certificate builder consumes.
struct StuckState {
  Graph normalized;          // weights divided by the threshold
  bool general = false;      // which search variant produced it
  Orientation orientation;   // edge id -> holding vertex
  std::vector<PendingFlip> pending;       // queue, in order
  std::vector<std::vector<int>> q_sets;   // combinable marks per entry (general)

  // Derived, filled at capture time.
  std::vector<std::uint64_t> repelled;    // per vertex, full-prefix edge mask
  std::vector<Rat> entry_threshold;       // per entry: regular-rule cutoff, -1 raw
  std::vector<std::uint8_t> entry_critical;   // per entry: regular rule saturated
  std::vector<std::uint8_t> vertex_critical;  // some saturated entry flips from here
  std::vector<std::uint8_t> vertex_tiny_target;  // a regular tiny flip heads here
};

struct SearchOutcome {
  RunStatus status = RunStatus::Done;
  long iterations = 0;
  Orientation orientation;
  Rat makespan_normalized;  // max in-load with threshold scaled to 1
  std::optional<StuckState> stuck;
};

namespace detail {

class SearchEngine {
 public:
  enum class StepResult { Done, Progress, Stuck };

  SearchEngine(const Graph& normalized, bool general, const Rat& R,
               const Rat& tiny_cutoff, Orientation init, TraceSink* sink)
      : g_(normalized), general_(general), sink_(sink) {
    n_ = g_.vertex_count();
    m_ = g_.edge_count();
    if (m_ > 64) throw CapExceededError("search engine limited to 64 edges");
    check_orientation(g_, init);

    // Common denominator for every quantity the step rules compare.
    std::int64_t d = 1;
    for (std::int64_t f : {std::int64_t{2}, std::int64_t{3}, std::int64_t{5},
                           R.den(), tiny_cutoff.den()})
      d = lcm64_checked(d, f);
    for (const Edge& e : g_.edges()) d = lcm64_checked(d, e.w.den());
    scale_ = d;
    budget_ = checked_scale(Rat(1) + R);
    r_scaled_ = checked_scale(R);
    tiny_ = checked_scale(tiny_cutoff);
    half_ = d / 2;
    combinable_max_ = (d / 5) * 3;

    w_.resize(m_);
    eu_.resize(m_);
    ev_.resize(m_);
    loop_.resize(m_);
    incident_mask_.assign(n_, 0);
    for (int e = 0; e < m_; ++e) {
      const Edge& ed = g_.edges()[e];
      w_[e] = checked_scale(ed.w);
      if (w_[e] <= 0 || w_[e] > scale_)
        throw InvariantError("normalized weight outside (0, 1]");
      eu_[e] = ed.u;
      ev_[e] = ed.v;
      loop_[e] = ed.is_loop() ? 1 : 0;
      incident_mask_[ed.u] |= bit(e);
      incident_mask_[ed.v] |= bit(e);
    }
    append_order_.resize(m_);
    for (int e = 0; e < m_; ++e) append_order_[e] = e;
    std::sort(append_order_.begin(), append_order_.end(), [&](int a, int b) {
      if (w_[a] != w_[b]) return w_[a] < w_[b];
      return a < b;
    });

    tgt_ = std::move(init);
    in_mask_.assign(n_, 0);
    load_.assign(n_, 0);
    for (int e = 0; e < m_; ++e) {
      in_mask_[tgt_[e]] |= bit(e);
      load_[tgt_[e]] += w_[e];
    }
    recompute_relation();
    check_big_in_degree();
  }

  // Restores a previously captured queue on top of the given orientation.
  void restore_queue(const std::vector<PendingFlip>& pending,
                     const std::vector<std::vector<int>>& q_sets) {
    pending_.clear();
    q_sets_.clear();
    q_mask_ = 0;
    in_p_raw_ = 0;
    in_p_reg_ = 0;
    for (const PendingFlip& pf : pending) {
      if (pf.edge < 0 || pf.edge >= m_)
        throw InvariantError("restored queue references unknown edge");
      if (!general_ && pf.kind != FlipKind::Regular)
        throw InvariantError("restricted mode queue holds only regular flips");
      std::uint64_t& mask =
          pf.kind == FlipKind::Raw ? in_p_raw_ : in_p_reg_;
      if (mask & bit(pf.edge))
        throw InvariantError("restored queue repeats an entry");
      if (pf.kind == FlipKind::Regular && general_ &&
          !(in_p_raw_ & bit(pf.edge)))
        throw InvariantError("regular entry restored before its raw entry");
      mask |= bit(pf.edge);
      pending_.push_back(pf);
    }
    if (general_) {
      if (q_sets.size() != pending_.size())
        throw InvariantError("combinable marks out of step with the queue");
      q_sets_ = q_sets;
      for (const auto& qs : q_sets_)
        for (int e : qs) {
          if (e < 0 || e >= m_ || !(in_p_raw_ & bit(e)) ||
              (q_mask_ & bit(e)))
            throw InvariantError("bad combinable mark");
          q_mask_ |= bit(e);
        }
    } else if (!q_sets.empty()) {
      throw InvariantError("restricted mode carries no combinable marks");
    }
    recompute_relation();
  }

  StepResult step() {
    if (!has_bad_vertex()) {
      emit_terminal(TraceKind::Done);
      return StepResult::Done;
    }
    // Execute the lowest-indexed pending flip whose destination stays
    // within budget.
    const int l = static_cast<int>(pending_.size());
    for (int idx = 0; idx < l; ++idx) {
      if (general_ && pending_[idx].kind != FlipKind::Regular) continue;
      const int e = pending_[idx].edge;
      const int s = src(e);
      if (load_[s] + w_[e] <= budget_) {
        execute_flip(idx);
        return StepResult::Progress;
      }
    }
    // Otherwise append the smallest admissible edge.
    for (int e : append_order_) {
      if (general_) {
        if (raw_addable(e)) {
          append_flip(e, FlipKind::Raw);
          return StepResult::Progress;
        }
        if (regular_addable(e)) {
          append_flip(e, FlipKind::Regular);
          return StepResult::Progress;
        }
      } else {
        if ((in_p_reg_ & bit(e)) == 0 && repelled_by(tgt_[e], e, l) &&
            !repelled_by(src(e), e, l)) {
          append_flip(e, FlipKind::Regular);
          return StepResult::Progress;
        }
      }
    }
    emit_terminal(TraceKind::Stuck);
    return StepResult::Stuck;
  }

  long iterations() const { return iterations_; }
  const Orientation& orientation() const { return tgt_; }
  int source_of(int e) const { return src(e); }

  Rat makespan_normalized() const {
    std::int64_t worst = 0;
    for (int v = 0; v < n_; ++v) worst = std::max(worst, load_[v]);
    return Rat(worst, scale_);
  }

  // Progress measure: (count of vertices within budget, size of the
  // holder-repelled edge set at each queue prefix).  Every progress step
  // must increase it lexicographically, reading a missing tail entry as
  // -1, which bounds the total number of steps.
  std::vector<long long> potential() const {
    std::vector<long long> p;
    p.reserve(pending_.size() + 2);
    long long good = 0;
    for (int v = 0; v < n_; ++v)
      if (load_[v] <= budget_) ++good;
    p.push_back(good);
    for (int k = 0; k <= static_cast<int>(pending_.size()); ++k)
      p.push_back(popcount(etilde_mask(k)));
    return p;
  }

  // Packages the current stalled state and checks every structural fact
  // the certificate construction relies on.  Call only after step()
  // returned Stuck.
  StuckState capture_stuck() const {
    check_stuck_facts();
    StuckState st;
    st.normalized = g_;
    st.general = general_;
    st.orientation = tgt_;
    st.pending = pending_;
    st.q_sets = q_sets_;
    st.repelled.assign(n_, 0);
    const int l = static_cast<int>(pending_.size());
    for (int v = 0; v < n_; ++v) st.repelled[v] = repel_[l][v];
    st.entry_threshold.resize(pending_.size());
    st.entry_critical.resize(pending_.size());
    st.vertex_critical.assign(n_, 0);
    st.vertex_tiny_target.assign(n_, 0);
    for (size_t i = 0; i < pending_.size(); ++i) {
      if (pending_[i].kind == FlipKind::Raw) {
        st.entry_threshold[i] = Rat(-1);
        st.entry_critical[i] = 0;
        continue;
      }
      st.entry_threshold[i] = Rat(entry_w0_[i], scale_);
      st.entry_critical[i] = entry_critical_[i] ? 1 : 0;
      const int e = pending_[i].edge;
      if (entry_critical_[i]) st.vertex_critical[src(e)] = 1;
      if (w_[e] <= tiny_) st.vertex_tiny_target[src(e)] = 1;
    }
    return st;
  }

  // Big pending flips not shadowed at their destination by a lighter
  // pending flip from the same vertex ("leading" flips).
  std::uint64_t leading_big_mask() const {
    std::uint64_t distinct = in_p_raw_ | in_p_reg_;
    std::uint64_t lead = 0;
    for (int e = 0; e < m_; ++e) {
      if (!(distinct & bit(e)) || w_[e] <= half_) continue;
      bool leading = true;
      for (int f = 0; f < m_; ++f) {
        if (f == e || !(distinct & bit(f))) continue;
        if (src(f) == src(e) && w_[f] < w_[e]) {
          leading = false;
          break;
        }
      }
      if (leading) lead |= bit(e);
    }
    return lead;
  }

  std::uint64_t etilde_full() const {
    return etilde_mask(static_cast<int>(pending_.size()));
  }
  std::uint64_t queue_mask() const { return in_p_raw_ | in_p_reg_; }
  std::uint64_t combinable_mask() const { return q_mask_; }

 private:
  static std::uint64_t bit(int e) { return std::uint64_t{1} << e; }
  static long long popcount(std::uint64_t x) {
    long long c = 0;
    while (x) {
      x &= x - 1;
      ++c;
    }
    return c;
  }

  std::int64_t checked_scale(const Rat& r) const {
    const Rat scaled = r * Rat(scale_);
    if (scaled.den() != 1)
      throw InvariantError("scaling denominator does not clear fractions");
    return scaled.num();
  }

  int src(int e) const { return eu_[e] + ev_[e] - tgt_[e]; }

  bool repelled_by(int v, int e, int prefix) const {
    return (repel_[prefix][v] >> e) & 1;
  }

  // Edges repelled by their current holder with respect to the given
  // queue prefix.
  std::uint64_t etilde_mask(int prefix) const {
    std::uint64_t mask = 0;
    for (int e = 0; e < m_; ++e)
      if (repelled_by(src(e), e, prefix)) mask |= bit(e);
    return mask;
  }

  bool has_bad_vertex() const {
    for (int v = 0; v < n_; ++v)
      if (load_[v] > budget_) return true;
    return false;
  }

  // Rebuilds the repelled relation for every queue prefix from scratch.
  void recompute_relation() {
    const int l = static_cast<int>(pending_.size());
    repel_.assign(l + 1, std::vector<std::uint64_t>(n_, 0));
    entry_w0_.assign(l, -1);
    entry_critical_.assign(l, false);
    // Prefix 0: overloaded vertices repel everything incident; every
    // vertex repels its loops.
    for (int v = 0; v < n_; ++v)
      if (load_[v] > budget_) repel_[0][v] = incident_mask_[v];
    for (int e = 0; e < m_; ++e)
      if (loop_[e]) repel_[0][eu_[e]] |= bit(e);
    for (int k = 1; k <= l; ++k) {
      repel_[k] = repel_[k - 1];
      const PendingFlip& pf = pending_[k - 1];
      const int e = pf.edge;
      const int s = src(e);
      if (pf.kind == FlipKind::Raw) {
        // The destination repels every incident big edge and every
        // incident edge at least as heavy as the queued one.
        std::uint64_t add = 0;
        for (int f = 0; f < m_; ++f) {
          if (!(incident_mask_[s] & bit(f))) continue;
          if (w_[f] > half_ || w_[f] >= w_[e]) add |= bit(f);
        }
        repel_[k][s] |= add;
        continue;
      }
      // Regular rule: find the largest weight cutoff in (0, w(e)] at
      // which the flip would still overload its destination, counting
      // in-edges that are either repelled by their holder one prefix
      // earlier or at least as heavy as the cutoff.
      const std::uint64_t et = etilde_mask(k - 1);
      std::vector<std::int64_t> candidates;
      candidates.push_back(w_[e]);
      for (int f = 0; f < m_; ++f)
        if ((in_mask_[s] & bit(f)) && w_[f] <= w_[e])
          candidates.push_back(w_[f]);
      std::sort(candidates.rbegin(), candidates.rend());
      candidates.erase(std::unique(candidates.begin(), candidates.end()),
                       candidates.end());
      std::int64_t w0 = 0;
      for (std::int64_t cand : candidates) {
        std::int64_t covered = 0;
        for (int f = 0; f < m_; ++f) {
          if (!(in_mask_[s] & bit(f))) continue;
          if (((et >> f) & 1) || w_[f] >= cand) covered += w_[f];
        }
        if (covered + w_[e] > budget_) {
          w0 = cand;
          break;
        }
      }
      entry_w0_[k - 1] = w0;
      if (w0 <= tiny_) {
        // Saturated: the destination repels its whole neighborhood.
        entry_critical_[k - 1] = true;
        repel_[k][s] |= incident_mask_[s];
      } else {
        std::uint64_t add = 0;
        for (int f = 0; f < m_; ++f) {
          if (!(incident_mask_[s] & bit(f))) continue;
          if (((et >> f) & 1) || w_[f] >= w0) add |= bit(f);
        }
        repel_[k][s] |= add;
      }
    }
  }

  bool raw_addable(int e) const {
    if (in_p_raw_ & bit(e)) return false;
    const int l = static_cast<int>(pending_.size());
    return repelled_by(tgt_[e], e, l) && !repelled_by(src(e), e, l);
  }

  bool regular_addable(int e) const {
    if ((in_p_reg_ & bit(e)) || !(in_p_raw_ & bit(e))) return false;
    if (w_[e] <= tiny_) return true;
    const int s = src(e);
    std::uint64_t bigs = 0;
    int big_count = 0;
    std::int64_t big_load = 0;
    for (int f = 0; f < m_; ++f) {
      if ((in_mask_[s] & bit(f)) && w_[f] > half_) {
        bigs |= bit(f);
        ++big_count;
        big_load += w_[f];
      }
    }
    if (w_[e] <= half_) {
      if (big_count <= 1) return true;
      for (int f = 0; f < m_; ++f)
        if ((bigs & bit(f)) && w_[e] + w_[f] <= scale_) return true;
      return false;
    }
    // Big edge.
    if (big_count == 2) return false;
    if (q_mask_ & bit(e)) return true;
    if (big_load > r_scaled_) return false;
    const std::uint64_t et = etilde_full();
    if ((bigs & ~et) != 0) return false;
    const std::uint64_t lead = leading_big_mask();
    for (int f = 0; f < m_; ++f) {
      if ((lead & bit(f)) && tgt_[f] == s && !(q_mask_ & bit(f)))
        return false;
    }
    return true;
  }

  void append_flip(int e, FlipKind kind) {
    const std::vector<long long> before = potential();
    pending_.push_back({e, kind});
    if (general_) q_sets_.push_back({});
    if (kind == FlipKind::Raw)
      in_p_raw_ |= bit(e);
    else
      in_p_reg_ |= bit(e);
    recompute_relation();
    const int l = static_cast<int>(pending_.size());
    if (!repelled_by(src(e), e, l))
      throw InvariantError("appended flip is not repelled by its destination");
    ++iterations_;
    const std::vector<long long> after = potential();
    if (compare_potential(after, before) <= 0)
      throw PotentialError("progress measure did not increase on append");
    if (sink_) {
      TraceEvent ev;
      ev.step = iterations_;
      ev.kind = TraceKind::FlipAppended;
      ev.edge = e;
      ev.prefix_length = l;
      ev.potential = after;
      if (general_) ev.flip_kind = kind == FlipKind::Raw ? "raw" : "regular";
      sink_->on_event(ev);
    }
    if (general_) update_combinable();
    if (general_) check_big_in_degree();
  }

  void execute_flip(int idx) {
    const std::vector<long long> before = potential();
    const int e = pending_[idx].edge;
    const int t = tgt_[e];
    const int s = src(e);
    const int l = static_cast<int>(pending_.size());
    int k = -1;
    for (int kk = 0; kk <= l; ++kk) {
      if (repelled_by(t, e, kk)) {
        k = kk;
        break;
      }
    }
    if (k < 0)
      throw InvariantError("pending flip is not repelled by its holder");
    // The justification must predate the entry itself: for a regular
    // entry in general mode, even predate its raw entry.
    int entry_bound = idx;
    if (general_) {
      for (int i = 0; i < l; ++i) {
        if (pending_[i].edge == e && pending_[i].kind == FlipKind::Raw) {
          entry_bound = std::min(entry_bound, i);
          break;
        }
      }
    }
    if (k > entry_bound)
      throw InvariantError(
          "flip justification does not predate its queue entry");

    std::vector<std::vector<std::uint64_t>> old_repel(repel_.begin(),
                                                      repel_.begin() + k + 1);
    std::vector<bool> was_bad(n_);
    for (int v = 0; v < n_; ++v) was_bad[v] = load_[v] > budget_;

    // Reorient e toward its former source.
    in_mask_[t] &= ~bit(e);
    load_[t] -= w_[e];
    in_mask_[s] |= bit(e);
    load_[s] += w_[e];
    tgt_[e] = s;

    // Cut the queue back to the justifying prefix.
    for (int i = k; i < l; ++i) {
      const PendingFlip& pf = pending_[i];
      if (pf.kind == FlipKind::Raw)
        in_p_raw_ &= ~bit(pf.edge);
      else
        in_p_reg_ &= ~bit(pf.edge);
    }
    pending_.resize(k);
    if (general_) {
      q_sets_.resize(k);
      if (k >= 1) q_sets_[k - 1].clear();
      q_mask_ = 0;
      for (const auto& qs : q_sets_)
        for (int qe : qs) q_mask_ |= bit(qe);
    }
    recompute_relation();

    bool bad_set_unchanged = true;
    for (int v = 0; v < n_; ++v)
      if (was_bad[v] != (load_[v] > budget_)) bad_set_unchanged = false;
    if (bad_set_unchanged) {
      // With the overloaded set intact, executing a justified flip may
      // only grow the repelled sets on the surviving prefixes.
      for (int kk = 0; kk <= k; ++kk)
        for (int v = 0; v < n_; ++v)
          if (old_repel[kk][v] & ~repel_[kk][v])
            throw InvariantError(
                "executing a flip shrank a surviving repelled set");
    }

    ++iterations_;
    const std::vector<long long> after = potential();
    if (compare_potential(after, before) <= 0)
      throw PotentialError("progress measure did not increase on execute");
    if (sink_) {
      TraceEvent trunc;
      trunc.step = iterations_;
      trunc.kind = TraceKind::PrefixTruncated;
      trunc.edge = e;
      trunc.prefix_length = k;
      sink_->on_event(trunc);
      TraceEvent ev;
      ev.step = iterations_;
      ev.kind = TraceKind::FlipExecuted;
      ev.edge = e;
      ev.prefix_length = k;
      ev.potential = after;
      sink_->on_event(ev);
    }
    if (general_) update_combinable();
    if (general_) check_big_in_degree();
  }

  // Marks raw pending flips of weight in (1/2, 3/5] as combinable when
  // their holder repels an outgoing non-loop edge light enough to share
  // a unit of capacity, adding to the newest mark set until stable.
  void update_combinable() {
    if (pending_.empty()) return;
    bool changed = true;
    while (changed) {
      changed = false;
      const int l = static_cast<int>(pending_.size());
      std::vector<int> cands;
      for (int e = 0; e < m_; ++e) {
        if (!(in_p_raw_ & bit(e)) || (q_mask_ & bit(e))) continue;
        if (w_[e] <= half_ || w_[e] > combinable_max_) continue;
        const int t = tgt_[e];
        bool ok = false;
        for (int f = 0; f < m_; ++f) {
          if (loop_[f] || src(f) != t) continue;
          if (repelled_by(t, f, l) && w_[e] + w_[f] <= scale_) {
            ok = true;
            break;
          }
        }
        if (ok) cands.push_back(e);
      }
      for (int e : cands) {
        q_sets_.back().push_back(e);
        q_mask_ |= bit(e);
        changed = true;
        if (sink_) {
          TraceEvent ev;
          ev.step = iterations_;
          ev.kind = TraceKind::QInserted;
          ev.edge = e;
          ev.prefix_length = static_cast<int>(pending_.size());
          sink_->on_event(ev);
        }
      }
    }
  }

  void check_big_in_degree() const {
    if (!general_) return;
    for (int v = 0; v < n_; ++v) {
      int bigs = 0;
      for (int e = 0; e < m_; ++e)
        if ((in_mask_[v] & bit(e)) && w_[e] > half_) ++bigs;
      if (bigs > 2)
        throw DegreeInvariantError(
            "vertex holds more than two big edges at " +
            std::to_string(v));
    }
  }

  void emit_terminal(TraceKind kind) {
    if (!sink_) return;
    TraceEvent ev;
    ev.step = iterations_;
    ev.kind = kind;
    ev.edge = -1;
    ev.prefix_length = static_cast<int>(pending_.size());
    ev.potential = potential();
    sink_->on_event(ev);
  }

  // Structural facts that must hold in any stalled state; the dual
  // certificate construction is only sound when they do.
  void check_stuck_facts() const {
    const int l = static_cast<int>(pending_.size());
    const std::uint64_t et = etilde_full();
    const std::uint64_t queued = queue_mask();
    const std::uint64_t lead = leading_big_mask();

    // Every queued edge is repelled by its holder, no queued edge is a
    // loop, and no pending flip heads toward an overloaded vertex.
    if (queued & ~et)
      throw StuckStateError("queued edge not repelled by its holder");
    for (const PendingFlip& pf : pending_) {
      if (loop_[pf.edge]) throw StuckStateError("loop in the flip queue");
      if (load_[src(pf.edge)] > budget_)
        throw StuckStateError("pending flip heads toward an overloaded vertex");
    }
    if (!general_) return;

    if (q_mask_ & ~in_p_raw_)
      throw StuckStateError("combinable mark without a raw entry");
    if (lead & ~queued)
      throw StuckStateError("leading flip outside the queue");

    // Regular entries were appended because the flip would overload its
    // destination even counting only repelled in-edges; stalling keeps
    // that true at the full prefix.
    for (int i = 0; i < l; ++i) {
      if (pending_[i].kind != FlipKind::Regular) continue;
      const int e = pending_[i].edge;
      const int s = src(e);
      std::int64_t covered = 0;
      for (int f = 0; f < m_; ++f)
        if ((in_mask_[s] & bit(f)) && ((et >> f) & 1)) covered += w_[f];
      if (covered + w_[e] <= budget_)
        throw StuckStateError(
            "regular entry no longer overloads its destination");
    }

    for (int e = 0; e < m_; ++e) {
      if (!(in_p_raw_ & bit(e))) continue;
      const int s = src(e);
      const int t = tgt_[e];
      std::uint64_t bigs = 0;
      int big_count = 0;
      std::int64_t big_load = 0;
      for (int f = 0; f < m_; ++f) {
        if ((in_mask_[s] & bit(f)) && w_[f] > half_) {
          bigs |= bit(f);
          ++big_count;
          big_load += w_[f];
        }
      }
      const bool has_reg = (in_p_reg_ & bit(e)) != 0;
      if (w_[e] > half_) {
        // Combinable exactly when light enough and pairable at the holder.
        bool pairable = false;
        if (w_[e] <= combinable_max_) {
          for (int f = 0; f < m_; ++f) {
            if (loop_[f] || src(f) != t || !((et >> f) & 1)) continue;
            if (w_[e] + w_[f] <= scale_) {
              pairable = true;
              break;
            }
          }
        }
        if (((q_mask_ >> e) & 1) != (pairable ? 1u : 0u))
          throw StuckStateError("combinable mark mismatch on a big raw entry");
        // Regular entry exactly when the destination can take the edge.
        bool lead_marked = true;
        for (int f = 0; f < m_; ++f)
          if ((lead & bit(f)) && tgt_[f] == s && !(q_mask_ & bit(f)))
            lead_marked = false;
        const bool expect =
            big_count <= 1 &&
            ((q_mask_ & bit(e)) != 0 ||
             (big_load <= r_scaled_ && lead_marked));
        if (has_reg != expect)
          throw StuckStateError("regular-entry mismatch on a big edge");
      } else if (w_[e] > tiny_) {
        bool fits = big_count <= 1;
        if (!fits)
          for (int f = 0; f < m_; ++f)
            if ((bigs & bit(f)) && w_[e] + w_[f] <= scale_) fits = true;
        if (has_reg != fits)
          throw StuckStateError("regular-entry mismatch on a small edge");
      } else {
        if (!has_reg)
          throw StuckStateError("tiny raw entry missing its regular entry");
      }
    }
  }

  Graph g_;
  bool general_;
  TraceSink* sink_;
  int n_ = 0;
  int m_ = 0;
  std::int64_t scale_ = 1;
  std::int64_t budget_ = 0;
  std::int64_t r_scaled_ = 0;
  std::int64_t tiny_ = 0;
  std::int64_t half_ = 0;
  std::int64_t combinable_max_ = 0;
  std::vector<std::int64_t> w_;
  std::vector<int> eu_, ev_;
  std::vector<char> loop_;
  std::vector<std::uint64_t> incident_mask_;
  std::vector<int> append_order_;
  Orientation tgt_;
  std::vector<std::uint64_t> in_mask_;
  std::vector<std::int64_t> load_;
  std::vector<PendingFlip> pending_;
  std::vector<std::vector<int>> q_sets_;
  std::uint64_t in_p_raw_ = 0;
  std::uint64_t in_p_reg_ = 0;
  std::uint64_t q_mask_ = 0;
  std::vector<std::vector<std::uint64_t>> repel_;
  std::vector<std::int64_t> entry_w0_;
  std::vector<bool> entry_critical_;
  long iterations_ = 0;
};

// Drives an engine until it terminates or exhausts the iteration cap.
inline SearchOutcome drive(SearchEngine& engine, long iteration_cap) {
  SearchOutcome out;
  for (;;) {
    const SearchEngine::StepResult r = engine.step();
    if (r == SearchEngine::StepResult::Done) {
      out.status = RunStatus::Done;
      break;
    }
    if (r == SearchEngine::StepResult::Stuck) {
      out.status = RunStatus::Stuck;
      out.stuck = engine.capture_stuck();
      break;
    }
    if (engine.iterations() >= iteration_cap) {
      out.status = RunStatus::CapExceeded;
      break;
    }
  }
  out.iterations = engine.iterations();
  out.orientation = engine.orientation();
  out.makespan_normalized = engine.makespan_normalized();
  return out;
}

}  // namespace detail
}  // namespace balansol

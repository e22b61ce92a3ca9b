#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Step-by-step event stream emitted by the local searches, used for the
// CLI trace output and for replaying runs in tests.

#include <string>
#include <vector>

namespace balansol {

enum class TraceKind {
  FlipAppended,     // a new pending flip joined the queue
  PrefixTruncated,  // the queue was cut back before executing a flip
  FlipExecuted,     // a pending flip was carried out (edge reoriented)
  QInserted,        // a pending flip was marked combinable (general mode)
  Done,             // every vertex within budget
  Stuck,            // no action available
};

inline const char* trace_kind_name(TraceKind k) {
  switch (k) {
    case TraceKind::FlipAppended: return "flip-appended";
    case TraceKind::PrefixTruncated: return "prefix-truncated";
    case TraceKind::FlipExecuted: return "flip-executed";
    case TraceKind::QInserted: return "q-inserted";
    case TraceKind::Done: return "done";
    case TraceKind::Stuck: return "stuck";
  }
  return "unknown";
}

struct TraceEvent {
  long step = 0;  // progress steps completed when the event fired
  TraceKind kind = TraceKind::Done;
  int edge = -1;  // affected edge id, -1 for terminal events
  int prefix_length = 0;
  // Progress measure after the event: count of vertices within budget,
  // then the repelled-set size at each queue prefix.  Empty for events
  // that do not change it.
  std::vector<long long> potential;
  std::string flip_kind;  // "raw" or "regular" on general-mode appends
};

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void on_event(const TraceEvent& event) = 0;
};

// Buffers every event; handy in tests.
class CollectingSink : public TraceSink {
 public:
  void on_event(const TraceEvent& event) override { events.push_back(event); }
  std::vector<TraceEvent> events;
};

// Lexicographic comparison with an implicit trailing -1 sentinel, so a
// longer vector with an equal shared prefix compares greater.  Returns
// -1, 0, or 1.
inline int compare_potential(const std::vector<long long>& a,
                             const std::vector<long long>& b) {
  const size_t limit = a.size() > b.size() ? a.size() : b.size();
  for (size_t i = 0; i <= limit; ++i) {
    const long long av = i < a.size() ? a[i] : -1;
    const long long bv = i < b.size() ? b[i] : -1;
    if (av < bv) return -1;
    if (av > bv) return 1;
  }
  return 0;
}

}  // namespace balansol

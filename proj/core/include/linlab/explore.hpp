#pragma once

#include <functional>
#include <span>
#include <vector>

#include "linlab/lts.hpp"
#include "linlab/verdict.hpp"

namespace linlab {

// Reachable fragment of a system. States are the system's dense ids in BFS
// discovery order; parent links reconstruct a trace to any state. complete is
// false when max_states was hit (the caller must not read a partial graph as
// exhaustive).
struct StateGraph {
  uint32_t num_states = 0;
  uint64_t num_edges = 0;
  bool complete = true;
  std::vector<uint32_t> order;          // discovery order
  std::vector<uint32_t> parent;         // predecessor state (self for initial)
  std::vector<uint32_t> parent_label;   // label id on the parent edge
  std::vector<uint32_t> depth;

  std::vector<ActionLabel> trace_to(const System& sys, uint32_t state) const;
};

StateGraph reachable_graph(System& sys, const ExplorationBounds& bounds);

// Maximal subsequence whose labels satisfy the predicate; order preserved.
std::vector<ActionLabel> project(std::span<const ActionLabel> trace, const Gamma& gamma);
std::vector<ActionLabel> project(std::span<const ActionLabel> trace,
                                 const std::function<bool(const ActionLabel&)>& keep);

struct TraceSet {
  std::vector<std::vector<ActionLabel>> items;  // sorted, unique
  bool complete = true;
};

// All projections over gamma of finite traces, capped at max_trace_events
// observable events per trace. Search runs over (state, projected-trace)
// pairs with a visited set, so internal cycles terminate.
TraceSet collect_projected_traces(System& sys, const Gamma& gamma,
                                  const ExplorationBounds& bounds);

// Projections over C∪R: the history set of the system at the given bounds.
TraceSet collect_histories(System& sys, const ExplorationBounds& bounds);

// Pass iff from every reachable state, at most one state is reachable per
// Γ-projected action sequence. Fail carries two witness states and the
// common Γ-sequence from the initial state.
Verdict check_gamma_deterministic(System& sys, const Gamma& gamma,
                                  const ExplorationBounds& bounds);

}  // namespace linlab

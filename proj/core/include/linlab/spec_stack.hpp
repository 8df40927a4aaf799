#pragma once

#include <vector>

#include "linlab/spec_queue.hpp"

namespace linlab {

// Declared operations for stack-shaped systems. Threads matter only for the
// Time-Stamped Stack model; the abstract specs ignore them. Pushes get ids
// 1..P, pops P+1..P+Q.
struct StackWorkload {
  struct PushDecl {
    int32_t value;
    uint32_t thread = 0;
  };
  std::vector<PushDecl> pushes;
  std::vector<uint32_t> pop_threads;
  uint32_t max_threads = 1;

  uint32_t num_ops() const {
    return static_cast<uint32_t>(pushes.size() + pop_threads.size());
  }
  bool is_push(uint32_t op) const { return op >= 1 && op <= pushes.size(); }
  bool is_pop(uint32_t op) const { return op > pushes.size() && op <= num_ops(); }
  int32_t value(uint32_t op) const { return pushes[op - 1].value; }
  uint32_t thread(uint32_t op) const {
    return is_push(op) ? pushes[op - 1].thread : pop_threads[op - pushes.size() - 1];
  }
  void validate() const;
};

// Reference stack: lin-pop1 removes from the beginning of the sequence.
struct AbsS0Model {
  using State = AbsQ0State;
  StackWorkload wl;

  State initial() const;
  void successors(const State& s, std::vector<std::pair<ActionLabel, State>>& out) const;
  std::string repr(const State& s) const;
  std::vector<ActionLabel> call_alphabet() const;
};

// Abstract stack: the queue-style poset of pushes plus, per pop, a snapshot
// be(k) of the maximal completed pushes at its call (maintained under
// removals) and the set ov(k) of pushes overlapping it.
struct AbsSState {
  uint32_t O = 0;
  std::vector<uint32_t> lt;
  std::vector<uint8_t> flag;
  std::vector<Val> rv;
  std::vector<uint8_t> cp;
  std::vector<uint32_t> be;  // per pop op; meaningful once called
  std::vector<uint32_t> ov;

  bool operator==(const AbsSState&) const = default;
  uint64_t hash() const;
};

struct AbsSModel {
  using State = AbsSState;
  StackWorkload wl;

  State initial() const;
  void successors(const State& s, std::vector<std::pair<ActionLabel, State>>& out) const;
  std::string repr(const State& s) const;
  std::vector<ActionLabel> call_alphabet() const;
};

// Completed ops of O all of whose strict successors are pending.
uint32_t max_completed(const AbsSState& s, uint32_t num_ops);
uint32_t pending_ops(const AbsSState& s, uint32_t num_ops);
// Immediate predecessors of k (transitive reduction of lt).
uint32_t immediate_preds(const std::vector<uint32_t>& lt, uint32_t k);
// Maximal elements of O ∖ ov(pop): what the pop's be set must equal.
uint32_t derived_be(const AbsSState& s, uint32_t pop, uint32_t num_ops);

// be update on removal of push `removed` by pop `remover`: for every pop
// whose be contains the removed push, it is replaced by those immediate
// predecessors whose every other successor overlaps that pop. Completed
// pushes the remover cannot skip (not in its ov) count as predecessors of
// the removed push here: committing to this removal orders them below it.
// Exposed for direct unit testing.
void recompute_be(AbsSState& s, uint32_t removed, uint32_t remover, uint32_t num_ops);

// Reachable-state invariants, including: no pop may have a be-push with a
// predecessor still in its be or ov sets.
bool abss_state_invariants(const AbsSState& s, const StackWorkload& wl);

}  // namespace linlab

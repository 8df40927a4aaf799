#pragma once

#include <vector>

#include "linlab/lts.hpp"

namespace linlab {

// Declared operations for queue-shaped systems: enqueues get ids 1..E with
// fixed pairwise-distinct values, dequeues get ids E+1..E+D.
struct QueueWorkload {
  std::vector<int32_t> enqs;
  uint32_t deqs = 0;

  uint32_t num_ops() const { return static_cast<uint32_t>(enqs.size()) + deqs; }
  bool is_enq(uint32_t op) const { return op >= 1 && op <= enqs.size(); }
  bool is_deq(uint32_t op) const { return op > enqs.size() && op <= num_ops(); }
  int32_t value(uint32_t op) const { return enqs[op - 1]; }
  void validate() const;
};

// Reference queue: a value sequence with fixed linearization points for both
// methods. Enqueue prepends (lin-enq), dequeue removes the last element
// (lin-deq1) or reports EMPTY on the empty sequence (lin-deq2).
struct AbsQ0State {
  std::vector<int32_t> sigma;  // sigma[0] is the newest element
  std::vector<uint8_t> cp;     // per op, CpQ0
  std::vector<Val> rv;         // per op, dequeue return values

  bool operator==(const AbsQ0State&) const = default;
  uint64_t hash() const;
};

enum class CpQ0 : uint8_t { None, A1, AMid, A2, R1, R2, R3 };

struct AbsQ0Model {
  using State = AbsQ0State;
  QueueWorkload wl;

  State initial() const;
  void successors(const State& s, std::vector<std::pair<ActionLabel, State>>& out) const;
  std::string repr(const State& s) const;
  std::vector<ActionLabel> call_alphabet() const;
};

// Abstract queue over a happens-before poset of enqueues. Only dequeues have
// (fixed) linearization points; enqueue order is tracked as a strict partial
// order kept transitively closed.
struct AbsQState {
  uint32_t O = 0;               // bit k: op k is a live enqueue
  std::vector<uint32_t> lt;     // lt[k]: ops strictly below k (closure, subset of O)
  std::vector<uint8_t> flag;    // per op: 0 unset, 1 PEND, 2 COMP (sticky after removal)
  std::vector<Val> rv;
  std::vector<uint8_t> cp;      // per op, CpAbs

  bool operator==(const AbsQState&) const = default;
  uint64_t hash() const;
};

enum class CpAbs : uint8_t { None, A1, A2, R1, R2, R3 };
inline constexpr uint8_t kFlagPend = 1;
inline constexpr uint8_t kFlagComp = 2;

struct AbsQModel {
  using State = AbsQState;
  QueueWorkload wl;

  State initial() const;
  void successors(const State& s, std::vector<std::pair<ActionLabel, State>>& out) const;
  std::string repr(const State& s) const;
  std::vector<ActionLabel> call_alphabet() const;
};

// Ops of O with no strict predecessor.
uint32_t minimal_ops(const AbsQState& s);

// Checked by tests over every reachable state: lt is a strict partial order
// restricted to O, pending ops are maximal, live values are distinct.
bool absq_state_invariants(const AbsQState& s, const QueueWorkload& wl);

}  // namespace linlab

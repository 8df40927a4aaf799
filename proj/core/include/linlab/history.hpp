#pragma once

#include <span>
#include <vector>

#include "linlab/explore.hpp"
#include "linlab/lts.hpp"
#include "linlab/verdict.hpp"

namespace linlab {

struct History {
  std::vector<ActionLabel> events;

  bool operator==(const History&) const = default;
  std::string str() const;
};

// Both well-formedness bullets: every return has an earlier matching call
// with the same op, and each op has at most one call and one return.
bool is_well_formed(std::span<const ActionLabel> events);

// h1 ⊑ h2: some h1' built from h1 by appending returns for pending ops and
// deleting calls of ops without a return is a permutation of h2 preserving
// every return-before-call ordering of h1'. The deletions and appended
// returns are forced by h2, so the completion search collapses to a direct
// check; both inputs must be well-formed.
bool weaker_than(const History& h1, const History& h2);

// Atomic FIFO/LIFO semantics over a value sequence; removal from the empty
// collection yields EMPTY.
struct SequentialSpec {
  enum class Kind : uint8_t { Queue, Stack };
  Kind kind = Kind::Queue;

  Method add_method() const { return kind == Kind::Queue ? Method::Enq : Method::Push; }
  Method remove_method() const { return kind == Kind::Queue ? Method::Deq : Method::Pop; }
  // Applies one operation; returns the value produced (Val{} for adds).
  Val step(std::vector<int32_t>& collection, Method m, Val input) const;

  static SequentialSpec queue() { return {Kind::Queue}; }
  static SequentialSpec stack() { return {Kind::Stack}; }
};

struct LinWitness {
  bool pass = false;
  // A sequential, complete history admitted by the spec with h ⊑ witness.
  std::vector<ActionLabel> witness;
};

// Brute-force oracle: enumerates completions/deletions of pending operations
// and all interleaving-respecting total orders, replaying each against the
// sequential spec. Exponential on purpose; trusted at small bounds.
LinWitness is_linearizable(const History& h, const SequentialSpec& spec);

// Every valid complete linearization, reported as the sequence of scheduled
// op ids (pending ops may be absent from a schedule: their call was deleted).
std::vector<std::vector<uint32_t>> all_linearization_orders(const History& h,
                                                            const SequentialSpec& spec);

// Library closure: call actions cannot be disabled, calls commute left,
// returns commute right. Checked over every trace of at most
// max_trace_events events; Fail carries the offending trace pair.
Verdict check_library_closure(System& sys, const ExplorationBounds& bounds);

}  // namespace linlab

#pragma once

#include <vector>

#include "linlab/spec_stack.hpp"

namespace linlab {

// Push control points A1..A6 and pop control points R1..R7. Push: create the
// node, prepend it to the caller's pool (next assignment and head update
// taken as one atomic step), take a timestamp, write it to the node, return.
// Pop: reset locals, then per pool read the head, skip taken nodes, track the
// youngest (max timestamp) candidate, and after the last pool either CAS its
// taken flag (the commit point) or restart.
enum class CpTss : uint8_t {
  None,
  PA1, PA2, PA3, PA4, PA5, PA6,
  R1, R2, R3, R4, R5, R6, R6c /* no-cas mutant: between read and write */, R7,
};

enum class TssVariant : uint8_t {
  Standard,
  NoCas,  // the commit CAS decomposed into a taken-test then a blind write
};

struct TssNode {
  int16_t data = 0;
  int16_t ts = 0;
  int16_t next = -1;  // node ref; sentinels point to themselves
  uint8_t taken = 0;

  bool operator==(const TssNode&) const = default;
};

// Node refs: kNullRef is null, 0..T-1 are the per-thread sentinels, T+j is
// the node created by the push with op index j.
struct TssState {
  static constexpr int16_t kNullRef = -1;
  static constexpr int16_t kUnset = INT16_MIN;
  static constexpr int16_t kTsMax = INT16_MAX;

  uint8_t ts_counter = 0;
  std::vector<int16_t> pools;       // per thread
  std::vector<TssNode> nodes;       // per push op index; live iff created
  std::vector<uint8_t> node_live;
  std::vector<uint8_t> cp;          // per op
  std::vector<int16_t> push_i;      // timestamp reserved by push3
  std::vector<uint8_t> pop_success;
  std::vector<int16_t> pop_maxts;
  std::vector<int16_t> pop_youngest;  // node ref
  std::vector<int16_t> pop_n;         // node ref, scoped to the pool iteration
  std::vector<int16_t> pop_i;         // pool index, scoped to the for loop

  bool operator==(const TssState&) const = default;
  uint64_t hash() const;
};

struct TssModel {
  using State = TssState;
  StackWorkload wl;
  TssVariant variant = TssVariant::Standard;
  // Literal readings of two rules, for comparison runs: push4 carries a
  // global premise over completed pushes' timestamps, and ret-pop requires
  // success to still be false. Both block states; off by default.
  bool strict_push4 = false;
  bool strict_retpop = false;

  State initial() const;
  void successors(const State& s, std::vector<std::pair<ActionLabel, State>>& out) const;
  std::string repr(const State& s) const;
  std::vector<ActionLabel> call_alphabet() const;

  int16_t node_ref(uint32_t push_op) const {
    return static_cast<int16_t>(wl.max_threads + (push_op - 1));
  }
  bool is_sentinel(int16_t ref) const {
    return ref >= 0 && ref < static_cast<int16_t>(wl.max_threads);
  }
  uint32_t push_of_ref(int16_t ref) const {  // 0 when sentinel
    return is_sentinel(ref) ? 0 : static_cast<uint32_t>(ref - wl.max_threads + 1);
  }
  const TssNode& node_at(const TssState& s, int16_t ref) const;
};

TssModel make_tss(StackWorkload wl, TssVariant variant = TssVariant::Standard,
                  bool strict_push4 = false, bool strict_retpop = false);

// Traversal order: a pop walking the pools meets k1's node before k2's.
// Both pushes must have inserted their nodes.
bool traverse_before(const TssModel& m, const TssState& s, uint32_t k1, uint32_t k2);

}  // namespace linlab

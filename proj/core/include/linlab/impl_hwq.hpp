#pragma once

#include <vector>

#include "linlab/spec_queue.hpp"

namespace linlab {

// Control points of the array-based queue. Enqueue: reserve a slot
// (i = back++), then store. Dequeue: per traversal read range = back-1, set
// i = 0, then per slot swap/check/increment; a traversal that finds nothing
// restarts. Every statement is atomic; the model is the interleaving.
enum class CpHwq : uint8_t {
  None,
  E1,      // before i = back++
  E2,      // before items[i] = x
  EDone,   // ready to return
  ERet,
  DRange,  // before range = back - 1
  DI0,     // before i = 0
  DSwap,   // before x = swap(items[i], null)
  DSwapW,  // split-swap mutant only: read done, null-write pending
  DCheck,  // before the x != null test
  DInc,    // before i++
  DDone,   // ready to return x
  DRet,
};

enum class HwqVariant : uint8_t {
  Standard,
  SplitSwap,  // swap decomposed into read then unconditional null-write
  NoNull,     // swap replaced by a plain read; the cell is never cleared
};

struct HwqState {
  uint8_t back = 0;
  std::vector<int16_t> items;   // -1 = null
  std::vector<uint8_t> cp;      // per op
  std::vector<int16_t> enq_i;   // per op; kUnset before the reservation
  std::vector<int16_t> deq_i;   // scoped to the traversal loop
  std::vector<int16_t> deq_range;
  std::vector<int16_t> deq_x;   // kUnset before the first swap, else -1/value

  static constexpr int16_t kUnset = INT16_MIN;
  static constexpr int16_t kNull = -1;

  bool operator==(const HwqState&) const = default;
  uint64_t hash() const;
};

struct HwqModel {
  using State = HwqState;
  QueueWorkload wl;
  HwqVariant variant = HwqVariant::Standard;

  State initial() const;
  void successors(const State& s, std::vector<std::pair<ActionLabel, State>>& out) const;
  std::string repr(const State& s) const;
  std::vector<ActionLabel> call_alphabet() const;
};

// Array size equals the enqueue count, so back never overflows.
HwqModel make_hwq(QueueWorkload wl, HwqVariant variant = HwqVariant::Standard);

// The control window after a swap returned null and before the increment of
// the scan index. Throws NotADequeue for non-dequeue ops.
bool if_inc(const HwqState& s, const QueueWorkload& wl, uint32_t op);

}  // namespace linlab

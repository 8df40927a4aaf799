#pragma once

#include <functional>

#include "linlab/explore.hpp"
#include "linlab/impl_hwq.hpp"
#include "linlab/impl_tss.hpp"
#include "linlab/verdict.hpp"

namespace linlab {

// Total predicate over (implementation state id, specification state id).
// Must be side-effect free; any exception inside is a checker error.
using RelationFn = std::function<bool(uint32_t, uint32_t)>;

struct FsimOptions {
  // The fast path matches an observable impl step by the unique spec step
  // with the same label and an internal step by the empty sequence; this is
  // exact when the spec's alphabet is Γ and the spec is Γ-deterministic.
  // The general variant searches matching sequences instead (specs with
  // internal actions), quantifying over all related reachable spec states.
  bool general = false;
};

Verdict check_forward_simulation(System& impl, System& spec, const Gamma& gamma,
                                 const RelationFn& rel, const ExplorationBounds& bounds,
                                 const FsimOptions& opts = {});

// Appendix-style "normal" simulations: calls match sequences starting with
// the call, returns match sequences ending with the return, other observable
// actions match a single equal step, internal steps match unobservable
// sequences. The backward checker quantifies from related successor states.
Verdict check_normal_forward_simulation(System& lhs, System& rhs, const Gamma& gamma,
                                        const RelationFn& rel,
                                        const ExplorationBounds& bounds);
Verdict check_normal_backward_simulation(System& lhs, System& rhs, const Gamma& gamma,
                                         const RelationFn& rel,
                                         const ExplorationBounds& bounds);

// Tr(A)|Γ ⊆ Tr(B)|Γ via an on-the-fly determinization of B. A Pass is
// exhaustive over the finite product, so it covers all bounded projections.
Verdict check_gamma_refinement(System& a, System& b, const Gamma& gamma,
                               const ExplorationBounds& bounds);

// H(A) = H(B): refinement both ways over C∪R. Fail carries a one-sided
// witness history.
Verdict histories_equal(System& a, System& b, const ExplorationBounds& bounds);

// Replays a counterexample trace through both systems with the deterministic
// matching and reproduces the violated obligation.
Verdict replay_forward_counterexample(System& impl, System& spec, const Gamma& gamma,
                                      const RelationFn& rel,
                                      std::span<const ActionLabel> trace);

// The concrete simulation relation from the array-based queue to the
// poset-based abstract queue.
bool fs1_holds(const HwqState& s, const QueueWorkload& wl, const AbsQState& t);

// The concrete simulation relation from the Time-Stamped Stack to the
// abstract stack with be/ov frontier sets.
bool fs2_holds(const TssModel& m, const TssState& s, const AbsSState& t);

}  // namespace linlab

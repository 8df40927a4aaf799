#include "linlab/simulation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace linlab {

namespace {

uint64_t pair_key(uint32_t a, uint32_t b) { return (static_cast<uint64_t>(a) << 32) | b; }

// BFS over product pairs recording parents, used to rebuild the impl trace
// leading to a failing pair. Pass runs skip this entirely.
std::vector<ActionLabel> rebuild_pair_trace(System& impl, System& spec, const Gamma& gamma,
                                            uint64_t target) {
  std::unordered_map<uint64_t, std::pair<uint64_t, uint32_t>> parent;  // key -> (parent, impl label)
  std::deque<uint64_t> frontier;
  uint64_t start = pair_key(impl.initial_id(), spec.initial_id());
  parent.emplace(start, std::make_pair(start, UINT32_MAX));
  frontier.push_back(start);
  while (!frontier.empty()) {
    uint64_t key = frontier.front();
    frontier.pop_front();
    if (key == target) break;
    uint32_t s = static_cast<uint32_t>(key >> 32);
    uint32_t u = static_cast<uint32_t>(key & 0xffffffffu);
    for (const CEdge& e : impl.successors(s)) {
      const ActionLabel& l = impl.label(e.label);
      uint32_t u_next = u;
      if (gamma.contains(l)) {
        bool found = false;
        for (const CEdge& se : spec.successors(u)) {
          if (spec.label(se.label) == l) {
            u_next = se.to;
            found = true;
            break;
          }
        }
        if (!found) continue;
      }
      uint64_t next = pair_key(e.to, u_next);
      if (parent.emplace(next, std::make_pair(key, e.label)).second) {
        frontier.push_back(next);
      }
    }
  }
  std::vector<ActionLabel> trace;
  uint64_t cur = target;
  while (true) {
    auto it = parent.find(cur);
    if (it == parent.end() || it->second.first == cur) break;
    trace.push_back(impl.label(it->second.second));
    cur = it->second.first;
  }
  std::reverse(trace.begin(), trace.end());
  return trace;
}

Verdict fail_at_pair(const char* check, System& impl, System& spec, const Gamma& gamma,
                     std::string obligation, uint32_t s, uint32_t u,
                     const ActionLabel* step) {
  Verdict v = Verdict::fail(check, std::move(obligation));
  v.trace = rebuild_pair_trace(impl, spec, gamma, pair_key(s, u));
  if (step) v.trace.push_back(*step);
  v.impl_state = impl.state_repr(s);
  v.spec_state = spec.state_repr(u);
  return v;
}

}  // namespace

Verdict check_forward_simulation(System& impl, System& spec, const Gamma& gamma,
                                 const RelationFn& rel, const ExplorationBounds& bounds,
                                 const FsimOptions& opts) {
  const char* check = "forward-simulation";
  uint32_t i0 = impl.initial_id();
  uint32_t u0 = spec.initial_id();
  if (!rel(i0, u0)) {
    return fail_at_pair(check, impl, spec, gamma, "initial pair not related", i0, u0, nullptr);
  }

  if (opts.general) {
    // Direct bounded reading of the definition: for every related reachable
    // pair and every impl step, search a matching spec sequence leading to a
    // related state. Off the hot path; meant for specs with internal steps.
    StateGraph gi = reachable_graph(impl, bounds);
    StateGraph gs = reachable_graph(spec, bounds);
    if (!gi.complete || !gs.complete) {
      return Verdict::bound_exceeded(check, "max_states hit during exploration");
    }
    for (uint32_t s : gi.order) {
      for (uint32_t u : gs.order) {
        if (!rel(s, u)) continue;
        for (const CEdge& e : impl.successors(s)) {
          const ActionLabel& l = impl.label(e.label);
          bool need_gamma = gamma.contains(l);
          // BFS over spec sequences in (Σ\Γ)* (γ (Σ\Γ)*)?.
          std::deque<std::pair<uint32_t, bool>> q{{u, false}};
          std::set<std::pair<uint32_t, bool>> seen{{u, false}};
          bool ok = false;
          uint32_t steps = 0;
          while (!q.empty() && !ok && steps++ <= bounds.max_trace_events * 64) {
            auto [v, seen_gamma] = q.front();
            q.pop_front();
            if ((seen_gamma || !need_gamma) && rel(e.to, v)) {
              ok = true;
              break;
            }
            for (const CEdge& se : spec.successors(v)) {
              const ActionLabel& sl = spec.label(se.label);
              std::pair<uint32_t, bool> next;
              if (!gamma.contains(sl)) {
                next = {se.to, seen_gamma};
              } else if (need_gamma && !seen_gamma && sl == l) {
                next = {se.to, true};
              } else {
                continue;
              }
              if (seen.insert(next).second) q.push_back(next);
            }
          }
          if (!ok) {
            ActionLabel step = l;
            return fail_at_pair(check, impl, spec, gamma, "no matching spec sequence", s, u,
                                &step);
          }
        }
      }
    }
    return Verdict::pass(check);
  }

  // Deterministic matching: the product is explored pair by pair; each
  // observable impl step must have exactly one same-labeled spec step.
  std::unordered_set<uint64_t> visited;
  std::deque<uint64_t> frontier;
  visited.insert(pair_key(i0, u0));
  frontier.push_back(pair_key(i0, u0));

  while (!frontier.empty()) {
    uint64_t key = frontier.front();
    frontier.pop_front();
    uint32_t s = static_cast<uint32_t>(key >> 32);
    uint32_t u = static_cast<uint32_t>(key & 0xffffffffu);

    for (const CEdge& se : spec.successors(u)) {
      if (!gamma.contains(spec.label(se.label))) {
        return fail_at_pair(check, impl, spec, gamma,
                            "spec has internal actions; use the general matcher", s, u,
                            nullptr);
      }
    }

    for (const CEdge& e : impl.successors(s)) {
      const ActionLabel& l = impl.label(e.label);
      uint32_t u_next = u;
      if (gamma.contains(l)) {
        uint32_t matches = 0;
        for (const CEdge& se : spec.successors(u)) {
          if (spec.label(se.label) == l) {
            if (++matches == 1) u_next = se.to;
          }
        }
        if (matches == 0) {
          ActionLabel step = l;
          return fail_at_pair(check, impl, spec, gamma, "no matching spec transition", s, u,
                              &step);
        }
        if (matches > 1) {
          ActionLabel step = l;
          return fail_at_pair(check, impl, spec, gamma, "spec not deterministic on label", s,
                              u, &step);
        }
      }
      uint64_t next = pair_key(e.to, u_next);
      if (visited.insert(next).second) {
        if (visited.size() > bounds.max_states) {
          return Verdict::bound_exceeded(check, "max_states product pairs");
        }
        if (!rel(e.to, u_next)) {
          ActionLabel step = l;
          Verdict v = fail_at_pair(check, impl, spec, gamma, "relation violated", s, u, &step);
          v.notes.push_back("impl successor: " + impl.state_repr(e.to));
          v.notes.push_back("spec successor: " + spec.state_repr(u_next));
          return v;
        }
        frontier.push_back(next);
      }
    }
  }
  return Verdict::pass(check);
}

namespace {

// Matching sequence search for the normal simulations. Returns whether some
// path from u to target follows the clause discipline for label l.
bool normal_sequence_exists(System& rhs, const Gamma& gamma, uint32_t u, uint32_t target,
                            const ActionLabel& l, uint32_t depth_cap) {
  enum class Clause { CallFirst, RetLast, Exact, Silent };
  Clause clause;
  if (!gamma.contains(l)) {
    clause = Clause::Silent;
  } else if (l.is_call()) {
    clause = Clause::CallFirst;
  } else if (l.is_ret()) {
    clause = Clause::RetLast;
  } else {
    clause = Clause::Exact;
  }

  auto silent_reach = [&](uint32_t from, auto&& visit) {
    std::deque<std::pair<uint32_t, uint32_t>> q{{from, 0}};
    std::unordered_set<uint32_t> seen{from};
    while (!q.empty()) {
      auto [v, d] = q.front();
      q.pop_front();
      visit(v);
      if (d >= depth_cap) continue;
      for (const CEdge& e : rhs.successors(v)) {
        if (gamma.contains(rhs.label(e.label))) continue;
        if (seen.insert(e.to).second) q.push_back({e.to, d + 1});
      }
    }
  };

  bool found = false;
  switch (clause) {
    case Clause::Silent:
      silent_reach(u, [&](uint32_t v) { found |= v == target; });
      return found;
    case Clause::Exact:
      for (const CEdge& e : rhs.successors(u)) {
        if (rhs.label(e.label) == l && e.to == target) return true;
      }
      return false;
    case Clause::CallFirst:
      for (const CEdge& e : rhs.successors(u)) {
        if (rhs.label(e.label) != l) continue;
        silent_reach(e.to, [&](uint32_t v) { found |= v == target; });
        if (found) return true;
      }
      return false;
    case Clause::RetLast:
      silent_reach(u, [&](uint32_t v) {
        if (found) return;
        for (const CEdge& e : rhs.successors(v)) {
          if (rhs.label(e.label) == l && e.to == target) found = true;
        }
      });
      return found;
  }
  return false;
}

Verdict check_normal_simulation(System& lhs, System& rhs, const Gamma& gamma,
                                const RelationFn& rel, const ExplorationBounds& bounds,
                                bool backward) {
  const char* check = backward ? "normal-backward-simulation" : "normal-forward-simulation";
  StateGraph gl = reachable_graph(lhs, bounds);
  StateGraph gr = reachable_graph(rhs, bounds);
  if (!gl.complete || !gr.complete) {
    return Verdict::bound_exceeded(check, "max_states hit during exploration");
  }

  // Clause (i): the initial lhs state is related exactly to the rhs initial.
  if (!rel(lhs.initial_id(), rhs.initial_id())) {
    return Verdict::fail(check, "initial pair not related");
  }
  for (uint32_t u : gr.order) {
    if (u != rhs.initial_id() && rel(lhs.initial_id(), u)) {
      Verdict v = Verdict::fail(check, "initial lhs state related to a non-initial rhs state");
      v.spec_state = rhs.state_repr(u);
      return v;
    }
  }

  for (uint32_t s : gl.order) {
    for (const CEdge& e : lhs.successors(s)) {
      const ActionLabel& l = lhs.label(e.label);
      for (uint32_t anchor : gr.order) {
        // Forward: anchor ranges over rel[s], need a successor of anchor in
        // rel[s']. Backward: anchor ranges over rel[s'], need a predecessor.
        if (backward ? !rel(e.to, anchor) : !rel(s, anchor)) continue;
        bool ok = false;
        for (uint32_t other : gr.order) {
          if (backward ? !rel(s, other) : !rel(e.to, other)) continue;
          uint32_t from = backward ? other : anchor;
          uint32_t to = backward ? anchor : other;
          if (normal_sequence_exists(rhs, gamma, from, to, l, bounds.max_trace_events)) {
            ok = true;
            break;
          }
        }
        if (!ok) {
          Verdict v = Verdict::fail(check, "no matching sequence for clause of " + l.str());
          v.trace = gl.trace_to(lhs, s);
          v.trace.push_back(l);
          v.impl_state = lhs.state_repr(s);
          v.spec_state = rhs.state_repr(anchor);
          return v;
        }
      }
    }
  }
  return Verdict::pass(check);
}

}  // namespace

Verdict check_normal_forward_simulation(System& lhs, System& rhs, const Gamma& gamma,
                                        const RelationFn& rel,
                                        const ExplorationBounds& bounds) {
  return check_normal_simulation(lhs, rhs, gamma, rel, bounds, false);
}

Verdict check_normal_backward_simulation(System& lhs, System& rhs, const Gamma& gamma,
                                         const RelationFn& rel,
                                         const ExplorationBounds& bounds) {
  return check_normal_simulation(lhs, rhs, gamma, rel, bounds, true);
}

namespace {

// Interns sorted state sets for the determinized side of refinement checks.
class SetPool {
 public:
  uint32_t intern(std::vector<uint32_t> set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    Hasher h;
    for (uint32_t v : set) h.add(v);
    uint64_t key = h.value();
    auto& bucket = buckets_[key];
    for (uint32_t id : bucket) {
      if (sets_[id] == set) return id;
    }
    uint32_t id = static_cast<uint32_t>(sets_.size());
    sets_.push_back(std::move(set));
    bucket.push_back(id);
    return id;
  }
  const std::vector<uint32_t>& operator[](uint32_t id) const { return sets_[id]; }
  bool empty_set(uint32_t id) const { return sets_[id].empty(); }

 private:
  std::vector<std::vector<uint32_t>> sets_;
  std::unordered_map<uint64_t, std::vector<uint32_t>> buckets_;
};

std::vector<uint32_t> silent_closure(System& sys, const Gamma& gamma,
                                     std::vector<uint32_t> seed) {
  std::vector<uint32_t> out;
  std::unordered_set<uint32_t> seen(seed.begin(), seed.end());
  std::deque<uint32_t> q(seed.begin(), seed.end());
  while (!q.empty()) {
    uint32_t v = q.front();
    q.pop_front();
    out.push_back(v);
    for (const CEdge& e : sys.successors(v)) {
      if (gamma.contains(sys.label(e.label))) continue;
      if (seen.insert(e.to).second) q.push_back(e.to);
    }
  }
  return out;
}

}  // namespace

Verdict check_gamma_refinement(System& a, System& b, const Gamma& gamma,
                               const ExplorationBounds& bounds) {
  const char* check = "gamma-refinement";
  SetPool pool;
  uint32_t b0 = pool.intern(silent_closure(b, gamma, {b.initial_id()}));

  struct Node {
    uint32_t a_state;
    uint32_t b_set;
    uint32_t parent;      // index into nodes
    uint32_t label;       // a-label id on the incoming edge (observable path only)
    bool has_label;
  };
  std::vector<Node> nodes{{a.initial_id(), b0, 0, 0, false}};
  std::unordered_set<uint64_t> visited{pair_key(a.initial_id(), b0)};
  std::deque<uint32_t> frontier{0};

  auto witness = [&](uint32_t node_idx, const ActionLabel& last) {
    std::vector<ActionLabel> w;
    uint32_t cur = node_idx;
    while (nodes[cur].parent != cur || nodes[cur].has_label) {
      if (nodes[cur].has_label) w.push_back(a.label(nodes[cur].label));
      if (nodes[cur].parent == cur) break;
      cur = nodes[cur].parent;
    }
    std::reverse(w.begin(), w.end());
    w.push_back(last);
    return w;
  };

  while (!frontier.empty()) {
    uint32_t idx = frontier.front();
    frontier.pop_front();
    uint32_t s = nodes[idx].a_state;
    uint32_t bset = nodes[idx].b_set;

    for (const CEdge& e : a.successors(s)) {
      const ActionLabel& l = a.label(e.label);
      uint32_t bset_next = bset;
      bool is_obs = gamma.contains(l);
      if (is_obs) {
        std::vector<uint32_t> stepped;
        for (uint32_t u : pool[bset]) {
          for (const CEdge& se : b.successors(u)) {
            if (b.label(se.label) == l) stepped.push_back(se.to);
          }
        }
        if (stepped.empty()) {
          Verdict v = Verdict::fail(check, "projected trace of lhs not admitted by rhs",
                                    witness(idx, l));
          v.impl_state = a.state_repr(s);
          return v;
        }
        bset_next = pool.intern(silent_closure(b, gamma, std::move(stepped)));
      }
      uint64_t key = pair_key(e.to, bset_next);
      if (visited.insert(key).second) {
        if (visited.size() > bounds.max_states) {
          return Verdict::bound_exceeded(check, "max_states product pairs");
        }
        nodes.push_back({e.to, bset_next, idx, e.label, is_obs});
        frontier.push_back(static_cast<uint32_t>(nodes.size() - 1));
      }
    }
  }
  return Verdict::pass(check);
}

Verdict histories_equal(System& a, System& b, const ExplorationBounds& bounds) {
  Gamma cr{Gamma::Preset::CR};
  Verdict forward = check_gamma_refinement(a, b, cr, bounds);
  if (!forward.passed()) {
    forward.check = "histories-equal";
    if (forward.status == Status::Fail) {
      forward.notes.push_back("history of " + std::string(a.name()) + " missing from " +
                              std::string(b.name()));
    }
    return forward;
  }
  Verdict backward = check_gamma_refinement(b, a, cr, bounds);
  if (!backward.passed()) {
    backward.check = "histories-equal";
    if (backward.status == Status::Fail) {
      backward.notes.push_back("history of " + std::string(b.name()) + " missing from " +
                               std::string(a.name()));
    }
    return backward;
  }
  return Verdict::pass("histories-equal");
}

Verdict replay_forward_counterexample(System& impl, System& spec, const Gamma& gamma,
                                      const RelationFn& rel,
                                      std::span<const ActionLabel> trace) {
  const char* check = "replay";
  uint32_t s = impl.initial_id();
  uint32_t u = spec.initial_id();
  if (!rel(s, u)) return Verdict::fail(check, "initial pair not related");
  for (size_t i = 0; i < trace.size(); ++i) {
    const ActionLabel& l = trace[i];
    bool stepped = false;
    for (const CEdge& e : impl.successors(s)) {
      if (impl.label(e.label) == l) {
        s = e.to;
        stepped = true;
        break;
      }
    }
    if (!stepped) return Verdict::fail(check, "trace not admitted by impl at " + l.str());
    if (gamma.contains(l)) {
      uint32_t matches = 0;
      uint32_t target = u;
      for (const CEdge& se : spec.successors(u)) {
        if (spec.label(se.label) == l) {
          if (++matches == 1) target = se.to;
        }
      }
      if (matches == 0) {
        Verdict v = Verdict::fail(check, "no matching spec transition",
                                  {trace.begin(), trace.begin() + i + 1});
        v.impl_state = impl.state_repr(s);
        v.spec_state = spec.state_repr(u);
        return v;
      }
      if (matches > 1) {
        return Verdict::fail(check, "spec not deterministic on label",
                             {trace.begin(), trace.begin() + i + 1});
      }
      u = target;
    }
    if (!rel(s, u)) {
      Verdict v = Verdict::fail(check, "relation violated",
                                {trace.begin(), trace.begin() + i + 1});
      v.impl_state = impl.state_repr(s);
      v.spec_state = spec.state_repr(u);
      return v;
    }
  }
  return Verdict::pass(check);
}

// ---------------------------------------------------------------------------
// fs1: array-based queue vs poset-based abstract queue.

bool fs1_holds(const HwqState& s, const QueueWorkload& wl, const AbsQState& t) {
  uint32_t n = wl.num_ops();

  // Membership: live enqueues are those whose value is still in the array
  // plus pending enqueues that have at most reserved a slot.
  for (uint32_t k = 1; k <= n; ++k) {
    bool in_t = (t.O >> k) & 1u;
    if (!wl.is_enq(k)) {
      if (in_t) return false;
      continue;
    }
    CpHwq cp = static_cast<CpHwq>(s.cp[k]);
    bool expected = false;
    switch (cp) {
      case CpHwq::None: expected = false; break;
      case CpHwq::E1:
      case CpHwq::E2: expected = true; break;
      default:
        expected = s.items[s.enq_i[k]] == static_cast<int16_t>(wl.value(k));
        break;
    }
    if (in_t != expected) return false;
    if (in_t) {
      uint8_t want = cp == CpHwq::ERet ? kFlagComp : kFlagPend;
      if (t.flag[k] != want) return false;
    }
  }

  // (a) pending enqueues are maximal.
  for (uint32_t k = 1; k <= n; ++k) {
    if (((t.O >> k) & 1u) && t.flag[k] == kFlagPend) {
      for (uint32_t j = 1; j <= n; ++j) {
        if ((t.lt[j] >> k) & 1u) return false;
      }
    }
  }

  // (b) consistent with slot reservation order.
  for (uint32_t k = 1; k <= n; ++k) {
    if (!((t.O >> k) & 1u) || !wl.is_enq(k) || s.enq_i[k] == HwqState::kUnset) continue;
    for (uint32_t k2 = 1; k2 <= n; ++k2) {
      if (!((t.O >> k2) & 1u) || !wl.is_enq(k2) || s.enq_i[k2] == HwqState::kUnset) continue;
      if (s.enq_i[k] < s.enq_i[k2] && ((t.lt[k] >> k2) & 1u)) return false;
    }
  }

  // (c) an enqueue whose slot was already observed by a dequeue that may
  // still observe a later slot in this traversal cannot be ordered first.
  auto in_loop = [&](uint32_t kd) {
    CpHwq cp = static_cast<CpHwq>(s.cp[kd]);
    return cp == CpHwq::DSwap || cp == CpHwq::DSwapW || cp == CpHwq::DCheck ||
           cp == CpHwq::DInc;
  };
  auto ifinc = [&](uint32_t kd) {
    CpHwq cp = static_cast<CpHwq>(s.cp[kd]);
    return cp == CpHwq::DInc || (cp == CpHwq::DCheck && s.deq_x[kd] == HwqState::kNull);
  };
  for (uint32_t kd = 1; kd <= n; ++kd) {
    if (!wl.is_deq(kd) || !in_loop(kd)) continue;
    if (s.deq_x[kd] != HwqState::kNull) continue;
    for (uint32_t k = 1; k <= n; ++k) {
      if (!((t.O >> k) & 1u) || !wl.is_enq(k) || s.enq_i[k] == HwqState::kUnset) continue;
      for (uint32_t k2 = 1; k2 <= n; ++k2) {
        if (!((t.O >> k2) & 1u) || !wl.is_enq(k2) || s.enq_i[k2] == HwqState::kUnset) continue;
        if (!(s.enq_i[k2] <= s.deq_range[kd])) continue;
        if (!(s.enq_i[k] <= s.deq_i[kd] && s.deq_i[kd] <= s.enq_i[k2])) continue;
        if (s.enq_i[k] == s.deq_i[kd] && !ifinc(kd)) continue;
        if ((t.lt[k2] >> k) & 1u) return false;  // k < k2 is forbidden
      }
    }
  }

  // Return values fixed at the linearization point.
  for (uint32_t kd = 1; kd <= n; ++kd) {
    if (!wl.is_deq(kd)) continue;
    int16_t x = s.deq_x[kd];
    if (x != HwqState::kUnset && x != HwqState::kNull) {
      if (t.rv[kd] != Val::nat(x)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// fs2: Time-Stamped Stack vs abstract stack.

namespace {

// Pool-traversal order on node refs; both must sit in some pool.
bool node_trav_less(const TssModel& m, const TssState& s, int16_t a, int16_t b,
                    uint32_t pool_a, uint32_t pool_b) {
  if (a == b) return false;
  if (pool_a != pool_b) return pool_a < pool_b;
  int16_t cur = m.node_at(s, a).next;
  while (true) {
    if (cur == b) return true;
    if (m.is_sentinel(cur) || cur == TssState::kNullRef || cur == a) return false;
    cur = m.node_at(s, cur).next;
  }
}

}  // namespace

bool fs2_holds(const TssModel& m, const TssState& s, const AbsSState& t) {
  const StackWorkload& wl = m.wl;
  uint32_t n = wl.num_ops();

  auto cp_of = [&](uint32_t k) { return static_cast<CpTss>(s.cp[k]); };
  auto has_node = [&](uint32_t k) { return cp_of(k) >= CpTss::PA2 && cp_of(k) <= CpTss::PA6; };
  auto inserted = [&](uint32_t k) { return cp_of(k) >= CpTss::PA3 && cp_of(k) <= CpTss::PA6; };
  auto node = [&](uint32_t k) -> const TssNode& { return s.nodes[k - 1]; };
  auto in_o = [&](uint32_t k) { return ((t.O >> k) & 1u) != 0; };
  auto pool_of_ref = [&](int16_t ref) -> uint32_t {
    return m.is_sentinel(ref) ? static_cast<uint32_t>(ref) : wl.thread(m.push_of_ref(ref));
  };

  // Nodes: live pushes are exactly those not yet in a pool or not taken.
  for (uint32_t k = 1; k <= n; ++k) {
    bool expected = false;
    if (wl.is_push(k)) {
      CpTss cp = cp_of(k);
      if (cp == CpTss::PA1 || cp == CpTss::PA2) {
        expected = true;
      } else if (cp >= CpTss::PA3 && cp <= CpTss::PA6) {
        expected = node(k).taken == 0;
      }
    }
    if (in_o(k) != expected) return false;
  }

  // Pend/Comp, and pending vertices are maximal.
  for (uint32_t k = 1; k <= n; ++k) {
    if (!in_o(k)) continue;
    uint8_t want = cp_of(k) == CpTss::PA6 ? kFlagComp : kFlagPend;
    if (t.flag[k] != want) return false;
    if (want == kFlagPend) {
      for (uint32_t j = 1; j <= n; ++j) {
        if ((t.lt[j] >> k) & 1u) return false;
      }
    }
  }

  // TSOrder / TidOrder.
  for (uint32_t k = 1; k <= n; ++k) {
    if (!in_o(k) || !wl.is_push(k) || !has_node(k)) continue;
    for (uint32_t k2 = 1; k2 <= n; ++k2) {
      if (k2 == k || !in_o(k2) || !wl.is_push(k2) || !has_node(k2)) continue;
      if (node(k).ts <= node(k2).ts && ((t.lt[k] >> k2) & 1u)) return false;
      if (wl.thread(k) == wl.thread(k2) && node(k).ts < node(k2).ts &&
          !((t.lt[k2] >> k) & 1u)) {
        return false;
      }
    }
  }

  // Conditions over the frontier sets apply to uncommitted pops.
  std::vector<uint32_t> pops;
  for (uint32_t p = 1; p <= n; ++p) {
    if (wl.is_pop(p) && static_cast<CpAbs>(t.cp[p]) == CpAbs::R1) pops.push_back(p);
  }

  for (uint32_t p : pops) {
    uint32_t beov = t.be[p] | t.ov[p];
    for (uint32_t k = 1; k <= n; ++k) {
      if (!in_o(k)) continue;
      // Frontiers.
      if (t.flag[k] == kFlagPend) {
        if (!((t.ov[p] >> k) & 1u)) return false;
      } else {
        bool maximally_closed = true;
        for (uint32_t j = 1; j <= n; ++j) {
          if (in_o(j) && ((t.lt[j] >> k) & 1u) && t.flag[j] == kFlagComp) {
            maximally_closed = false;
            break;
          }
        }
        if (maximally_closed && !((beov >> k) & 1u)) return false;
      }
      // ReverseFrontiers: all immediate successors overlapping forces k into
      // the frontier sets.
      bool all_succ_ov = true;
      bool has_succ = false;
      for (uint32_t j = 1; j <= n; ++j) {
        if (!in_o(j)) continue;
        if ((immediate_preds(t.lt, j) >> k) & 1u) {
          has_succ = true;
          if (!((t.ov[p] >> j) & 1u)) all_succ_ov = false;
        }
      }
      (void)has_succ;
      if (all_succ_ov && !((beov >> k) & 1u)) return false;
      for (uint32_t k2 = 1; k2 <= n; ++k2) {
        if (!in_o(k2) || !((t.lt[k2] >> k) & 1u)) continue;
        // MaximalOV: k < k2 and k in the frontier sets puts k2 in ov.
        if (((beov >> k) & 1u) && !((t.ov[p] >> k2) & 1u)) return false;
        // MinimalBE: k < k2 with k2 in be keeps k out of both sets.
        if (((t.be[p] >> k2) & 1u) && ((beov >> k) & 1u)) return false;
      }
    }
  }

  // FixReturn.
  for (uint32_t p = 1; p <= n; ++p) {
    if (!wl.is_pop(p)) continue;
    if (cp_of(p) == CpTss::R6 && s.pop_success[p] == 1) {
      int16_t y = s.pop_youngest[p];
      if (t.rv[p] != Val::nat(m.node_at(s, y).data)) return false;
    }
  }

  // Traversal conditions.
  for (uint32_t p : pops) {
    int16_t np = s.pop_n[p];
    int16_t y = s.pop_youngest[p];
    if (np == TssState::kUnset || y == TssState::kUnset) continue;
    uint32_t pool_np = pool_of_ref(np);

    for (uint32_t k = 1; k <= n; ++k) {
      if (!in_o(k) || !wl.is_push(k) || !inserted(k)) continue;
      if (!node_trav_less(m, s, m.node_ref(k), np, wl.thread(k), pool_np)) continue;
      if (y == TssState::kNullRef) {
        // TraverseBeforeNull: nothing non-taken may sit before the scan.
        if (!((t.ov[p] >> k) & 1u)) return false;
      } else if (node(k).ts > m.node_at(s, y).ts) {
        // TraverseBefore: a strictly younger untaken node before the scan
        // position must overlap the pop.
        if (!((t.ov[p] >> k) & 1u)) return false;
      }
    }

    // TraverseAfter: the current youngest candidate is either removable by p
    // or a younger removable push sits at or after the scan position.
    if (y == TssState::kNullRef) continue;
    uint32_t ky = m.is_sentinel(y) ? 0 : m.push_of_ref(y);
    if (ky == 0 || !in_o(ky)) continue;
    uint32_t kn = m.is_sentinel(np) ? 0 : m.push_of_ref(np);
    if (kn == 0 || !in_o(kn)) continue;
    uint32_t beov = t.be[p] | t.ov[p];
    if ((beov >> ky) & 1u) continue;
    bool ok = false;
    for (uint32_t k2 = 1; k2 <= n; ++k2) {
      if (!in_o(k2) || !wl.is_push(k2) || !has_node(k2)) continue;
      if (!((beov >> k2) & 1u)) continue;
      if (!(node(k2).ts > node(ky).ts)) continue;
      bool after_scan =
          inserted(k2) && node_trav_less(m, s, np, m.node_ref(k2), pool_np, wl.thread(k2));
      bool at_scan = inserted(k2) && m.node_ref(k2) == np &&
                     (cp_of(p) == CpTss::R2 || cp_of(p) == CpTss::R3 || cp_of(p) == CpTss::R4);
      if (after_scan || at_scan) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace linlab

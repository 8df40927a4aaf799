#include "linlab/spec_queue.hpp"

#include <set>

namespace linlab {

void QueueWorkload::validate() const {
  std::set<int32_t> seen;
  for (int32_t v : enqs) {
    if (v < 0) throw BadConfig("enqueue values must be naturals");
    if (!seen.insert(v).second) throw DuplicateValue("the same value is never added twice");
  }
  if (num_ops() > 31) throw BadConfig("at most 31 operations per workload");
}

uint64_t AbsQ0State::hash() const {
  Hasher h;
  h.add(static_cast<uint64_t>(sigma.size()));
  for (int32_t v : sigma) h.add(v);
  for (uint8_t c : cp) h.add(c);
  for (Val v : rv) h.add(v.raw());
  return h.value();
}

AbsQ0Model::State AbsQ0Model::initial() const {
  State s;
  s.cp.assign(wl.num_ops() + 1, static_cast<uint8_t>(CpQ0::None));
  s.rv.assign(wl.num_ops() + 1, Val{});
  return s;
}

void AbsQ0Model::successors(const State& s,
                            std::vector<std::pair<ActionLabel, State>>& out) const {
  out.clear();
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    CpQ0 cp = static_cast<CpQ0>(s.cp[k]);
    if (wl.is_enq(k)) {
      Val d = Val::nat(wl.value(k));
      switch (cp) {
        case CpQ0::None: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpQ0::A1);
          out.push_back({inv(Method::Enq, d, k), std::move(n)});
          break;
        }
        case CpQ0::A1: {
          State n = s;
          n.sigma.insert(n.sigma.begin(), wl.value(k));
          n.cp[k] = static_cast<uint8_t>(CpQ0::AMid);
          out.push_back({lin(Method::Enq, d, k), std::move(n)});
          break;
        }
        case CpQ0::AMid: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpQ0::A2);
          out.push_back({ret(Method::Enq, k), std::move(n)});
          break;
        }
        default: break;
      }
    } else {
      switch (cp) {
        case CpQ0::None: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpQ0::R1);
          out.push_back({inv(Method::Deq, k), std::move(n)});
          break;
        }
        case CpQ0::R1: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpQ0::R2);
          if (s.sigma.empty()) {
            n.rv[k] = Val::empty();
            out.push_back({lin(Method::Deq, Val::empty(), k), std::move(n)});
          } else {
            int32_t d = n.sigma.back();
            n.sigma.pop_back();
            n.rv[k] = Val::nat(d);
            out.push_back({lin(Method::Deq, Val::nat(d), k), std::move(n)});
          }
          break;
        }
        case CpQ0::R2: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpQ0::R3);
          out.push_back({ret(Method::Deq, s.rv[k], k), std::move(n)});
          break;
        }
        default: break;
      }
    }
  }
}

std::string AbsQ0Model::repr(const State& s) const {
  std::string r = "sigma=[";
  for (size_t i = 0; i < s.sigma.size(); ++i) {
    if (i) r += ",";
    r += std::to_string(s.sigma[i]);
  }
  r += "] cp=[";
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    if (k > 1) r += ",";
    r += std::to_string(s.cp[k]);
  }
  r += "] rv=[";
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    if (k > 1) r += ",";
    r += s.rv[k].str();
  }
  return r + "]";
}

std::vector<ActionLabel> AbsQ0Model::call_alphabet() const {
  std::vector<ActionLabel> calls;
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    calls.push_back(wl.is_enq(k) ? inv(Method::Enq, Val::nat(wl.value(k)), k)
                                 : inv(Method::Deq, k));
  }
  return calls;
}

uint64_t AbsQState::hash() const {
  Hasher h;
  h.add(O);
  for (uint32_t m : lt) h.add(m);
  for (uint8_t f : flag) h.add(f);
  for (Val v : rv) h.add(v.raw());
  for (uint8_t c : cp) h.add(c);
  return h.value();
}

AbsQModel::State AbsQModel::initial() const {
  State s;
  uint32_t n = wl.num_ops() + 1;
  s.lt.assign(n, 0);
  s.flag.assign(n, 0);
  s.rv.assign(n, Val{});
  s.cp.assign(n, static_cast<uint8_t>(CpAbs::None));
  return s;
}

uint32_t minimal_ops(const AbsQState& s) {
  uint32_t result = 0;
  for (uint32_t k = 1; k < s.lt.size(); ++k) {
    if ((s.O >> k) & 1u) {
      if (s.lt[k] == 0) result |= 1u << k;
    }
  }
  return result;
}

namespace {

// Insert k above every completed live op; lt stays transitively closed.
void order_after_completed(AbsQState& s, uint32_t k) {
  uint32_t below = 0;
  for (uint32_t c = 1; c < s.lt.size(); ++c) {
    if (((s.O >> c) & 1u) && s.flag[c] == kFlagComp) below |= (1u << c) | s.lt[c];
  }
  s.lt[k] = below;
}

void remove_from_order(AbsQState& s, uint32_t k) {
  s.O &= ~(1u << k);
  s.lt[k] = 0;
  for (auto& m : s.lt) m &= ~(1u << k);
}

}  // namespace

void AbsQModel::successors(const State& s,
                           std::vector<std::pair<ActionLabel, State>>& out) const {
  out.clear();
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    CpAbs cp = static_cast<CpAbs>(s.cp[k]);
    if (wl.is_enq(k)) {
      switch (cp) {
        case CpAbs::None: {  // call-enq
          State n = s;
          n.O |= 1u << k;
          order_after_completed(n, k);
          n.flag[k] = kFlagPend;
          n.cp[k] = static_cast<uint8_t>(CpAbs::A1);
          out.push_back({inv(Method::Enq, Val::nat(wl.value(k)), k), std::move(n)});
          break;
        }
        case CpAbs::A1: {  // ret-enq1 / ret-enq2
          State n = s;
          if ((s.O >> k) & 1u) n.flag[k] = kFlagComp;
          n.cp[k] = static_cast<uint8_t>(CpAbs::A2);
          out.push_back({ret(Method::Enq, k), std::move(n)});
          break;
        }
        default: break;
      }
    } else {
      switch (cp) {
        case CpAbs::None: {  // call-deq
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpAbs::R1);
          out.push_back({inv(Method::Deq, k), std::move(n)});
          break;
        }
        case CpAbs::R1: {
          // lin-deq1: one successor per minimal live enqueue.
          uint32_t mins = minimal_ops(s);
          for (uint32_t e = 1; e <= wl.num_ops(); ++e) {
            if (!((mins >> e) & 1u)) continue;
            State n = s;
            remove_from_order(n, e);
            n.rv[k] = Val::nat(wl.value(e));
            n.cp[k] = static_cast<uint8_t>(CpAbs::R2);
            out.push_back({lin(Method::Deq, Val::nat(wl.value(e)), k), std::move(n)});
          }
          // lin-deq2: enabled when every live op is pending (vacuous on empty O).
          bool all_pending = true;
          for (uint32_t e = 1; e <= wl.num_ops(); ++e) {
            if (((s.O >> e) & 1u) && s.flag[e] != kFlagPend) all_pending = false;
          }
          if (all_pending) {
            State n = s;
            n.rv[k] = Val::empty();
            n.cp[k] = static_cast<uint8_t>(CpAbs::R2);
            out.push_back({lin(Method::Deq, Val::empty(), k), std::move(n)});
          }
          break;
        }
        case CpAbs::R2: {  // ret-deq
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpAbs::R3);
          out.push_back({ret(Method::Deq, s.rv[k], k), std::move(n)});
          break;
        }
        default: break;
      }
    }
  }
}

std::string AbsQModel::repr(const State& s) const {
  std::string r = "O={";
  bool first = true;
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    if ((s.O >> k) & 1u) {
      if (!first) r += ",";
      first = false;
      r += std::to_string(k);
    }
  }
  r += "} lt={";
  first = true;
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    for (uint32_t j = 1; j <= wl.num_ops(); ++j) {
      if ((s.lt[k] >> j) & 1u) {
        if (!first) r += ",";
        first = false;
        r += std::to_string(j) + "<" + std::to_string(k);
      }
    }
  }
  r += "} flag=[";
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    if (k > 1) r += ",";
    r += std::to_string(s.flag[k]);
  }
  r += "] rv=[";
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    if (k > 1) r += ",";
    r += s.rv[k].str();
  }
  r += "] cp=[";
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    if (k > 1) r += ",";
    r += std::to_string(s.cp[k]);
  }
  return r + "]";
}

std::vector<ActionLabel> AbsQModel::call_alphabet() const {
  std::vector<ActionLabel> calls;
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    calls.push_back(wl.is_enq(k) ? inv(Method::Enq, Val::nat(wl.value(k)), k)
                                 : inv(Method::Deq, k));
  }
  return calls;
}

bool absq_state_invariants(const AbsQState& s, const QueueWorkload& wl) {
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    if ((s.lt[k] >> k) & 1u) return false;  // irreflexive
    if (s.lt[k] != 0 && !((s.O >> k) & 1u)) return false;
    if ((s.lt[k] & s.O) != s.lt[k]) return false;  // order lives on O
    // transitivity
    for (uint32_t j = 1; j <= wl.num_ops(); ++j) {
      if ((s.lt[k] >> j) & 1u) {
        if ((s.lt[j] & ~s.lt[k]) != 0) return false;
      }
    }
    // pending ops are maximal
    if (((s.O >> k) & 1u) && s.flag[k] == kFlagPend) {
      for (uint32_t j = 1; j <= wl.num_ops(); ++j) {
        if ((s.lt[j] >> k) & 1u) return false;
      }
    }
  }
  return true;
}

}  // namespace linlab

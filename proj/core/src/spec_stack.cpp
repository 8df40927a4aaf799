#include "linlab/spec_stack.hpp"

#include <set>

namespace linlab {

void StackWorkload::validate() const {
  std::set<int32_t> seen;
  for (const auto& p : pushes) {
    if (p.value < 0) throw BadConfig("push values must be naturals");
    if (!seen.insert(p.value).second) throw DuplicateValue("the same value is never added twice");
    if (p.thread >= max_threads) throw BadThreadId("push thread out of range");
  }
  for (uint32_t t : pop_threads) {
    if (t >= max_threads) throw BadThreadId("pop thread out of range");
  }
  if (num_ops() > 31) throw BadConfig("at most 31 operations per workload");
  if (max_threads == 0) throw BadConfig("maxThreads must be positive");
}

AbsS0Model::State AbsS0Model::initial() const {
  State s;
  s.cp.assign(wl.num_ops() + 1, static_cast<uint8_t>(CpQ0::None));
  s.rv.assign(wl.num_ops() + 1, Val{});
  return s;
}

void AbsS0Model::successors(const State& s,
                            std::vector<std::pair<ActionLabel, State>>& out) const {
  out.clear();
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    CpQ0 cp = static_cast<CpQ0>(s.cp[k]);
    if (wl.is_push(k)) {
      Val d = Val::nat(wl.value(k));
      switch (cp) {
        case CpQ0::None: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpQ0::A1);
          out.push_back({inv(Method::Push, d, k), std::move(n)});
          break;
        }
        case CpQ0::A1: {
          State n = s;
          n.sigma.insert(n.sigma.begin(), wl.value(k));
          n.cp[k] = static_cast<uint8_t>(CpQ0::AMid);
          out.push_back({lin(Method::Push, d, k), std::move(n)});
          break;
        }
        case CpQ0::AMid: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpQ0::A2);
          out.push_back({ret(Method::Push, k), std::move(n)});
          break;
        }
        default: break;
      }
    } else {
      switch (cp) {
        case CpQ0::None: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpQ0::R1);
          out.push_back({inv(Method::Pop, k), std::move(n)});
          break;
        }
        case CpQ0::R1: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpQ0::R2);
          if (s.sigma.empty()) {
            n.rv[k] = Val::empty();
            out.push_back({lin(Method::Pop, Val::empty(), k), std::move(n)});
          } else {
            int32_t d = n.sigma.front();
            n.sigma.erase(n.sigma.begin());
            n.rv[k] = Val::nat(d);
            out.push_back({lin(Method::Pop, Val::nat(d), k), std::move(n)});
          }
          break;
        }
        case CpQ0::R2: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpQ0::R3);
          out.push_back({ret(Method::Pop, s.rv[k], k), std::move(n)});
          break;
        }
        default: break;
      }
    }
  }
}

std::string AbsS0Model::repr(const State& s) const {
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

std::vector<ActionLabel> AbsS0Model::call_alphabet() const {
  std::vector<ActionLabel> calls;
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    calls.push_back(wl.is_push(k) ? inv(Method::Push, Val::nat(wl.value(k)), k)
                                  : inv(Method::Pop, k));
  }
  return calls;
}

uint64_t AbsSState::hash() const {
  Hasher h;
  h.add(O);
  for (uint32_t m : lt) h.add(m);
  for (uint8_t f : flag) h.add(f);
  for (Val v : rv) h.add(v.raw());
  for (uint8_t c : cp) h.add(c);
  for (uint32_t m : be) h.add(m);
  for (uint32_t m : ov) h.add(m);
  return h.value();
}

AbsSModel::State AbsSModel::initial() const {
  State s;
  uint32_t n = wl.num_ops() + 1;
  s.lt.assign(n, 0);
  s.flag.assign(n, 0);
  s.rv.assign(n, Val{});
  s.cp.assign(n, static_cast<uint8_t>(CpAbs::None));
  s.be.assign(n, 0);
  s.ov.assign(n, 0);
  return s;
}

uint32_t pending_ops(const AbsSState& s, uint32_t num_ops) {
  uint32_t m = 0;
  for (uint32_t k = 1; k <= num_ops; ++k) {
    if (((s.O >> k) & 1u) && s.flag[k] == kFlagPend) m |= 1u << k;
  }
  return m;
}

uint32_t max_completed(const AbsSState& s, uint32_t num_ops) {
  // "Greatest completed" ops: completed, and anything strictly above them is
  // pending. Matches the update examples for be and the frontier reading.
  uint32_t m = 0;
  for (uint32_t k = 1; k <= num_ops; ++k) {
    if (!((s.O >> k) & 1u) || s.flag[k] != kFlagComp) continue;
    bool maximal = true;
    for (uint32_t j = 1; j <= num_ops; ++j) {
      if (((s.O >> j) & 1u) && ((s.lt[j] >> k) & 1u) && s.flag[j] == kFlagComp) {
        maximal = false;
        break;
      }
    }
    if (maximal) m |= 1u << k;
  }
  return m;
}

uint32_t immediate_preds(const std::vector<uint32_t>& lt, uint32_t k) {
  uint32_t below = lt[k];
  uint32_t imm = 0;
  for (uint32_t j = 1; j < lt.size(); ++j) {
    if (!((below >> j) & 1u)) continue;
    // j is immediate unless some m sits between j and k.
    bool covered = false;
    for (uint32_t m = 1; m < lt.size(); ++m) {
      if (((below >> m) & 1u) && ((lt[m] >> j) & 1u)) {
        covered = true;
        break;
      }
    }
    if (!covered) imm |= 1u << j;
  }
  return imm;
}

uint32_t derived_be(const AbsSState& s, uint32_t pop, uint32_t num_ops) {
  // Maximal live pushes the pop cannot skip. Pending pushes always sit in
  // ov, so candidates are completed.
  uint32_t cand = s.O & ~s.ov[pop];
  uint32_t out = 0;
  for (uint32_t k2 = 1; k2 <= num_ops; ++k2) {
    if (!((cand >> k2) & 1u)) continue;
    bool dominated = false;
    for (uint32_t k3 = 1; k3 <= num_ops; ++k3) {
      if (((cand >> k3) & 1u) && ((s.lt[k3] >> k2) & 1u)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out |= 1u << k2;
  }
  return out;
}

void recompute_be(AbsSState& s, uint32_t removed, uint32_t remover, uint32_t num_ops) {
  // The remover's pop takes `removed` as the top of the stack, so every
  // completed push it cannot skip is pinned below the removed one. The pinned
  // order persists transitively and turns pinned-below pushes into
  // must-precede pushes for the other pops.
  uint32_t add_below = 0;
  for (uint32_t c = 1; c <= num_ops; ++c) {
    if (c == removed || !((s.O >> c) & 1u)) continue;
    if ((s.ov[remover] >> c) & 1u) continue;
    bool comparable = ((s.lt[removed] >> c) & 1u) || ((s.lt[c] >> removed) & 1u);
    if (!comparable) add_below |= (1u << c) | s.lt[c];
  }
  if (add_below) {
    s.lt[removed] |= add_below;
    for (uint32_t x = 1; x <= num_ops; ++x) {
      if ((s.lt[x] >> removed) & 1u) s.lt[x] |= add_below;
    }
  }

  // Overlap sets lose every push now forced below a must-precede push.
  for (uint32_t p = 1; p <= num_ops; ++p) {
    if (static_cast<CpAbs>(s.cp[p]) != CpAbs::R1) continue;
    bool changed = true;
    while (changed) {
      changed = false;
      uint32_t must = s.O & ~s.ov[p];
      for (uint32_t k2 = 1; k2 <= num_ops; ++k2) {
        if (!((s.ov[p] >> k2) & 1u) || !((s.O >> k2) & 1u)) continue;
        for (uint32_t x = 1; x <= num_ops; ++x) {
          if (((must >> x) & 1u) && ((s.lt[x] >> k2) & 1u)) {
            s.ov[p] &= ~(1u << k2);
            changed = true;
            break;
          }
        }
      }
    }
  }

  s.O &= ~(1u << removed);
  s.lt[removed] = 0;
  for (auto& m : s.lt) m &= ~(1u << removed);

  for (uint32_t p = 1; p <= num_ops; ++p) {
    if (static_cast<CpAbs>(s.cp[p]) == CpAbs::R1) s.be[p] = derived_be(s, p, num_ops);
  }
}

namespace {

void order_after_completed(AbsSState& s, uint32_t k, uint32_t num_ops) {
  uint32_t below = 0;
  for (uint32_t c = 1; c <= num_ops; ++c) {
    if (((s.O >> c) & 1u) && s.flag[c] == kFlagComp) below |= (1u << c) | s.lt[c];
  }
  s.lt[k] = below;
}

}  // namespace

void AbsSModel::successors(const State& s,
                           std::vector<std::pair<ActionLabel, State>>& out) const {
  out.clear();
  uint32_t n_ops = wl.num_ops();
  for (uint32_t k = 1; k <= n_ops; ++k) {
    CpAbs cp = static_cast<CpAbs>(s.cp[k]);
    if (wl.is_push(k)) {
      switch (cp) {
        case CpAbs::None: {  // call-push
          State n = s;
          n.O |= 1u << k;
          order_after_completed(n, k, n_ops);
          n.flag[k] = kFlagPend;
          n.cp[k] = static_cast<uint8_t>(CpAbs::A1);
          // The new push overlaps every uncommitted pop. Pops that already
          // committed never consult ov again; leaving theirs untouched keeps
          // states canonical.
          for (uint32_t p = 1; p <= n_ops; ++p) {
            if (wl.is_pop(p) && static_cast<CpAbs>(s.cp[p]) == CpAbs::R1) n.ov[p] |= 1u << k;
          }
          out.push_back({inv(Method::Push, Val::nat(wl.value(k)), k), std::move(n)});
          break;
        }
        case CpAbs::A1: {  // ret-push1 / ret-push2
          State n = s;
          if ((s.O >> k) & 1u) n.flag[k] = kFlagComp;
          n.cp[k] = static_cast<uint8_t>(CpAbs::A2);
          out.push_back({ret(Method::Push, k), std::move(n)});
          break;
        }
        default: break;
      }
    } else {
      switch (cp) {
        case CpAbs::None: {  // call-pop
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpAbs::R1);
          n.be[k] = max_completed(s, n_ops);
          n.ov[k] = pending_ops(s, n_ops);
          out.push_back({inv(Method::Pop, k), std::move(n)});
          break;
        }
        case CpAbs::R1: {
          // com-pop1: remove a live push from be(k) ∪ ov(k) and rebuild the
          // frontier sets of the still-uncommitted pops.
          uint32_t candidates = (s.be[k] | s.ov[k]) & s.O;
          for (uint32_t e = 1; e <= n_ops; ++e) {
            if (!((candidates >> e) & 1u)) continue;
            State n = s;
            recompute_be(n, e, k, n_ops);
            n.rv[k] = Val::nat(wl.value(e));
            n.cp[k] = static_cast<uint8_t>(CpAbs::R2);
            n.be[k] = 0;  // committed pops never consult their frontiers again
            n.ov[k] = 0;
            out.push_back({com(Method::Pop, Val::nat(wl.value(e)), k), std::move(n)});
          }
          // com-pop2: every push the pop cannot skip has been removed.
          if ((s.be[k] & s.O) == 0) {
            State n = s;
            n.rv[k] = Val::empty();
            n.cp[k] = static_cast<uint8_t>(CpAbs::R2);
            n.be[k] = 0;
            n.ov[k] = 0;
            out.push_back({com(Method::Pop, Val::empty(), k), std::move(n)});
          }
          break;
        }
        case CpAbs::R2: {  // ret-pop
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpAbs::R3);
          out.push_back({ret(Method::Pop, s.rv[k], k), std::move(n)});
          break;
        }
        default: break;
      }
    }
  }
}

std::string AbsSModel::repr(const State& s) const {
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
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) r += std::to_string(s.flag[k]);
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
  r += "] be/ov=[";
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    if (!wl.is_pop(k) || static_cast<CpAbs>(s.cp[k]) == CpAbs::None) continue;
    r += std::to_string(k) + ":" + std::to_string(s.be[k]) + "/" + std::to_string(s.ov[k]) + " ";
  }
  return r + "]";
}

std::vector<ActionLabel> AbsSModel::call_alphabet() const {
  std::vector<ActionLabel> calls;
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    calls.push_back(wl.is_push(k) ? inv(Method::Push, Val::nat(wl.value(k)), k)
                                  : inv(Method::Pop, k));
  }
  return calls;
}

bool abss_state_invariants(const AbsSState& s, const StackWorkload& wl) {
  uint32_t n_ops = wl.num_ops();
  for (uint32_t k = 1; k <= n_ops; ++k) {
    if ((s.lt[k] >> k) & 1u) return false;
    if ((s.lt[k] & s.O) != s.lt[k]) return false;
    for (uint32_t j = 1; j <= n_ops; ++j) {
      if (((s.lt[k] >> j) & 1u) && (s.lt[j] & ~s.lt[k]) != 0) return false;
    }
    if (((s.O >> k) & 1u) && s.flag[k] == kFlagPend) {
      for (uint32_t j = 1; j <= n_ops; ++j) {
        if ((s.lt[j] >> k) & 1u) return false;
      }
    }
  }
  // Frontier-set invariants of uncommitted pops: be is exactly the derived
  // frontier, disjoint from ov, and no be member has a predecessor still in
  // either set.
  for (uint32_t p = 1; p <= n_ops; ++p) {
    if (!wl.is_pop(p) || static_cast<CpAbs>(s.cp[p]) != CpAbs::R1) continue;
    if (s.be[p] != derived_be(s, p, n_ops)) return false;
    if ((s.be[p] & s.ov[p]) != 0) return false;
    for (uint32_t k2 = 1; k2 <= n_ops; ++k2) {
      if (!((s.be[p] >> k2) & 1u) || !((s.O >> k2) & 1u)) continue;
      uint32_t below = s.lt[k2];
      if ((below & (s.be[p] | s.ov[p]) & s.O) != 0) return false;
    }
  }
  return true;
}

}  // namespace linlab

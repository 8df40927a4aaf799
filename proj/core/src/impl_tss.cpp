#include "linlab/impl_tss.hpp"

namespace linlab {

uint64_t TssState::hash() const {
  Hasher h;
  h.add(ts_counter);
  for (int16_t p : pools) h.add(static_cast<int32_t>(p));
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!node_live[i]) {
      h.add(0xdeadu);
      continue;
    }
    h.add(static_cast<int32_t>(nodes[i].data));
    h.add(static_cast<int32_t>(nodes[i].ts));
    h.add(static_cast<int32_t>(nodes[i].next));
    h.add(nodes[i].taken);
  }
  for (uint8_t c : cp) h.add(c);
  for (int16_t v : push_i) h.add(static_cast<int32_t>(v));
  for (uint8_t v : pop_success) h.add(v);
  for (int16_t v : pop_maxts) h.add(static_cast<int32_t>(v));
  for (int16_t v : pop_youngest) h.add(static_cast<int32_t>(v));
  for (int16_t v : pop_n) h.add(static_cast<int32_t>(v));
  for (int16_t v : pop_i) h.add(static_cast<int32_t>(v));
  return h.value();
}

TssModel make_tss(StackWorkload wl, TssVariant variant, bool strict_push4,
                  bool strict_retpop) {
  wl.validate();
  return TssModel{std::move(wl), variant, strict_push4, strict_retpop};
}

const TssNode& TssModel::node_at(const TssState& s, int16_t ref) const {
  static const TssNode sentinel{-1 /*data*/, -1 /*ts*/, 0, 0};
  if (is_sentinel(ref)) {
    // Sentinels are immutable: ts -1, never taken, next = self.
    return sentinel;
  }
  return s.nodes[ref - wl.max_threads];
}

namespace {

bool sentinel_ref(const TssModel& m, int16_t ref) { return m.is_sentinel(ref); }

int16_t node_next(const TssModel& m, const TssState& s, int16_t ref) {
  if (sentinel_ref(m, ref)) return ref;  // sentinel points to itself
  return s.nodes[ref - m.wl.max_threads].next;
}

}  // namespace

TssModel::State TssModel::initial() const {
  State s;
  uint32_t n = wl.num_ops() + 1;
  s.pools.resize(wl.max_threads);
  for (uint32_t t = 0; t < wl.max_threads; ++t) s.pools[t] = static_cast<int16_t>(t);
  s.nodes.assign(wl.pushes.size(), TssNode{});
  s.node_live.assign(wl.pushes.size(), 0);
  s.cp.assign(n, static_cast<uint8_t>(CpTss::None));
  s.push_i.assign(n, TssState::kUnset);
  s.pop_success.assign(n, 0xff);
  s.pop_maxts.assign(n, TssState::kUnset);
  s.pop_youngest.assign(n, TssState::kUnset);
  s.pop_n.assign(n, TssState::kUnset);
  s.pop_i.assign(n, TssState::kUnset);
  return s;
}

void TssModel::successors(const State& s,
                          std::vector<std::pair<ActionLabel, State>>& out) const {
  out.clear();
  uint32_t n_ops = wl.num_ops();

  auto thread_busy = [&](uint32_t thread) {
    // myTID is unique among pending operations: one live op per thread.
    for (uint32_t j = 1; j <= n_ops; ++j) {
      CpTss c = static_cast<CpTss>(s.cp[j]);
      if (c == CpTss::None || c == CpTss::PA6 || c == CpTss::R7) continue;
      if (wl.thread(j) == thread) return true;
    }
    return false;
  };

  for (uint32_t k = 1; k <= n_ops; ++k) {
    CpTss cp = static_cast<CpTss>(s.cp[k]);
    uint32_t tid = wl.thread(k);
    if (wl.is_push(k)) {
      switch (cp) {
        case CpTss::None: {
          if (thread_busy(tid)) break;
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpTss::PA1);
          out.push_back({inv(Method::Push, Val::nat(wl.value(k)), k), std::move(n)});
          break;
        }
        case CpTss::PA1: {  // n = new Node(x, MAX_INT, null, false)
          State n = s;
          n.nodes[k - 1] = TssNode{static_cast<int16_t>(wl.value(k)), TssState::kTsMax,
                                   TssState::kNullRef, 0};
          n.node_live[k - 1] = 1;
          n.cp[k] = static_cast<uint8_t>(CpTss::PA2);
          out.push_back({internal(Method::Push, k, "push1"), std::move(n)});
          break;
        }
        case CpTss::PA2: {  // n->next = pools[myTID]; pools[myTID] = n
          State n = s;
          n.nodes[k - 1].next = n.pools[tid];
          n.pools[tid] = node_ref(k);
          n.cp[k] = static_cast<uint8_t>(CpTss::PA3);
          out.push_back({internal(Method::Push, k, "push2"), std::move(n)});
          break;
        }
        case CpTss::PA3: {  // i = TS++
          State n = s;
          n.push_i[k] = n.ts_counter++;
          n.cp[k] = static_cast<uint8_t>(CpTss::PA4);
          out.push_back({internal(Method::Push, k, "push3"), std::move(n)});
          break;
        }
        case CpTss::PA4: {  // n->ts = i
          if (strict_push4) {
            bool enabled = true;
            for (uint32_t j = 1; j <= n_ops; ++j) {
              if (wl.is_push(j) && static_cast<CpTss>(s.cp[j]) == CpTss::PA6 &&
                  !(s.push_i[j] < s.push_i[k])) {
                enabled = false;
              }
            }
            if (!enabled) break;
          }
          State n = s;
          n.nodes[k - 1].ts = s.push_i[k];
          n.cp[k] = static_cast<uint8_t>(CpTss::PA5);
          out.push_back({internal(Method::Push, k, "push4"), std::move(n)});
          break;
        }
        case CpTss::PA5: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpTss::PA6);
          out.push_back({ret(Method::Push, k), std::move(n)});
          break;
        }
        default: break;
      }
      continue;
    }

    switch (cp) {
      case CpTss::None: {
        if (thread_busy(tid)) break;
        State n = s;
        n.cp[k] = static_cast<uint8_t>(CpTss::R1);
        out.push_back({inv(Method::Pop, k), std::move(n)});
        break;
      }
      case CpTss::R1: {  // success=false; maxTS=-1; youngest=null; i=0
        if (wl.max_threads == 0) break;
        State n = s;
        n.pop_success[k] = 0;
        n.pop_maxts[k] = -1;
        n.pop_youngest[k] = TssState::kNullRef;
        n.pop_i[k] = 0;
        n.cp[k] = static_cast<uint8_t>(CpTss::R2);
        out.push_back({internal(Method::Pop, k, "pop1"), std::move(n)});
        break;
      }
      case CpTss::R2: {  // n = pools[i]
        State n = s;
        n.pop_n[k] = s.pools[s.pop_i[k]];
        n.cp[k] = static_cast<uint8_t>(CpTss::R3);
        out.push_back({internal(Method::Pop, k, "pop2"), std::move(n)});
        break;
      }
      case CpTss::R3: {
        int16_t ref = s.pop_n[k];
        const TssNode& node = node_at(s, ref);
        bool self_loop = node_next(*this, s, ref) == ref;
        if (node.taken && !self_loop) {  // pop3: skip a taken node
          State n = s;
          n.pop_n[k] = node_next(*this, s, ref);
          out.push_back({internal(Method::Pop, k, "pop3"), std::move(n)});
        } else if (!node.taken && node.ts > s.pop_maxts[k]) {  // pop4
          State n = s;
          n.pop_maxts[k] = node.ts;
          n.cp[k] = static_cast<uint8_t>(CpTss::R4);
          out.push_back({internal(Method::Pop, k, "pop4"), std::move(n)});
        } else if (!node.taken) {  // pop6
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpTss::R5);
          out.push_back({internal(Method::Pop, k, "pop6"), std::move(n)});
        }
        // taken with next == self cannot happen: sentinels are never taken.
        break;
      }
      case CpTss::R4: {  // pop5: youngest = n
        State n = s;
        n.pop_youngest[k] = s.pop_n[k];
        n.cp[k] = static_cast<uint8_t>(CpTss::R5);
        out.push_back({internal(Method::Pop, k, "pop5"), std::move(n)});
        break;
      }
      case CpTss::R5: {
        if (s.pop_i[k] < static_cast<int16_t>(wl.max_threads) - 1) {  // pop7: i++
          State n = s;
          n.pop_i[k] = static_cast<int16_t>(s.pop_i[k] + 1);
          n.pop_n[k] = TssState::kUnset;  // iteration-scoped
          n.cp[k] = static_cast<uint8_t>(CpTss::R2);
          out.push_back({internal(Method::Pop, k, "pop7"), std::move(n)});
          break;
        }
        // The traversal is done; i and n go out of scope.
        int16_t y = s.pop_youngest[k];
        bool cas_possible = y != TssState::kNullRef && !node_at(s, y).taken;
        if (!cas_possible) {  // pop8: success = false (null youngest or lost CAS)
          State n = s;
          n.pop_success[k] = 0;
          n.pop_i[k] = TssState::kUnset;
          n.pop_n[k] = TssState::kUnset;
          n.cp[k] = static_cast<uint8_t>(CpTss::R6);
          out.push_back({internal(Method::Pop, k, "pop8"), std::move(n)});
          break;
        }
        if (variant == TssVariant::NoCas) {
          // Mutant: observe taken == false now, write later.
          State n = s;
          n.pop_i[k] = TssState::kUnset;
          n.pop_n[k] = TssState::kUnset;
          n.cp[k] = static_cast<uint8_t>(CpTss::R6c);
          out.push_back({internal(Method::Pop, k, "cas_read"), std::move(n)});
          break;
        }
        State n = s;  // com-pop: successful CAS on youngest->taken
        n.nodes[y - wl.max_threads].taken = 1;
        n.pop_success[k] = 1;
        n.pop_i[k] = TssState::kUnset;
        n.pop_n[k] = TssState::kUnset;
        n.cp[k] = static_cast<uint8_t>(CpTss::R6);
        out.push_back(
            {com(Method::Pop, Val::nat(node_at(s, y).data), k), std::move(n)});
        break;
      }
      case CpTss::R6c: {  // mutant: blind taken = true
        int16_t y = s.pop_youngest[k];
        State n = s;
        n.nodes[y - wl.max_threads].taken = 1;
        n.pop_success[k] = 1;
        n.cp[k] = static_cast<uint8_t>(CpTss::R6);
        out.push_back({com(Method::Pop, Val::nat(node_at(s, y).data), k), std::move(n)});
        break;
      }
      case CpTss::R6: {
        if (s.pop_success[k] == 0) {  // pop9: retry
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpTss::R1);
          out.push_back({internal(Method::Pop, k, "pop9"), std::move(n)});
        }
        bool ret_enabled = strict_retpop ? s.pop_success[k] == 0 : s.pop_success[k] == 1;
        if (ret_enabled && s.pop_youngest[k] != TssState::kNullRef) {  // ret-pop
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpTss::R7);
          out.push_back({ret(Method::Pop, Val::nat(node_at(s, s.pop_youngest[k]).data), k),
                         std::move(n)});
        }
        break;
      }
      default: break;
    }
  }
}

std::string TssModel::repr(const State& s) const {
  auto ref_str = [&](int16_t r) {
    if (r == TssState::kUnset) return std::string("?");
    if (r == TssState::kNullRef) return std::string("null");
    if (is_sentinel(r)) return "s" + std::to_string(r);
    return "n" + std::to_string(push_of_ref(r));
  };
  std::string r = "TS=" + std::to_string(s.ts_counter) + " pools=[";
  for (size_t t = 0; t < s.pools.size(); ++t) {
    if (t) r += ",";
    r += ref_str(s.pools[t]);
  }
  r += "] nodes{";
  for (size_t j = 0; j < s.nodes.size(); ++j) {
    if (!s.node_live[j]) continue;
    const TssNode& n = s.nodes[j];
    r += " n" + std::to_string(j + 1) + "=(" + std::to_string(n.data) + "," +
         (n.ts == TssState::kTsMax ? std::string("MAX") : std::to_string(n.ts)) + "," +
         ref_str(n.next) + "," + (n.taken ? "T" : "F") + ")";
  }
  r += " } ops{";
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    r += " " + std::to_string(k) + ":cp" + std::to_string(s.cp[k]);
    if (wl.is_pop(k)) {
      r += ",y=" + ref_str(s.pop_youngest[k]) + ",n=" + ref_str(s.pop_n[k]);
      if (s.pop_i[k] != TssState::kUnset) r += ",i=" + std::to_string(s.pop_i[k]);
      if (s.pop_maxts[k] != TssState::kUnset) r += ",mts=" + std::to_string(s.pop_maxts[k]);
      if (s.pop_success[k] != 0xff) r += ",suc=" + std::to_string(s.pop_success[k]);
    }
  }
  return r + " }";
}

std::vector<ActionLabel> TssModel::call_alphabet() const {
  std::vector<ActionLabel> calls;
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    calls.push_back(wl.is_push(k) ? inv(Method::Push, Val::nat(wl.value(k)), k)
                                  : inv(Method::Pop, k));
  }
  return calls;
}

bool traverse_before(const TssModel& m, const TssState& s, uint32_t k1, uint32_t k2) {
  auto inserted = [&](uint32_t k) {
    CpTss c = static_cast<CpTss>(s.cp[k]);
    return c >= CpTss::PA3 && c <= CpTss::PA6;
  };
  if (!m.wl.is_push(k1) || !m.wl.is_push(k2) || !inserted(k1) || !inserted(k2)) {
    throw NodeNotInserted("traverse_before needs two pushes with inserted nodes");
  }
  if (k1 == k2) return false;
  uint32_t t1 = m.wl.thread(k1), t2 = m.wl.thread(k2);
  if (t1 != t2) return t1 < t2;
  // Same pool: k2's node must be reachable from k1's via next.
  int16_t cur = m.node_at(s, m.node_ref(k1)).next;
  int16_t target = m.node_ref(k2);
  while (true) {
    if (cur == target) return true;
    if (m.is_sentinel(cur) || cur == TssState::kNullRef) return false;
    cur = m.node_at(s, cur).next;
  }
}

}  // namespace linlab

#include "linlab/impl_hwq.hpp"

namespace linlab {

uint64_t HwqState::hash() const {
  Hasher h;
  h.add(back);
  for (int16_t v : items) h.add(static_cast<int32_t>(v));
  for (uint8_t c : cp) h.add(c);
  for (int16_t v : enq_i) h.add(static_cast<int32_t>(v));
  for (int16_t v : deq_i) h.add(static_cast<int32_t>(v));
  for (int16_t v : deq_range) h.add(static_cast<int32_t>(v));
  for (int16_t v : deq_x) h.add(static_cast<int32_t>(v));
  return h.value();
}

HwqModel make_hwq(QueueWorkload wl, HwqVariant variant) {
  wl.validate();
  return HwqModel{std::move(wl), variant};
}

HwqModel::State HwqModel::initial() const {
  State s;
  uint32_t n = wl.num_ops() + 1;
  s.items.assign(wl.enqs.size(), HwqState::kNull);
  s.cp.assign(n, static_cast<uint8_t>(CpHwq::None));
  s.enq_i.assign(n, HwqState::kUnset);
  s.deq_i.assign(n, HwqState::kUnset);
  s.deq_range.assign(n, HwqState::kUnset);
  s.deq_x.assign(n, HwqState::kUnset);
  return s;
}

bool if_inc(const HwqState& s, const QueueWorkload& wl, uint32_t op) {
  if (!wl.is_deq(op)) throw NotADequeue("if_inc is defined for dequeues only");
  CpHwq cp = static_cast<CpHwq>(s.cp[op]);
  if (cp == CpHwq::DInc) return true;
  return cp == CpHwq::DCheck && s.deq_x[op] == HwqState::kNull;
}

void HwqModel::successors(const State& s,
                          std::vector<std::pair<ActionLabel, State>>& out) const {
  out.clear();
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    CpHwq cp = static_cast<CpHwq>(s.cp[k]);
    if (wl.is_enq(k)) {
      switch (cp) {
        case CpHwq::None: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpHwq::E1);
          out.push_back({inv(Method::Enq, Val::nat(wl.value(k)), k), std::move(n)});
          break;
        }
        case CpHwq::E1: {  // i = back++
          State n = s;
          n.enq_i[k] = n.back++;
          n.cp[k] = static_cast<uint8_t>(CpHwq::E2);
          out.push_back({internal(Method::Enq, k, "reserve"), std::move(n)});
          break;
        }
        case CpHwq::E2: {  // items[i] = x
          State n = s;
          n.items[n.enq_i[k]] = static_cast<int16_t>(wl.value(k));
          n.cp[k] = static_cast<uint8_t>(CpHwq::EDone);
          out.push_back({internal(Method::Enq, k, "store"), std::move(n)});
          break;
        }
        case CpHwq::EDone: {
          State n = s;
          n.cp[k] = static_cast<uint8_t>(CpHwq::ERet);
          out.push_back({ret(Method::Enq, k), std::move(n)});
          break;
        }
        default: break;
      }
      continue;
    }
    switch (cp) {
      case CpHwq::None: {
        State n = s;
        n.cp[k] = static_cast<uint8_t>(CpHwq::DRange);
        out.push_back({inv(Method::Deq, k), std::move(n)});
        break;
      }
      case CpHwq::DRange: {  // range = back - 1
        State n = s;
        n.deq_range[k] = static_cast<int16_t>(n.back) - 1;
        n.cp[k] = static_cast<uint8_t>(CpHwq::DI0);
        out.push_back({internal(Method::Deq, k, "range"), std::move(n)});
        break;
      }
      case CpHwq::DI0: {  // i = 0; the loop test reads locals only
        State n = s;
        if (0 <= n.deq_range[k]) {
          n.deq_i[k] = 0;
          n.cp[k] = static_cast<uint8_t>(CpHwq::DSwap);
        } else {
          n.deq_i[k] = HwqState::kUnset;  // loop never entered; i out of scope
          n.cp[k] = static_cast<uint8_t>(CpHwq::DRange);
        }
        out.push_back({internal(Method::Deq, k, "i0"), std::move(n)});
        break;
      }
      case CpHwq::DSwap: {
        State n = s;
        int16_t cell = s.items[s.deq_i[k]];
        if (variant == HwqVariant::SplitSwap) {
          // Mutant: the read alone; the null-write is a separate step.
          n.deq_x[k] = cell;
          n.cp[k] = static_cast<uint8_t>(CpHwq::DSwapW);
          out.push_back({internal(Method::Deq, k, "read"), std::move(n)});
          break;
        }
        n.deq_x[k] = cell;
        n.cp[k] = static_cast<uint8_t>(CpHwq::DCheck);
        if (variant == HwqVariant::Standard) n.items[s.deq_i[k]] = HwqState::kNull;
        if (cell != HwqState::kNull) {
          out.push_back({lin(Method::Deq, Val::nat(cell), k), std::move(n)});
        } else {
          const char* detail = variant == HwqVariant::NoNull ? "read_null" : "swap_null";
          out.push_back({internal(Method::Deq, k, detail), std::move(n)});
        }
        break;
      }
      case CpHwq::DSwapW: {  // mutant: items[i] = null after the read
        State n = s;
        n.items[s.deq_i[k]] = HwqState::kNull;
        n.cp[k] = static_cast<uint8_t>(CpHwq::DCheck);
        int16_t x = s.deq_x[k];
        if (x != HwqState::kNull) {
          out.push_back({lin(Method::Deq, Val::nat(x), k), std::move(n)});
        } else {
          out.push_back({internal(Method::Deq, k, "write_null"), std::move(n)});
        }
        break;
      }
      case CpHwq::DCheck: {  // if (x != null) return x
        State n = s;
        n.cp[k] = static_cast<uint8_t>(s.deq_x[k] != HwqState::kNull ? CpHwq::DDone
                                                                     : CpHwq::DInc);
        out.push_back({internal(Method::Deq, k, "check"), std::move(n)});
        break;
      }
      case CpHwq::DInc: {  // i++; leave the loop when i > range
        State n = s;
        int16_t next = static_cast<int16_t>(s.deq_i[k] + 1);
        if (next <= s.deq_range[k]) {
          n.deq_i[k] = next;
          n.cp[k] = static_cast<uint8_t>(CpHwq::DSwap);
        } else {
          n.deq_i[k] = HwqState::kUnset;
          n.cp[k] = static_cast<uint8_t>(CpHwq::DRange);
        }
        out.push_back({internal(Method::Deq, k, "inc"), std::move(n)});
        break;
      }
      case CpHwq::DDone: {
        State n = s;
        n.cp[k] = static_cast<uint8_t>(CpHwq::DRet);
        out.push_back({ret(Method::Deq, Val::nat(s.deq_x[k]), k), std::move(n)});
        break;
      }
      default: break;
    }
  }
}

std::string HwqModel::repr(const State& s) const {
  auto cell = [](int16_t v) {
    if (v == HwqState::kUnset) return std::string("?");
    if (v == HwqState::kNull) return std::string("null");
    return std::to_string(v);
  };
  std::string r = "back=" + std::to_string(s.back) + " items=[";
  for (size_t i = 0; i < s.items.size(); ++i) {
    if (i) r += ",";
    r += cell(s.items[i]);
  }
  r += "] ops{";
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    r += " " + std::to_string(k) + ":cp" + std::to_string(s.cp[k]);
    if (wl.is_enq(k)) {
      r += ",i=" + cell(s.enq_i[k]);
    } else {
      r += ",i=" + cell(s.deq_i[k]) + ",rg=" + cell(s.deq_range[k]) + ",x=" + cell(s.deq_x[k]);
    }
  }
  return r + " }";
}

std::vector<ActionLabel> HwqModel::call_alphabet() const {
  std::vector<ActionLabel> calls;
  for (uint32_t k = 1; k <= wl.num_ops(); ++k) {
    calls.push_back(wl.is_enq(k) ? inv(Method::Enq, Val::nat(wl.value(k)), k)
                                 : inv(Method::Deq, k));
  }
  return calls;
}

}  // namespace linlab

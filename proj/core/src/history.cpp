#include "linlab/history.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace linlab {

std::string History::str() const {
  std::string out;
  for (size_t i = 0; i < events.size(); ++i) {
    if (i) out += " ";
    out += events[i].str();
  }
  return out;
}

bool is_well_formed(std::span<const ActionLabel> events) {
  std::unordered_map<uint32_t, int> calls, rets;
  for (size_t i = 0; i < events.size(); ++i) {
    const ActionLabel& a = events[i];
    if (a.is_call()) {
      if (calls.count(a.op)) return false;
      calls[a.op] = static_cast<int>(i);
    } else if (a.is_ret()) {
      if (rets.count(a.op)) return false;
      auto it = calls.find(a.op);
      if (it == calls.end()) return false;  // return without an earlier call
      rets[a.op] = static_cast<int>(i);
    }
  }
  return true;
}

namespace {

struct OpEvents {
  const ActionLabel* call = nullptr;
  const ActionLabel* ret = nullptr;
  int call_idx = -1;
  int ret_idx = -1;
};

std::map<uint32_t, OpEvents> index_ops(const History& h) {
  std::map<uint32_t, OpEvents> ops;
  for (size_t i = 0; i < h.events.size(); ++i) {
    const ActionLabel& a = h.events[i];
    auto& e = ops[a.op];
    if (a.is_call()) {
      e.call = &a;
      e.call_idx = static_cast<int>(i);
    } else if (a.is_ret()) {
      e.ret = &a;
      e.ret_idx = static_cast<int>(i);
    }
  }
  return ops;
}

}  // namespace

bool weaker_than(const History& h1, const History& h2) {
  auto ops1 = index_ops(h1);
  auto ops2 = index_ops(h2);

  for (auto& [op, e2] : ops2) {
    auto it = ops1.find(op);
    if (it == ops1.end()) return false;  // h2 cannot invent operations
    const OpEvents& e1 = it->second;
    if (!e1.call || !e2.call || *e1.call != *e2.call) return false;
    if (e1.ret) {
      if (!e2.ret || *e1.ret != *e2.ret) return false;
    } else if (e2.ret) {
      // Appended return for a pending op; the method has to match the call.
      if (e2.ret->method != e1.call->method) return false;
    }
  }
  for (auto& [op, e1] : ops1) {
    if (!ops2.count(op) && e1.ret) return false;  // only pending calls may be deleted
  }

  // Return-before-call orderings of h1' must survive in h2. Appended returns
  // sit at the end of h1', so only h1's own returns constrain anything.
  for (auto& [op_r, er] : ops1) {
    if (er.ret_idx < 0 || !ops2.count(op_r)) continue;
    for (auto& [op_c, ec] : ops1) {
      if (!ops2.count(op_c)) continue;
      if (er.ret_idx < ec.call_idx &&
          !(ops2[op_r].ret_idx < ops2[op_c].call_idx)) {
        return false;
      }
    }
  }
  return true;
}

Val SequentialSpec::step(std::vector<int32_t>& collection, Method m, Val input) const {
  if (m == add_method()) {
    collection.push_back(input.nat_value());
    return Val{};
  }
  if (collection.empty()) return Val::empty();
  if (kind == Kind::Queue) {
    int32_t v = collection.front();
    collection.erase(collection.begin());
    return Val::nat(v);
  }
  int32_t v = collection.back();
  collection.pop_back();
  return Val::nat(v);
}

namespace {

struct OracleOp {
  uint32_t id;
  Method method;
  Val input;
  Val output;       // return value when completed
  bool completed;
  int call_idx;
  int ret_idx;      // -1 when pending
};

struct OracleSearch {
  const SequentialSpec& spec;
  std::vector<OracleOp> ops;
  std::vector<uint32_t> preds;        // bitmask per op: must-run-before ops
  std::vector<size_t> schedule;
  std::vector<Val> outputs;           // replayed value per scheduled op
  uint32_t done_mask = 0;
  uint32_t completed_mask = 0;
  std::vector<int32_t> collection;

  bool find_one = true;
  bool found = false;
  std::vector<std::vector<uint32_t>> all_orders;

  explicit OracleSearch(const History& h, const SequentialSpec& s) : spec(s) {
    auto indexed = index_ops(h);
    for (auto& [id, e] : indexed) {
      OracleOp op;
      op.id = id;
      op.method = e.call->method;
      op.input = e.call->value;
      op.completed = e.ret != nullptr;
      op.output = e.ret ? e.ret->value : Val{};
      op.call_idx = e.call_idx;
      op.ret_idx = e.ret_idx;
      ops.push_back(op);
    }
    preds.assign(ops.size(), 0);
    for (size_t i = 0; i < ops.size(); ++i) {
      for (size_t j = 0; j < ops.size(); ++j) {
        if (ops[i].ret_idx >= 0 && ops[i].ret_idx < ops[j].call_idx) {
          preds[j] |= 1u << i;
        }
      }
    }
    for (size_t i = 0; i < ops.size(); ++i) {
      if (ops[i].completed) completed_mask |= 1u << i;
    }
  }

  void dfs() {
    if ((done_mask & completed_mask) == completed_mask) {
      if (find_one) {
        found = true;
        return;
      }
      std::vector<uint32_t> order;
      for (size_t i : schedule) order.push_back(ops[i].id);
      all_orders.push_back(std::move(order));
    }
    for (size_t i = 0; i < ops.size(); ++i) {
      uint32_t bit = 1u << i;
      if (done_mask & bit) continue;
      if ((preds[i] & done_mask) != preds[i]) continue;
      std::vector<int32_t> saved = collection;
      Val out = spec.step(collection, ops[i].method, ops[i].input);
      bool ok = !ops[i].completed || ops[i].method == spec.add_method() ||
                out == ops[i].output;
      if (ok) {
        done_mask |= bit;
        schedule.push_back(i);
        outputs.push_back(out);
        dfs();
        if (found && find_one) return;
        outputs.pop_back();
        schedule.pop_back();
        done_mask &= ~bit;
      }
      collection = std::move(saved);
    }
  }

  std::vector<ActionLabel> witness_history() const {
    std::vector<ActionLabel> w;
    for (size_t n = 0; n < schedule.size(); ++n) {
      const OracleOp& op = ops[schedule[n]];
      if (op.method == spec.add_method()) {
        w.push_back(inv(op.method, op.input, op.id));
        w.push_back(ret(op.method, op.id));
      } else {
        w.push_back(inv(op.method, op.id));
        w.push_back(ret(op.method, outputs[n], op.id));
      }
    }
    return w;
  }
};

}  // namespace

LinWitness is_linearizable(const History& h, const SequentialSpec& spec) {
  OracleSearch search(h, spec);
  search.dfs();
  LinWitness w;
  w.pass = search.found;
  if (search.found) w.witness = search.witness_history();
  return w;
}

std::vector<std::vector<uint32_t>> all_linearization_orders(const History& h,
                                                            const SequentialSpec& spec) {
  OracleSearch search(h, spec);
  search.find_one = false;
  search.dfs();
  return search.all_orders;
}

namespace {

// Does the system admit the exact label sequence? Tracks the set of states
// compatible with the prefix, so same-label nondeterminism is handled.
bool admits_trace(System& sys, std::span<const ActionLabel> trace) {
  std::vector<uint32_t> frontier{sys.initial_id()};
  std::vector<uint32_t> next;
  for (const ActionLabel& want : trace) {
    next.clear();
    for (uint32_t s : frontier) {
      for (const CEdge& e : sys.successors(s)) {
        if (sys.label(e.label) == want) next.push_back(e.to);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) return false;
    frontier.swap(next);
  }
  return true;
}

struct ClosureSearch {
  System& sys;
  const ExplorationBounds& bounds;
  std::vector<ActionLabel> calls;
  std::vector<ActionLabel> trace;
  uint64_t nodes = 0;
  Verdict verdict = Verdict::pass("library-closure");

  ClosureSearch(System& s, const ExplorationBounds& b) : sys(s), bounds(b) {
    calls = sys.call_alphabet();
  }

  bool fail(const char* obligation, std::vector<ActionLabel> variant) {
    verdict = Verdict::fail("library-closure", obligation, std::move(variant));
    verdict.notes.push_back("admitted trace: " + History{trace}.str());
    return false;
  }

  bool op_in_trace(uint32_t op) const {
    for (const auto& a : trace) {
      if (a.op == op) return true;
    }
    return false;
  }

  bool check_node() {
    // Bullet 1: call actions cannot be disabled, at any split point.
    if (trace.size() + 1 <= bounds.max_trace_events) {
      for (const ActionLabel& c : calls) {
        if (op_in_trace(c.op)) continue;
        for (size_t p = 0; p <= trace.size(); ++p) {
          std::vector<ActionLabel> variant(trace.begin(), trace.begin() + p);
          variant.push_back(c);
          variant.insert(variant.end(), trace.begin() + p, trace.end());
          if (!admits_trace(sys, variant)) return fail("call-enabled", std::move(variant));
        }
      }
    }
    // Bullet 2: calls commute to the left. Bullet 3: returns commute right.
    for (size_t i = 0; i + 1 < trace.size(); ++i) {
      if (trace[i + 1].is_call()) {
        std::vector<ActionLabel> variant = trace;
        std::swap(variant[i], variant[i + 1]);
        if (!admits_trace(sys, variant)) return fail("call-commute-left", std::move(variant));
      }
      if (trace[i].is_ret()) {
        std::vector<ActionLabel> variant = trace;
        std::swap(variant[i], variant[i + 1]);
        if (!admits_trace(sys, variant)) return fail("return-commute-right", std::move(variant));
      }
    }
    return true;
  }

  bool dfs(uint32_t state) {
    if (++nodes > bounds.max_states) {
      verdict = Verdict::bound_exceeded("library-closure", "trace enumeration hit max_states");
      return false;
    }
    if (!check_node()) return false;
    if (trace.size() >= bounds.max_trace_events) return true;
    for (const CEdge& e : sys.successors(state)) {
      trace.push_back(sys.label(e.label));
      bool ok = dfs(e.to);
      trace.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

Verdict check_library_closure(System& sys, const ExplorationBounds& bounds) {
  ClosureSearch search(sys, bounds);
  search.dfs(sys.initial_id());
  return search.verdict;
}

}  // namespace linlab

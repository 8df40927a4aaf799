#pragma once

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linlab/action.hpp"

namespace linlab {

// Caps for bounded exploration. max_states caps the distinct exploration
// nodes of whatever the operation explores (plain states, state/history
// pairs, product pairs); max_trace_events caps observable events per
// collected trace. Hitting a cap is reported, never silently truncated.
struct ExplorationBounds {
  uint64_t max_states = 1u << 22;
  uint32_t max_trace_events = 64;
};

class BadConfig : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DuplicateValue : public BadConfig {
 public:
  using BadConfig::BadConfig;
};
class BadThreadId : public BadConfig {
 public:
  using BadConfig::BadConfig;
};
class NotADequeue : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
class NodeNotInserted : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct CEdge {
  uint32_t label;  // index into the owning system's label table
  uint32_t to;     // target state id
};

// Dense interner; ids are assigned in insertion order, which together with
// the canonical successor order makes every exploration reproducible.
template <class S>
class StateArena {
 public:
  std::pair<uint32_t, bool> intern(const S& s) {
    uint64_t h = s.hash();
    auto& bucket = buckets_[h];
    for (uint32_t id : bucket) {
      if (states_[id] == s) return {id, false};
    }
    uint32_t id = static_cast<uint32_t>(states_.size());
    states_.push_back(s);
    bucket.push_back(id);
    return {id, true};
  }
  const S& operator[](uint32_t id) const { return states_[id]; }
  size_t size() const { return states_.size(); }

 private:
  std::vector<S> states_;
  std::unordered_map<uint64_t, std::vector<uint32_t>> buckets_;
};

class LabelTable {
 public:
  uint32_t intern(const ActionLabel& l) {
    auto& bucket = buckets_[l.hash()];
    for (uint32_t id : bucket) {
      if (labels_[id] == l) return id;
    }
    uint32_t id = static_cast<uint32_t>(labels_.size());
    labels_.push_back(l);
    bucket.push_back(id);
    return id;
  }
  const ActionLabel& operator[](uint32_t id) const { return labels_[id]; }
  size_t size() const { return labels_.size(); }

 private:
  std::vector<ActionLabel> labels_;
  std::unordered_map<uint64_t, std::vector<uint32_t>> buckets_;
};

// A transition system with states interned to dense ids. Successor sets are
// computed on demand, sorted canonically (label order, then successor state
// hash) and cached, so repeated visits during product exploration are cheap.
class System {
 public:
  virtual ~System() = default;
  virtual std::string_view name() const = 0;
  virtual uint32_t initial_id() = 0;
  virtual std::span<const CEdge> successors(uint32_t state) = 0;
  virtual std::string state_repr(uint32_t state) const = 0;
  virtual size_t discovered_states() const = 0;
  // Every call action the system can ever perform (library closure needs the
  // full call universe, not just the calls seen on some trace).
  virtual std::vector<ActionLabel> call_alphabet() const = 0;
  // Expands the given states, possibly in parallel; results are identical to
  // expanding them one by one in order.
  virtual void expand_batch(std::span<const uint32_t> states, unsigned threads) {
    (void)threads;
    for (uint32_t s : states) successors(s);
  }

  const ActionLabel& label(uint32_t id) const { return labels_[id]; }
  size_t num_labels() const { return labels_.size(); }

 protected:
  LabelTable labels_;
};

// Adapts a model (initial(), successors(), repr(), call_alphabet()) to the
// id-based System interface.
template <class M>
class ModelSystem final : public System {
 public:
  using State = typename M::State;

  explicit ModelSystem(M model, std::string name)
      : model_(std::move(model)), name_(std::move(name)) {}

  std::string_view name() const override { return name_; }

  uint32_t initial_id() override {
    if (slots_.empty()) {
      auto [id, fresh] = arena_.intern(model_.initial());
      (void)fresh;
      touch(id);
      return id;
    }
    return 0;
  }

  std::span<const CEdge> successors(uint32_t state) override {
    touch(state);
    Slot& slot = slots_[state];
    if (!slot.expanded) expand_one(state);
    return {edges_.data() + slots_[state].off, slots_[state].len};
  }

  void expand_batch(std::span<const uint32_t> states, unsigned threads) override {
    std::vector<uint32_t> todo;
    for (uint32_t s : states) {
      touch(s);
      if (!slots_[s].expanded) todo.push_back(s);
    }
    if (todo.empty()) return;
    if (threads <= 1 || todo.size() < 32) {
      for (uint32_t s : todo) expand_one(s);
      return;
    }
    // Successor computation is pure, so it can run on worker threads; the
    // interning pass below stays sequential in id order, which keeps results
    // bit-identical to a single-threaded run.
    std::vector<std::vector<std::pair<ActionLabel, State>>> produced(todo.size());
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    unsigned n = std::min<size_t>(threads, todo.size());
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < todo.size(); i = next.fetch_add(1)) {
          model_.successors(arena_[todo[i]], produced[i]);
          sort_canonical(produced[i]);
        }
      });
    }
    for (auto& th : pool) th.join();
    for (size_t i = 0; i < todo.size(); ++i) commit(todo[i], produced[i]);
  }

  std::string state_repr(uint32_t state) const override { return model_.repr(arena_[state]); }
  size_t discovered_states() const override { return arena_.size(); }
  std::vector<ActionLabel> call_alphabet() const override { return model_.call_alphabet(); }

  const State& state(uint32_t id) const { return arena_[id]; }
  const M& model() const { return model_; }

 private:
  struct Slot {
    uint32_t off = 0;
    uint32_t len = 0;
    bool expanded = false;
  };

  void touch(uint32_t id) {
    if (slots_.size() <= id) slots_.resize(arena_.size());
  }

  void sort_canonical(std::vector<std::pair<ActionLabel, State>>& v) const {
    std::sort(v.begin(), v.end(), [this](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      uint64_t ha = a.second.hash(), hb = b.second.hash();
      if (ha != hb) return ha < hb;
      if (a.second == b.second) return false;
      return model_.repr(a.second) < model_.repr(b.second);
    });
    v.erase(std::unique(v.begin(), v.end(),
                        [](const auto& a, const auto& b) {
                          return a.first == b.first && a.second == b.second;
                        }),
            v.end());
  }

  void expand_one(uint32_t id) {
    std::vector<std::pair<ActionLabel, State>> out;
    model_.successors(arena_[id], out);
    sort_canonical(out);
    commit(id, out);
  }

  void commit(uint32_t id, const std::vector<std::pair<ActionLabel, State>>& out) {
    Slot& slot = slots_[id];
    if (slot.expanded) return;
    slot.off = static_cast<uint32_t>(edges_.size());
    slot.len = static_cast<uint32_t>(out.size());
    slot.expanded = true;
    for (const auto& [l, s] : out) {
      uint32_t lid = labels_.intern(l);
      auto [sid, fresh] = arena_.intern(s);
      (void)fresh;
      edges_.push_back({lid, sid});
    }
    if (slots_.size() < arena_.size()) slots_.resize(arena_.size());
  }

  M model_;
  std::string name_;
  StateArena<State> arena_;
  std::vector<Slot> slots_;
  std::vector<CEdge> edges_;
};

// Hand-built LTS for unit tests and the toy registry entries.
struct ToyModel {
  struct State {
    uint32_t v = 0;
    bool operator==(const State&) const = default;
    uint64_t hash() const { return Hasher{}.add(v).value(); }
  };

  uint32_t initial_state = 0;
  std::vector<std::vector<std::pair<ActionLabel, uint32_t>>> edges;
  std::vector<ActionLabel> calls;

  State initial() const { return {initial_state}; }
  void successors(const State& s, std::vector<std::pair<ActionLabel, State>>& out) const {
    out.clear();
    if (s.v < edges.size()) {
      for (const auto& [l, to] : edges[s.v]) out.push_back({l, State{to}});
    }
  }
  std::string repr(const State& s) const { return "q" + std::to_string(s.v); }
  std::vector<ActionLabel> call_alphabet() const { return calls; }
};

unsigned worker_threads();  // from LINLAB_THREADS; never affects results

}  // namespace linlab

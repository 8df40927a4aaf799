#include "linlab/explore.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace linlab {

unsigned worker_threads() {
  if (const char* env = std::getenv("LINLAB_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1 && n <= 256) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<ActionLabel> StateGraph::trace_to(const System& sys, uint32_t state) const {
  std::vector<ActionLabel> out;
  uint32_t cur = state;
  while (parent[cur] != cur) {
    out.push_back(sys.label(parent_label[cur]));
    cur = parent[cur];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

StateGraph reachable_graph(System& sys, const ExplorationBounds& bounds) {
  StateGraph g;
  uint32_t init = sys.initial_id();
  g.order.push_back(init);
  g.parent.assign(1, init);
  g.parent_label.assign(1, 0);
  g.depth.assign(1, 0);
  unsigned threads = worker_threads();

  size_t layer_begin = 0;
  while (layer_begin < g.order.size()) {
    size_t layer_end = g.order.size();
    std::span<const uint32_t> layer(g.order.data() + layer_begin, layer_end - layer_begin);
    sys.expand_batch(layer, threads);
    for (size_t i = layer_begin; i < layer_end; ++i) {
      uint32_t s = g.order[i];
      for (const CEdge& e : sys.successors(s)) {
        ++g.num_edges;
        if (e.to >= g.parent.size()) {
          // First time this target id appears: record discovery.
          g.parent.resize(e.to + 1);
          g.parent_label.resize(e.to + 1);
          g.depth.resize(e.to + 1);
          g.parent[e.to] = s;
          g.parent_label[e.to] = e.label;
          g.depth[e.to] = g.depth[s] + 1;
          g.order.push_back(e.to);
          if (g.order.size() > bounds.max_states) {
            g.num_states = static_cast<uint32_t>(g.order.size());
            g.complete = false;
            return g;
          }
        }
      }
    }
    layer_begin = layer_end;
  }
  g.num_states = static_cast<uint32_t>(g.order.size());
  return g;
}

std::vector<ActionLabel> project(std::span<const ActionLabel> trace, const Gamma& gamma) {
  return project(trace, [&](const ActionLabel& a) { return gamma.contains(a); });
}

std::vector<ActionLabel> project(std::span<const ActionLabel> trace,
                                 const std::function<bool(const ActionLabel&)>& keep) {
  std::vector<ActionLabel> out;
  for (const auto& a : trace) {
    if (keep(a)) out.push_back(a);
  }
  return out;
}

namespace {

// Append-only trie of projected traces; node ids dedupe (state, trace) pairs
// without materializing the traces during search.
class TraceTrie {
 public:
  TraceTrie() {
    nodes_.push_back({UINT32_MAX, 0});
  }
  uint32_t root() const { return 0; }
  uint32_t child(uint32_t parent, uint32_t label_id) {
    uint64_t key = (static_cast<uint64_t>(parent) << 32) | label_id;
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back({parent, label_id});
    index_.emplace(key, id);
    return id;
  }
  uint32_t length(uint32_t node) const {
    uint32_t n = 0;
    while (node != 0) {
      node = nodes_[node].parent;
      ++n;
    }
    return n;
  }
  std::vector<ActionLabel> materialize(const System& sys, uint32_t node) const {
    std::vector<ActionLabel> out;
    while (node != 0) {
      out.push_back(sys.label(nodes_[node].label));
      node = nodes_[node].parent;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    uint32_t parent;
    uint32_t label;
  };
  std::vector<Node> nodes_;
  std::unordered_map<uint64_t, uint32_t> index_;
};

}  // namespace

TraceSet collect_projected_traces(System& sys, const Gamma& gamma,
                                  const ExplorationBounds& bounds) {
  TraceTrie trie;
  std::unordered_set<uint64_t> visited;
  std::deque<std::pair<uint32_t, uint32_t>> frontier;  // (state, trie node)
  std::vector<uint32_t> trace_nodes{trie.root()};
  std::vector<uint32_t> trace_len{0};
  std::unordered_set<uint32_t> seen_nodes{trie.root()};

  TraceSet result;
  uint32_t init = sys.initial_id();
  frontier.push_back({init, trie.root()});
  visited.insert(static_cast<uint64_t>(init) << 32);

  while (!frontier.empty()) {
    auto [s, node] = frontier.front();
    frontier.pop_front();
    uint32_t len = trie.length(node);
    for (const CEdge& e : sys.successors(s)) {
      uint32_t next_node = node;
      if (gamma.contains(sys.label(e.label))) {
        if (len + 1 > bounds.max_trace_events) continue;
        next_node = trie.child(node, e.label);
        if (seen_nodes.insert(next_node).second) trace_nodes.push_back(next_node);
      }
      uint64_t key = (static_cast<uint64_t>(e.to) << 32) | next_node;
      if (visited.insert(key).second) {
        if (visited.size() > bounds.max_states) {
          result.complete = false;
          break;
        }
        frontier.push_back({e.to, next_node});
      }
    }
    if (!result.complete) break;
  }

  for (uint32_t node : trace_nodes) result.items.push_back(trie.materialize(sys, node));
  std::sort(result.items.begin(), result.items.end());
  return result;
}

TraceSet collect_histories(System& sys, const ExplorationBounds& bounds) {
  return collect_projected_traces(sys, Gamma{Gamma::Preset::CR}, bounds);
}

Verdict check_gamma_deterministic(System& sys, const Gamma& gamma,
                                  const ExplorationBounds& bounds) {
  const std::string check = "gamma-deterministic";
  StateGraph g = reachable_graph(sys, bounds);
  if (!g.complete) return Verdict::bound_exceeded(check, "max_states hit during exploration");

  // Local conditions equivalent to the quantified definition: every non-Γ
  // edge must be a self loop, and per Γ-label successors must be unique.
  // Any multi-step divergence reduces to a violation of one of these.
  for (uint32_t s : g.order) {
    auto edges = sys.successors(s);
    for (size_t i = 0; i < edges.size(); ++i) {
      const ActionLabel& l = sys.label(edges[i].label);
      if (!gamma.contains(l)) {
        if (edges[i].to != s) {
          Verdict v = Verdict::fail(check, "two states reachable via the same Γ-sequence");
          v.trace = project(g.trace_to(sys, s), gamma);
          v.impl_state = sys.state_repr(s);
          v.spec_state = sys.state_repr(edges[i].to);
          return v;
        }
        continue;
      }
      for (size_t j = i + 1; j < edges.size(); ++j) {
        if (edges[j].label == edges[i].label && edges[j].to != edges[i].to) {
          Verdict v = Verdict::fail(check, "two states reachable via the same Γ-sequence");
          v.trace = project(g.trace_to(sys, s), gamma);
          v.trace.push_back(l);
          v.impl_state = sys.state_repr(edges[i].to);
          v.spec_state = sys.state_repr(edges[j].to);
          return v;
        }
      }
    }
  }
  return Verdict::pass(check);
}

}  // namespace linlab

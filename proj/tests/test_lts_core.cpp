#include <algorithm>
#include <set>

#include "doctest.h"
#include "linlab/explore.hpp"
#include "linlab/history.hpp"
#include "linlab/impl_hwq.hpp"
#include "linlab/spec_queue.hpp"

using namespace linlab;

namespace {

ExplorationBounds small_bounds() { return {1u << 20, 32}; }

// Independent DFS explorer used to confirm the engine is order-insensitive.
template <class Sys>
std::pair<std::set<std::string>, size_t> dfs_explore(Sys& sys) {
  std::set<std::string> reprs;
  std::vector<uint32_t> stack{sys.initial_id()};
  std::set<uint32_t> seen{sys.initial_id()};
  size_t edges = 0;
  while (!stack.empty()) {
    uint32_t s = stack.back();
    stack.pop_back();
    reprs.insert(sys.state_repr(s));
    auto succ = sys.successors(s);
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) {
      ++edges;
      if (seen.insert(it->to).second) stack.push_back(it->to);
    }
  }
  return {reprs, edges};
}

}  // namespace

TEST_CASE("single-state system explores to one state and no edges") {
  ToyModel toy;
  toy.edges = {{}};
  ModelSystem<ToyModel> sys(toy, "unit");
  StateGraph g = reachable_graph(sys, small_bounds());
  CHECK(g.num_states == 1);
  CHECK(g.num_edges == 0);
  CHECK(g.complete);
}

TEST_CASE("abstract queue with one enqueue walks call-enq then ret-enq1") {
  AbsQModel m{QueueWorkload{{1}, 0}};
  ModelSystem<AbsQModel> sys(m, "absq");
  StateGraph g = reachable_graph(sys, small_bounds());
  REQUIRE(g.num_states == 3);
  CHECK(g.num_edges == 2);

  uint32_t s0 = sys.initial_id();
  auto e0 = sys.successors(s0);
  REQUIRE(e0.size() == 1);
  CHECK(sys.label(e0[0].label) == inv(Method::Enq, Val::nat(1), 1));
  const AbsQState& s1 = sys.state(e0[0].to);
  CHECK(s1.O == 0b10);
  CHECK(s1.flag[1] == kFlagPend);
  CHECK(s1.cp[1] == static_cast<uint8_t>(CpAbs::A1));

  auto e1 = sys.successors(e0[0].to);
  REQUIRE(e1.size() == 1);
  CHECK(sys.label(e1[0].label) == ret(Method::Enq, 1));
  const AbsQState& s2 = sys.state(e1[0].to);
  CHECK(s2.O == 0b10);
  CHECK(s2.flag[1] == kFlagComp);
  CHECK(s2.cp[1] == static_cast<uint8_t>(CpAbs::A2));
  CHECK(sys.successors(e1[0].to).empty());
}

TEST_CASE("hwq reachable-state regression at (2 enq, 2 deq, {1,2})") {
  ModelSystem<HwqModel> sys(make_hwq(QueueWorkload{{1, 2}, 2}), "hwq");
  StateGraph g = reachable_graph(sys, {1u << 22, 64});
  CHECK(g.complete);
  // Regression values fixed by the first exploration of the finished model.
  CHECK(g.num_states == 14806);
  CHECK(g.num_edges == 47236);
}

TEST_CASE("projection keeps order and composes") {
  std::vector<ActionLabel> t{inv(Method::Enq, Val::nat(1), 1),
                             internal(Method::Enq, 1, "reserve"),
                             ret(Method::Enq, 1),
                             lin(Method::Deq, Val::nat(1), 2)};
  SUBCASE("empty trace") {
    CHECK(project(std::span<const ActionLabel>{}, Gamma{Gamma::Preset::CR}).empty());
  }
  SUBCASE("call and return survive CR") {
    auto p = project(t, Gamma{Gamma::Preset::CR});
    REQUIRE(p.size() == 2);
    CHECK(p[0] == t[0]);
    CHECK(p[1] == t[2]);
  }
  SUBCASE("projecting twice equals projecting the conjunction") {
    auto once = project(project(t, Gamma{Gamma::Preset::CRLinDeq}), Gamma{Gamma::Preset::CR});
    auto direct = project(t, Gamma{Gamma::Preset::CR});
    CHECK(once == direct);
  }
}

TEST_CASE("full hwq trace projects to calls, returns and one lin per swap") {
  ModelSystem<HwqModel> sys(make_hwq(QueueWorkload{{7}, 1}), "hwq");
  // Drive one complete enqueue then one dequeue to completion.
  uint32_t s = sys.initial_id();
  std::vector<ActionLabel> trace;
  auto step = [&](Kind kind, const std::string& detail = "") {
    for (const CEdge& e : sys.successors(s)) {
      const ActionLabel& l = sys.label(e.label);
      if (l.kind == kind && (detail.empty() || l.detail == detail)) {
        trace.push_back(l);
        s = e.to;
        return true;
      }
    }
    return false;
  };
  REQUIRE(step(Kind::Call));          // inv(enq,7,1)
  REQUIRE(step(Kind::Internal, "reserve"));
  REQUIRE(step(Kind::Internal, "store"));
  REQUIRE(step(Kind::Ret));           // ret(enq,1)
  REQUIRE(step(Kind::Call));          // inv(deq,2)
  REQUIRE(step(Kind::Internal, "range"));
  REQUIRE(step(Kind::Internal, "i0"));
  REQUIRE(step(Kind::Lin));           // swap hits the stored value
  REQUIRE(step(Kind::Internal, "check"));
  REQUIRE(step(Kind::Ret));           // ret(deq,7,2)

  auto p = project(trace, Gamma{Gamma::Preset::CRLinDeq});
  REQUIRE(p.size() == 5);
  CHECK(p[2] == inv(Method::Deq, 2));
  CHECK(p[3] == lin(Method::Deq, Val::nat(7), 2));
  CHECK(p[4] == ret(Method::Deq, Val::nat(7), 2));
}

TEST_CASE("collect_histories") {
  SUBCASE("empty workload yields only the empty history") {
    AbsQ0Model m{QueueWorkload{{}, 0}};
    ModelSystem<AbsQ0Model> sys(m, "absq0");
    TraceSet hs = collect_histories(sys, small_bounds());
    REQUIRE(hs.items.size() == 1);
    CHECK(hs.items[0].empty());
  }
  SUBCASE("reference queue at (1 enq, 1 deq) contains the expected variants") {
    AbsQ0Model m{QueueWorkload{{1}, 1}};
    ModelSystem<AbsQ0Model> sys(m, "absq0");
    TraceSet hs = collect_histories(sys, small_bounds());
    std::vector<ActionLabel> sequential{inv(Method::Enq, Val::nat(1), 1), ret(Method::Enq, 1),
                                        inv(Method::Deq, 2), ret(Method::Deq, Val::nat(1), 2)};
    std::vector<ActionLabel> empty_deq{inv(Method::Deq, 2), ret(Method::Deq, Val::empty(), 2),
                                       inv(Method::Enq, Val::nat(1), 1), ret(Method::Enq, 1)};
    CHECK(std::find(hs.items.begin(), hs.items.end(), sequential) != hs.items.end());
    CHECK(std::find(hs.items.begin(), hs.items.end(), empty_deq) != hs.items.end());
  }
  SUBCASE("every collected history is well-formed") {
    ModelSystem<HwqModel> sys(make_hwq(QueueWorkload{{1, 2}, 1}), "hwq");
    TraceSet hs = collect_histories(sys, small_bounds());
    for (const auto& h : hs.items) CHECK(is_well_formed(h));
  }
  SUBCASE("histories of a call/return-only system are its trace prefixes") {
    ToyModel toy;
    ActionLabel c = inv(Method::Enq, Val::nat(1), 1);
    ActionLabel r = ret(Method::Enq, 1);
    toy.edges = {{{c, 1}}, {{r, 2}}, {}};
    ModelSystem<ToyModel> sys(toy, "toy");
    TraceSet hs = collect_histories(sys, small_bounds());
    REQUIRE(hs.items.size() == 3);
    CHECK(hs.items[0].empty());
    CHECK(hs.items[1] == std::vector<ActionLabel>{c});
    CHECK(hs.items[2] == std::vector<ActionLabel>{c, r});
  }
}

TEST_CASE("exploration is order-insensitive") {
  AbsQModel m{QueueWorkload{{1, 2}, 1}};
  ModelSystem<AbsQModel> bfs_sys(m, "absq");
  StateGraph g = reachable_graph(bfs_sys, small_bounds());

  ModelSystem<AbsQModel> dfs_sys(m, "absq");
  auto [dfs_reprs, dfs_edges] = dfs_explore(dfs_sys);

  std::set<std::string> bfs_reprs;
  for (uint32_t id : g.order) bfs_reprs.insert(bfs_sys.state_repr(id));
  CHECK(bfs_reprs == dfs_reprs);
  CHECK(g.num_edges == dfs_edges);
}

TEST_CASE("bound exceeded is reported, not truncated") {
  AbsQModel m{QueueWorkload{{1, 2}, 1}};
  ModelSystem<AbsQModel> sys(m, "absq");
  StateGraph g = reachable_graph(sys, {4, 32});
  CHECK_FALSE(g.complete);
}

TEST_CASE("gamma determinism") {
  SUBCASE("one-transition system is deterministic on the full alphabet") {
    ToyModel toy;
    toy.edges = {{{inv(Method::Enq, Val::nat(1), 1), 1}}, {}};
    ModelSystem<ToyModel> sys(toy, "toy");
    CHECK(check_gamma_deterministic(sys, Gamma{Gamma::Preset::Full}, small_bounds()).passed());
  }
  SUBCASE("abstract queue is deterministic on CR+LinDeq") {
    AbsQModel m{QueueWorkload{{1, 2}, 2}};
    ModelSystem<AbsQModel> sys(m, "absq");
    CHECK(check_gamma_deterministic(sys, Gamma{Gamma::Preset::CRLinDeq}, {1u << 22, 64})
              .passed());
  }
  SUBCASE("hwq is not CR-deterministic: reservations differ under one call sequence") {
    ModelSystem<HwqModel> sys(make_hwq(QueueWorkload{{1, 2}, 1}), "hwq");
    Verdict v = check_gamma_deterministic(sys, Gamma{Gamma::Preset::CR}, {1u << 22, 64});
    REQUIRE(v.status == Status::Fail);
    CHECK(v.impl_state != v.spec_state);  // two distinct witness states
  }
}

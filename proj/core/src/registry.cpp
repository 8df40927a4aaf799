#include "linlab/registry.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace linlab {

namespace {

using nlohmann::json;

Workload workload_from_json(const json& j) {
  if (j.contains("enqs")) {
    QueueWorkload wl;
    for (const auto& v : j.at("enqs")) wl.enqs.push_back(v.get<int32_t>());
    wl.deqs = j.value("deqs", 0u);
    wl.validate();
    return wl;
  }
  if (j.contains("pushes")) {
    StackWorkload wl;
    for (const auto& p : j.at("pushes")) {
      wl.pushes.push_back({p.at("value").get<int32_t>(), p.value("thread", 0u)});
    }
    if (j.contains("pops")) {
      for (const auto& p : j.at("pops")) wl.pop_threads.push_back(p.value("thread", 0u));
    }
    wl.max_threads = j.value("maxThreads", 1u);
    wl.validate();
    return wl;
  }
  throw BadConfig("workload must contain \"enqs\" or \"pushes\"");
}

}  // namespace

Workload parse_workload(const std::string& json_text) {
  return workload_from_json(json::parse(json_text));
}

Workload load_workload(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadConfig("cannot read workload file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_workload(buf.str());
}

const std::vector<SystemInfo>& list_systems() {
  static const std::vector<SystemInfo> systems = {
      {"absq0", "reference queue: value sequence, fixed enq/deq linearization points", false},
      {"absq", "abstract queue: happens-before poset, fixed dequeue linearization points",
       false},
      {"hwq", "Herlihy&Wing queue: reservation counter plus slot array", false},
      {"hwq-mutant-splitswap", "hwq with the dequeue swap split into read then null-write",
       false},
      {"hwq-mutant-no-null", "hwq with the dequeue swap reading without clearing the slot",
       false},
      {"abss0", "reference stack: value sequence, fixed push/pop linearization points", true},
      {"abss", "abstract stack: happens-before poset with be/ov frontiers and pop commit points",
       true},
      {"tss", "Time-Stamped Stack: per-thread pools, timestamps, commit CAS", true},
      {"tss-mutant-no-cas", "tss with the commit CAS split into taken-test then blind write",
       true},
      {"toy-ab", "two-state toy: one a-call then one a-return", false},
      {"toy-noreentry", "toy that refuses any call after the first return", false},
  };
  return systems;
}

namespace {

ToyModel toy_ab() {
  ToyModel m;
  ActionLabel c = inv(Method::Enq, Val::nat(1), 1);
  ActionLabel r = ret(Method::Enq, 1);
  m.edges = {{{c, 1}}, {{r, 2}}, {}};
  m.calls = {c};
  return m;
}

ToyModel toy_noreentry() {
  // Accepts inv(1) ret(1) and then refuses inv(2): a closure violation.
  ToyModel m;
  ActionLabel c1 = inv(Method::Enq, Val::nat(1), 1);
  ActionLabel r1 = ret(Method::Enq, 1);
  ActionLabel c2 = inv(Method::Enq, Val::nat(2), 2);
  m.edges = {{{c1, 1}, {c2, 3}}, {{r1, 2}, {c2, 4}}, {}, {{c1, 4}}, {{r1, 5}}, {}};
  m.calls = {c1, c2};
  return m;
}

}  // namespace

std::unique_ptr<System> make_system(const std::string& id, const Workload& wl,
                                    const BuildOptions& opts) {
  auto queue_wl = [&]() -> const QueueWorkload& {
    if (const auto* q = std::get_if<QueueWorkload>(&wl)) return *q;
    throw BadConfig(id + " needs a queue workload");
  };
  auto stack_wl = [&]() -> const StackWorkload& {
    if (const auto* s = std::get_if<StackWorkload>(&wl)) return *s;
    throw BadConfig(id + " needs a stack workload");
  };

  if (id == "absq0") {
    auto w = queue_wl();
    w.validate();
    return std::make_unique<ModelSystem<AbsQ0Model>>(AbsQ0Model{w}, id);
  }
  if (id == "absq") {
    auto w = queue_wl();
    w.validate();
    return std::make_unique<ModelSystem<AbsQModel>>(AbsQModel{w}, id);
  }
  if (id == "hwq") {
    return std::make_unique<ModelSystem<HwqModel>>(make_hwq(queue_wl()), id);
  }
  if (id == "hwq-mutant-splitswap") {
    return std::make_unique<ModelSystem<HwqModel>>(
        make_hwq(queue_wl(), HwqVariant::SplitSwap), id);
  }
  if (id == "hwq-mutant-no-null") {
    return std::make_unique<ModelSystem<HwqModel>>(make_hwq(queue_wl(), HwqVariant::NoNull),
                                                   id);
  }
  if (id == "abss0") {
    auto w = stack_wl();
    w.validate();
    return std::make_unique<ModelSystem<AbsS0Model>>(AbsS0Model{w}, id);
  }
  if (id == "abss") {
    auto w = stack_wl();
    w.validate();
    return std::make_unique<ModelSystem<AbsSModel>>(AbsSModel{w}, id);
  }
  if (id == "tss") {
    return std::make_unique<ModelSystem<TssModel>>(
        make_tss(stack_wl(), TssVariant::Standard, opts.strict_tss, opts.strict_tss), id);
  }
  if (id == "tss-mutant-no-cas") {
    return std::make_unique<ModelSystem<TssModel>>(make_tss(stack_wl(), TssVariant::NoCas),
                                                   id);
  }
  if (id == "toy-ab") {
    return std::make_unique<ModelSystem<ToyModel>>(toy_ab(), id);
  }
  if (id == "toy-noreentry") {
    return std::make_unique<ModelSystem<ToyModel>>(toy_noreentry(), id);
  }
  throw BadConfig("unknown system id: " + id);
}

SequentialSpec oracle_spec_for(const std::string& id) {
  if (id.rfind("abss", 0) == 0 || id.rfind("tss", 0) == 0) return SequentialSpec::stack();
  return SequentialSpec::queue();
}

}  // namespace linlab

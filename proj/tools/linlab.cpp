// Command-line driver: build a registered system over a workload, run one of
// the bounded checks, print a human or JSON report. Exit codes: 0 pass,
// 1 fail (counterexample in the report), 2 bound exceeded or usage error.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "linlab/registry.hpp"
#include "linlab/report.hpp"
#include "linlab/simulation.hpp"

using namespace linlab;

namespace {

struct CommonArgs {
  std::string workload_path;
  std::string gamma = "CR";
  uint64_t max_states = 1ull << 24;
  uint32_t max_events = 64;
  bool json_output = false;
  bool strict_tss = false;
  std::string output_path;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_workload = true) {
  auto* w = cmd->add_option("--workload", a.workload_path, "workload JSON file");
  if (needs_workload) w->required();
  cmd->add_option("--gamma", a.gamma, "observable alphabet: CR, CR+LinDeq, CR+ComPop, full");
  cmd->add_option("--max-states", a.max_states, "cap on distinct exploration nodes");
  cmd->add_option("--max-events", a.max_events, "cap on observable events per trace");
  cmd->add_flag("--json", a.json_output, "emit a JSON report");
  cmd->add_flag("--strict-tss", a.strict_tss,
                "use the literal push4/ret-pop rule variants of the Time-Stamped Stack");
  cmd->add_option("-o,--output", a.output_path, "write the report to a file");
}

ExplorationBounds bounds_of(const CommonArgs& a) { return {a.max_states, a.max_events}; }

Gamma gamma_of(const CommonArgs& a) {
  auto g = Gamma::parse(a.gamma);
  if (!g) throw BadConfig("unknown gamma: " + a.gamma);
  return *g;
}

std::unique_ptr<System> build(const std::string& id, const CommonArgs& a) {
  Workload wl = load_workload(a.workload_path);
  return make_system(id, wl, BuildOptions{a.strict_tss});
}

int emit(const std::string& command, const CommonArgs& a, const ojson& config,
         const Verdict& v) {
  ojson report = run_report(command, config, v);
  std::string text;
  if (a.json_output) {
    text = report.dump(2) + "\n";
  } else {
    text = command + ": " + std::string(to_string(v.status));
    if (!v.obligation.empty()) text += " [" + v.obligation + "]";
    text += "\n";
    if (!v.trace.empty()) {
      text += "  trace: " + History{v.trace}.str() + "\n";
    }
    if (!v.impl_state.empty()) text += "  impl state: " + v.impl_state + "\n";
    if (!v.spec_state.empty()) text += "  spec state: " + v.spec_state + "\n";
    for (const auto& n : v.notes) text += "  note: " + n + "\n";
  }
  if (!a.output_path.empty()) {
    std::ofstream out(a.output_path);
    out << (a.json_output ? text : report.dump(2) + "\n");
  }
  std::cout << text;
  switch (v.status) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::BoundExceeded: return 2;
  }
  return 2;
}

RelationFn make_relation(const std::string& name, System& impl, System& spec) {
  if (name == "eq") {
    return [&](uint32_t s, uint32_t u) {
      return impl.state_repr(s) == spec.state_repr(u);
    };
  }
  if (name == "fs1") {
    auto* hwq = dynamic_cast<ModelSystem<HwqModel>*>(&impl);
    auto* absq = dynamic_cast<ModelSystem<AbsQModel>*>(&spec);
    if (!hwq || !absq) throw BadConfig("fs1 relates hwq-family systems to absq");
    return [hwq, absq](uint32_t s, uint32_t u) {
      return fs1_holds(hwq->state(s), hwq->model().wl, absq->state(u));
    };
  }
  if (name == "fs2") {
    auto* tss = dynamic_cast<ModelSystem<TssModel>*>(&impl);
    auto* abss = dynamic_cast<ModelSystem<AbsSModel>*>(&spec);
    if (!tss || !abss) throw BadConfig("fs2 relates tss-family systems to abss");
    return [tss, abss](uint32_t s, uint32_t u) {
      return fs2_holds(tss->model(), tss->state(s), abss->state(u));
    };
  }
  throw BadConfig("unknown relation: " + name + " (expected fs1, fs2 or eq)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounded checks for queue/stack specs, models and simulations"};
  app.require_subcommand(1);

  CommonArgs a;
  std::string impl_id, spec_id, a_id, b_id, rel_name = "eq", replay_path;
  bool general_matching = false;

  auto* cmd_list = app.add_subcommand("list-systems", "print the system registry");

  auto* cmd_explore = app.add_subcommand("explore", "enumerate reachable states");
  cmd_explore->add_option("--system", impl_id)->required();
  add_common(cmd_explore, a);

  auto* cmd_hist = app.add_subcommand("histories", "collect the bounded history set");
  cmd_hist->add_option("--system", impl_id)->required();
  add_common(cmd_hist, a);

  auto* cmd_lin = app.add_subcommand("check-lin",
                                     "brute-force linearizability of every bounded history");
  cmd_lin->add_option("--impl", impl_id)->required();
  cmd_lin->add_option("--replay", replay_path, "re-check a counterexample report");
  add_common(cmd_lin, a);

  auto* cmd_det = app.add_subcommand("check-det", "Γ-determinism of a system");
  cmd_det->add_option("--system", impl_id)->required();
  add_common(cmd_det, a);

  auto* cmd_closure = app.add_subcommand("check-closure", "library closure over bounded traces");
  cmd_closure->add_option("--system", impl_id)->required();
  add_common(cmd_closure, a);

  auto* cmd_ref = app.add_subcommand("check-refinement", "Γ-projected trace inclusion");
  cmd_ref->add_option("--impl", impl_id)->required();
  cmd_ref->add_option("--spec", spec_id)->required();
  add_common(cmd_ref, a);

  auto* cmd_heq = app.add_subcommand("check-histories-equal", "history-set equality");
  cmd_heq->add_option("--a", a_id)->required();
  cmd_heq->add_option("--b", b_id)->required();
  add_common(cmd_heq, a);

  auto* cmd_fsim = app.add_subcommand("check-fsim", "Γ-forward simulation over product pairs");
  cmd_fsim->add_option("--impl", impl_id)->required();
  cmd_fsim->add_option("--spec", spec_id)->required();
  cmd_fsim->add_option("--rel", rel_name, "fs1, fs2 or eq");
  cmd_fsim->add_flag("--general", general_matching, "sequence-searching matcher");
  cmd_fsim->add_option("--replay", replay_path, "re-check a counterexample report");
  add_common(cmd_fsim, a);

  auto* cmd_bsim = app.add_subcommand("check-bsim", "normal Γ-backward simulation");
  cmd_bsim->add_option("--lhs", a_id)->required();
  cmd_bsim->add_option("--rhs", b_id)->required();
  cmd_bsim->add_option("--rel", rel_name, "eq");
  add_common(cmd_bsim, a);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_list->parsed()) {
      for (const auto& info : list_systems()) {
        std::cout << info.id << "  (" << (info.stack_workload ? "stack" : "queue")
                  << " workload)\n    " << info.summary << "\n";
      }
      return 0;
    }

    ExplorationBounds bounds = bounds_of(a);
    ojson config{{"workload", a.workload_path},
                 {"gamma", a.gamma},
                 {"max_states", a.max_states},
                 {"max_events", a.max_events},
                 {"strict_tss", a.strict_tss}};

    if (cmd_explore->parsed()) {
      auto sys = build(impl_id, a);
      StateGraph g = reachable_graph(*sys, bounds);
      uint32_t stuck = 0;
      for (uint32_t id : g.order) {
        if (sys->successors(id).empty()) ++stuck;
      }
      if (a.json_output || !a.output_path.empty()) {
        ojson j = graph_to_json(*sys, g);
        j["stuck_states"] = stuck;
        std::ostream* out = &std::cout;
        std::ofstream f;
        if (!a.output_path.empty()) {
          f.open(a.output_path);
          out = &f;
        }
        *out << j.dump(2) << "\n";
      }
      std::cout << impl_id << ": " << g.num_states << " states, " << g.num_edges
                << " edges, " << stuck << " stuck" << (g.complete ? "" : " (partial)")
                << "\n";
      return g.complete ? 0 : 2;
    }

    if (cmd_hist->parsed()) {
      auto sys = build(impl_id, a);
      TraceSet hs = collect_histories(*sys, bounds);
      ojson arr = ojson::array();
      for (const auto& h : hs.items) arr.push_back(trace_to_json(h));
      if (a.json_output) {
        std::cout << arr.dump(2) << "\n";
      } else {
        std::cout << impl_id << ": " << hs.items.size() << " histories"
                  << (hs.complete ? "" : " (partial)") << "\n";
      }
      if (!a.output_path.empty()) {
        std::ofstream f(a.output_path);
        f << arr.dump(2) << "\n";
      }
      return hs.complete ? 0 : 2;
    }

    if (cmd_lin->parsed()) {
      auto sys = build(impl_id, a);
      SequentialSpec spec = oracle_spec_for(impl_id);
      config["impl"] = impl_id;
      if (!replay_path.empty()) {
        std::ifstream f(replay_path);
        if (!f) throw BadConfig("cannot read replay file: " + replay_path);
        ojson j = ojson::parse(f);
        History h{trace_from_json(j.at("result").at("trace"))};
        LinWitness w = is_linearizable(h, spec);
        Verdict v = w.pass ? Verdict::pass("linearizability")
                           : Verdict::fail("linearizability", "no linearization exists",
                                           h.events);
        return emit("check-lin", a, config, v);
      }
      TraceSet hs = collect_histories(*sys, bounds);
      if (!hs.complete) {
        return emit("check-lin", a, config,
                    Verdict::bound_exceeded("linearizability", "history collection"));
      }
      for (const auto& events : hs.items) {
        History h{events};
        LinWitness w = is_linearizable(h, spec);
        if (!w.pass) {
          Verdict v = Verdict::fail("linearizability", "no linearization exists", h.events);
          v.notes.push_back("histories checked: " + std::to_string(hs.items.size()));
          return emit("check-lin", a, config, v);
        }
      }
      Verdict v = Verdict::pass("linearizability");
      v.notes.push_back("histories checked: " + std::to_string(hs.items.size()));
      return emit("check-lin", a, config, v);
    }

    if (cmd_det->parsed()) {
      auto sys = build(impl_id, a);
      config["system"] = impl_id;
      return emit("check-det", a, config, check_gamma_deterministic(*sys, gamma_of(a), bounds));
    }

    if (cmd_closure->parsed()) {
      auto sys = build(impl_id, a);
      config["system"] = impl_id;
      return emit("check-closure", a, config, check_library_closure(*sys, bounds));
    }

    if (cmd_ref->parsed()) {
      auto impl = build(impl_id, a);
      auto spec = build(spec_id, a);
      config["impl"] = impl_id;
      config["spec"] = spec_id;
      return emit("check-refinement", a, config,
                  check_gamma_refinement(*impl, *spec, gamma_of(a), bounds));
    }

    if (cmd_heq->parsed()) {
      auto sys_a = build(a_id, a);
      auto sys_b = build(b_id, a);
      config["a"] = a_id;
      config["b"] = b_id;
      return emit("check-histories-equal", a, config, histories_equal(*sys_a, *sys_b, bounds));
    }

    if (cmd_fsim->parsed()) {
      auto impl = build(impl_id, a);
      auto spec = build(spec_id, a);
      config["impl"] = impl_id;
      config["spec"] = spec_id;
      config["rel"] = rel_name;
      RelationFn rel = make_relation(rel_name, *impl, *spec);
      if (!replay_path.empty()) {
        std::ifstream f(replay_path);
        if (!f) throw BadConfig("cannot read replay file: " + replay_path);
        ojson j = ojson::parse(f);
        auto trace = trace_from_json(j.at("result").at("trace"));
        return emit("check-fsim", a, config,
                    replay_forward_counterexample(*impl, *spec, gamma_of(a), rel, trace));
      }
      FsimOptions opts;
      opts.general = general_matching;
      return emit("check-fsim", a, config,
                  check_forward_simulation(*impl, *spec, gamma_of(a), rel, bounds, opts));
    }

    if (cmd_bsim->parsed()) {
      auto lhs = build(a_id, a);
      auto rhs = build(b_id, a);
      config["lhs"] = a_id;
      config["rhs"] = b_id;
      RelationFn rel = make_relation(rel_name, *lhs, *rhs);
      return emit("check-bsim", a, config,
                  check_normal_backward_simulation(*lhs, *rhs, gamma_of(a), rel, bounds));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

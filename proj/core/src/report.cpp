#include "linlab/report.hpp"

#include <chrono>

namespace linlab {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::BoundExceeded: return "bound-exceeded";
  }
  return "?";
}

ojson label_to_json(const ActionLabel& l) {
  ojson j;
  j["kind"] = std::string(to_string(l.kind));
  j["method"] = std::string(to_string(l.method));
  j["op"] = l.op;
  if (l.value.present()) {
    if (l.value.is_empty()) {
      j["value"] = "EMPTY";
    } else {
      j["value"] = l.value.nat_value();
    }
  }
  if (!l.detail.empty()) j["detail"] = l.detail;
  return j;
}

ActionLabel label_from_json(const ojson& j) {
  ActionLabel l;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "call") l.kind = Kind::Call;
  else if (kind == "ret") l.kind = Kind::Ret;
  else if (kind == "lin") l.kind = Kind::Lin;
  else if (kind == "com") l.kind = Kind::Com;
  else l.kind = Kind::Internal;
  auto m = method_from_string(j.value("method", ""));
  l.method = m.value_or(Method::None);
  l.op = j.at("op").get<uint32_t>();
  if (j.contains("value")) {
    if (j["value"].is_string()) {
      l.value = Val::empty();
    } else {
      l.value = Val::nat(j["value"].get<int32_t>());
    }
  }
  l.detail = j.value("detail", "");
  return l;
}

ojson trace_to_json(std::span<const ActionLabel> trace) {
  ojson arr = ojson::array();
  for (const auto& l : trace) arr.push_back(label_to_json(l));
  return arr;
}

std::vector<ActionLabel> trace_from_json(const ojson& j) {
  std::vector<ActionLabel> out;
  for (const auto& e : j) out.push_back(label_from_json(e));
  return out;
}

ojson verdict_to_json(const Verdict& v) {
  ojson j;
  j["status"] = std::string(to_string(v.status));
  j["check"] = v.check;
  if (!v.obligation.empty()) j["obligation"] = v.obligation;
  if (!v.trace.empty()) j["trace"] = trace_to_json(v.trace);
  if (!v.impl_state.empty() || !v.spec_state.empty()) {
    j["pair"] = ojson{{"impl", v.impl_state}, {"spec", v.spec_state}};
  }
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

ojson graph_to_json(System& sys, const StateGraph& g) {
  ojson j;
  j["complete"] = g.complete;
  ojson states = ojson::array();
  for (uint32_t id : g.order) {
    states.push_back(ojson{{"id", id}, {"repr", sys.state_repr(id)}});
  }
  j["states"] = std::move(states);
  ojson edges = ojson::array();
  for (uint32_t id : g.order) {
    for (const CEdge& e : sys.successors(id)) {
      edges.push_back(
          ojson{{"from", id}, {"label", label_to_json(sys.label(e.label))}, {"to", e.to}});
    }
  }
  j["edges"] = std::move(edges);
  return j;
}

ojson run_report(const std::string& command, const ojson& config, const Verdict& v) {
  ojson j;
  j["command"] = command;
  j["config"] = config;
  j["result"] = verdict_to_json(v);
  j["timestamp"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  return j;
}

}  // namespace linlab

#pragma once

#include <string>

#include "json.hpp"
#include "linlab/explore.hpp"
#include "linlab/history.hpp"
#include "linlab/verdict.hpp"

namespace linlab {

using ojson = nlohmann::ordered_json;

ojson label_to_json(const ActionLabel& l);
ActionLabel label_from_json(const ojson& j);

ojson trace_to_json(std::span<const ActionLabel> trace);
std::vector<ActionLabel> trace_from_json(const ojson& j);

ojson verdict_to_json(const Verdict& v);

// {"states":[{"id","repr"}], "edges":[{"from","label","to"}]}
ojson graph_to_json(System& sys, const StateGraph& g);

// Full run report; key order is fixed so identical configs give
// byte-identical output apart from the timestamp field.
ojson run_report(const std::string& command, const ojson& config, const Verdict& v);

}  // namespace linlab

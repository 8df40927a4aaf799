#pragma once

#include <string>
#include <vector>

#include "linlab/action.hpp"

namespace linlab {

enum class Status : uint8_t { Pass, Fail, BoundExceeded };

std::string_view to_string(Status s);

// A Fail verdict always carries enough to replay: the trace that leads to the
// violation and the obligation that broke. Pass verdicts may carry a witness.
struct Verdict {
  Status status = Status::Pass;
  std::string check;
  std::string obligation;
  std::vector<ActionLabel> trace;
  std::string impl_state;
  std::string spec_state;
  std::vector<std::string> notes;

  bool passed() const { return status == Status::Pass; }

  static Verdict pass(std::string check) {
    Verdict v;
    v.check = std::move(check);
    return v;
  }
  static Verdict fail(std::string check, std::string obligation,
                      std::vector<ActionLabel> trace = {}) {
    Verdict v;
    v.status = Status::Fail;
    v.check = std::move(check);
    v.obligation = std::move(obligation);
    v.trace = std::move(trace);
    return v;
  }
  static Verdict bound_exceeded(std::string check, std::string what) {
    Verdict v;
    v.status = Status::BoundExceeded;
    v.check = std::move(check);
    v.obligation = std::move(what);
    return v;
  }
};

}  // namespace linlab

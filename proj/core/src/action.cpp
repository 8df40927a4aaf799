#include "linlab/action.hpp"

namespace linlab {

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::Call: return "call";
    case Kind::Ret: return "ret";
    case Kind::Lin: return "lin";
    case Kind::Com: return "com";
    case Kind::Internal: return "internal";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::None: return "";
    case Method::Enq: return "enq";
    case Method::Deq: return "deq";
    case Method::Push: return "push";
    case Method::Pop: return "pop";
  }
  return "?";
}

std::optional<Method> method_from_string(std::string_view s) {
  if (s == "enq") return Method::Enq;
  if (s == "deq") return Method::Deq;
  if (s == "push") return Method::Push;
  if (s == "pop") return Method::Pop;
  if (s.empty()) return Method::None;
  return std::nullopt;
}

std::string Val::str() const {
  if (!present()) return "-";
  if (is_empty()) return "EMPTY";
  return std::to_string(v_);
}

std::string ActionLabel::str() const {
  std::string m(to_string(method));
  std::string k = std::to_string(op);
  switch (kind) {
    case Kind::Call:
      return value.present() ? "inv(" + m + "," + value.str() + "," + k + ")"
                             : "inv(" + m + "," + k + ")";
    case Kind::Ret:
      return value.present() ? "ret(" + m + "," + value.str() + "," + k + ")"
                             : "ret(" + m + "," + k + ")";
    case Kind::Lin:
      return "lin(" + m + "," + value.str() + "," + k + ")";
    case Kind::Com:
      return "com(" + m + "," + value.str() + "," + k + ")";
    case Kind::Internal:
      return detail + "(" + k + ")";
  }
  return "?";
}

ActionLabel inv(Method m, Val v, uint32_t op) { return {Kind::Call, m, op, v, {}}; }
ActionLabel inv(Method m, uint32_t op) { return {Kind::Call, m, op, Val{}, {}}; }
ActionLabel ret(Method m, Val v, uint32_t op) { return {Kind::Ret, m, op, v, {}}; }
ActionLabel ret(Method m, uint32_t op) { return {Kind::Ret, m, op, Val{}, {}}; }
ActionLabel lin(Method m, Val v, uint32_t op) { return {Kind::Lin, m, op, v, {}}; }
ActionLabel com(Method m, Val v, uint32_t op) { return {Kind::Com, m, op, v, {}}; }
ActionLabel internal(Method m, uint32_t op, std::string detail) {
  return {Kind::Internal, m, op, Val{}, std::move(detail)};
}

std::string_view Gamma::name() const {
  switch (preset) {
    case Preset::CR: return "CR";
    case Preset::CRLinDeq: return "CR+LinDeq";
    case Preset::CRComPop: return "CR+ComPop";
    case Preset::Full: return "full";
  }
  return "?";
}

std::optional<Gamma> Gamma::parse(std::string_view s) {
  if (s == "CR" || s == "cr") return Gamma{Preset::CR};
  if (s == "CR+LinDeq" || s == "cr+lindeq") return Gamma{Preset::CRLinDeq};
  if (s == "CR+ComPop" || s == "cr+compop") return Gamma{Preset::CRComPop};
  if (s == "full" || s == "Full") return Gamma{Preset::Full};
  return std::nullopt;
}

}  // namespace linlab

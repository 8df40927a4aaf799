#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "linlab/hash.hpp"

namespace linlab {

enum class Kind : uint8_t { Call, Ret, Lin, Com, Internal };
enum class Method : uint8_t { None, Enq, Deq, Push, Pop };

std::string_view to_string(Kind k);
std::string_view to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

// A natural number or the distinguished EMPTY; a default Val carries nothing
// (calls of deq/pop and returns of enq/push have no value field).
class Val {
public:
  constexpr Val() = default;
  static constexpr Val nat(int32_t n) { return Val(n); }
  static constexpr Val empty() { return Val(kEmpty); }

  constexpr bool present() const { return v_ != kNone; }
  constexpr bool is_empty() const { return v_ == kEmpty; }
  constexpr bool is_nat() const { return v_ >= 0; }
  constexpr int32_t nat_value() const { return v_; }
  constexpr int32_t raw() const { return v_; }

  auto operator<=>(const Val&) const = default;
  std::string str() const;

private:
  static constexpr int32_t kNone = -2;
  static constexpr int32_t kEmpty = -1;
  constexpr explicit Val(int32_t v) : v_(v) {}
  int32_t v_ = kNone;
};

// Field order matters: the defaulted comparison is the canonical label order
// (kind, method, op, value, detail) used to keep exploration deterministic.
struct ActionLabel {
  Kind kind = Kind::Internal;
  Method method = Method::None;
  uint32_t op = 0;
  Val value;
  std::string detail;

  auto operator<=>(const ActionLabel&) const = default;

  bool is_call() const { return kind == Kind::Call; }
  bool is_ret() const { return kind == Kind::Ret; }
  bool is_call_or_ret() const { return kind == Kind::Call || kind == Kind::Ret; }

  uint64_t hash() const {
    return Hasher{}
        .add(static_cast<uint8_t>(kind))
        .add(static_cast<uint8_t>(method))
        .add(op)
        .add(value.raw())
        .add(std::string_view(detail))
        .value();
  }

  std::string str() const;
};

ActionLabel inv(Method m, Val v, uint32_t op);
ActionLabel inv(Method m, uint32_t op);
ActionLabel ret(Method m, Val v, uint32_t op);
ActionLabel ret(Method m, uint32_t op);
ActionLabel lin(Method m, Val v, uint32_t op);
ActionLabel com(Method m, Val v, uint32_t op);
ActionLabel internal(Method m, uint32_t op, std::string detail);

// Observable alphabets. C∪R is always contained; the presets add the
// dequeue linearization-point or pop commit-point actions.
struct Gamma {
  enum class Preset : uint8_t { CR, CRLinDeq, CRComPop, Full };
  Preset preset = Preset::CR;

  bool contains(const ActionLabel& a) const {
    switch (preset) {
      case Preset::Full: return true;
      case Preset::CR: return a.is_call_or_ret();
      case Preset::CRLinDeq:
        return a.is_call_or_ret() || (a.kind == Kind::Lin && a.method == Method::Deq);
      case Preset::CRComPop:
        return a.is_call_or_ret() || (a.kind == Kind::Com && a.method == Method::Pop);
    }
    return false;
  }

  std::string_view name() const;
  static std::optional<Gamma> parse(std::string_view s);
};

}  // namespace linlab

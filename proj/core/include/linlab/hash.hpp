#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace linlab {

// Deterministic FNV-1a hashing. std::hash is implementation-defined, and
// regression state counts and canonical exploration orders must not depend
// on the standard library in use.
class Hasher {
public:
  Hasher& add(uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (v >> (i * 8)) & 0xff;
      h_ *= 0x100000001b3ull;
    }
    return *this;
  }
  Hasher& add(int64_t v) { return add(static_cast<uint64_t>(v)); }
  Hasher& add(uint32_t v) { return add(static_cast<uint64_t>(v)); }
  Hasher& add(int32_t v) { return add(static_cast<uint64_t>(static_cast<int64_t>(v))); }
  Hasher& add(uint8_t v) { return add(static_cast<uint64_t>(v)); }
  Hasher& add(std::string_view s) {
    add(static_cast<uint64_t>(s.size()));
    for (char c : s) {
      h_ ^= static_cast<uint8_t>(c);
      h_ *= 0x100000001b3ull;
    }
    return *this;
  }
  uint64_t value() const { return h_; }

private:
  uint64_t h_ = 0xcbf29ce484222325ull;
};

inline uint64_t hash_mix(uint64_t a, uint64_t b) {
  return Hasher{}.add(a).add(b).value();
}

}  // namespace linlab

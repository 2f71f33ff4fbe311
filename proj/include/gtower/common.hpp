#ifndef GTOWER_COMMON_HPP
#define GTOWER_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gtower {

// Bad parameters, degree mismatches, subgroup violations. CLI exit code 2.
struct spec_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Node budgets, size caps, enumeration guards. CLI exit code 3.
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search hit its result cap; callers may treat this as a size-cap stop.
struct result_cap_error : cap_error {
  using cap_error::cap_error;
};

// Internal consistency failure; indicates a bug, never expected input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a)
    throw cap_error("group order exceeds 64-bit range");
  return a * b;
}

// FNV-1a, used for table digests and report determinism digests.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t seed = 1469598103934665603ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace gtower

#endif  // GTOWER_COMMON_HPP

#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace clevy {

// Identifies one independent random stream.  Streams with different keys
// are statistically independent; the same key always replays the same
// numbers, regardless of thread count or evaluation order.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t family = 0;  // scenario / check identifier
  std::uint64_t path = 0;
  std::uint64_t branch = 0;  // 0: t >= 0 half, 1: t < 0 half, 2+: free
};

// Stable 64-bit id for a textual check label (FNV-1a).
std::uint64_t family_id(std::string_view label);

// Counter-based SplitMix64 stream.  Satisfies UniformRandomBitGenerator.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(const StreamKey& key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on the open interval (0, 1).
  double uniform();
  double exponential(double rate);

 private:
  std::uint64_t state_;
};

}  // namespace clevy

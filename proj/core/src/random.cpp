#include "clevy/random.hpp"

#include <cmath>

namespace clevy {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t family_id(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Stream::Stream(const StreamKey& key) {
  std::uint64_t s = mix(key.seed + kGolden);
  s = mix(s ^ (key.family + 2 * kGolden));
  s = mix(s ^ (key.path + 3 * kGolden));
  s = mix(s ^ (key.branch + 4 * kGolden));
  state_ = s;
}

Stream::result_type Stream::operator()() {
  state_ += kGolden;
  return mix(state_);
}

double Stream::uniform() {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::exponential(double rate) { return -std::log(uniform()) / rate; }

}  // namespace clevy

#pragma once

#include <cstdint>

namespace eraser {

// SplitMix64 finalizer (Stafford variant 13). Bijective on 64-bit words with
// full avalanche, which is all the statistical quality the simulation needs.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// Fixed stream ids, one per random purpose. Keeping them centralized avoids
// accidental reuse of the same stream for two different draws.
namespace streams {
inline constexpr std::uint64_t detuning = 0;
inline constexpr std::uint64_t global_phase = 1;
inline constexpr std::uint64_t routing = 2;
inline constexpr std::uint64_t outcome = 3;
}  // namespace streams

/// Counter-based random stream: the state is a pure function of
/// (seed, event_id, stream). Any subset of events can therefore be
/// regenerated in any order and on any number of workers with results
/// identical to a single sequential pass.
class EventRng {
 public:
  EventRng(std::uint64_t seed, std::uint64_t event_id,
           std::uint64_t stream = 0) noexcept
      : state_(mix64(seed ^ 0x8f1bbcdcbfa53e0bull) ^
               mix64(event_id ^ 0x2b7e151628aed2a6ull) ^
               mix64(stream ^ 0x452821e638d01377ull)) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with the full 53-bit mantissa.
  double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace eraser

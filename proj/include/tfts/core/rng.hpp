#pragma once
// Seeded randomness for cohort generation and fault injection.
//
// Algorithm: SplitMix64 (Steele, Lea & Flood's mixer; the sequence used by
// java.util.SplittableRandom). Substreams are keyed by strings so any
// implementation language can reproduce a cohort byte-for-byte:
//
//   stream_seed = splitmix_mix(master_seed ^ fnv1a64(key))
//
// where fnv1a64 is FNV-1a over the UTF-8 bytes of the key (offset basis
// 14695981039346656037, prime 1099511628211) and splitmix_mix is the
// SplitMix64 output function applied once. Keys used by this project:
//   "user:<user_id>"                        per-user baseline stream
//   "night:<user_id>:<date>"                per-night value/event stream
//   "fault:<user_id>:<date>"                writer fault stream
//   "corrupt:<layer>:<user_id>:<date>"      artifact corruption stream
//
// Draw order within a stream is part of each consumer's documented contract.

#include <cstdint>
#include <string_view>

namespace tfts {

constexpr std::uint64_t splitmix_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix_mix(state_);
  }

  // Uniform in [0,1) with 53 bits of mantissa.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n): floor(next_unit() * n). The tiny modulo-free
  // bias is irrelevant here and the formula is trivial to port.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(next_unit() * static_cast<double>(n));
  }

  // Uniform in [lo, hi).
  double next_range(double lo, double hi) { return lo + next_unit() * (hi - lo); }

private:
  std::uint64_t state_;
};

inline SplitMix64 substream(std::uint64_t master_seed, std::string_view key) {
  return SplitMix64(splitmix_mix(master_seed ^ fnv1a64(key)));
}

}  // namespace tfts

#pragma once

#include <cstdint>

namespace leadel {

// Counter-based draw derivation: every uniform is a pure function of
// (seed, trial, round, slot, station, sub). Trials can run in any order, or
// concurrently, and still see bit-identical randomness.
namespace rng {

inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Key prefix shared by every draw of one slot; hoisted out of station loops.
inline uint64_t slot_key(uint64_t seed, uint64_t trial, uint32_t round,
                         uint64_t slot) {
  uint64_t h = mix64(seed ^ 0x6c656164656c31ULL);
  h = mix64(h ^ trial);
  h = mix64(h ^ ((uint64_t(round) << 32) ^ slot));
  return h;
}

inline double uniform01(uint64_t slot_key, uint64_t station, uint32_t sub) {
  uint64_t h = mix64(slot_key ^ ((station << 2) | sub));
  return double(h >> 11) * 0x1.0p-53;
}

inline double uniform01(uint64_t seed, uint64_t trial, uint32_t round,
                        uint64_t slot, uint64_t station, uint32_t sub) {
  return uniform01(slot_key(seed, trial, round, slot), station, sub);
}

}  // namespace rng
}  // namespace leadel

#pragma once

#include <cstdint>

namespace hignn {

// Counter-based deterministic RNG: a splitmix64 hash of (seed, stream,
// counter). Values are reproducible regardless of call interleaving, which
// is what keeps seeded training runs bit-identical.
struct CounterRng {
  uint64_t seed = 0;
  uint64_t stream = 0;
  uint64_t counter = 0;

  CounterRng(uint64_t seed, uint64_t stream)
      : seed(seed), stream(stream) {}

  static uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  uint64_t next_u64() {
    uint64_t h = mix(seed);
    h = mix(h ^ stream);
    h = mix(h ^ counter++);
    return h;
  }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [-w, w]
  double next_uniform(double w) {
    return (2.0 * next_double() - 1.0) * w;
  }

  // integer in [0, n)
  uint64_t next_below(uint64_t n) { return next_u64() % n; }
};

// stable 64-bit string hash (FNV-1a), used to derive parameter init streams
inline uint64_t stable_hash(const char* s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 0x100000001b3ULL;
  return h;
}

}  // namespace hignn

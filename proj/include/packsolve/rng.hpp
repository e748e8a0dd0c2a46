#pragma once

#include <cstdint>
#include <random>

namespace packsolve {

// Deterministic random stream. std::mt19937_64 output is pinned by the
// standard, but the std distributions are not, so the few distributions we
// need are implemented here to keep runs byte-reproducible across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(scramble(seed)), seed_material_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], inclusive. Modulo bias is far below any
  // tolerance used in this project.
  int next_int(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  size_t next_index(size_t n) { return static_cast<size_t>(next_u64() % n); }

  double next_range(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  bool next_bool(double p_true) { return next_double() < p_true; }

  // Derives an independent stream; used to give parallel jobs their own rng.
  Rng fork(uint64_t stream) const {
    return Rng(seed_material_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

 private:
  static uint64_t scramble(uint64_t x) {
    // splitmix64 finalizer; spreads small seeds over the whole state space.
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
  uint64_t seed_material_ = 0;
};

}  // namespace packsolve

#pragma once

#include <cstdint>
#include <random>

namespace kpbit {

/// SplitMix64 finalizer. Used for seed mixing only.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. All conversions to real and integer variates are done here
/// rather than through <random> distributions, whose algorithms are
/// implementation-defined, so a seed reproduces the same draws on every
/// conforming toolchain.
///
/// Sub-streams: derive(master, index) seeds a fresh engine with
/// splitmix64(master ^ splitmix64(index)). Trials, grid points and cycles
/// each get their own index.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derive(std::uint64_t master_seed, std::uint64_t index) {
    return RngStream(splitmix64(master_seed ^ splitmix64(index)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1, 1).
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  /// Uniform integer in [0, m). m must be positive.
  std::uint64_t uniform_int(std::uint64_t m);

  /// Standard normal variate (Marsaglia polar method, no cached pair).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace kpbit

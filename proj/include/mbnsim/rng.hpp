#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mbnsim {

/// 64-bit seed. Wrapped so that seeds are never confused with counts.
struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
};

/// Independent random streams consumed within one trial.
enum class Stream : std::uint64_t { Geometry = 1, Channel = 2 };

namespace detail {
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

/// Counter-based substream seed: a pure function of (master, trial, stream),
/// so trials can run in any order or on any thread.
constexpr Seed derive_seed(Seed master, std::uint64_t trial, Stream stream) noexcept {
  std::uint64_t h = detail::splitmix64(master.value);
  h = detail::splitmix64(h ^ (trial * 0xd1b54a32d192ed03ULL));
  h = detail::splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return Seed{h};
}

/// Thin wrapper over mt19937_64 with platform-independent variate
/// transforms (the std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Unit-mean exponential variate.
  double exponential() { return -std::log1p(-uniform()); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mbnsim

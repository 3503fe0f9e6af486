// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace gaussggm {

/// SplitMix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded 64-bit random stream.
///
/// Sub-streams for parallel workers are derived as
/// engine seed = splitmix64(seed ^ splitmix64(worker_id + 1)), so worker 0 of
/// seed s is distinct from the root stream of seed s.
class RandomStream {
 public:
  using Engine = std::mt19937_64;

  explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  static RandomStream for_worker(std::uint64_t seed, std::uint64_t worker_id) {
    return RandomStream(seed ^ splitmix64(worker_id + 1));
  }

  /// Standard normal draw.
  double normal() { return normal_(engine_); }

  Engine& engine() noexcept { return engine_; }

 private:
  Engine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace gaussggm

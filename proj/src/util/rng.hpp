#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vc2 {

/// Seeded generator with platform-independent output. Streams are split by
/// (seed, name, index) so that independent tasks never share state and the
/// result of a run does not depend on how work is scheduled.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng derive(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace vc2

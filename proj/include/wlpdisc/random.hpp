#pragma once

#include <cstdint>
#include <random>

namespace wlpdisc {

/// Seedable stream of uniforms on [0,1).
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Streams are split by hashing (seed, stream) through
/// std::seed_seq, which is also fully specified, so results reproduce on
/// every conforming platform. Doubles are built from the top 53 bits of each
/// draw instead of std::uniform_real_distribution, whose algorithm is
/// implementation-defined.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double prob) { return uniform() < prob; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wlpdisc

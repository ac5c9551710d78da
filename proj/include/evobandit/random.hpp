#pragma once

#include <cstdint>
#include <random>

namespace evobandit {

// Deterministic random stream. The engine (mt19937_64) is pinned by the C++
// standard; all mappings from raw engine output to values are implemented
// here rather than delegated to stdlib distributions, so seeded results are
// reproducible across compilers, not just within one build.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t raw() { return engine_(); }

  // uniform in [0, n), rejection sampled (no modulo bias); n >= 1
  std::size_t uniform_index(std::size_t n);

  // fair bit
  int coin() { return static_cast<int>(engine_() & 1u); }

  // uniform double in [0, 1), 53-bit resolution
  double unit_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return unit_uniform() < p; }

  // standard normal via Box-Muller, cosine branch only (no cached second
  // value): the single canonical normal generator of the repository.
  double gaussian();

  // independent stream deterministically derived from this stream's seed and
  // a key; consuming draws from the parent does not affect the derivation.
  RandomStream derive(std::uint64_t key) const {
    return RandomStream(mix(seed_, key));
  }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t key);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace evobandit

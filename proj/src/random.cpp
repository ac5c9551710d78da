#include "evobandit/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evobandit {

std::size_t RandomStream::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be >= 1");
  if (n == 1) return 0;
  // rejection from the largest multiple of n that fits in 64 bits
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return static_cast<std::size_t>(v % bound);
}

double RandomStream::gaussian() {
  // u1 in (0,1] so log never sees zero
  const double u1 = 1.0 - unit_uniform();
  const double u2 = unit_uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::mix(std::uint64_t seed, std::uint64_t key) {
  // splitmix64 finalizer applied twice over (seed, key)
  auto finalize = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return finalize(seed ^ finalize(key + 0x632be59bd9b4e019ULL));
}

}  // namespace evobandit

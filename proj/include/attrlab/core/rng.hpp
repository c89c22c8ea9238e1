#pragma once

#include <cstdint>
#include <string_view>

namespace attrlab {

// Stateless counter-based generator (SplitMix64 finalizer). One master seed plus a
// stream label derive a key; every draw is a pure function of (key, counter), so
// parallel workers reproduce exactly regardless of scheduling.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream) : key_(derive(seed, stream)) {}

  std::uint64_t bits(std::uint64_t counter) const { return mix(key_ + counter * 0x9e3779b97f4a7c15ull); }

  // Uniform in [0, 1), 53 random bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  double uniform(std::uint64_t counter, double a, double b) const {
    return a + (b - a) * uniform(counter);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }
  static std::uint64_t derive(std::uint64_t seed, std::string_view stream) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : stream) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return mix(seed ^ mix(h));
  }

  std::uint64_t key_;
};

}  // namespace attrlab

#pragma once

#include <cstdint>
#include <string_view>

namespace pcgpen {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

// Counter-based generator: draw i of a stream is mix64(key + (i + 1) * golden),
// so any draw is a pure function of (key, i) and independent streams are
// obtained by hashing a stream name into the key. Identical on every platform
// for the integer and uniform outputs.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  // Stream `name` of the generator family selected by `seed`.
  static CounterRng stream(std::uint64_t seed, std::string_view name);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  // Uniform integer on [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Standard normal via the Marsaglia polar method.
  double normal();
  // Gamma(shape, 1): Marsaglia-Tsang squeeze for shape >= 1, and for
  // shape < 1 the boost G(shape) = G(shape + 1) * U^(1/shape).
  double gamma(double shape);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pcgpen

#include "pcgpen/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace pcgpen {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// FNV-1a over the stream name.
std::uint64_t hash_name(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}
}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng CounterRng::stream(std::uint64_t seed, std::string_view name) {
  return CounterRng(mix64(mix64(seed) ^ hash_name(name)));
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::uniform_open() {
  for (;;) {
    const double u = uniform();
    if (u > 0.0) return u;
  }
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("CounterRng::below: bound must be positive");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r < limit) return r % bound;
  }
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }
}

double CounterRng::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("CounterRng::gamma: shape must be positive");
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::exp(std::log(uniform_open()) / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace pcgpen

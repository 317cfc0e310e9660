#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace ailrs {

// splitmix64 finalizer; also used to derive decorrelated seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view name) {
  return mix64(master ^ fnv1a64(name));
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(base ^ mix64(index));
}

// Deterministic stream over splitmix64. All distributions are implemented
// here (not via <random>) so that sequences are identical across standard
// libraries and platforms.
class RngStream {
 public:
  RngStream() : state_(0) {}
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller; second value cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Named streams derived from one master seed. Every stochastic subsystem
// consumes its own stream; there is no global generator.
struct SeedStreams {
  RngStream directions;
  RngStream env;
  RngStream minibatch;
  RngStream eval;
  RngStream disc_init;
};

inline SeedStreams seed_streams(std::uint64_t master_seed) {
  return SeedStreams{
      RngStream(derive_seed(master_seed, "directions")),
      RngStream(derive_seed(master_seed, "env")),
      RngStream(derive_seed(master_seed, "minibatch")),
      RngStream(derive_seed(master_seed, "eval")),
      RngStream(derive_seed(master_seed, "disc_init")),
  };
}

}  // namespace ailrs

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "swiss/types.hpp"

namespace swiss {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed for item i of a named sweep.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t i) {
  return splitmix64(seed ^ splitmix64(tag ^ splitmix64(i)));
}

// Deterministic RNG. mt19937_64 is fully specified by the standard and the
// uniform draw below avoids std::uniform_real_distribution, whose output is
// implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // [0, 1)
  double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // [0, n)
  int below(int n) { return static_cast<int>(unit() * static_cast<double>(n)); }

  // Uniform point of the open disc Delta(center, radius), by rejection from the
  // bounding square. The acceptance margin keeps |p - center| strictly below
  // radius even after rounding.
  Complex in_disc(Complex center, double radius) {
    for (;;) {
      double x = range(-radius, radius);
      double y = range(-radius, radius);
      if (x * x + y * y <= radius * radius * (1.0 - 1e-12)) {
        return center + Complex(x, y);
      }
    }
  }

  // Uniform point (by area) of the closed annulus lo <= |p| <= hi.
  Complex in_annulus(double lo, double hi) {
    double r = std::sqrt(range(lo * lo, hi * hi));
    double t = range(0.0, kTau);
    return Complex(r * std::cos(t), r * std::sin(t));
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace swiss

#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace swiss {

using Complex = std::complex<double>;

inline constexpr double kTau = 2.0 * std::numbers::pi;

// Thrown when the disc placement policy exhausts its retry budget.
class ConstructionError : public std::runtime_error {
public:
  ConstructionError(const std::string& msg, int annulus)
      : std::runtime_error(msg), annulus_(annulus) {}
  int annulus() const { return annulus_; }

private:
  int annulus_;
};

// Evaluation requested within 1e-13 of a pole.
class PoleEvaluationError : public std::domain_error {
  using std::domain_error::domain_error;
};

// Residue oracle cannot be applied (a pole sits on or too close to T).
class OracleInapplicable : public std::domain_error {
  using std::domain_error::domain_error;
};

// random_member could not satisfy its placement constraints.
class GenerationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A check was invoked on inputs violating its contract (e.g. a pole on a contour).
class PreconditionViolation : public std::domain_error {
  using std::domain_error::domain_error;
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace swiss

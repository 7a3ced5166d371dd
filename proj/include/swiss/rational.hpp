#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "json.hpp"
#include "swiss/geometry.hpp"
#include "swiss/types.hpp"

namespace swiss {

// Dense complex polynomial, coefficients ascending by degree. The zero
// polynomial is the empty list; otherwise the top coefficient is nonzero.
struct Polynomial {
  std::vector<Complex> coef;

  static Polynomial zero() { return {}; }
  static Polynomial constant(Complex c);
  // a * z^n
  static Polynomial monomial(int n, Complex a = Complex(1.0, 0.0));

  int degree() const { return static_cast<int>(coef.size()) - 1; }
  bool is_zero() const { return coef.empty(); }
  void trim();

  Complex eval(Complex z) const;
  Polynomial derivative() const;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, Complex s);

struct PoleFactor {
  Complex pole;
  int mult = 1;
};

// numerator / prod_j (z - pole_j)^mult_j, poles pairwise distinct. Poles are
// construction-time data; nothing here ever root-finds.
struct RationalFunction {
  Polynomial num;
  std::vector<PoleFactor> factors;

  static RationalFunction one() { return {Polynomial::constant(Complex(1.0, 0.0)), {}}; }
  static RationalFunction constant(Complex c) { return {Polynomial::constant(c), {}}; }
  // z^n for n >= 0, z^-|n| (pole at 0) for n < 0.
  static RationalFunction power(int n);

  bool is_constant() const { return factors.empty() && num.degree() <= 0; }

  // Scalar evaluation; throws PoleEvaluationError within 1e-13 of a pole.
  // Runs through the batch kernels so scalar and batched results agree bitwise.
  Complex evaluate(Complex z) const;

  // Kernel-path evaluation at n points, no pole guard (quadrature enforces
  // clearance on its contours).
  void eval_batch(const double* zr, const double* zi, std::size_t n,
                  double* outr, double* outi) const;

  // Evaluation at z = center + u for offset arrays u. Denominator factors are
  // computed as (u - (pole - center)), so a pole close to the circle keeps
  // full relative accuracy even when |z - pole| is far below |z|.
  void eval_batch_centered(Complex center, const double* ur, const double* ui, std::size_t n,
                           double* outr, double* outi) const;

  // Exact symbolic derivative, cancellation-free:
  //   (P' L - P M) / prod (z - p_j)^(m_j + 1)
  // with L = prod (z - p_j) and M = sum_j m_j prod_{i != j} (z - p_i).
  RationalFunction derivative() const;
};

RationalFunction add(const RationalFunction& f, const RationalFunction& g);
RationalFunction multiply(const RationalFunction& f, const RationalFunction& g);
RationalFunction scale(const RationalFunction& f, Complex c);

// Minimum over poles of distance_to_X; +max double when f has no poles.
double pole_clearance(const RationalFunction& f, const SwissCheese& cheese);

inline constexpr double kNoPoleClearance = std::numeric_limits<double>::max();

struct MemberOptions {
  double inside_fraction = 0.7;  // chance a pole goes inside a deleted disc
  bool allow_outside = true;
  double outside_lo = 1.3;       // annulus for outside poles; lo is clamped
  double outside_hi = 2.2;       //   to at least 1 + min_clearance
  int max_mult = 2;              // multiplicity cap for outside poles (inside stay simple)
  double pole_separation = 1e-3; // pairwise distance between drawn poles
  std::vector<Complex> avoid;    // extra points the poles must keep away from
  double sup_cap = 100.0;        // redraw while the sampled sup of f on T exceeds this
  double sup_cap_deriv = 1e3;    // same for f'
};

// Deterministic test-family generator: numerator coefficients in the unit box,
// poles inside deleted discs (at distance >= min_clearance from the boundary)
// or outside the closed disc of radius outside_lo.
RationalFunction random_member(const SwissCheese& cheese, int max_degree, int max_poles,
                               double min_clearance, std::uint64_t seed,
                               const MemberOptions& opts = {});

nlohmann::ordered_json rf_to_json(const RationalFunction& f);
RationalFunction rf_from_json(const nlohmann::ordered_json& j);

}  // namespace swiss

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "swiss/rational.hpp"
#include "swiss/types.hpp"

namespace swiss {

struct QuadratureSpec {
  int initial_nodes = 16;       // power of two, >= 16
  int max_doublings = 12;       // 16 << 12 = 65536 nodes at the cap
  double rel_tolerance = 1e-12; // >= 1e-14

  void validate() const;
};

struct IntegralResult {
  Complex value{0.0, 0.0};
  int nodes_used = 0;
  double est_error = 0.0;
  bool converged = false;
};

enum class Orientation { Ccw, Cw };

// Evaluates the integrand on a full node batch. Nodes are passed as the
// circle center plus exact offset arrays (u = radius * e^{i theta}), so
// integrands can keep full relative accuracy near poles that hug the circle.
using BatchIntegrand =
    std::function<void(Complex center, std::span<const double> ur, std::span<const double> ui,
                       std::span<double> outr, std::span<double> outi)>;

// Trapezoidal rule on z = center + radius e^{i theta} over equispaced theta,
// nodes doubled until two successive values differ by at most
// rel_tolerance * (1 + |value|) plus the summation noise floor
// (1e-13 times the term-magnitude sum), or max_doublings is reached.
// Exponentially accurate for integrands analytic near the circle. Summation
// is compensated and in fixed index order; Cw exactly negates the Ccw value.
IntegralResult circle_integral(const BatchIntegrand& h, Complex center, double radius,
                               Orientation orientation, const QuadratureSpec& spec);

// Convenience wrapper for pointwise integrands.
IntegralResult circle_integral_fn(const std::function<Complex(Complex)>& h, Complex center,
                                  double radius, Orientation orientation,
                                  const QuadratureSpec& spec);

// Integral over T of f'(z) g(z) dz, counterclockwise. Requires every pole of
// f and g to be at least 1e-9 away from T.
IntegralResult pairing_T(const RationalFunction& f, const RationalFunction& g,
                         const QuadratureSpec& spec);

// 2 pi i times the sum of residues of f' g at poles strictly inside the unit
// disc, computed by series division at construction-known poles. No
// quadrature anywhere: this is the independent cross-check of pairing_T.
// Throws OracleInapplicable if a pole lies within 1e-9 of T.
Complex residue_oracle_T(const RationalFunction& f, const RationalFunction& g);

// Residue of F at factors[k].pole (series division of the shifted numerator by
// the shifted co-factors, in extended precision). Exposed for tests.
Complex residue_at(const RationalFunction& F, std::size_t factor_index);

// Integral over [0, 2pi) of |f(e^{i theta})| d theta, same doubling scheme.
// The value is real and returned in IntegralResult::value.real().
IntegralResult l1_norm_T(const RationalFunction& f, const QuadratureSpec& spec);

// Cos/sin tables for the N equispaced angles; cached per N.
struct NodeTable {
  std::vector<double> cos_t;
  std::vector<double> sin_t;
};
std::shared_ptr<const NodeTable> unit_nodes(int n);

// Caches integrand-independent samples of a fixed function on a fixed circle,
// keyed by node count. Lets nested integrals reuse the expensive evaluations
// across many kernel positions.
class CircleCache {
public:
  CircleCache(const RationalFunction& f, Complex center, double radius)
      : f_(&f), center_(center), radius_(radius) {}

  struct Samples {
    std::vector<double> ur, ui;  // node offsets from the circle center
    std::vector<double> fr, fi;  // f at center + u
  };

  const Samples& at(std::size_t n);
  Complex center() const { return center_; }
  double radius() const { return radius_; }

private:
  const RationalFunction* f_;
  Complex center_;
  double radius_;
  std::map<std::size_t, Samples> cache_;
};

}  // namespace swiss

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "swiss/geometry.hpp"
#include "swiss/norms.hpp"
#include "swiss/quadrature.hpp"
#include "swiss/rational.hpp"

namespace swiss {

using CheckValue = std::variant<double, Complex>;

struct CheckRecord {
  std::string check_name;
  CheckValue lhs{0.0};
  CheckValue rhs{0.0};
  double defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string inputs_digest;
  std::string note;  // diagnostics (non-convergence, precondition issues)
};

// Named tolerances, pinned here; overridable per run.
struct CheckTolerances {
  double oracle_abs = 1e-9;
  double oracle_rel = 1e-9;
  double monomial = 1e-10;
  double cyclicity = 1e-9;
  double leibniz = 1e-8;
  double morris = 1e-8;
  double split = 1e-8;
  double split_poly_h2 = 1e-11;
  double fubini = 1e-8;
  double deflection = 1e-9;
  double restriction = 1e-9;
  double l1_demo = 1e-9;
  double sup_monomial = 1e-12;
};

// The derivation functional: D(f)(g) = integral over T of f'(z) g(z) dz.
IntegralResult derivation_result(const RationalFunction& f, const RationalFunction& g,
                                 const QuadratureSpec& spec);
Complex derivation(const RationalFunction& f, const RationalFunction& g,
                   const QuadratureSpec& spec);

// |D(f)(g) + D(g)(f)| <= tol * (1 + |D(f)(g)|). With g = 1 this reduces to
// the forced case D(f)(1) = 0.
CheckRecord cyclicity_check(const RationalFunction& f, const RationalFunction& g,
                            const QuadratureSpec& spec, double tol = 1e-9);

// |D(fg)(h) - D(f)(gh) - D(g)(fh)| <= tol * (1 + max term).
CheckRecord leibniz_check(const RationalFunction& f, const RationalFunction& g,
                          const RationalFunction& h, const QuadratureSpec& spec,
                          double tol = 1e-8);

// |D(f)(g)| <= 4 pi (sum r/s^2) |f|_X |g|_X, with slack tol * (1 + |f|_X |g|_X).
CheckRecord morris_bound_check(const RationalFunction& f, const RationalFunction& g,
                               const SwissCheese& cheese, const QuadratureSpec& spec,
                               double tol = 1e-8);

struct CauchySplitDetail {
  std::vector<Complex> z;        // sample points on T
  std::vector<Complex> f_prime;  // direct derivative values
  std::vector<Complex> h1;       // outer-circle Cauchy integral
  std::vector<Complex> h2;       // deleted-circle Cauchy integrals (cw)
  double max_defect = 0.0;
  double max_f_prime = 0.0;
  double max_h2 = 0.0;
  bool converged = true;
};

// f' = h1 + h2 at 32 points of T, where h_j(z) = (1/2 pi i) times the Cauchy
// integral of f(w)/(w-z)^2 over |w| = rho (ccw) resp. all deleted circles (cw).
CauchySplitDetail cauchy_split_detail(const RationalFunction& f, const SwissCheese& cheese,
                                      double rho, const QuadratureSpec& spec);
CheckRecord cauchy_split_check(const RationalFunction& f, const SwissCheese& cheese, double rho,
                               const QuadratureSpec& spec, double tol = 1e-8);

// Both iterated orders of the double integral of f(w) g(z) / (w-z)^2 over
// T x {|w| = rho} agree: inner over the rho-circle first vs inner over T first.
CheckRecord fubini_check(const RationalFunction& f, const RationalFunction& g,
                         const SwissCheese& cheese, double rho, const QuadratureSpec& spec,
                         double tol = 1e-8);

// Integral over T of g(z)/(w-z)^2 dz equals minus the cw sum over deleted
// circles; defect is the modulus of their sum.
CheckRecord cauchy_deflection_check(const RationalFunction& g, Complex w,
                                    const SwissCheese& cheese, const QuadratureSpec& spec,
                                    double tol = 1e-9);

// |D(f)(g)| <= 2 pi |f'|_T |g|_T and <= 2 pi |f|_T |g'|_T.
CheckRecord restriction_bound_check(const RationalFunction& f, const RationalFunction& g,
                                    const QuadratureSpec& spec, double tol = 1e-9);

struct L1DemoRow {
  int n = 0;
  double sup_norm_X = 0.0;  // sup |z^n| over X; equals the sup over T
  double l1_norm = 0.0;     // L1 norm of (z^n)' on T
};

// Rows (n, |z^n|_X, ||(z^n)'||_L1(T)) for n = 1..n_max. The third column is
// 2 pi n while the second stays 1: the quotient grows without bound, so
// f -> f'|T cannot be bounded into L1(T).
std::vector<L1DemoRow> l1_unboundedness_demo(int n_max, const QuadratureSpec& spec);

std::string pair_digest(const RationalFunction& f, const RationalFunction& g);

}  // namespace swiss

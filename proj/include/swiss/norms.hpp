#pragma once

#include "swiss/geometry.hpp"
#include "swiss/quadrature.hpp"
#include "swiss/rational.hpp"

namespace swiss {

struct NormEstimate {
  double value = 0.0;
  Complex arg_max{0.0, 0.0};
  long samples = 0;
  bool converged = false;
};

// Sup of |f| on the circle |z - center| = radius by equispaced sampling,
// nodes doubled until the max moves by <= 1e-10 relative or the doubling cap.
// Grids nest, so the estimate never decreases under refinement.
NormEstimate sup_norm_circle(const RationalFunction& f, Complex center, double radius,
                             const QuadratureSpec& spec);

NormEstimate sup_norm_T(const RationalFunction& f, const QuadratureSpec& spec);

// Sup of |f| over X, sampled on the boundary T plus all deleted circles
// (each refined independently). Functions in R0(X) are analytic near X, so
// the maximum principle puts the sup on that boundary. Slight underestimation
// is possible at the refinement cap; every check uses this norm on the large
// side of an inequality, so underestimates only make checks stricter.
NormEstimate sup_norm_X(const RationalFunction& f, const SwissCheese& cheese,
                        const QuadratureSpec& spec);

}  // namespace swiss

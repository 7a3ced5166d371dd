#include "swiss/norms.hpp"

#include <cmath>
#include <limits>

#include "swiss/kernels.hpp"

namespace swiss {

namespace {

constexpr double kRefineTol = 1e-10;

struct CirclePass {
  double max = 0.0;
  Complex arg{0.0, 0.0};
  double residual = 0.0;  // estimated between-node shortfall at the peak
};

CirclePass max_on_circle(const RationalFunction& f, Complex center, double radius, int n) {
  auto table = unit_nodes(n);
  const std::size_t count = table->cos_t.size();
  std::vector<double> ur(count), ui(count), outr(count), outi(count), mag(count);
  for (std::size_t i = 0; i < count; ++i) {
    ur[i] = radius * table->cos_t[i];
    ui[i] = radius * table->sin_t[i];
  }
  f.eval_batch_centered(center, ur.data(), ui.data(), count, outr.data(), outi.data());
  kernels::ops().cabs(outr.data(), outi.data(), count, mag.data());

  CirclePass pass;
  std::size_t best = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (mag[i] > pass.max) {
      pass.max = mag[i];
      best = i;
    }
  }
  pass.arg = center + Complex(ur[best], ui[best]);

  // Parabola through the peak node and its cyclic neighbors: its vertex bounds
  // how much a true peak between nodes can still exceed the sampled max. The
  // value itself stays the sampled (from below) maximum.
  const double y0 = mag[(best + count - 1) % count];
  const double y1 = pass.max;
  const double y2 = mag[(best + 1) % count];
  const double d2 = y0 + y2 - 2.0 * y1;
  if (d2 < 0.0) {
    const double dy = y2 - y0;
    pass.residual = dy * dy / (-8.0 * d2);
  } else {
    pass.residual = std::max(std::abs(y1 - y0), std::abs(y2 - y1));
  }
  return pass;
}

// A pole at distance d from the circle makes |f| peak over an angular width
// of about d/radius; start with enough nodes to land inside that peak. The
// numerator adds oscillation on the scale of its degree.
int starting_nodes(const RationalFunction& f, Complex center, double radius,
                   const QuadratureSpec& spec) {
  double d_min = std::numeric_limits<double>::max();
  for (const auto& pf : f.factors) {
    d_min = std::min(d_min, std::abs(std::abs(pf.pole - center) - radius));
  }
  double want = spec.initial_nodes;
  if (d_min < radius) want = std::max(want, 8.0 * std::numbers::pi * radius / d_min);
  want = std::max(want, 4.0 * static_cast<double>(f.num.degree() + 1));
  const int cap = spec.initial_nodes << spec.max_doublings;
  int n = spec.initial_nodes;
  while (n < want && n < cap) n <<= 1;
  return n;
}

}  // namespace

NormEstimate sup_norm_circle(const RationalFunction& f, Complex center, double radius,
                             const QuadratureSpec& spec) {
  spec.validate();
  NormEstimate est;
  const int cap = spec.initial_nodes << spec.max_doublings;
  int n = starting_nodes(f, center, radius, spec);
  CirclePass prev = max_on_circle(f, center, radius, n);
  est.value = prev.max;
  est.arg_max = prev.arg;
  est.samples = n;
  // A small step alone can be a shared-node accident (the peak hiding between
  // nodes of every grid so far); require the interpolated residual to agree.
  while (n < cap) {
    n <<= 1;
    const CirclePass cur = max_on_circle(f, center, radius, n);
    est.value = cur.max;
    est.arg_max = cur.arg;
    est.samples = n;
    const bool small_step = cur.max - prev.max <= kRefineTol * cur.max;
    const bool resolved = cur.residual <= kRefineTol * cur.max;
    if (small_step && resolved) {
      est.converged = true;
      break;
    }
    prev = cur;
  }
  return est;
}

NormEstimate sup_norm_T(const RationalFunction& f, const QuadratureSpec& spec) {
  return sup_norm_circle(f, Complex(0.0, 0.0), 1.0, spec);
}

NormEstimate sup_norm_X(const RationalFunction& f, const SwissCheese& cheese,
                        const QuadratureSpec& spec) {
  NormEstimate best = sup_norm_T(f, spec);
  long samples = best.samples;
  bool converged = best.converged;
  for (const auto& a : cheese.annuli) {
    for (const auto& d : a.discs) {
      const NormEstimate e = sup_norm_circle(f, d.center, d.radius, spec);
      samples += e.samples;
      converged = converged && e.converged;
      if (e.value > best.value) {
        best.value = e.value;
        best.arg_max = e.arg_max;
      }
    }
  }
  best.samples = samples;
  best.converged = converged;
  return best;
}

}  // namespace swiss

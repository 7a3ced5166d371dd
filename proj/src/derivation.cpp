#include "swiss/derivation.hpp"

#include <cmath>
#include <sstream>

#include "swiss/json_io.hpp"
#include "swiss/kernels.hpp"

namespace swiss {

namespace {

std::string digest_of(std::initializer_list<const RationalFunction*> fns,
                      const std::string& extra = {}) {
  std::string blob = extra;
  for (const auto* f : fns) blob += rf_to_json(*f).dump();
  return hex64(fnv1a64(blob));
}

// Shared integrand: g(z) / (w - z)^2 at z = center + u, g presampled on the
// same offsets. (w - z) is formed as (w - center) - u.
void kernel_over_square(const double* gr, const double* gi, Complex w, Complex center,
                        std::span<const double> ur, std::span<const double> ui,
                        std::span<double> outr, std::span<double> outi) {
  const auto& k = kernels::ops();
  const std::size_t n = ur.size();
  const Complex ws = w - center;
  std::vector<double> tr(n), ti(n);
  k.csub_sa(ws.real(), ws.imag(), ur.data(), ui.data(), n, tr.data(), ti.data());
  k.cmul(tr.data(), ti.data(), tr.data(), ti.data(), n, tr.data(), ti.data());
  k.cdiv(gr, gi, tr.data(), ti.data(), n, outr.data(), outi.data());
}

double clearance_to_circle(const RationalFunction& f, Complex center, double radius) {
  double best = kNoPoleClearance;
  for (const auto& pf : f.factors) {
    best = std::min(best, std::abs(std::abs(pf.pole - center) - radius));
  }
  return best;
}

void require_clear_of_contours(const RationalFunction& f, const SwissCheese& cheese, double rho,
                               const char* who) {
  if (clearance_to_circle(f, Complex(0.0, 0.0), rho) <= 1e-6) {
    throw PreconditionViolation(std::string(who) + ": pole within 1e-6 of the outer contour");
  }
  for (const auto& a : cheese.annuli) {
    for (const auto& d : a.discs) {
      if (clearance_to_circle(f, d.center, d.radius) <= 1e-6) {
        throw PreconditionViolation(std::string(who) +
                                    ": pole within 1e-6 of a deleted circle");
      }
    }
  }
}

}  // namespace

IntegralResult derivation_result(const RationalFunction& f, const RationalFunction& g,
                                 const QuadratureSpec& spec) {
  return pairing_T(f, g, spec);
}

Complex derivation(const RationalFunction& f, const RationalFunction& g,
                   const QuadratureSpec& spec) {
  return pairing_T(f, g, spec).value;
}

std::string pair_digest(const RationalFunction& f, const RationalFunction& g) {
  return digest_of({&f, &g});
}

CheckRecord cyclicity_check(const RationalFunction& f, const RationalFunction& g,
                            const QuadratureSpec& spec, double tol) {
  const IntegralResult fg = pairing_T(f, g, spec);
  const IntegralResult gf = pairing_T(g, f, spec);

  CheckRecord rec;
  rec.check_name = "cyclicity";
  rec.inputs_digest = digest_of({&f, &g});
  rec.lhs = fg.value;
  rec.rhs = gf.value;
  rec.defect = std::abs(fg.value + gf.value);
  rec.tolerance = tol * (1.0 + std::abs(fg.value));
  rec.pass = rec.defect <= rec.tolerance;
  if (!fg.converged || !gf.converged) {
    rec.pass = false;
    rec.note = "quadrature did not converge";
  }
  return rec;
}

CheckRecord leibniz_check(const RationalFunction& f, const RationalFunction& g,
                          const RationalFunction& h, const QuadratureSpec& spec, double tol) {
  const IntegralResult a = pairing_T(multiply(f, g), h, spec);
  const IntegralResult b = pairing_T(f, multiply(g, h), spec);
  const IntegralResult c = pairing_T(g, multiply(f, h), spec);

  CheckRecord rec;
  rec.check_name = "leibniz";
  rec.inputs_digest = digest_of({&f, &g, &h});
  rec.lhs = a.value;
  rec.rhs = b.value + c.value;
  rec.defect = std::abs(a.value - b.value - c.value);
  const double scale =
      std::max({std::abs(a.value), std::abs(b.value), std::abs(c.value)});
  rec.tolerance = tol * (1.0 + scale);
  rec.pass = rec.defect <= rec.tolerance;
  if (!a.converged || !b.converged || !c.converged) {
    rec.pass = false;
    rec.note = "quadrature did not converge";
  }
  return rec;
}

CheckRecord morris_bound_check(const RationalFunction& f, const RationalFunction& g,
                               const SwissCheese& cheese, const QuadratureSpec& spec,
                               double tol) {
  if (!(pole_clearance(f, cheese) > 0.0) || !(pole_clearance(g, cheese) > 0.0)) {
    throw PreconditionViolation(
        "morris_bound: f and g must have poles off X (positive clearance)");
  }
  const IntegralResult d = pairing_T(f, g, spec);
  const NormEstimate nf = sup_norm_X(f, cheese, spec);
  const NormEstimate ng = sup_norm_X(g, cheese, spec);
  const double product = nf.value * ng.value;
  const double bound = certified_bound(cheese) * product;

  CheckRecord rec;
  rec.check_name = "morris_bound";
  rec.inputs_digest = digest_of({&f, &g});
  rec.lhs = std::abs(d.value);
  rec.rhs = bound;
  rec.defect = std::max(0.0, std::abs(d.value) - bound);
  rec.tolerance = tol * (1.0 + product);
  rec.pass = rec.defect <= rec.tolerance;
  if (!d.converged) {
    rec.pass = false;
    rec.note = "quadrature did not converge";
  } else if (certified_bound(cheese) <= cheese.C) {
    const bool theorem_ok = std::abs(d.value) <= cheese.C * product + rec.tolerance;
    rec.note = theorem_ok ? "theorem bound with constant C also holds"
                          : "theorem bound with constant C exceeded";
    rec.pass = rec.pass && theorem_ok;
  }
  return rec;
}

CauchySplitDetail cauchy_split_detail(const RationalFunction& f, const SwissCheese& cheese,
                                      double rho, const QuadratureSpec& spec) {
  if (!(rho > 1.0)) throw std::invalid_argument("cauchy_split: rho must exceed 1");
  require_clear_of_contours(f, cheese, rho, "cauchy_split");
  // Poles must lie inside deleted discs or strictly outside |w| = rho.
  for (const auto& pf : f.factors) {
    const bool outside = std::abs(pf.pole) > rho;
    const bool deleted = std::abs(pf.pole) < 1.0 && distance_to_X(pf.pole, cheese) > 0.0;
    if (!outside && !deleted) {
      throw PreconditionViolation("cauchy_split: pole neither in a deleted disc nor beyond rho");
    }
  }

  constexpr int kSamplePoints = 32;
  const RationalFunction df = f.derivative();

  CauchySplitDetail detail;
  CircleCache outer(f, Complex(0.0, 0.0), rho);
  std::vector<CircleCache> inner;
  for (const auto& a : cheese.annuli) {
    for (const auto& d : a.discs) inner.emplace_back(f, d.center, d.radius);
  }

  const double inv_two_pi = 1.0 / kTau;
  for (int j = 0; j < kSamplePoints; ++j) {
    const double t = kTau * static_cast<double>(j) / static_cast<double>(kSamplePoints);
    const Complex z(std::cos(t), std::sin(t));

    auto cauchy_kernel_on = [z](CircleCache* cache) {
      return [cache, z](Complex center, std::span<const double> ur, std::span<const double> ui,
                        std::span<double> outr, std::span<double> outi) {
        const auto& s = cache->at(ur.size());
        kernel_over_square(s.fr.data(), s.fi.data(), z, center, ur, ui, outr, outi);
      };
    };

    const IntegralResult h1_int =
        circle_integral(cauchy_kernel_on(&outer), outer.center(), outer.radius(),
                        Orientation::Ccw, spec);
    // 1/(2 pi i) = -i / (2 pi)
    const Complex h1 = Complex(0.0, -inv_two_pi) * h1_int.value;
    detail.converged = detail.converged && h1_int.converged;

    Complex h2(0.0, 0.0);
    for (auto& cache : inner) {
      const IntegralResult part = circle_integral(cauchy_kernel_on(&cache), cache.center(),
                                                  cache.radius(), Orientation::Cw, spec);
      h2 += Complex(0.0, -inv_two_pi) * part.value;
      detail.converged = detail.converged && part.converged;
    }

    const Complex fp = df.evaluate(z);
    detail.z.push_back(z);
    detail.f_prime.push_back(fp);
    detail.h1.push_back(h1);
    detail.h2.push_back(h2);
    detail.max_defect = std::max(detail.max_defect, std::abs(fp - h1 - h2));
    detail.max_f_prime = std::max(detail.max_f_prime, std::abs(fp));
    detail.max_h2 = std::max(detail.max_h2, std::abs(h2));
  }
  return detail;
}

CheckRecord cauchy_split_check(const RationalFunction& f, const SwissCheese& cheese, double rho,
                               const QuadratureSpec& spec, double tol) {
  CheckRecord rec;
  rec.check_name = "cauchy_split";
  rec.inputs_digest = digest_of({&f}, format_double17(rho));
  const CauchySplitDetail detail = cauchy_split_detail(f, cheese, rho, spec);
  rec.lhs = detail.max_defect;
  rec.rhs = 0.0;
  rec.defect = detail.max_defect;
  rec.tolerance = tol * (1.0 + detail.max_f_prime);
  rec.pass = rec.defect <= rec.tolerance;
  if (!detail.converged) {
    rec.pass = false;
    rec.note = "quadrature did not converge";
  }
  return rec;
}

CheckRecord fubini_check(const RationalFunction& f, const RationalFunction& g,
                         const SwissCheese& cheese, double rho, const QuadratureSpec& spec,
                         double tol) {
  if (!(rho > 1.0)) throw std::invalid_argument("fubini_check: rho must exceed 1");
  require_clear_of_contours(f, cheese, rho, "fubini_check");
  for (const auto& pf : g.factors) {
    if (std::abs(std::abs(pf.pole) - 1.0) <= 1e-9) {
      throw PreconditionViolation("fubini_check: g has a pole within 1e-9 of T");
    }
  }

  const double inv_two_pi = 1.0 / kTau;
  const Complex origin(0.0, 0.0);

  // Order A: inner integral over |w| = rho gives h1(z); outer over T of h1 g.
  CircleCache f_on_rho(f, origin, rho);
  BatchIntegrand order_a = [&](Complex center, std::span<const double> ur,
                               std::span<const double> ui, std::span<double> outr,
                               std::span<double> outi) {
    const std::size_t n = ur.size();
    std::vector<double> gr(n), gi(n);
    g.eval_batch_centered(center, ur.data(), ui.data(), n, gr.data(), gi.data());
    for (std::size_t i = 0; i < n; ++i) {
      const Complex z = center + Complex(ur[i], ui[i]);
      BatchIntegrand inner = [&](Complex wc, std::span<const double> wr,
                                 std::span<const double> wi, std::span<double> ir,
                                 std::span<double> ii) {
        const auto& s = f_on_rho.at(wr.size());
        kernel_over_square(s.fr.data(), s.fi.data(), z, wc, wr, wi, ir, ii);
      };
      const IntegralResult h1_int =
          circle_integral(inner, origin, rho, Orientation::Ccw, spec);
      const Complex h1 = Complex(0.0, -inv_two_pi) * h1_int.value;
      const Complex val = h1 * Complex(gr[i], gi[i]);
      outr[i] = val.real();
      outi[i] = val.imag();
    }
  };
  const IntegralResult side_a = circle_integral(order_a, origin, 1.0, Orientation::Ccw, spec);

  // Order B: inner integral over T of g(z)/(w-z)^2; outer over |w| = rho.
  CircleCache g_on_T(g, origin, 1.0);
  BatchIntegrand order_b = [&](Complex center, std::span<const double> ur,
                               std::span<const double> ui, std::span<double> outr,
                               std::span<double> outi) {
    const std::size_t n = ur.size();
    std::vector<double> fr(n), fi(n);
    f.eval_batch_centered(center, ur.data(), ui.data(), n, fr.data(), fi.data());
    for (std::size_t i = 0; i < n; ++i) {
      const Complex w = center + Complex(ur[i], ui[i]);
      BatchIntegrand inner = [&](Complex zc, std::span<const double> zr,
                                 std::span<const double> zi, std::span<double> ir,
                                 std::span<double> ii) {
        const auto& s = g_on_T.at(zr.size());
        kernel_over_square(s.fr.data(), s.fi.data(), w, zc, zr, zi, ir, ii);
      };
      const IntegralResult inner_int =
          circle_integral(inner, origin, 1.0, Orientation::Ccw, spec);
      const Complex val = Complex(fr[i], fi[i]) * inner_int.value;
      outr[i] = val.real();
      outi[i] = val.imag();
    }
  };
  IntegralResult side_b = circle_integral(order_b, origin, rho, Orientation::Ccw, spec);
  side_b.value *= Complex(0.0, -inv_two_pi);

  CheckRecord rec;
  rec.check_name = "fubini";
  rec.inputs_digest = digest_of({&f, &g}, format_double17(rho));
  rec.lhs = side_a.value;
  rec.rhs = side_b.value;
  rec.defect = std::abs(side_a.value - side_b.value);
  rec.tolerance = tol * (1.0 + std::abs(side_a.value));
  rec.pass = rec.defect <= rec.tolerance;
  if (!side_a.converged || !side_b.converged) {
    rec.pass = false;
    rec.note = "quadrature did not converge";
  }
  return rec;
}

CheckRecord cauchy_deflection_check(const RationalFunction& g, Complex w,
                                    const SwissCheese& cheese, const QuadratureSpec& spec,
                                    double tol) {
  if (!(std::abs(w) > 1.0 + 1e-6)) {
    throw PreconditionViolation("cauchy_deflection: w must lie strictly outside T");
  }
  for (const auto& pf : g.factors) {
    const bool deleted = std::abs(pf.pole) < 1.0 && distance_to_X(pf.pole, cheese) > 0.0;
    const bool far_outside = std::abs(pf.pole) > std::abs(w) + 1e-6;
    if (!deleted && !far_outside) {
      throw PreconditionViolation(
          "cauchy_deflection: pole neither in a deleted disc nor outside |z| = |w|");
    }
  }

  CircleCache g_on_T(g, Complex(0.0, 0.0), 1.0);
  auto integrand_for = [w](CircleCache* cache) {
    return [cache, w](Complex center, std::span<const double> ur, std::span<const double> ui,
                      std::span<double> outr, std::span<double> outi) {
      const auto& s = cache->at(ur.size());
      kernel_over_square(s.fr.data(), s.fi.data(), w, center, ur, ui, outr, outi);
    };
  };

  const IntegralResult lhs =
      circle_integral(integrand_for(&g_on_T), Complex(0.0, 0.0), 1.0, Orientation::Ccw, spec);

  bool converged = lhs.converged;
  Complex cw_sum(0.0, 0.0);
  for (const auto& a : cheese.annuli) {
    for (const auto& d : a.discs) {
      CircleCache cache(g, d.center, d.radius);
      const IntegralResult part =
          circle_integral(integrand_for(&cache), d.center, d.radius, Orientation::Cw, spec);
      cw_sum += part.value;
      converged = converged && part.converged;
    }
  }

  CheckRecord rec;
  rec.check_name = "cauchy_deflection";
  std::ostringstream extra;
  extra << format_double17(w.real()) << "," << format_double17(w.imag());
  rec.inputs_digest = digest_of({&g}, extra.str());
  rec.lhs = lhs.value;
  rec.rhs = cw_sum;
  rec.defect = std::abs(lhs.value + cw_sum);
  rec.tolerance = tol * (1.0 + std::abs(lhs.value));
  rec.pass = rec.defect <= rec.tolerance;
  if (!converged) {
    rec.pass = false;
    rec.note = "quadrature did not converge";
  }
  return rec;
}

CheckRecord restriction_bound_check(const RationalFunction& f, const RationalFunction& g,
                                    const QuadratureSpec& spec, double tol) {
  const IntegralResult d = pairing_T(f, g, spec);
  const RationalFunction df = f.derivative();
  const RationalFunction dg = g.derivative();
  const double b1 = kTau * sup_norm_T(df, spec).value * sup_norm_T(g, spec).value;
  const double b2 = kTau * sup_norm_T(f, spec).value * sup_norm_T(dg, spec).value;
  const double mag = std::abs(d.value);

  CheckRecord rec;
  rec.check_name = "restriction_bound";
  rec.inputs_digest = digest_of({&f, &g});
  rec.lhs = mag;
  rec.rhs = std::min(b1, b2);
  rec.defect = std::max({0.0, mag - b1, mag - b2});
  rec.tolerance = tol * (1.0 + mag);
  rec.pass = rec.defect <= rec.tolerance;
  if (!d.converged) {
    rec.pass = false;
    rec.note = "quadrature did not converge";
  }
  return rec;
}

std::vector<L1DemoRow> l1_unboundedness_demo(int n_max, const QuadratureSpec& spec) {
  if (n_max < 1) throw std::invalid_argument("l1_unboundedness_demo: n_max must be >= 1");
  std::vector<L1DemoRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const RationalFunction zn = RationalFunction::power(n);
    L1DemoRow row;
    row.n = n;
    // Monomials peak on T, so the sup over X equals the sup over T.
    row.sup_norm_X = sup_norm_T(zn, spec).value;
    row.l1_norm = l1_norm_T(zn.derivative(), spec).value.real();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace swiss

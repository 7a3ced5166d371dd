#include "swiss/rational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "swiss/json_io.hpp"
#include "swiss/kernels.hpp"
#include "swiss/rng.hpp"

namespace swiss {

Polynomial Polynomial::constant(Complex c) {
  Polynomial p;
  if (c != Complex(0.0, 0.0)) p.coef.push_back(c);
  return p;
}

Polynomial Polynomial::monomial(int n, Complex a) {
  Polynomial p;
  if (a == Complex(0.0, 0.0)) return p;
  p.coef.assign(static_cast<std::size_t>(n) + 1, Complex(0.0, 0.0));
  p.coef.back() = a;
  return p;
}

void Polynomial::trim() {
  while (!coef.empty() && coef.back() == Complex(0.0, 0.0)) coef.pop_back();
}

Complex Polynomial::eval(Complex z) const {
  Complex w(0.0, 0.0);
  for (std::size_t k = coef.size(); k-- > 0;) w = w * z + coef[k];
  return w;
}

Polynomial Polynomial::derivative() const {
  Polynomial out;
  if (coef.size() <= 1) return out;
  out.coef.resize(coef.size() - 1);
  for (std::size_t k = 1; k < coef.size(); ++k) {
    out.coef[k - 1] = coef[k] * static_cast<double>(k);
  }
  out.trim();
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  out.coef.resize(std::max(a.coef.size(), b.coef.size()), Complex(0.0, 0.0));
  for (std::size_t k = 0; k < a.coef.size(); ++k) out.coef[k] += a.coef[k];
  for (std::size_t k = 0; k < b.coef.size(); ++k) out.coef[k] += b.coef[k];
  out.trim();
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  if (a.is_zero() || b.is_zero()) return out;
  out.coef.assign(a.coef.size() + b.coef.size() - 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.coef.size(); ++i) {
    for (std::size_t j = 0; j < b.coef.size(); ++j) {
      out.coef[i + j] += a.coef[i] * b.coef[j];
    }
  }
  out.trim();
  return out;
}

Polynomial operator*(const Polynomial& a, Complex s) {
  Polynomial out;
  if (s == Complex(0.0, 0.0)) return out;
  out.coef = a.coef;
  for (auto& c : out.coef) c *= s;
  out.trim();
  return out;
}

RationalFunction RationalFunction::power(int n) {
  if (n >= 0) return {Polynomial::monomial(n), {}};
  return {Polynomial::constant(Complex(1.0, 0.0)), {{Complex(0.0, 0.0), -n}}};
}

Complex RationalFunction::evaluate(Complex z) const {
  for (const auto& f : factors) {
    if (std::abs(z - f.pole) < 1e-13) {
      std::ostringstream msg;
      msg << "evaluate: point within 1e-13 of pole (" << f.pole.real() << ", " << f.pole.imag()
          << ")";
      throw PoleEvaluationError(msg.str());
    }
  }
  double zr = z.real(), zi = z.imag(), outr = 0.0, outi = 0.0;
  eval_batch(&zr, &zi, 1, &outr, &outi);
  return Complex(outr, outi);
}

void RationalFunction::eval_batch(const double* zr, const double* zi, std::size_t n,
                                  double* outr, double* outi) const {
  eval_batch_centered(Complex(0.0, 0.0), zr, zi, n, outr, outi);
}

void RationalFunction::eval_batch_centered(Complex center, const double* ur, const double* ui,
                                           std::size_t n, double* outr, double* outi) const {
  const auto& k = kernels::ops();

  thread_local std::vector<double> cr, ci, dr, di, zr, zi;
  cr.resize(num.coef.size());
  ci.resize(num.coef.size());
  for (std::size_t j = 0; j < num.coef.size(); ++j) {
    cr[j] = num.coef[j].real();
    ci[j] = num.coef[j].imag();
  }

  const bool shifted = center != Complex(0.0, 0.0);
  const double* xr = ur;
  const double* xi = ui;
  if (shifted) {
    // Absolute nodes only feed the (smooth) numerator.
    zr.resize(n);
    zi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      zr[i] = center.real() + ur[i];
      zi[i] = center.imag() + ui[i];
    }
    xr = zr.data();
    xi = zi.data();
  }
  k.poly_eval(cr.data(), ci.data(), num.coef.size(), xr, xi, n, outr, outi);
  if (factors.empty()) return;

  dr.assign(n, 1.0);
  di.assign(n, 0.0);
  for (const auto& f : factors) {
    const Complex p = f.pole - center;
    k.factor_mul(p.real(), p.imag(), f.mult, ur, ui, n, dr.data(), di.data());
  }
  k.cdiv(outr, outi, dr.data(), di.data(), n, outr, outi);
}

RationalFunction RationalFunction::derivative() const {
  if (factors.empty()) return {num.derivative(), {}};

  // L = prod (z - p_j), M = sum_j m_j prod_{i != j} (z - p_i)
  Polynomial L = Polynomial::constant(Complex(1.0, 0.0));
  for (const auto& f : factors) {
    Polynomial lin;
    lin.coef = {-f.pole, Complex(1.0, 0.0)};
    L = L * lin;
  }
  Polynomial M = Polynomial::zero();
  for (std::size_t j = 0; j < factors.size(); ++j) {
    Polynomial prod = Polynomial::constant(static_cast<double>(factors[j].mult));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i == j) continue;
      Polynomial lin;
      lin.coef = {-factors[i].pole, Complex(1.0, 0.0)};
      prod = prod * lin;
    }
    M = M + prod;
  }

  RationalFunction out;
  out.num = num.derivative() * L + (num * M) * Complex(-1.0, 0.0);
  out.factors = factors;
  for (auto& f : out.factors) f.mult += 1;
  return out;
}

RationalFunction add(const RationalFunction& f, const RationalFunction& g) {
  // Common denominator takes each pole at its maximum multiplicity.
  std::vector<PoleFactor> merged = f.factors;
  for (const auto& gf : g.factors) {
    bool found = false;
    for (auto& mf : merged) {
      if (mf.pole == gf.pole) {
        mf.mult = std::max(mf.mult, gf.mult);
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(gf);
  }

  auto cofactor = [&merged](const std::vector<PoleFactor>& own) {
    Polynomial out = Polynomial::constant(Complex(1.0, 0.0));
    for (const auto& mf : merged) {
      int have = 0;
      for (const auto& of : own) {
        if (of.pole == mf.pole) {
          have = of.mult;
          break;
        }
      }
      for (int k = have; k < mf.mult; ++k) {
        Polynomial lin;
        lin.coef = {-mf.pole, Complex(1.0, 0.0)};
        out = out * lin;
      }
    }
    return out;
  };

  RationalFunction out;
  out.num = f.num * cofactor(f.factors) + g.num * cofactor(g.factors);
  out.factors = std::move(merged);
  if (out.num.is_zero()) out.factors.clear();
  return out;
}

RationalFunction multiply(const RationalFunction& f, const RationalFunction& g) {
  RationalFunction out;
  out.num = f.num * g.num;
  if (out.num.is_zero()) return out;
  out.factors = f.factors;
  for (const auto& gf : g.factors) {
    bool found = false;
    for (auto& of : out.factors) {
      if (of.pole == gf.pole) {
        of.mult += gf.mult;
        found = true;
        break;
      }
    }
    if (!found) out.factors.push_back(gf);
  }
  return out;
}

RationalFunction scale(const RationalFunction& f, Complex c) {
  RationalFunction out;
  out.num = f.num * c;
  if (!out.num.is_zero()) out.factors = f.factors;
  return out;
}

double pole_clearance(const RationalFunction& f, const SwissCheese& cheese) {
  double clearance = kNoPoleClearance;
  for (const auto& pf : f.factors) {
    clearance = std::min(clearance, distance_to_X(pf.pole, cheese));
  }
  return clearance;
}

namespace {

// Sampled sup of |f| on T; cheap conditioning filter for the test family.
double rough_sup_T(const RationalFunction& f) {
  constexpr std::size_t kSamples = 64;
  double zr[kSamples], zi[kSamples], outr[kSamples], outi[kSamples], mag[kSamples];
  for (std::size_t k = 0; k < kSamples; ++k) {
    const double t = kTau * static_cast<double>(k) / static_cast<double>(kSamples);
    zr[k] = std::cos(t);
    zi[k] = std::sin(t);
  }
  f.eval_batch(zr, zi, kSamples, outr, outi);
  kernels::ops().cabs(outr, outi, kSamples, mag);
  double m = 0.0;
  for (std::size_t k = 0; k < kSamples; ++k) m = std::max(m, mag[k]);
  return m;
}

RationalFunction draw_member(const SwissCheese& cheese, int max_degree, int max_poles,
                             double min_clearance, Rng& rng, const MemberOptions& opts) {
  // Discs roomy enough to host a pole at the requested clearance.
  std::vector<const Disc*> eligible;
  for (const auto& a : cheese.annuli) {
    for (const auto& d : a.discs) {
      if (d.radius > min_clearance) eligible.push_back(&d);
    }
  }

  const double out_lo = std::max(opts.outside_lo, 1.0 + min_clearance);
  const double out_hi = std::max(opts.outside_hi, out_lo + 0.5);

  RationalFunction f;
  const int degree = rng.below(max_degree + 1);
  f.num.coef.resize(static_cast<std::size_t>(degree) + 1);
  for (auto& c : f.num.coef) c = Complex(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
  while (std::abs(f.num.coef.back()) < 0.1) {
    f.num.coef.back() = Complex(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
  }

  const int n_poles = max_poles > 0 ? rng.below(max_poles + 1) : 0;
  std::vector<Complex> taken = opts.avoid;
  for (int k = 0; k < n_poles; ++k) {
    Complex pole;
    bool placed = false;
    bool pole_is_inside = false;
    for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
      const bool inside = !eligible.empty() && rng.unit() < opts.inside_fraction;
      bool this_inside = false;
      if (inside) {
        // Depth at least half the radius keeps |z - pole| comparable to the
        // disc radius on the disc's own boundary circle.
        const Disc& d = *eligible[rng.below(static_cast<int>(eligible.size()))];
        pole = rng.in_disc(d.center, std::min(d.radius - min_clearance, 0.5 * d.radius));
        this_inside = true;
      } else if (opts.allow_outside) {
        pole = rng.in_annulus(out_lo, out_hi);
      } else {
        continue;
      }
      placed = true;
      pole_is_inside = this_inside;
      for (const auto& t : taken) {
        if (std::abs(pole - t) < opts.pole_separation) {
          placed = false;
          break;
        }
      }
    }
    if (!placed) {
      throw GenerationError(
          "random_member: could not place a pole under the clearance/separation constraints");
    }
    taken.push_back(pole);
    // Multiplicity > 1 on a pole hugging a deleted circle makes the contour
    // integrals over that circle ill-conditioned; inside poles stay simple.
    const int mult = pole_is_inside ? 1 : 1 + rng.below(std::max(1, opts.max_mult));
    f.factors.push_back({pole, mult});
  }
  return f;
}

}  // namespace

RationalFunction random_member(const SwissCheese& cheese, int max_degree, int max_poles,
                               double min_clearance, std::uint64_t seed,
                               const MemberOptions& opts) {
  if (max_degree < 0 || max_poles < 0) {
    throw std::invalid_argument("random_member: max_degree and max_poles must be >= 0");
  }
  if (!opts.allow_outside) {
    bool any = false;
    for (const auto& a : cheese.annuli) {
      for (const auto& d : a.discs) any = any || d.radius > min_clearance;
    }
    if (!any && max_poles > 0) {
      throw GenerationError(
          "random_member: no deleted disc admits the clearance and outside placement is disabled");
    }
  }

  Rng rng(splitmix64(seed ^ 0x52464d454d424552ULL));
  auto well_conditioned = [&opts](const RationalFunction& f) {
    return rough_sup_T(f) <= opts.sup_cap && rough_sup_T(f.derivative()) <= opts.sup_cap_deriv;
  };
  RationalFunction f = draw_member(cheese, max_degree, max_poles, min_clearance, rng, opts);
  for (int redraw = 0; redraw < 50 && !well_conditioned(f); ++redraw) {
    f = draw_member(cheese, max_degree, max_poles, min_clearance, rng, opts);
  }
  return f;
}

nlohmann::ordered_json rf_to_json(const RationalFunction& f) {
  nlohmann::ordered_json j;
  auto num = nlohmann::ordered_json::array();
  for (const auto& c : f.num.coef) {
    num.push_back(nlohmann::ordered_json::array({c.real(), c.imag()}));
  }
  j["num"] = std::move(num);
  auto factors = nlohmann::ordered_json::array();
  for (const auto& pf : f.factors) {
    nlohmann::ordered_json jf;
    jf["pole"] = nlohmann::ordered_json::array({pf.pole.real(), pf.pole.imag()});
    jf["mult"] = pf.mult;
    factors.push_back(std::move(jf));
  }
  j["factors"] = std::move(factors);
  return j;
}

RationalFunction rf_from_json(const nlohmann::ordered_json& j) {
  RationalFunction f;
  for (const auto& c : j.at("num")) {
    f.num.coef.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  }
  f.num.trim();
  for (const auto& jf : j.at("factors")) {
    PoleFactor pf;
    pf.pole = Complex(jf.at("pole").at(0).get<double>(), jf.at("pole").at(1).get<double>());
    pf.mult = jf.at("mult").get<int>();
    if (pf.mult < 1) throw IoError("rational function: multiplicity must be >= 1");
    f.factors.push_back(pf);
  }
  return f;
}

}  // namespace swiss

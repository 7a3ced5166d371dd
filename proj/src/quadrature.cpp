#include "swiss/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "swiss/kernels.hpp"

namespace swiss {

void QuadratureSpec::validate() const {
  if (initial_nodes < 16 || (initial_nodes & (initial_nodes - 1)) != 0) {
    throw std::invalid_argument("QuadratureSpec: initial_nodes must be a power of two >= 16");
  }
  if (max_doublings < 1 || max_doublings > 24) {
    throw std::invalid_argument("QuadratureSpec: max_doublings must be in [1, 24]");
  }
  if (!(rel_tolerance >= 1e-14)) {
    throw std::invalid_argument("QuadratureSpec: rel_tolerance must be >= 1e-14");
  }
}

std::shared_ptr<const NodeTable> unit_nodes(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const NodeTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<NodeTable>();
  table->cos_t.resize(static_cast<std::size_t>(n));
  table->sin_t.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // k/n is exact for power-of-two n, so grids nest bitwise under doubling.
    const double t = kTau * (static_cast<double>(k) / static_cast<double>(n));
    table->cos_t[static_cast<std::size_t>(k)] = std::cos(t);
    table->sin_t[static_cast<std::size_t>(k)] = std::sin(t);
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(n, std::move(table));
  (void)inserted;
  return it->second;
}

namespace {

// Neumaier compensated sum; keeps quadrature reductions near one ulp of the
// exact sum regardless of node count, in a fixed order.
struct CompensatedSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double get() const { return s + c; }
};

void fill_offsets(const NodeTable& table, double radius, std::vector<double>& ur,
                  std::vector<double>& ui) {
  const std::size_t n = table.cos_t.size();
  ur.resize(n);
  ui.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ur[i] = radius * table.cos_t[i];
    ui[i] = radius * table.sin_t[i];
  }
}

struct TrapezoidPass {
  Complex value;
  double noise;  // rounding-floor estimate: 1e-13 * sum of term magnitudes
};

TrapezoidPass trapezoid_pass(const BatchIntegrand& h, Complex center, double radius, int n) {
  auto table = unit_nodes(n);
  std::vector<double> ur, ui;
  fill_offsets(*table, radius, ur, ui);
  std::vector<double> hr(ur.size()), hi(ur.size());
  h(center, std::span<const double>(ur), std::span<const double>(ui), std::span<double>(hr),
    std::span<double>(hi));

  CompensatedSum sr, si;
  double mag = 0.0;
  for (std::size_t k = 0; k < ur.size(); ++k) {
    const double c = table->cos_t[k];
    const double s = table->sin_t[k];
    sr.add(hr[k] * c - hi[k] * s);
    si.add(hr[k] * s + hi[k] * c);
    mag += std::abs(hr[k]) + std::abs(hi[k]);
  }
  const double scale = kTau * radius / static_cast<double>(n);
  // i * scale * (sr + i si)
  return {Complex(-scale * si.get(), scale * sr.get()), 1e-13 * scale * mag};
}

}  // namespace

IntegralResult circle_integral(const BatchIntegrand& h, Complex center, double radius,
                               Orientation orientation, const QuadratureSpec& spec) {
  spec.validate();
  if (!(radius > 0.0)) throw std::invalid_argument("circle_integral: radius must be positive");

  IntegralResult res;
  int n = spec.initial_nodes;
  TrapezoidPass prev = trapezoid_pass(h, center, radius, n);
  for (int d = 1; d <= spec.max_doublings; ++d) {
    n <<= 1;
    const TrapezoidPass cur = trapezoid_pass(h, center, radius, n);
    const double diff = std::abs(cur.value - prev.value);
    res.value = cur.value;
    res.nodes_used = n;
    res.est_error = diff;
    if (diff <= spec.rel_tolerance * (1.0 + std::abs(cur.value)) + cur.noise) {
      res.converged = true;
      break;
    }
    prev = cur;
  }
  if (orientation == Orientation::Cw) res.value = -res.value;
  return res;
}

IntegralResult circle_integral_fn(const std::function<Complex(Complex)>& h, Complex center,
                                  double radius, Orientation orientation,
                                  const QuadratureSpec& spec) {
  BatchIntegrand batch = [&h](Complex center_in, std::span<const double> ur,
                              std::span<const double> ui, std::span<double> outr,
                              std::span<double> outi) {
    for (std::size_t i = 0; i < ur.size(); ++i) {
      const Complex v = h(center_in + Complex(ur[i], ui[i]));
      outr[i] = v.real();
      outi[i] = v.imag();
    }
  };
  return circle_integral(batch, center, radius, orientation, spec);
}

namespace {

void require_poles_off_T(const RationalFunction& f, const char* who) {
  for (const auto& pf : f.factors) {
    if (std::abs(std::abs(pf.pole) - 1.0) <= 1e-9) {
      throw PreconditionViolation(std::string(who) + ": pole within 1e-9 of the unit circle");
    }
  }
}

}  // namespace

IntegralResult pairing_T(const RationalFunction& f, const RationalFunction& g,
                         const QuadratureSpec& spec) {
  require_poles_off_T(f, "pairing_T(f)");
  require_poles_off_T(g, "pairing_T(g)");
  const RationalFunction df = f.derivative();

  BatchIntegrand h = [&df, &g](Complex center, std::span<const double> ur,
                               std::span<const double> ui, std::span<double> outr,
                               std::span<double> outi) {
    const std::size_t n = ur.size();
    std::vector<double> gr(n), gi(n);
    df.eval_batch_centered(center, ur.data(), ui.data(), n, outr.data(), outi.data());
    g.eval_batch_centered(center, ur.data(), ui.data(), n, gr.data(), gi.data());
    kernels::ops().cmul(outr.data(), outi.data(), gr.data(), gi.data(), n, outr.data(),
                        outi.data());
  };
  return circle_integral(h, Complex(0.0, 0.0), 1.0, Orientation::Ccw, spec);
}

namespace {

using LComplex = std::complex<long double>;

// In-place Taylor shift: on return c[k] is the coefficient of u^k in p(u + a).
void taylor_shift(std::vector<LComplex>& c, LComplex a) {
  if (c.size() < 2) return;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    for (std::size_t i = c.size() - 1; i-- > k;) {
      c[i] += a * c[i + 1];
    }
  }
}

}  // namespace

Complex residue_at(const RationalFunction& F, std::size_t factor_index) {
  const Complex pole = F.factors.at(factor_index).pole;
  const int m = F.factors.at(factor_index).mult;
  const std::size_t order = static_cast<std::size_t>(m);

  // a(u) = numerator(pole + u)
  std::vector<LComplex> a;
  a.reserve(F.num.coef.size());
  for (const auto& c : F.num.coef) a.emplace_back(c.real(), c.imag());
  if (a.empty()) return Complex(0.0, 0.0);
  taylor_shift(a, LComplex(pole.real(), pole.imag()));
  a.resize(std::max(a.size(), order), LComplex(0.0L, 0.0L));

  // d(u) = prod_{j != k} ((pole - p_j) + u)^{m_j}, truncated to degree m-1.
  std::vector<LComplex> d{LComplex(1.0L, 0.0L)};
  for (std::size_t j = 0; j < F.factors.size(); ++j) {
    if (j == factor_index) continue;
    const LComplex delta(pole.real() - F.factors[j].pole.real(),
                         pole.imag() - F.factors[j].pole.imag());
    for (int t = 0; t < F.factors[j].mult; ++t) {
      std::vector<LComplex> next(std::min(d.size() + 1, order), LComplex(0.0L, 0.0L));
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] = delta * (i < d.size() ? d[i] : LComplex(0.0L, 0.0L));
        if (i > 0 && i - 1 < d.size()) next[i] += d[i - 1];
      }
      d = std::move(next);
    }
  }

  // Series division c = a / d mod u^m; the residue is c[m-1].
  std::vector<LComplex> q(order, LComplex(0.0L, 0.0L));
  for (std::size_t i = 0; i < order; ++i) {
    LComplex acc = i < a.size() ? a[i] : LComplex(0.0L, 0.0L);
    for (std::size_t j = 1; j <= i && j < d.size(); ++j) {
      acc -= d[j] * q[i - j];
    }
    q[i] = acc / d[0];
  }
  const LComplex r = q[order - 1];
  return Complex(static_cast<double>(r.real()), static_cast<double>(r.imag()));
}

Complex residue_oracle_T(const RationalFunction& f, const RationalFunction& g) {
  const RationalFunction F = multiply(f.derivative(), g);
  for (const auto& pf : F.factors) {
    if (std::abs(std::abs(pf.pole) - 1.0) <= 1e-9) {
      throw OracleInapplicable("residue_oracle_T: pole within 1e-9 of the unit circle");
    }
  }
  Complex sum(0.0, 0.0);
  for (std::size_t k = 0; k < F.factors.size(); ++k) {
    if (std::abs(F.factors[k].pole) < 1.0) {
      sum += residue_at(F, k);
    }
  }
  return Complex(0.0, kTau) * sum;  // 2 pi i * sum
}

IntegralResult l1_norm_T(const RationalFunction& f, const QuadratureSpec& spec) {
  spec.validate();
  require_poles_off_T(f, "l1_norm_T");

  auto pass = [&f](int n) {
    auto table = unit_nodes(n);
    const std::size_t count = table->cos_t.size();
    std::vector<double> outr(count), outi(count), mag(count);
    f.eval_batch(table->cos_t.data(), table->sin_t.data(), count, outr.data(), outi.data());
    kernels::ops().cabs(outr.data(), outi.data(), count, mag.data());
    CompensatedSum s;
    for (std::size_t i = 0; i < count; ++i) s.add(mag[i]);
    return kTau / static_cast<double>(n) * s.get();
  };

  IntegralResult res;
  int n = spec.initial_nodes;
  double prev = pass(n);
  for (int d = 1; d <= spec.max_doublings; ++d) {
    n <<= 1;
    const double cur = pass(n);
    const double diff = std::abs(cur - prev);
    res.value = Complex(cur, 0.0);
    res.nodes_used = n;
    res.est_error = diff;
    if (diff <= spec.rel_tolerance * (1.0 + std::abs(cur)) + 1e-13 * cur) {
      res.converged = true;
      break;
    }
    prev = cur;
  }
  return res;
}

const CircleCache::Samples& CircleCache::at(std::size_t n) {
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  Samples s;
  auto table = unit_nodes(static_cast<int>(n));
  fill_offsets(*table, radius_, s.ur, s.ui);
  s.fr.resize(n);
  s.fi.resize(n);
  f_->eval_batch_centered(center_, s.ur.data(), s.ui.data(), n, s.fr.data(), s.fi.data());
  auto [pos, inserted] = cache_.emplace(n, std::move(s));
  (void)inserted;
  return pos->second;
}

}  // namespace swiss

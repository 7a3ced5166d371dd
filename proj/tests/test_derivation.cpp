#include <cmath>

#include "doctest.h"
#include "swiss/derivation.hpp"
#include "swiss/verify.hpp"

using namespace swiss;
using doctest::Approx;

namespace {

const QuadratureSpec kSpec;

RunConfig small_config(int pairs, int triples = 0) {
  RunConfig cfg;
  cfg.sweep_pairs = pairs;
  cfg.sweep_triples = triples;
  cfg.jobs = 2;
  return cfg;
}

RationalFunction simple_pole(Complex pole, int mult = 1) {
  RationalFunction f;
  f.num = Polynomial::constant(Complex(1, 0));
  f.factors = {{pole, mult}};
  return f;
}

}  // namespace

TEST_CASE("derivation values: constants, residues, monomial family") {
  CHECK(std::abs(derivation(RationalFunction::one(), RationalFunction::power(-1), kSpec)) ==
        0.0);  // integrand identically zero: the sums are exact
  CHECK(std::abs(derivation(RationalFunction::power(1), RationalFunction::power(-1), kSpec) -
                 Complex(0, kTau)) < 1e-12);
  for (int n = 1; n <= 8; ++n) {
    const Complex d =
        derivation(RationalFunction::power(n), RationalFunction::power(-n), kSpec);
    CHECK(std::abs(d - Complex(0, kTau * n)) < 1e-10);
  }
}

TEST_CASE("cyclicity: frozen pairs and the f = g case") {
  const auto rec =
      cyclicity_check(RationalFunction::power(1), RationalFunction::power(-1), kSpec);
  CHECK(rec.pass);
  CHECK(rec.defect < 1e-12);

  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 7);
  const RationalFunction f = random_member(cheese, 6, 3, 1e-5, 77);
  const auto self = cyclicity_check(f, f, kSpec);
  CHECK(self.pass);

  const auto forced = cyclicity_check(f, RationalFunction::one(), kSpec);
  CHECK(forced.pass);
  CHECK(forced.defect < 1e-11);
}

TEST_CASE("leibniz: trivial, frozen, symbolic cross-check") {
  const auto ones = leibniz_check(RationalFunction::one(), RationalFunction::one(),
                                  RationalFunction::one(), kSpec);
  CHECK(ones.pass);
  CHECK(ones.defect == 0.0);

  // f = z, g = z, h = 1/z^2: D(z^2)(z^-2) = 2 * 2 pi i, D(z)(z^-1) = 2 pi i each
  const auto rec = leibniz_check(RationalFunction::power(1), RationalFunction::power(1),
                                 RationalFunction::power(-2), kSpec);
  CHECK(rec.pass);
  CHECK(std::abs(std::get<Complex>(rec.lhs) - Complex(0, 2 * kTau)) < 1e-10);
}

TEST_CASE("morris bound: trivial cases and the analytic zero") {
  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 7);

  const auto ones =
      morris_bound_check(RationalFunction::one(), RationalFunction::one(), cheese, kSpec);
  CHECK(ones.pass);

  // polynomials: f' g is entire, so D vanishes and the bound is trivial
  const auto polys = morris_bound_check(RationalFunction::power(3), RationalFunction::power(2),
                                        cheese, kSpec);
  CHECK(polys.pass);
  CHECK(std::get<double>(polys.lhs) < 1e-10);
}

TEST_CASE("cauchy split: polynomials have h2 = 0 and h1 = f'") {
  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 7);
  const auto detail = cauchy_split_detail(RationalFunction::power(3), cheese, 1.25, kSpec);
  CHECK(detail.converged);
  CHECK(detail.max_h2 <= 1e-11);
  CHECK(detail.max_defect <= 1e-8 * (1.0 + detail.max_f_prime));
}

TEST_CASE("cauchy split: pole inside a deleted disc") {
  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 7);
  const Disc& d0 = cheese.annuli[1].discs[0];
  const auto rec = cauchy_split_check(simple_pole(d0.center), cheese, 1.25, kSpec);
  CHECK(rec.pass);

  // a pole on the outer contour violates the precondition
  CHECK_THROWS_AS(cauchy_split_check(simple_pole(Complex(1.25, 0.0)), cheese, 1.25, kSpec),
                  PreconditionViolation);
  // a pole between T and rho (not in a deleted disc) does too
  CHECK_THROWS_AS(cauchy_split_check(simple_pole(Complex(0.9, 0.0)), cheese, 1.25, kSpec),
                  PreconditionViolation);
}

TEST_CASE("fubini: trivial and pole cases") {
  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 7);

  const auto ones =
      fubini_check(RationalFunction::one(), RationalFunction::one(), cheese, 1.25, kSpec);
  CHECK(ones.pass);
  CHECK(std::abs(std::get<Complex>(ones.lhs)) < 1e-10);

  const auto mono =
      fubini_check(RationalFunction::power(2), RationalFunction::power(-1), cheese, 1.25, kSpec);
  CHECK(mono.pass);
}

TEST_CASE("cauchy deflection: analytic, polynomial, and deleted-disc poles") {
  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 7);
  const Complex w(1.5, 0.0);

  const auto one = cauchy_deflection_check(RationalFunction::one(), w, cheese, kSpec);
  CHECK(one.pass);
  CHECK(one.defect < 1e-12);

  const auto poly = cauchy_deflection_check(RationalFunction::power(4), w, cheese, kSpec);
  CHECK(poly.pass);

  const Disc& d0 = cheese.annuli[1].discs[1];
  const auto pole = cauchy_deflection_check(simple_pole(d0.center), w, cheese, kSpec);
  CHECK(pole.pass);

  CHECK_THROWS_AS(cauchy_deflection_check(simple_pole(Complex(1.2, 0.0)), w, cheese, kSpec),
                  PreconditionViolation);
}

TEST_CASE("restriction bounds: trivial case and monomial equality") {
  const auto triv =
      restriction_bound_check(RationalFunction::power(1), RationalFunction::one(), kSpec);
  CHECK(triv.pass);
  CHECK(std::get<double>(triv.lhs) < 1e-13);

  for (int n = 1; n <= 8; ++n) {
    const auto rec = restriction_bound_check(RationalFunction::power(n),
                                             RationalFunction::power(-n), kSpec);
    CHECK(rec.pass);
    // equality case: |D| = 2 pi n = 2 pi |f'|_T |g|_T
    CHECK(std::get<double>(rec.lhs) == Approx(kTau * n).epsilon(1e-12));
    CHECK(std::get<double>(rec.rhs) == Approx(kTau * n).epsilon(1e-9));
  }
}

TEST_CASE("derivation is bilinear within quadrature tolerance") {
  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 7);
  const RationalFunction f1 = random_member(cheese, 5, 2, 1e-5, 301);
  const RationalFunction f2 = random_member(cheese, 5, 2, 1e-5, 302);
  const RationalFunction g = random_member(cheese, 5, 2, 1e-5, 303);
  const Complex a(0.75, -1.25);

  const Complex lhs = derivation(add(scale(f1, a), f2), g, kSpec);
  const Complex rhs = a * derivation(f1, g, kSpec) + derivation(f2, g, kSpec);
  CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
}

TEST_CASE("l1 demo rows match 2 pi n and grow strictly") {
  const auto rows = l1_unboundedness_demo(5, kSpec);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].l1_norm == Approx(kTau).epsilon(1e-12));
  CHECK(rows[4].l1_norm == Approx(5.0 * kTau).epsilon(1e-12));
  double prev = 0.0;
  for (const auto& row : rows) {
    CHECK(row.sup_norm_X == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(row.l1_norm - kTau * row.n) < 1e-9);
    CHECK(row.l1_norm > prev);
    prev = row.l1_norm;
  }
}

TEST_CASE("property sweeps: small random batches all pass") {
  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 7);
  RunConfig cfg = small_config(12, 8);

  const PairSweepResult pairs = run_pair_sweep(cheese, cfg);
  for (const auto& rec : pairs.cyclicity) {
    CAPTURE(rec.note);
    CHECK(rec.pass);
  }
  for (const auto& rec : pairs.morris) {
    CAPTURE(rec.note);
    CHECK(rec.pass);
  }
  for (const auto& rec : pairs.restriction) {
    CAPTURE(rec.note);
    CHECK(rec.pass);
  }

  for (const auto& rec : run_leibniz_sweep(cheese, cfg)) {
    CAPTURE(rec.note);
    CHECK(rec.pass);
  }
  for (const auto& rec : run_split_sweep(cheese, cfg)) {
    CAPTURE(rec.note);
    CHECK(rec.pass);
  }
  for (const auto& rec : run_fubini_sweep(cheese, cfg)) {
    CAPTURE(rec.note);
    CHECK(rec.pass);
  }
  for (const auto& rec : run_deflection_sweep(cheese, cfg)) {
    CAPTURE(rec.note);
    CHECK(rec.pass);
  }
}

TEST_CASE("sweep results do not depend on the worker count") {
  const SwissCheese cheese = generate_cheese(1.0, 3, 2, 7);
  RunConfig cfg1 = small_config(6, 0);
  cfg1.jobs = 1;
  RunConfig cfg4 = small_config(6, 0);
  cfg4.jobs = 4;
  const PairSweepResult a = run_pair_sweep(cheese, cfg1);
  const PairSweepResult b = run_pair_sweep(cheese, cfg4);
  REQUIRE(a.oracle.size() == b.oracle.size());
  for (std::size_t i = 0; i < a.oracle.size(); ++i) {
    CHECK(a.oracle[i].defect == b.oracle[i].defect);
    CHECK(a.cyclicity[i].defect == b.cyclicity[i].defect);
    CHECK(a.morris[i].defect == b.morris[i].defect);
    CHECK(a.restriction[i].defect == b.restriction[i].defect);
    CHECK(a.oracle[i].inputs_digest == b.oracle[i].inputs_digest);
  }
}

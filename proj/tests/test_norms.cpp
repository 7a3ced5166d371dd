#include <cmath>

#include "doctest.h"
#include "swiss/norms.hpp"
#include "swiss/rng.hpp"

using namespace swiss;
using doctest::Approx;

namespace {

const QuadratureSpec kSpec;

RationalFunction simple_pole(Complex pole, int mult = 1) {
  RationalFunction f;
  f.num = Polynomial::constant(Complex(1, 0));
  f.factors = {{pole, mult}};
  return f;
}

}  // namespace

TEST_CASE("sup_norm_T: monomials, constants, pole at 2") {
  for (int n = 1; n <= 6; ++n) {
    const auto e = sup_norm_T(RationalFunction::power(n), kSpec);
    CHECK(e.converged);
    CHECK(e.value == Approx(1.0).epsilon(1e-12));
  }

  const auto c = sup_norm_T(RationalFunction::constant(Complex(3, -4)), kSpec);
  CHECK(c.value == Approx(5.0).epsilon(1e-15));

  // sup of 1/|z - 2| on T is 1, attained at z = 1 (a sample node)
  const auto e = sup_norm_T(simple_pole(Complex(2, 0)), kSpec);
  CHECK(e.value == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(e.arg_max - Complex(1, 0)) < 1e-12);
}

TEST_CASE("norm estimate reports |f(arg_max)| at the reported arg_max") {
  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RationalFunction f = random_member(cheese, 6, 3, 1e-4, seed);
    const auto e = sup_norm_T(f, kSpec);
    // |.| via std::abs is hypot while the batch path uses sqrt(x^2+y^2):
    // agreement is to a couple of ulps, not bitwise.
    CHECK(std::abs(f.evaluate(e.arg_max)) == doctest::Approx(e.value).epsilon(1e-14));
  }
}

TEST_CASE("sup_norm_X: polynomials reduce to T, disc-center pole peaks on its circle") {
  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 7);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RationalFunction p = random_member(cheese, 6, 0, 1e-4, seed);
    const auto on_t = sup_norm_T(p, kSpec);
    const auto on_x = sup_norm_X(p, cheese, kSpec);
    CHECK(on_x.value == Approx(on_t.value).epsilon(1e-12));
  }

  const Disc& d0 = cheese.annuli[1].discs[0];
  const auto e = sup_norm_X(simple_pole(d0.center), cheese, kSpec);
  CHECK(e.value == Approx(1.0 / d0.radius).epsilon(1e-9));

  const auto one = sup_norm_X(RationalFunction::one(), cheese, kSpec);
  CHECK(one.value == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("sup_norm_X dominates sup_norm_T and never decreases under refinement") {
  const SwissCheese cheese = generate_cheese(1.0, 4, 3, 9);
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const RationalFunction f = random_member(cheese, 6, 3, 1e-4, seed);
    CHECK(sup_norm_X(f, cheese, kSpec).value >= sup_norm_T(f, kSpec).value);

    double prev = 0.0;
    for (int cap = 1; cap <= 6; ++cap) {
      QuadratureSpec spec = kSpec;
      spec.max_doublings = cap;
      const double v = sup_norm_T(f, spec).value;
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("sup_norm_X is submultiplicative within slack") {
  const SwissCheese cheese = generate_cheese(1.0, 3, 2, 3);
  for (std::uint64_t seed = 40; seed < 50; ++seed) {
    const RationalFunction f = random_member(cheese, 4, 2, 1e-4, seed);
    const RationalFunction g = random_member(cheese, 4, 2, 1e-4, seed + 500);
    const double fg = sup_norm_X(multiply(f, g), cheese, kSpec).value;
    const double bound = sup_norm_X(f, cheese, kSpec).value * sup_norm_X(g, cheese, kSpec).value;
    CHECK(fg <= bound + 1e-9 * (1.0 + bound));
  }
}

TEST_CASE("interior grid never beats the boundary estimate") {
  // small cheese (4 discs): 2 annuli with 2 discs each
  const SwissCheese cheese = generate_cheese(1.0, 3, 2, 17);
  REQUIRE(cheese.disc_count() <= 5);

  for (std::uint64_t seed = 60; seed < 64; ++seed) {
    const RationalFunction f = random_member(cheese, 5, 2, 1e-4, seed);
    const double boundary = sup_norm_X(f, cheese, kSpec).value;
    double interior = 0.0;
    for (int i = 0; i < 400; ++i) {
      for (int j = 0; j < 400; ++j) {
        const Complex p(-1.0 + 2.0 * i / 399.0, -1.0 + 2.0 * j / 399.0);
        if (distance_to_X(p, cheese) != 0.0) continue;
        if (std::abs(p) > 1.0) continue;
        bool near_pole = false;
        for (const auto& pf : f.factors) near_pole = near_pole || std::abs(p - pf.pole) < 1e-12;
        if (near_pole) continue;
        interior = std::max(interior, std::abs(f.evaluate(p)));
      }
    }
    CHECK(interior <= boundary * (1.0 + 1e-8));
  }
}

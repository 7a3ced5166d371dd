#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "swiss/types.hpp"

namespace swiss {

// One deleted open disc. The closure must stay inside the open unit disc, so
// the distance to the unit circle, s = 1 - (|center| + radius), is positive.
struct Disc {
  Complex center;
  double radius = 0.0;

  double dist_to_T() const { return 1.0 - (std::abs(center) + radius); }
};

struct AnnulusRecord {
  int n = 1;              // annulus index, 1-based
  double R_n = 0.0;       // (n-1)/n
  double budget = 0.0;    // see annulus_budget; radius sum must stay below it
  std::vector<Disc> discs;
};

struct SwissCheese {
  double C = 1.0;
  std::uint64_t seed = 0;
  std::vector<AnnulusRecord> annuli;

  std::size_t disc_count() const {
    std::size_t n = 0;
    for (const auto& a : annuli) n += a.discs.size();
    return n;
  }
};

// C (1 - R_n)^2 / (2^(n+3) pi) with R_n = (n-1)/n.
double annulus_budget(double C, int n);

// Deterministic construction: per annulus n >= 2, discs_per_annulus discs of
// equal nominal radius summing to at most 0.9 * budget(n), placed by uniform
// rejection sampling with retry-then-halve on disjointness failure. Annulus 1
// is emitted empty (its region is the single point 0).
SwissCheese generate_cheese(double C, int annuli_count, int discs_per_annulus,
                            std::uint64_t seed);

// Sum of r/s^2 over all deleted discs.
double lemma21_sum(const SwissCheese& cheese);

// 4 pi * lemma21_sum; for generated cheeses this is at most C/2.
double certified_bound(const SwissCheese& cheese);

// Empty iff every structural invariant holds. Violations name the invariant
// and the offending disc indices; they are data, not errors.
std::vector<std::string> validate(const SwissCheese& cheese);

// Exact distance from p to X = closed unit disc minus the open deleted discs.
double distance_to_X(Complex p, const SwissCheese& cheese);

nlohmann::ordered_json cheese_to_json(const SwissCheese& cheese);
SwissCheese cheese_from_json(const nlohmann::ordered_json& j);

}  // namespace swiss

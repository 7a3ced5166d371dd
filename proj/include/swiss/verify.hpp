#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "swiss/derivation.hpp"
#include "swiss/geometry.hpp"
#include "swiss/quadrature.hpp"

namespace swiss {

struct RunConfig {
  double C = 1.0;
  int annuli = 4;
  int discs_per_annulus = 3;
  std::uint64_t seed = 7;
  int sweep_pairs = 200;
  int sweep_triples = 100;
  int max_degree = 6;
  int max_poles = 3;
  double min_clearance = 1e-5;
  double rho = 1.25;
  int jobs = 0;              // 0 = hardware concurrency
  std::string kernel = "auto";
  bool timings = false;      // wall-clock section is opt-in to keep reports reproducible
  QuadratureSpec quad;
  CheckTolerances tol;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

nlohmann::ordered_json config_to_json(const RunConfig& cfg);
nlohmann::ordered_json norm_to_json(const NormEstimate& e);
// Starts from defaults; unknown keys are an error (IoError).
RunConfig config_from_json(const nlohmann::ordered_json& j);

SwissCheese build_cheese(const RunConfig& cfg);
std::string cheese_digest(const SwissCheese& cheese);

nlohmann::ordered_json record_to_json(const CheckRecord& rec);

// Sweep drivers. All are deterministic in (cheese, cfg) and independent of
// the worker count; record order is by item index.
struct PairSweepResult {
  std::vector<CheckRecord> oracle;
  std::vector<CheckRecord> cyclicity;
  std::vector<CheckRecord> morris;
  std::vector<CheckRecord> restriction;
};
PairSweepResult run_pair_sweep(const SwissCheese& cheese, const RunConfig& cfg);

std::vector<CheckRecord> run_structural_checks(const SwissCheese& cheese, const RunConfig& cfg);
std::vector<CheckRecord> run_forced_one_cyclicity(const SwissCheese& cheese, const RunConfig& cfg);
std::vector<CheckRecord> run_monomial_pairing(const RunConfig& cfg);
std::vector<CheckRecord> run_restriction_equality(const RunConfig& cfg);
std::vector<CheckRecord> run_leibniz_sweep(const SwissCheese& cheese, const RunConfig& cfg);
std::vector<CheckRecord> run_split_sweep(const SwissCheese& cheese, const RunConfig& cfg);
std::vector<CheckRecord> run_split_polynomials(const SwissCheese& cheese, const RunConfig& cfg);
std::vector<CheckRecord> run_fubini_sweep(const SwissCheese& cheese, const RunConfig& cfg);
std::vector<CheckRecord> run_deflection_sweep(const SwissCheese& cheese, const RunConfig& cfg);
std::vector<CheckRecord> run_l1_demo_checks(const RunConfig& cfg);

struct VerificationOutcome {
  nlohmann::ordered_json report;
  bool pass = false;
  int total = 0;
  int failed = 0;
};

// Runs everything cmd_verify needs and assembles the report document.
VerificationOutcome run_verification(const SwissCheese& cheese, const RunConfig& cfg);

// Runs body(0..n-1) on a small worker pool; results must be written to
// index-addressed slots so scheduling cannot reorder anything.
void parallel_for(int n, int jobs, const std::function<void(int)>& body);

}  // namespace swiss

#include "swiss/verify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "swiss/json_io.hpp"
#include "swiss/rng.hpp"

namespace swiss {

namespace {

// Sweep tags feeding mix_seed; fixed so every family has its own stream.
constexpr std::uint64_t kTagPairF = 0x70616972462e2e2eULL;
constexpr std::uint64_t kTagPairG = 0x70616972472e2e2eULL;
constexpr std::uint64_t kTagForced = 0x666f726365642e2eULL;
constexpr std::uint64_t kTagTripleF = 0x747269706c654621ULL;
constexpr std::uint64_t kTagTripleG = 0x747269706c654721ULL;
constexpr std::uint64_t kTagTripleH = 0x747269706c654821ULL;
constexpr std::uint64_t kTagSplit = 0x73706c69742e2e2eULL;
constexpr std::uint64_t kTagFubiniF = 0x667562696e694621ULL;
constexpr std::uint64_t kTagFubiniG = 0x667562696e694721ULL;
constexpr std::uint64_t kTagDeflG = 0x6465666c47212121ULL;
constexpr std::uint64_t kTagDeflW = 0x6465666c57212121ULL;
constexpr std::uint64_t kTagPolyF = 0x706f6c7946212121ULL;

// Pairwise pole separation across a sweep item; keeps the residue oracle and
// the symbolic derivative well conditioned.
constexpr double kSweepPoleSeparation = 0.05;

MemberOptions sweep_options(const RunConfig& cfg, double outside_lo) {
  MemberOptions opts;
  opts.pole_separation = kSweepPoleSeparation;
  opts.outside_lo = std::max(outside_lo, cfg.rho + 0.05);
  opts.outside_hi = std::max(2.2, opts.outside_lo + 0.6);
  return opts;
}

CheckRecord failure_record(const std::string& name, const std::string& why) {
  CheckRecord rec;
  rec.check_name = name;
  rec.defect = std::numeric_limits<double>::infinity();
  rec.tolerance = 0.0;
  rec.pass = false;
  rec.note = why;
  return rec;
}

template <typename Fn>
CheckRecord guarded(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return failure_record(name, e.what());
  }
}

int effective_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace

void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
  if (n <= 0) return;
  jobs = std::min(effective_jobs(jobs), n);
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&next, &body, n]() {
      for (;;) {
        const int i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        body(i);
      }
    });
  }
  for (auto& w : workers) w.join();
}

void RunConfig::validate() const {
  if (!(C > 0.0)) throw std::invalid_argument("config: C must be positive");
  if (annuli < 1) throw std::invalid_argument("config: annuli must be >= 1");
  if (discs_per_annulus < 1) {
    throw std::invalid_argument("config: discs_per_annulus must be >= 1");
  }
  if (sweep_pairs < 0 || sweep_triples < 0) {
    throw std::invalid_argument("config: sweep sizes must be >= 0");
  }
  if (max_degree < 0 || max_poles < 0) {
    throw std::invalid_argument("config: max_degree and max_poles must be >= 0");
  }
  if (!(min_clearance > 0.0)) throw std::invalid_argument("config: min_clearance must be > 0");
  if (!(rho > 1.0)) throw std::invalid_argument("config: rho must exceed 1");
  if (jobs < 0) throw std::invalid_argument("config: jobs must be >= 0");
  if (kernel != "auto" && kernel != "scalar" && kernel != "avx2") {
    throw std::invalid_argument("config: kernel must be auto, scalar or avx2");
  }
  quad.validate();
}

nlohmann::ordered_json norm_to_json(const NormEstimate& e) {
  nlohmann::ordered_json j;
  j["value"] = e.value;
  j["argmax"] = nlohmann::ordered_json::array({e.arg_max.real(), e.arg_max.imag()});
  j["samples"] = e.samples;
  j["converged"] = e.converged;
  return j;
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["C"] = cfg.C;
  j["annuli"] = cfg.annuli;
  j["discs_per_annulus"] = cfg.discs_per_annulus;
  j["seed"] = cfg.seed;
  j["sweep_pairs"] = cfg.sweep_pairs;
  j["sweep_triples"] = cfg.sweep_triples;
  j["max_degree"] = cfg.max_degree;
  j["max_poles"] = cfg.max_poles;
  j["min_clearance"] = cfg.min_clearance;
  j["rho"] = cfg.rho;
  j["jobs"] = cfg.jobs;
  j["kernel"] = cfg.kernel;
  j["timings"] = cfg.timings;
  j["quadrature"] = {{"initial_nodes", cfg.quad.initial_nodes},
                     {"max_doublings", cfg.quad.max_doublings},
                     {"rel_tolerance", cfg.quad.rel_tolerance}};
  j["tolerances"] = {{"oracle_abs", cfg.tol.oracle_abs},
                     {"oracle_rel", cfg.tol.oracle_rel},
                     {"monomial", cfg.tol.monomial},
                     {"cyclicity", cfg.tol.cyclicity},
                     {"leibniz", cfg.tol.leibniz},
                     {"morris", cfg.tol.morris},
                     {"split", cfg.tol.split},
                     {"split_poly_h2", cfg.tol.split_poly_h2},
                     {"fubini", cfg.tol.fubini},
                     {"deflection", cfg.tol.deflection},
                     {"restriction", cfg.tol.restriction},
                     {"l1_demo", cfg.tol.l1_demo},
                     {"sup_monomial", cfg.tol.sup_monomial}};
  return j;
}

RunConfig config_from_json(const nlohmann::ordered_json& j) {
  RunConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto& v = it.value();
    if (key == "C") cfg.C = v.get<double>();
    else if (key == "annuli") cfg.annuli = v.get<int>();
    else if (key == "discs_per_annulus") cfg.discs_per_annulus = v.get<int>();
    else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
    else if (key == "sweep_pairs") cfg.sweep_pairs = v.get<int>();
    else if (key == "sweep_triples") cfg.sweep_triples = v.get<int>();
    else if (key == "max_degree") cfg.max_degree = v.get<int>();
    else if (key == "max_poles") cfg.max_poles = v.get<int>();
    else if (key == "min_clearance") cfg.min_clearance = v.get<double>();
    else if (key == "rho") cfg.rho = v.get<double>();
    else if (key == "jobs") cfg.jobs = v.get<int>();
    else if (key == "kernel") cfg.kernel = v.get<std::string>();
    else if (key == "timings") cfg.timings = v.get<bool>();
    else if (key == "quadrature") {
      for (auto qt = v.begin(); qt != v.end(); ++qt) {
        if (qt.key() == "initial_nodes") cfg.quad.initial_nodes = qt.value().get<int>();
        else if (qt.key() == "max_doublings") cfg.quad.max_doublings = qt.value().get<int>();
        else if (qt.key() == "rel_tolerance") cfg.quad.rel_tolerance = qt.value().get<double>();
        else throw IoError("config: unknown quadrature key '" + qt.key() + "'");
      }
    } else if (key == "tolerances") {
      for (auto tt = v.begin(); tt != v.end(); ++tt) {
        const double x = tt.value().get<double>();
        if (tt.key() == "oracle_abs") cfg.tol.oracle_abs = x;
        else if (tt.key() == "oracle_rel") cfg.tol.oracle_rel = x;
        else if (tt.key() == "monomial") cfg.tol.monomial = x;
        else if (tt.key() == "cyclicity") cfg.tol.cyclicity = x;
        else if (tt.key() == "leibniz") cfg.tol.leibniz = x;
        else if (tt.key() == "morris") cfg.tol.morris = x;
        else if (tt.key() == "split") cfg.tol.split = x;
        else if (tt.key() == "split_poly_h2") cfg.tol.split_poly_h2 = x;
        else if (tt.key() == "fubini") cfg.tol.fubini = x;
        else if (tt.key() == "deflection") cfg.tol.deflection = x;
        else if (tt.key() == "restriction") cfg.tol.restriction = x;
        else if (tt.key() == "l1_demo") cfg.tol.l1_demo = x;
        else if (tt.key() == "sup_monomial") cfg.tol.sup_monomial = x;
        else throw IoError("config: unknown tolerance key '" + tt.key() + "'");
      }
    } else {
      throw IoError("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

SwissCheese build_cheese(const RunConfig& cfg) {
  return generate_cheese(cfg.C, cfg.annuli, cfg.discs_per_annulus, cfg.seed);
}

std::string cheese_digest(const SwissCheese& cheese) {
  return "fnv1a64:" + hex64(fnv1a64(dump_json(cheese_to_json(cheese))));
}

namespace {

nlohmann::ordered_json value_to_json(const CheckValue& v) {
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  const Complex c = std::get<Complex>(v);
  return nlohmann::ordered_json::array({c.real(), c.imag()});
}

}  // namespace

nlohmann::ordered_json record_to_json(const CheckRecord& rec) {
  nlohmann::ordered_json j;
  j["check"] = rec.check_name;
  j["lhs"] = value_to_json(rec.lhs);
  j["rhs"] = value_to_json(rec.rhs);
  j["defect"] = rec.defect;
  j["tolerance"] = rec.tolerance;
  j["pass"] = rec.pass;
  j["inputs_digest"] = rec.inputs_digest;
  if (!rec.note.empty()) j["note"] = rec.note;
  return j;
}

std::vector<CheckRecord> run_structural_checks(const SwissCheese& cheese, const RunConfig& cfg) {
  std::vector<CheckRecord> out;

  CheckRecord val;
  val.check_name = "validate";
  const auto violations = validate(cheese);
  val.lhs = static_cast<double>(violations.size());
  val.rhs = 0.0;
  val.defect = static_cast<double>(violations.size());
  val.tolerance = 0.0;
  val.pass = violations.empty();
  val.inputs_digest = cheese_digest(cheese);
  if (!violations.empty()) {
    std::string note = violations.front();
    for (std::size_t i = 1; i < violations.size() && i < 4; ++i) note += "; " + violations[i];
    val.note = note;
  }
  out.push_back(std::move(val));

  CheckRecord budget;
  budget.check_name = "budget_certificate";
  const double cb = certified_bound(cheese);
  budget.lhs = cb;
  budget.rhs = cfg.C / 2.0;
  budget.defect = std::max(0.0, cb - cfg.C / 2.0);
  budget.tolerance = 0.0;
  budget.pass = cb <= cfg.C / 2.0;
  budget.inputs_digest = cheese_digest(cheese);
  out.push_back(std::move(budget));

  return out;
}

PairSweepResult run_pair_sweep(const SwissCheese& cheese, const RunConfig& cfg) {
  PairSweepResult res;
  const int n = cfg.sweep_pairs;
  res.oracle.resize(static_cast<std::size_t>(n));
  res.cyclicity.resize(static_cast<std::size_t>(n));
  res.morris.resize(static_cast<std::size_t>(n));
  res.restriction.resize(static_cast<std::size_t>(n));

  parallel_for(n, cfg.jobs, [&](int i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      MemberOptions opts = sweep_options(cfg, 1.3);
      const RationalFunction f =
          random_member(cheese, cfg.max_degree, cfg.max_poles, cfg.min_clearance,
                        mix_seed(cfg.seed, kTagPairF, static_cast<std::uint64_t>(i)), opts);
      for (const auto& pf : f.factors) opts.avoid.push_back(pf.pole);
      const RationalFunction g =
          random_member(cheese, cfg.max_degree, cfg.max_poles, cfg.min_clearance,
                        mix_seed(cfg.seed, kTagPairG, static_cast<std::uint64_t>(i)), opts);

      // Oracle agreement: quadrature pairing vs residue calculus.
      const IntegralResult quad = pairing_T(f, g, cfg.quad);
      const Complex oracle = residue_oracle_T(f, g);
      CheckRecord ora;
      ora.check_name = "oracle_agreement";
      ora.inputs_digest = pair_digest(f, g);
      ora.lhs = quad.value;
      ora.rhs = oracle;
      ora.defect = std::abs(quad.value - oracle);
      ora.tolerance = cfg.tol.oracle_abs + cfg.tol.oracle_rel * std::abs(oracle);
      ora.pass = ora.defect <= ora.tolerance && quad.converged;
      if (!quad.converged) ora.note = "quadrature did not converge";
      res.oracle[idx] = std::move(ora);

      res.cyclicity[idx] = cyclicity_check(f, g, cfg.quad, cfg.tol.cyclicity);
      res.morris[idx] = morris_bound_check(f, g, cheese, cfg.quad, cfg.tol.morris);
      res.restriction[idx] = restriction_bound_check(f, g, cfg.quad, cfg.tol.restriction);
    } catch (const std::exception& e) {
      res.oracle[idx] = failure_record("oracle_agreement", e.what());
      res.cyclicity[idx] = failure_record("cyclicity", e.what());
      res.morris[idx] = failure_record("morris_bound", e.what());
      res.restriction[idx] = failure_record("restriction_bound", e.what());
    }
  });
  return res;
}

std::vector<CheckRecord> run_forced_one_cyclicity(const SwissCheese& cheese,
                                                  const RunConfig& cfg) {
  const int n = std::min(16, cfg.sweep_pairs);
  std::vector<CheckRecord> out(static_cast<std::size_t>(n));
  parallel_for(n, cfg.jobs, [&](int i) {
    out[static_cast<std::size_t>(i)] = guarded("cyclicity_forced_one", [&]() {
      const MemberOptions opts = sweep_options(cfg, 1.3);
      const RationalFunction f =
          random_member(cheese, cfg.max_degree, cfg.max_poles, cfg.min_clearance,
                        mix_seed(cfg.seed, kTagForced, static_cast<std::uint64_t>(i)), opts);
      CheckRecord rec = cyclicity_check(f, RationalFunction::one(), cfg.quad, cfg.tol.cyclicity);
      rec.check_name = "cyclicity_forced_one";
      return rec;
    });
  });
  return out;
}

std::vector<CheckRecord> run_monomial_pairing(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  for (int n = 1; n <= 8; ++n) {
    out.push_back(guarded("monomial_pairing", [&]() {
      const RationalFunction zn = RationalFunction::power(n);
      const RationalFunction zmn = RationalFunction::power(-n);
      const Complex expected(0.0, kTau * static_cast<double>(n));
      const IntegralResult quad = pairing_T(zn, zmn, cfg.quad);
      const Complex oracle = residue_oracle_T(zn, zmn);
      CheckRecord rec;
      rec.check_name = "monomial_pairing";
      rec.inputs_digest = pair_digest(zn, zmn);
      rec.lhs = quad.value;
      rec.rhs = expected;
      rec.defect = std::max(std::abs(quad.value - expected), std::abs(oracle - expected));
      rec.tolerance = cfg.tol.monomial;
      rec.pass = rec.defect <= rec.tolerance && quad.converged;
      return rec;
    }));
  }
  return out;
}

std::vector<CheckRecord> run_restriction_equality(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  for (int n = 1; n <= 8; ++n) {
    out.push_back(guarded("restriction_equality", [&]() {
      const RationalFunction zn = RationalFunction::power(n);
      const RationalFunction zmn = RationalFunction::power(-n);
      const IntegralResult quad = pairing_T(zn, zmn, cfg.quad);
      const double bound =
          kTau * sup_norm_T(zn.derivative(), cfg.quad).value * sup_norm_T(zmn, cfg.quad).value;
      CheckRecord rec;
      rec.check_name = "restriction_equality";
      rec.inputs_digest = pair_digest(zn, zmn);
      rec.lhs = std::abs(quad.value);
      rec.rhs = bound;
      rec.defect = std::abs(std::abs(quad.value) - bound);
      rec.tolerance = cfg.tol.restriction * (1.0 + bound);
      rec.pass = rec.defect <= rec.tolerance && quad.converged;
      return rec;
    }));
  }
  return out;
}

std::vector<CheckRecord> run_leibniz_sweep(const SwissCheese& cheese, const RunConfig& cfg) {
  const int n = cfg.sweep_triples;
  std::vector<CheckRecord> out(static_cast<std::size_t>(n));
  parallel_for(n, cfg.jobs, [&](int i) {
    out[static_cast<std::size_t>(i)] = guarded("leibniz", [&]() {
      MemberOptions opts = sweep_options(cfg, 1.3);
      const auto u = static_cast<std::uint64_t>(i);
      const RationalFunction f = random_member(cheese, cfg.max_degree, cfg.max_poles,
                                               cfg.min_clearance, mix_seed(cfg.seed, kTagTripleF, u),
                                               opts);
      for (const auto& pf : f.factors) opts.avoid.push_back(pf.pole);
      const RationalFunction g = random_member(cheese, cfg.max_degree, cfg.max_poles,
                                               cfg.min_clearance, mix_seed(cfg.seed, kTagTripleG, u),
                                               opts);
      for (const auto& pf : g.factors) opts.avoid.push_back(pf.pole);
      const RationalFunction h = random_member(cheese, cfg.max_degree, cfg.max_poles,
                                               cfg.min_clearance, mix_seed(cfg.seed, kTagTripleH, u),
                                               opts);
      return leibniz_check(f, g, h, cfg.quad, cfg.tol.leibniz);
    });
  });
  return out;
}

std::vector<CheckRecord> run_split_sweep(const SwissCheese& cheese, const RunConfig& cfg) {
  const int n = std::min(50, cfg.sweep_pairs);
  std::vector<CheckRecord> out(static_cast<std::size_t>(n));
  parallel_for(n, cfg.jobs, [&](int i) {
    out[static_cast<std::size_t>(i)] = guarded("cauchy_split", [&]() {
      const MemberOptions opts = sweep_options(cfg, 1.3);
      const RationalFunction f =
          random_member(cheese, cfg.max_degree, cfg.max_poles, cfg.min_clearance,
                        mix_seed(cfg.seed, kTagSplit, static_cast<std::uint64_t>(i)), opts);
      return cauchy_split_check(f, cheese, cfg.rho, cfg.quad, cfg.tol.split);
    });
  });
  return out;
}

std::vector<CheckRecord> run_split_polynomials(const SwissCheese& cheese, const RunConfig& cfg) {
  std::vector<RationalFunction> polys;
  polys.push_back(RationalFunction::power(2));
  {
    const MemberOptions opts = sweep_options(cfg, 1.3);
    polys.push_back(
        random_member(cheese, cfg.max_degree, 0, cfg.min_clearance,
                      mix_seed(cfg.seed, kTagPolyF, 0), opts));
  }

  std::vector<CheckRecord> out;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    const auto& f = polys[k];
    try {
      const CauchySplitDetail detail = cauchy_split_detail(f, cheese, cfg.rho, cfg.quad);

      CheckRecord split;
      split.check_name = "cauchy_split_polynomial";
      split.inputs_digest = pair_digest(f, f);
      split.lhs = detail.max_defect;
      split.rhs = 0.0;
      split.defect = detail.max_defect;
      split.tolerance = cfg.tol.split * (1.0 + detail.max_f_prime);
      split.pass = split.defect <= split.tolerance && detail.converged;
      out.push_back(std::move(split));

      CheckRecord h2;
      h2.check_name = "split_h2_zero";
      h2.inputs_digest = pair_digest(f, f);
      h2.lhs = detail.max_h2;
      h2.rhs = 0.0;
      h2.defect = detail.max_h2;
      h2.tolerance = cfg.tol.split_poly_h2;
      h2.pass = h2.defect <= h2.tolerance;
      out.push_back(std::move(h2));
    } catch (const std::exception& e) {
      out.push_back(failure_record("cauchy_split_polynomial", e.what()));
      out.push_back(failure_record("split_h2_zero", e.what()));
    }
  }
  return out;
}

std::vector<CheckRecord> run_fubini_sweep(const SwissCheese& cheese, const RunConfig& cfg) {
  const int n = std::min(50, cfg.sweep_pairs);
  std::vector<CheckRecord> out(static_cast<std::size_t>(n));
  parallel_for(n, cfg.jobs, [&](int i) {
    out[static_cast<std::size_t>(i)] = guarded("fubini", [&]() {
      MemberOptions opts = sweep_options(cfg, 1.3);
      const auto u = static_cast<std::uint64_t>(i);
      const RationalFunction f = random_member(cheese, cfg.max_degree, cfg.max_poles,
                                               cfg.min_clearance, mix_seed(cfg.seed, kTagFubiniF, u),
                                               opts);
      for (const auto& pf : f.factors) opts.avoid.push_back(pf.pole);
      const RationalFunction g = random_member(cheese, cfg.max_degree, cfg.max_poles,
                                               cfg.min_clearance, mix_seed(cfg.seed, kTagFubiniG, u),
                                               opts);
      return fubini_check(f, g, cheese, cfg.rho, cfg.quad, cfg.tol.fubini);
    });
  });
  return out;
}

std::vector<CheckRecord> run_deflection_sweep(const SwissCheese& cheese, const RunConfig& cfg) {
  const int n = std::min(50, cfg.sweep_pairs);
  std::vector<CheckRecord> out(static_cast<std::size_t>(n));
  parallel_for(n, cfg.jobs, [&](int i) {
    out[static_cast<std::size_t>(i)] = guarded("cauchy_deflection", [&]() {
      const auto u = static_cast<std::uint64_t>(i);
      // Poles must stay off |z| = |w| = 1.5: outside poles start at 1.6.
      MemberOptions opts = sweep_options(cfg, 1.6);
      const RationalFunction g = random_member(cheese, cfg.max_degree, cfg.max_poles,
                                               cfg.min_clearance, mix_seed(cfg.seed, kTagDeflG, u),
                                               opts);
      Rng wrng(mix_seed(cfg.seed, kTagDeflW, u));
      const double phi = wrng.range(0.0, kTau);
      const Complex w(1.5 * std::cos(phi), 1.5 * std::sin(phi));
      return cauchy_deflection_check(g, w, cheese, cfg.quad, cfg.tol.deflection);
    });
  });
  return out;
}

std::vector<CheckRecord> run_l1_demo_checks(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  try {
    const auto rows = l1_unboundedness_demo(8, cfg.quad);
    double prev_l1 = 0.0;
    bool monotone = true;
    for (const auto& row : rows) {
      const double expected = kTau * static_cast<double>(row.n);

      CheckRecord l1;
      l1.check_name = "l1_norm_row";
      l1.inputs_digest = hex64(fnv1a64("z^" + std::to_string(row.n)));
      l1.lhs = row.l1_norm;
      l1.rhs = expected;
      l1.defect = std::abs(row.l1_norm - expected);
      l1.tolerance = cfg.tol.l1_demo;
      l1.pass = l1.defect <= l1.tolerance;
      out.push_back(std::move(l1));

      CheckRecord sup;
      sup.check_name = "sup_monomial_row";
      sup.inputs_digest = hex64(fnv1a64("z^" + std::to_string(row.n)));
      sup.lhs = row.sup_norm_X;
      sup.rhs = 1.0;
      sup.defect = std::abs(row.sup_norm_X - 1.0);
      sup.tolerance = cfg.tol.sup_monomial;
      sup.pass = sup.defect <= sup.tolerance;
      out.push_back(std::move(sup));

      monotone = monotone && row.l1_norm > prev_l1;
      prev_l1 = row.l1_norm;
    }

    CheckRecord mono;
    mono.check_name = "l1_monotone";
    mono.inputs_digest = hex64(fnv1a64("l1 column"));
    mono.lhs = static_cast<double>(rows.size());
    mono.rhs = static_cast<double>(rows.size());
    mono.defect = monotone ? 0.0 : 1.0;
    mono.tolerance = 0.0;
    mono.pass = monotone;
    out.push_back(std::move(mono));
  } catch (const std::exception& e) {
    out.push_back(failure_record("l1_norm_row", e.what()));
  }
  return out;
}

VerificationOutcome run_verification(const SwissCheese& cheese, const RunConfig& cfg) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  nlohmann::ordered_json checks;
  nlohmann::ordered_json timings;
  int total = 0;
  int failed = 0;

  auto add_group = [&](const std::string& name, const std::vector<CheckRecord>& records,
                       double ms) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& rec : records) {
      arr.push_back(record_to_json(rec));
      ++total;
      if (!rec.pass) ++failed;
    }
    checks[name] = std::move(arr);
    timings[name] = ms;
  };

  auto timed = [&](const std::string& name, auto&& fn) {
    const auto t0 = Clock::now();
    const auto records = fn();
    const double ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(Clock::now() - t0)
            .count();
    add_group(name, records, ms);
  };

  timed("structural", [&]() { return run_structural_checks(cheese, cfg); });

  if (cfg.sweep_pairs > 0) {
    const auto t0 = Clock::now();
    const PairSweepResult pairs = run_pair_sweep(cheese, cfg);
    const double ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(Clock::now() - t0)
            .count();
    add_group("oracle_agreement", pairs.oracle, ms);
    add_group("cyclicity", pairs.cyclicity, 0.0);
    add_group("morris_bound", pairs.morris, 0.0);
    add_group("restriction_bound", pairs.restriction, 0.0);

    timed("cyclicity_forced_one", [&]() { return run_forced_one_cyclicity(cheese, cfg); });
    timed("monomial_pairing", [&]() { return run_monomial_pairing(cfg); });
    timed("restriction_equality", [&]() { return run_restriction_equality(cfg); });
    timed("cauchy_split", [&]() { return run_split_sweep(cheese, cfg); });
    timed("cauchy_split_polynomial", [&]() { return run_split_polynomials(cheese, cfg); });
    timed("fubini", [&]() { return run_fubini_sweep(cheese, cfg); });
    timed("cauchy_deflection", [&]() { return run_deflection_sweep(cheese, cfg); });
    timed("l1_unboundedness", [&]() { return run_l1_demo_checks(cfg); });
  }

  if (cfg.sweep_triples > 0) {
    timed("leibniz", [&]() { return run_leibniz_sweep(cheese, cfg); });
  }

  VerificationOutcome outcome;
  outcome.total = total;
  outcome.failed = failed;
  outcome.pass = failed == 0;

  nlohmann::ordered_json report;
  report["config"] = config_to_json(cfg);
  report["cheese_digest"] = cheese_digest(cheese);
  report["lemma21_sum"] = lemma21_sum(cheese);
  report["certified_bound"] = certified_bound(cheese);
  report["checks"] = std::move(checks);
  report["summary"] = {{"total", total},
                       {"passed", total - failed},
                       {"failed", failed},
                       {"aggregate_pass", failed == 0}};
  if (cfg.timings) report["timings_ms"] = std::move(timings);
  outcome.report = std::move(report);
  return outcome;
}

}  // namespace swiss

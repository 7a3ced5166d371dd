// Command-line front end: generate / verify / render / demo-unbounded / pair-test.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 construction failure,
// 3 I/O or parse failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "swiss/derivation.hpp"
#include "swiss/json_io.hpp"
#include "swiss/kernels.hpp"
#include "swiss/svg.hpp"
#include "swiss/verify.hpp"

namespace {

using swiss::RunConfig;

void apply_kernel_choice(const std::string& kernel) {
  if (kernel == "auto") return;
  if (kernel == "scalar") {
    swiss::kernels::select(swiss::kernels::Isa::Scalar);
    return;
  }
  if (kernel == "avx2") {
    swiss::kernels::select(swiss::kernels::Isa::Avx2);
    return;
  }
  throw std::invalid_argument("unknown kernel '" + kernel + "' (use auto, scalar or avx2)");
}

// --config is applied before flag parsing so explicit flags override the file.
RunConfig preload_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      return swiss::config_from_json(swiss::parse_json_file(argv[i + 1]));
    }
    if (arg.rfind("--config=", 0) == 0) {
      return swiss::config_from_json(swiss::parse_json_file(arg.substr(9)));
    }
  }
  return RunConfig{};
}

void add_config_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file (flags override it)");
  cmd->add_option("--c", cfg.C, "Budget constant C")->capture_default_str();
  cmd->add_option("--annuli", cfg.annuli, "Number of annuli")->capture_default_str();
  cmd->add_option("--discs-per-annulus", cfg.discs_per_annulus, "Discs per annulus (n >= 2)")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Generation seed")->capture_default_str();
  cmd->add_option("--pairs", cfg.sweep_pairs, "Random pairs per sweep")->capture_default_str();
  cmd->add_option("--triples", cfg.sweep_triples, "Random triples for the derivation law")
      ->capture_default_str();
  cmd->add_option("--max-degree", cfg.max_degree, "Max numerator degree")->capture_default_str();
  cmd->add_option("--max-poles", cfg.max_poles, "Max pole count")->capture_default_str();
  cmd->add_option("--min-clearance", cfg.min_clearance, "Minimum pole clearance to X")
      ->capture_default_str();
  cmd->add_option("--rho", cfg.rho, "Outer contour radius (> 1)")->capture_default_str();
  cmd->add_option("--jobs", cfg.jobs, "Worker threads (0 = auto)")->capture_default_str();
  cmd->add_option("--kernel", cfg.kernel, "Kernel ISA: auto, scalar, avx2")
      ->capture_default_str();
  cmd->add_flag("--timings", cfg.timings, "Embed wall-clock timings in the report");
}

nlohmann::ordered_json integral_to_json(const swiss::IntegralResult& r) {
  nlohmann::ordered_json j;
  j["re"] = r.value.real();
  j["im"] = r.value.imag();
  j["nodes"] = r.nodes_used;
  j["err"] = r.est_error;
  j["converged"] = r.converged;
  return j;
}

int cmd_generate(const RunConfig& cfg, const std::string& out_path) {
  const swiss::SwissCheese cheese = swiss::build_cheese(cfg);
  swiss::write_text_file(out_path, swiss::dump_json(swiss::cheese_to_json(cheese)));
  const double cb = swiss::certified_bound(cheese);
  std::printf("cheese written to %s (%zu discs, digest %s)\n", out_path.c_str(),
              cheese.disc_count(), swiss::cheese_digest(cheese).c_str());
  std::printf("certified bound 4*pi*sum(r/s^2) = %s\n", swiss::format_double17(cb).c_str());
  std::printf("  <= C/2 = %s : %s\n", swiss::format_double17(cfg.C / 2.0).c_str(),
              cb <= cfg.C / 2.0 ? "yes" : "NO");
  std::printf("  <= C   = %s : %s\n", swiss::format_double17(cfg.C).c_str(),
              cb <= cfg.C ? "yes" : "NO");
  return cb <= cfg.C / 2.0 ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, const std::string& cheese_path,
               const std::string& out_path) {
  const swiss::SwissCheese cheese =
      swiss::cheese_from_json(swiss::parse_json_file(cheese_path));
  const swiss::VerificationOutcome outcome = swiss::run_verification(cheese, cfg);
  swiss::write_text_file(out_path, swiss::dump_json(outcome.report));

  for (const auto& [group, records] : outcome.report.at("checks").items()) {
    int pass = 0;
    for (const auto& rec : records) pass += rec.at("pass").get<bool>() ? 1 : 0;
    std::printf("%-24s %4d/%-4zu pass\n", group.c_str(), pass, records.size());
  }
  std::printf("aggregate: %s (%d checks, %d failed)\n", outcome.pass ? "PASS" : "FAIL",
              outcome.total, outcome.failed);
  std::printf("report written to %s\n", out_path.c_str());
  return outcome.pass ? 0 : 1;
}

int cmd_render(const std::string& cheese_path, const std::string& out_path) {
  const swiss::SwissCheese cheese =
      swiss::cheese_from_json(swiss::parse_json_file(cheese_path));
  swiss::write_text_file(out_path, swiss::render_cheese_svg(cheese));
  std::printf("svg written to %s\n", out_path.c_str());
  return 0;
}

int cmd_demo_unbounded(const RunConfig& cfg, int n_max) {
  const auto rows = swiss::l1_unboundedness_demo(n_max, cfg.quad);
  std::printf("%4s  %-22s %-22s %-22s\n", "n", "sup |z^n| on X", "L1 norm of (z^n)' on T",
              "2*pi*n");
  bool ok = true;
  double prev = 0.0;
  for (const auto& row : rows) {
    const double expect = swiss::kTau * row.n;
    std::printf("%4d  %-22.15g %-22.15g %-22.15g\n", row.n, row.sup_norm_X, row.l1_norm, expect);
    ok = ok && std::abs(row.l1_norm - expect) <= cfg.tol.l1_demo &&
         std::abs(row.sup_norm_X - 1.0) <= cfg.tol.sup_monomial && row.l1_norm > prev;
    prev = row.l1_norm;
  }
  std::printf("ratio ||f'||_L1 / |f|_X grows like 2*pi*n: %s\n", ok ? "confirmed" : "FAILED");
  return ok ? 0 : 1;
}

int cmd_pair_test(const RunConfig& cfg, const std::string& cheese_path, const std::string& f_json,
                  const std::string& g_json, const std::string& out_path) {
  const swiss::SwissCheese cheese =
      swiss::cheese_from_json(swiss::parse_json_file(cheese_path));
  const swiss::RationalFunction f = swiss::rf_from_json(swiss::parse_json_text(f_json));
  const swiss::RationalFunction g = swiss::rf_from_json(swiss::parse_json_text(g_json));

  nlohmann::ordered_json doc;
  doc["f"] = swiss::rf_to_json(f);
  doc["g"] = swiss::rf_to_json(g);
  doc["clearance_f"] = swiss::pole_clearance(f, cheese);
  doc["clearance_g"] = swiss::pole_clearance(g, cheese);
  bool all_inputs_ok = true;
  nlohmann::ordered_json norms;
  auto add_norm = [&](const char* key, auto&& fn) {
    try {
      const swiss::NormEstimate e = fn();
      norms[key] = std::isfinite(e.value) ? swiss::norm_to_json(e) : nullptr;
    } catch (const std::exception&) {
      norms[key] = nullptr;
    }
  };
  add_norm("f_T", [&] { return swiss::sup_norm_T(f, cfg.quad); });
  add_norm("g_T", [&] { return swiss::sup_norm_T(g, cfg.quad); });
  add_norm("f_X", [&] { return swiss::sup_norm_X(f, cheese, cfg.quad); });
  add_norm("g_X", [&] { return swiss::sup_norm_X(g, cheese, cfg.quad); });
  doc["norms"] = std::move(norms);

  try {
    const swiss::IntegralResult d = swiss::derivation_result(f, g, cfg.quad);
    doc["D"] = integral_to_json(d);
  } catch (const std::exception& e) {
    doc["D"] = nullptr;
    doc["D_note"] = e.what();
    all_inputs_ok = false;
  }
  try {
    const swiss::Complex oracle = swiss::residue_oracle_T(f, g);
    doc["residue_oracle"] = nlohmann::ordered_json::array({oracle.real(), oracle.imag()});
  } catch (const std::exception& e) {
    doc["residue_oracle"] = nullptr;
    doc["residue_oracle_note"] = e.what();
  }

  auto records = nlohmann::ordered_json::array();
  bool all_pass = all_inputs_ok;
  auto push = [&](const char* name, auto&& check) {
    swiss::CheckRecord rec;
    try {
      rec = check();
    } catch (const std::exception& e) {
      rec.check_name = name;
      rec.pass = false;
      rec.note = e.what();
    }
    records.push_back(swiss::record_to_json(rec));
    all_pass = all_pass && rec.pass;
  };
  push("cyclicity", [&] { return swiss::cyclicity_check(f, g, cfg.quad, cfg.tol.cyclicity); });
  push("morris_bound",
       [&] { return swiss::morris_bound_check(f, g, cheese, cfg.quad, cfg.tol.morris); });
  push("restriction_bound",
       [&] { return swiss::restriction_bound_check(f, g, cfg.quad, cfg.tol.restriction); });
  doc["checks"] = std::move(records);
  doc["pass"] = all_pass;

  const std::string text = swiss::dump_json(doc);
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    swiss::write_text_file(out_path, text);
    std::printf("pair report written to %s\n", out_path.c_str());
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig base;
  try {
    base = preload_config(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }

  CLI::App app{"Swiss cheese construction and derivation-functional verification"};
  app.require_subcommand(1);

  RunConfig cfg = base;
  std::string config_path;

  auto* gen = app.add_subcommand("generate", "Generate a Swiss cheese and write it as JSON");
  std::string gen_out = "cheese.json";
  add_config_flags(gen, cfg, config_path);
  gen->add_option("--out", gen_out, "Output cheese file")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "Run the verification suite against a cheese file");
  std::string ver_cheese;
  std::string ver_out = "report.json";
  add_config_flags(ver, cfg, config_path);
  ver->add_option("cheese", ver_cheese, "Cheese JSON file")->required();
  ver->add_option("--out", ver_out, "Output report file")->capture_default_str();

  auto* ren = app.add_subcommand("render", "Render a cheese file as SVG");
  std::string ren_cheese;
  std::string ren_out = "cheese.svg";
  ren->add_option("cheese", ren_cheese, "Cheese JSON file")->required();
  ren->add_option("--out", ren_out, "Output SVG file")->capture_default_str();

  auto* demo = app.add_subcommand("demo-unbounded",
                                  "Show that f -> f' is unbounded into L1(T) on monomials");
  int n_max = 8;
  add_config_flags(demo, cfg, config_path);
  demo->add_option("--n-max", n_max, "Largest monomial degree")->capture_default_str();

  auto* pair = app.add_subcommand("pair-test", "Run the pair checks for inline f and g");
  std::string pair_cheese;
  std::string pair_f;
  std::string pair_g;
  std::string pair_out;
  add_config_flags(pair, cfg, config_path);
  pair->add_option("cheese", pair_cheese, "Cheese JSON file")->required();
  pair->add_option("--f", pair_f, "Rational function f as JSON")->required();
  pair->add_option("--g", pair_g, "Rational function g as JSON")->required();
  pair->add_option("--out", pair_out, "Output report file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    cfg.validate();
    apply_kernel_choice(cfg.kernel);
    if (gen->parsed()) return cmd_generate(cfg, gen_out);
    if (ver->parsed()) return cmd_verify(cfg, ver_cheese, ver_out);
    if (ren->parsed()) return cmd_render(ren_cheese, ren_out);
    if (demo->parsed()) return cmd_demo_unbounded(cfg, n_max);
    if (pair->parsed()) return cmd_pair_test(cfg, pair_cheese, pair_f, pair_g, pair_out);
    return 3;
  } catch (const swiss::ConstructionError& e) {
    std::fprintf(stderr, "construction failure: %s\n", e.what());
    return 2;
  } catch (const swiss::GenerationError& e) {
    std::fprintf(stderr, "construction failure: %s\n", e.what());
    return 2;
  } catch (const swiss::IoError& e) {
    std::fprintf(stderr, "i/o failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

// uent: command-line front end.
//
//   uent gate --kind bosonic --d 3
//   uent construct permutation --d 4 --out perm4.json
//   uent verify perm4.json --json report.json
//   uent certify-appendices --d 5
//   uent prevalence --kind fermionic --d 8 --count 10
//   uent profile perm4.json --samples 10000
//
// Exit codes: 0 success (verify: none found), 1 verify: counterexample found,
// 2 usage / parse / dimension error, 3 verify: inconclusive.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uent/constructions.hpp"
#include "uent/io.hpp"
#include "uent/search.hpp"
#include "uent/varieties.hpp"

namespace {

using namespace uent;

constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KindArgs {
  std::string family;
  int d = 0, d1 = 0, d2 = 0;

  VarietyKind resolve() const {
    const Family f = parse_family(family);
    if (f == Family::distinguishable) {
      if (d1 < 1 || d2 < 1) throw UsageError("distinguishable kinds need --d1 >= 1 and --d2 >= 1");
      return VarietyKind::segre(d1, d2);
    }
    if (d < 1) throw UsageError("--d is required and must be positive");
    return f == Family::bosonic ? VarietyKind::veronese(d) : VarietyKind::grassmannian(d);
  }
};

void add_kind_flags(CLI::App* app, KindArgs& k) {
  app->add_option("--kind", k.family, "bosonic | fermionic | distinguishable")->required();
  app->add_option("--d", k.d, "single-particle dimension");
  app->add_option("--d1", k.d1, "first factor dimension (distinguishable)");
  app->add_option("--d2", k.d2, "second factor dimension (distinguishable)");
}

struct OutputArgs {
  std::string json_path;
  bool record_time = false;
};

void add_output_flags(CLI::App* app, OutputArgs& o) {
  app->add_option("--json", o.json_path, "write the JSON report here ('-' for stdout)");
  app->add_flag("--record-time", o.record_time, "include wall time in the JSON manifest (breaks byte-identical replay)");
}

void add_search_flags(CLI::App* app, SearchConfig& c) {
  app->add_option("--seed", c.seed, "master seed (64-bit)");
  app->add_option("--restarts", c.restarts, "multistart restarts");
  app->add_option("--iters", c.max_iters, "descent iterations per restart");
  app->add_option("--tol", c.tolerance, "residual below which a counterexample is reported");
  app->add_option("--certify-threshold", c.certify_threshold, "best residual at or above which none is found");
  app->add_option("--workers", c.workers, "worker threads (results do not depend on this)");
  app->add_flag("--no-polish{false}", c.polish, "disable the Levenberg-Marquardt refinement of near-collisions");
}

// Human-readable text goes to stdout unless stdout carries the JSON.
std::ostream& human(const OutputArgs& o) { return o.json_path == "-" ? std::cerr : std::cout; }

void emit(const OutputArgs& o, json body, const std::string& command, const json& config, std::uint64_t seed,
          double wall) {
  RunManifest m{command, config, seed, wall, o.record_time};
  body["manifest"] = to_json(m);
  const std::string text = body.dump(2) + "\n";
  if (o.json_path.empty()) return;
  if (o.json_path == "-")
    std::cout << text;
  else
    write_file(o.json_path, text);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_gate(const KindArgs& ka, const OutputArgs& out) {
  const VarietyKind kind = ka.resolve();
  const ExistencePrediction p = dimension_gate(kind);
  auto& os = human(out);
  os << "kind                 " << kind.label() << "\n"
     << "variety dimension    " << variety_dim(kind) << "\n"
     << "2 * dim (lhs)        " << p.lhs << "\n"
     << "ambient P^m (rhs)    " << p.rhs << "\n"
     << "lhs >= rhs           " << (p.inequality_holds ? "yes (collision forced)" : "no") << "\n"
     << "entangler exists     " << (p.exists ? "true" : "false") << "\n";
  json body;
  body["kind"] = to_json(kind);
  body["variety_dim"] = variety_dim(kind);
  body["prediction"] = to_json(p);
  if (kind.family != Family::distinguishable) {
    const ClosureBound b = closure_dim_bound(kind);
    os << "closure dim bound    " << b.bound << " (group dim " << b.group_dim << ")\n";
    body["closure_dim_bound"] = json{{"bound", b.bound}, {"group_dim", b.group_dim}};
  }
  if (out.json_path.empty()) {
    std::cout << body.dump(2) << "\n";
    return 0;
  }
  emit(out, body, "gate", to_json(kind), 0, 0.0);
  return 0;
}

int cmd_construct(const std::string& type, int d, const std::string& out_path) {
  GateMatrix g;
  try {
    if (type == "permutation")
      g = build_permutation_bue(d);
    else if (type == "householder")
      g = build_householder_bue(d);
    else
      throw UsageError("unknown construction '" + type + "' (expected permutation or householder)");
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  const std::string text = serialize_gate(g);
  std::ostream& os = out_path.empty() ? std::cerr : std::cout;
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  os << type << " gate on " << g.kind.label() << ", " << g.n() << "x" << g.n() << "\n"
     << "unitarity defect max|U^H U - I| = " << fmt(g.unitarity_defect()) << "\n"
     << "trace = " << fmt(g.entries.trace().real()) << "\n";
  return 0;
}

int cmd_verify(const std::string& path, const std::string& expect_family, const SearchConfig& cfg,
               const OutputArgs& out) {
  GateMatrix g;
  try {
    g = load_gate(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (!expect_family.empty() && parse_family(expect_family) != g.kind.family)
    throw UsageError("file holds a " + std::string(family_name(g.kind.family)) + " gate, not " + expect_family);
  if (g.unitarity_defect() > 1e-10) throw UsageError("gate in " + path + " is not unitary");

  const auto t0 = std::chrono::steady_clock::now();
  const VerificationReport r = counterexample_search(g, cfg);
  const double wall = seconds_since(t0);

  auto& os = human(out);
  os << "gate        " << g.kind.label() << " (" << g.provenance << ")\n"
     << "verdict     " << verdict_name(r.verdict) << "\n"
     << "best        " << fmt(r.best_residual) << " (" << kResidualConvention << ", restart " << r.best_restart << ")\n"
     << "budget      " << cfg.restarts << " restarts x " << cfg.max_iters << " iters, seed " << cfg.seed << "\n"
     << "wall time   " << fmt(wall) << " s\n";
  if (r.counterexample)
    os << "witness     image residual " << fmt(r.counterexample->image_residual) << ", "
       << (r.counterexample->verified ? "re-verified" : "NOT re-verified") << "\n";
  if (!r.known_status.empty()) os << "status      " << r.known_status << "\n";
  for (const auto& c : r.caveats) os << "caveat      " << c << "\n";

  emit(out, to_json(r), "verify " + path, to_json(cfg), cfg.seed, wall);
  switch (r.verdict) {
    case Verdict::none_found_within_budget: return 0;
    case Verdict::counterexample_found: return 1;
    case Verdict::inconclusive: return 3;
  }
  return 3;
}

int cmd_certify(int d, const SearchConfig& cfg, double threshold, int samples, const OutputArgs& out) {
  if (d < 3) throw UsageError("certify-appendices needs --d >= 3");
  const auto t0 = std::chrono::steady_clock::now();
  const CertificationReport e1 = e1_certify_positive(d, cfg, threshold);
  const IdentityCheck id = e1_product_identity_check(d, samples, cfg.seed);
  CertificationReport e2;
  e2.check = "e2_rank3";
  e2.d = d;
  if (d == 3) {
    e2.skipped = true;
    e2.note = "e2 applies to the householder subspace and is only run for d >= 4";
  } else {
    e2 = e2_certify_rank3(d, cfg, threshold);
  }
  const double wall = seconds_since(t0);

  auto& os = human(out);
  auto line = [&](const std::string& name, bool pass, const std::string& detail) {
    os << (pass ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
  };
  line("e1_positive", e1.passed, "min " + fmt(e1.minimum) + " (threshold " + fmt(threshold) + ")");
  line("e1_product_identity", id.passed, "max rel dev " + fmt(id.max_relative_deviation));
  if (e2.skipped)
    os << "SKIP e2_rank3  " << e2.note << "\n";
  else
    line("e2_rank3", e2.passed, "min sigma3 ratio " + fmt(e2.minimum) + (e2.note.empty() ? "" : " (" + e2.note + ")"));

  json body;
  body["d"] = d;
  body["checks"] = json::array({to_json(e1), to_json(id), to_json(e2)});
  const bool all = e1.passed && id.passed && (e2.skipped || e2.passed);
  body["all_passed"] = all;
  json config = to_json(cfg);
  config["threshold"] = threshold;
  config["identity_samples"] = samples;
  emit(out, body, "certify-appendices", config, cfg.seed, wall);
  return all ? 0 : 1;
}

int cmd_prevalence(const KindArgs& ka, int count, const SearchConfig& cfg, const OutputArgs& out) {
  const VarietyKind kind = ka.resolve();
  const auto t0 = std::chrono::steady_clock::now();
  const PrevalenceReport p = prevalence_trial(kind, count, cfg);
  const double wall = seconds_since(t0);
  auto& os = human(out);
  os << "kind                " << kind.label() << "\n"
     << "gates               " << count << "\n"
     << "fraction none found " << fmt(p.fraction_none_found) << "\n"
     << "counterexamples     " << p.counterexamples_found << "\n"
     << "inconclusive        " << p.inconclusive << "\n"
     << "wall time           " << fmt(wall) << " s\n";
  if (!p.warning.empty()) os << "warning             " << p.warning << "\n";
  os << "caveat              " << kNotAProofCaveat << "\n";
  emit(out, to_json(p), "prevalence", to_json(cfg), cfg.seed, wall);
  return 0;
}

int cmd_profile(const std::string& path, int samples, std::uint64_t seed, const OutputArgs& out) {
  GateMatrix g;
  try {
    g = load_gate(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (g.unitarity_defect() > 1e-10) throw UsageError("gate in " + path + " is not unitary");
  const auto t0 = std::chrono::steady_clock::now();
  const EntanglementProfile p = entanglement_profile(g, samples, seed);
  const double wall = seconds_since(t0);
  auto& os = human(out);
  os << "gate     " << g.kind.label() << " (" << g.provenance << ")\n"
     << "samples  " << samples << ", seed " << seed << "\n"
     << "min " << fmt(p.min) << "  q05 " << fmt(p.q05) << "  median " << fmt(p.q50) << "  mean " << fmt(p.mean)
     << "  max " << fmt(p.max) << "\n";
  json body = to_json(p);
  body["kind"] = to_json(g.kind);
  json config{{"samples", samples}, {"seed", seed}};
  emit(out, body, "profile " + path, config, seed, wall);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal entanglers for bosonic, fermionic and distinguishable two-particle systems"};
  app.require_subcommand(1);

  KindArgs gate_kind;
  OutputArgs gate_out;
  auto* gate = app.add_subcommand("gate", "dimension-counting existence test");
  add_kind_flags(gate, gate_kind);
  add_output_flags(gate, gate_out);

  std::string construct_type, construct_out;
  int construct_d = 0;
  auto* construct = app.add_subcommand("construct", "build an explicit bosonic universal entangler");
  construct->add_option("type", construct_type, "permutation | householder")->required();
  construct->add_option("--d", construct_d, "single-particle dimension")->required();
  construct->add_option("--out", construct_out, "matrix file to write (stdout if omitted)");

  std::string verify_path, verify_kind;
  SearchConfig verify_cfg;
  OutputArgs verify_out;
  auto* verify = app.add_subcommand("verify", "search for a product state mapped to a product state");
  verify->add_option("matrix", verify_path, "matrix file")->required();
  verify->add_option("--kind", verify_kind, "expected family; checked against the file");
  add_search_flags(verify, verify_cfg);
  add_output_flags(verify, verify_out);

  int certify_d = 0, certify_samples = 1000;
  double certify_threshold = 1e-3;
  SearchConfig certify_cfg;
  certify_cfg.restarts = 500;
  OutputArgs certify_out;
  auto* certify = app.add_subcommand("certify-appendices", "numerically certify the (E1)/(E2) polynomial systems");
  certify->add_option("--d", certify_d, "single-particle dimension")->required();
  certify->add_option("--threshold", certify_threshold, "minimum value required to pass");
  certify->add_option("--samples", certify_samples, "random points for the product identity");
  add_search_flags(certify, certify_cfg);
  add_output_flags(certify, certify_out);

  KindArgs prev_kind;
  int prev_count = 10;
  SearchConfig prev_cfg;
  OutputArgs prev_out;
  auto* prevalence = app.add_subcommand("prevalence", "search Haar-random gates and report the fraction with no collision");
  add_kind_flags(prevalence, prev_kind);
  prevalence->add_option("--count", prev_count, "number of Haar gates");
  add_search_flags(prevalence, prev_cfg);
  add_output_flags(prevalence, prev_out);

  std::string profile_path;
  int profile_samples = 10000;
  std::uint64_t profile_seed = 42;
  OutputArgs profile_out;
  auto* profile = app.add_subcommand("profile", "image residual statistics over random product inputs");
  profile->add_option("matrix", profile_path, "matrix file")->required();
  profile->add_option("--samples", profile_samples, "random product inputs");
  profile->add_option("--seed", profile_seed, "seed");
  add_output_flags(profile, profile_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gate) return cmd_gate(gate_kind, gate_out);
    if (*construct) return cmd_construct(construct_type, construct_d, construct_out);
    if (*verify) {
      verify_cfg.validate();
      return cmd_verify(verify_path, verify_kind, verify_cfg, verify_out);
    }
    if (*certify) {
      certify_cfg.validate();
      return cmd_certify(certify_d, certify_cfg, certify_threshold, certify_samples, certify_out);
    }
    if (*prevalence) {
      prev_cfg.validate();
      if (prev_count < 1) throw UsageError("--count must be >= 1");
      return cmd_prevalence(prev_kind, prev_count, prev_cfg, prev_out);
    }
    if (*profile) {
      if (profile_samples < 1) throw UsageError("--samples must be >= 1");
      return cmd_profile(profile_path, profile_samples, profile_seed, profile_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

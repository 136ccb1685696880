#pragma once
//
// JSON file formats. Complex numbers are [re, im] pairs everywhere.
//
// Matrix file:
//   {"n": 6, "kind": {"family": "bosonic", "d": 3}, "rows": [[[re, im], ...], ...]}
//   distinguishable kinds use {"family": "distinguishable", "d1": 3, "d2": 4};
//   an optional "provenance" string names the construction.
//
// Report files share one envelope:
//   {"verdict", "best_residual", "counterexample", "config", "manifest", ...}
//
// Doubles are written in shortest round-trip form, so parse -> serialize of a
// matrix file is byte-identical.
//

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "uent/constructions.hpp"
#include "uent/search.hpp"
#include "uent/varieties.hpp"

namespace uent {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("complex entries must be [re, im] pairs of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const VarietyKind& k) {
  json j;
  j["family"] = family_name(k.family);
  if (k.family == Family::distinguishable) {
    j["d1"] = k.d1;
    j["d2"] = k.d2;
  } else {
    j["d"] = k.d1;
  }
  return j;
}

inline VarietyKind kind_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) throw FormatError("kind needs a family");
  try {
    const Family f = parse_family(j["family"].get<std::string>());
    auto dim = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_number_integer()) throw FormatError(std::string("kind needs integer ") + key);
      return j[key].get<int>();
    };
    if (f == Family::distinguishable) return VarietyKind::segre(dim("d1"), dim("d2"));
    return f == Family::bosonic ? VarietyKind::veronese(dim("d")) : VarietyKind::grassmannian(dim("d"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

inline json to_json(const GateMatrix& g) {
  json j;
  j["n"] = g.n();
  j["kind"] = to_json(g.kind);
  if (g.provenance != "external") j["provenance"] = g.provenance;
  json rows = json::array();
  for (int r = 0; r < g.n(); ++r) rows.push_back(to_json(CVector(g.entries.row(r).transpose())));
  j["rows"] = std::move(rows);
  return j;
}

inline GateMatrix gate_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("matrix file must hold a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw FormatError("matrix file needs integer n");
  if (!j.contains("kind")) throw FormatError("matrix file needs a kind");
  if (!j.contains("rows") || !j["rows"].is_array()) throw FormatError("matrix file needs rows");
  const int n = j["n"].get<int>();
  const VarietyKind kind = kind_from_json(j["kind"]);
  if (n != kind.ambient_dim())
    throw FormatError("n = " + std::to_string(n) + " does not match " + kind.label() + " (expected " +
                      std::to_string(kind.ambient_dim()) + ")");
  const json& rows = j["rows"];
  if (static_cast<int>(rows.size()) != n) throw FormatError("expected " + std::to_string(n) + " rows");
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n)
      throw FormatError("row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) m(r, c) = complex_from_json(rows[r][c]);
  }
  std::string prov = "external";
  if (j.contains("provenance") && j["provenance"].is_string()) prov = j["provenance"].get<std::string>();
  return {kind, std::move(m), std::move(prov)};
}

/// One matrix row per line; otherwise plain JSON.
inline std::string serialize_gate(const GateMatrix& g) {
  const json j = to_json(g);
  std::string s = "{\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it != j.begin()) s += ",\n";
    s += "  " + json(it.key()).dump() + ": ";
    if (it.key() != "rows") {
      s += it.value().dump();
      continue;
    }
    s += "[\n";
    for (std::size_t r = 0; r < it.value().size(); ++r)
      s += "    " + it.value()[r].dump() + (r + 1 < it.value().size() ? ",\n" : "\n");
    s += "  ]";
  }
  return s + "\n}\n";
}

inline GateMatrix parse_gate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  return gate_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline GateMatrix load_gate(const std::string& path) { return parse_gate(read_file(path)); }
inline void save_gate(const std::string& path, const GateMatrix& g) { write_file(path, serialize_gate(g)); }

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const SearchConfig& c) {
  json j;
  j["restarts"] = c.restarts;
  j["max_iters"] = c.max_iters;
  j["step_initial"] = c.step_initial;
  j["step_decay"] = c.step_decay;
  j["step_growth"] = c.step_growth;
  j["step_min"] = c.step_min;
  j["fd_step"] = c.fd_step;
  j["tolerance"] = c.tolerance;
  j["certify_threshold"] = c.certify_threshold;
  j["seed"] = c.seed;
  j["polish"] = c.polish;
  // workers is deliberately absent: results do not depend on it.
  return j;
}

inline json to_json(const ExistencePrediction& p) {
  return json{{"exists", p.exists}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"inequality_holds", p.inequality_holds}};
}

inline json to_json(const Counterexample& ce) {
  json j;
  json in = json::array(), out = json::array();
  for (const auto& f : ce.input_factors) in.push_back(to_json(f));
  for (const auto& f : ce.image_factors) out.push_back(to_json(f));
  j["input_factors"] = std::move(in);
  j["input_state"] = to_json(ce.input_state);
  j["image"] = to_json(ce.image);
  j["image_factors"] = std::move(out);
  j["input_residual"] = ce.input_residual;
  j["image_residual"] = ce.image_residual;
  j["reconstruction_error"] = ce.reconstruction_error;
  j["restart"] = ce.restart;
  j["iterations"] = ce.iterations;
  j["verified"] = ce.verified;
  return j;
}

struct RunManifest {
  std::string command;
  json config;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  bool record_time = false;
};

inline std::string platform_note() {
  std::string s;
#if defined(__clang__)
  s = "clang " __clang_version__;
#elif defined(__GNUC__)
  s = "gcc " __VERSION__;
#else
  s = "unknown compiler";
#endif
#if defined(__x86_64__)
  s += ", x86_64";
#elif defined(__aarch64__)
  s += ", aarch64";
#endif
  s += ", eigen " + std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
       std::to_string(EIGEN_MINOR_VERSION);
  return s;
}

inline json to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["config"] = m.config;
  j["seed"] = m.seed;
  j["tool_version"] = kToolVersion;
  j["platform"] = platform_note();
  if (m.record_time) j["wall_time_s"] = m.wall_time_s;
  return j;
}

inline json histogram_json(const ResidualHistogram& h) {
  json edges = json::array();
  for (int e = -16; e <= 0; ++e) edges.push_back(e);
  return json{{"lower_edges_log10", edges}, {"counts", h.counts}};
}

/// Report body for one search; the manifest is attached by the caller.
inline json to_json(const VerificationReport& r) {
  json j;
  j["verdict"] = verdict_name(r.verdict);
  j["best_residual"] = r.best_residual;
  j["counterexample"] = r.counterexample ? to_json(*r.counterexample) : json(nullptr);
  j["config"] = to_json(r.config);
  j["kind"] = to_json(r.kind);
  j["gate_provenance"] = r.gate_provenance;
  j["residual_convention"] = kResidualConvention;
  j["thresholds"] = json{{"tolerance", r.config.tolerance}, {"certify_threshold", r.config.certify_threshold}};
  j["best_restart"] = r.best_restart;
  j["histogram"] = histogram_json(r.histogram);
  j["restarts_at_iteration_cap"] = r.restarts_at_iteration_cap;
  j["total_iterations"] = r.total_iterations;
  j["polished_restarts"] = r.polished_restarts;
  if (!r.known_status.empty()) j["known_status"] = r.known_status;
  if (!r.note.empty()) j["note"] = r.note;
  j["caveats"] = r.caveats;
  return j;
}

inline json to_json(const CertificationReport& r) {
  json j;
  j["check"] = r.check;
  j["d"] = r.d;
  if (r.skipped) {
    j["skipped"] = true;
    j["note"] = r.note;
    return j;
  }
  j["passed"] = r.passed;
  j["verdict"] = r.verdict;
  j["minimum"] = r.minimum;
  j["smooth_minimum"] = r.smooth_minimum;
  j["threshold"] = r.threshold;
  j["argmin"] = to_json(r.argmin);
  j["best_restart"] = r.best_restart;
  j["restarts"] = r.restarts;
  j["restarts_at_iteration_cap"] = r.restarts_at_iteration_cap;
  j["total_iterations"] = r.total_iterations;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const IdentityCheck& c) {
  return json{{"check", "e1_product_identity"},
              {"passed", c.passed},
              {"samples", c.samples},
              {"max_relative_deviation", c.max_relative_deviation}};
}

inline json to_json(const PrevalenceReport& p) {
  json j;
  j["kind"] = to_json(p.kind);
  j["count"] = p.count;
  j["dimension_gate"] = to_json(p.prediction);
  j["fraction_none_found"] = p.fraction_none_found;
  j["counterexamples_found"] = p.counterexamples_found;
  j["inconclusive"] = p.inconclusive;
  if (!p.warning.empty()) j["warning"] = p.warning;
  j["caveat"] = kNotAProofCaveat;
  j["config"] = to_json(p.config);
  json reps = json::array();
  for (int k = 0; k < static_cast<int>(p.reports.size()); ++k) {
    json r = to_json(p.reports[k]);
    r["gate_index"] = k;
    r["gate_seed"] = trial_gate_seed(p.config.seed, k);
    reps.push_back(std::move(r));
  }
  j["reports"] = std::move(reps);
  return j;
}

inline json to_json(const EntanglementProfile& p) {
  return json{{"samples", p.samples}, {"seed", p.seed}, {"residual_convention", kResidualConvention},
              {"min", p.min},         {"mean", p.mean}, {"max", p.max},
              {"q05", p.q05},         {"q25", p.q25},   {"q50", p.q50},
              {"q75", p.q75},         {"q95", p.q95}};
}

}  // namespace uent

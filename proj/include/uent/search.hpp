#pragma once
//
// Counterexample search: does a gate U map some product state to a product
// state? Each restart minimizes the smooth low-rank tail of the image of a
// product input over the input manifold, then (for near-collisions) refines
// the pair (input, image factors) with a Levenberg-Marquardt solve of
//
//   U embed(input) = embed(image factors).
//
// The verdict is always judged on the sigma-ratio residual of the image:
//
//   best < tolerance             -> counterexample_found (re-verified)
//   best >= certify_threshold    -> none_found_within_budget
//   otherwise                    -> inconclusive
//
// A search never proves universality; "none found" is numerical evidence only.
//

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uent/gate.hpp"
#include "uent/optimize.hpp"
#include "uent/random.hpp"
#include "uent/search_config.hpp"
#include "uent/subspace.hpp"
#include "uent/varieties.hpp"

namespace uent {

inline constexpr const char* kNotAProofCaveat =
    "none_found_within_budget is numerical evidence from a finite multistart search, not a proof that the gate is a "
    "universal entangler";

inline constexpr const char* kFermionicCaveat =
    "fermionic universal entanglers exist for d >= 8 but no explicit one is known; a none-found verdict here is "
    "evidence, not proof";

// ---------------------------------------------------------------------------
// Haar sampling

/// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
/// phases of diag(R) moved into Q.
inline CMatrix haar_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n must be >= 1");
  Rng rng(seed);
  CMatrix z(n, n);
  for (int j = 0; j < n; ++j) z.col(j) = complex_gaussian(rng, n);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const cplx rjj = r(j, j);
    q.col(j) *= (std::abs(rjj) > 0.0 ? rjj / std::abs(rjj) : cplx(1.0));
  }
  return q;
}

inline GateMatrix sample_haar_unitary(const VarietyKind& kind, std::uint64_t seed) {
  return {kind, haar_unitary(kind.ambient_dim(), seed), "haar"};
}

// ---------------------------------------------------------------------------
// Product inputs for each family

/// How product-state parameters map into the ambient coordinates of `kind`.
///   bosonic         : a in C^d               -> sym_embed(a)
///   fermionic       : [a; b] orthonormal      -> wedge_embed(a, b)
///   distinguishable : [v1; v2], unit each     -> v1 (x) v2
class ProductModel {
 public:
  explicit ProductModel(VarietyKind kind) : kind_(kind) {}

  const VarietyKind& kind() const { return kind_; }

  Manifold manifold() const {
    switch (kind_.family) {
      case Family::bosonic: return Manifold::sphere(kind_.d1);
      case Family::fermionic: return Manifold::orthonormal_pair(kind_.d1);
      case Family::distinguishable: return Manifold::sphere_pair(kind_.d1, kind_.d2);
    }
    return {};
  }

  /// Rank of the matricization of a product state.
  int product_rank() const { return kind_.family == Family::fermionic ? 2 : 1; }

  CVector embed(const CVector& x) const {
    const int d = kind_.d1;
    switch (kind_.family) {
      case Family::bosonic: return sym_embed(x).coords;
      case Family::fermionic: return raw_wedge(x.head(d), x.tail(d));
      case Family::distinguishable: return product_state(x.head(d), x.tail(kind_.d2));
    }
    return {};
  }

  CMatrix matricize(const CVector& y) const {
    switch (kind_.family) {
      case Family::bosonic: return sym_matricize(SymVector(kind_.d1, y));
      case Family::fermionic: return anti_matricize(AntiVector(kind_.d1, y));
      case Family::distinguishable: return bipartite_matricize(y, kind_.d1, kind_.d2);
    }
    return {};
  }

  /// Adjoint of matricize with respect to the Frobenius / Euclidean inner products.
  CVector matricize_adjoint(const CMatrix& g) const {
    switch (kind_.family) {
      case Family::bosonic: return sym_vectorize(g).coords;
      case Family::fermionic: return anti_vectorize(g).coords;
      case Family::distinguishable: {
        CVector out(kind_.d1 * kind_.d2);
        for (int i = 0; i < kind_.d1; ++i)
          for (int j = 0; j < kind_.d2; ++j) out(i * kind_.d2 + j) = g(i, j);
        return out;
      }
    }
    return {};
  }

  /// J^H w, where J is the holomorphic Jacobian of embed at x.
  CVector embed_pullback(const CVector& x, const CVector& w) const {
    const int d = kind_.d1;
    switch (kind_.family) {
      case Family::bosonic: return 2.0 * sym_matricize(SymVector(d, w)) * x.conjugate();
      case Family::fermionic: {
        const CMatrix wm = kSqrt2 * anti_matricize(AntiVector(d, w));
        CVector out(2 * d);
        out.head(d) = wm * x.tail(d).conjugate();
        out.tail(d) = -wm * x.head(d).conjugate();
        return out;
      }
      case Family::distinguishable: {
        const CMatrix wm = bipartite_matricize(w, d, kind_.d2);
        CVector out(d + kind_.d2);
        out.head(d) = wm * x.tail(kind_.d2).conjugate();
        out.tail(kind_.d2) = wm.transpose() * x.head(d).conjugate();
        return out;
      }
    }
    return {};
  }

  double residual(const CVector& y) const { return product_residual(kind_, y); }

  /// Factors of a (near-)product image y such that embed-like reassembly
  /// reproduces y: bosonic [b] with y ~ sym_embed(b); fermionic [g; h] with
  /// y ~ wedge(g, h); distinguishable [w1; w2] with y ~ w1 (x) w2.
  CVector extract_factors(const CVector& y) const {
    const int d = kind_.d1;
    switch (kind_.family) {
      case Family::bosonic: {
        const CMatrix m = matricize(y);
        Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU);
        const CVector u = svd.matrixU().col(0);
        const cplx kappa = u.adjoint() * m * u.conjugate();
        return std::sqrt(kappa) * u;
      }
      case Family::fermionic: {
        const SlaterDecomposition sd = slater_decompose(AntiVector(d, y));
        CVector out(2 * d);
        out.head(d) = sd.coefficients.front() * sd.pairs.front().first;
        out.tail(d) = sd.pairs.front().second;
        return out;
      }
      case Family::distinguishable: {
        const SchmidtDecomposition sd = schmidt_decompose(y, d, kind_.d2);
        CVector out(d + kind_.d2);
        out.head(d) = sd.coefficients(0) * sd.left.col(0);
        out.tail(kind_.d2) = sd.right.col(0);
        return out;
      }
    }
    return {};
  }

  /// Inverse of extract_factors (no normalization assumed).
  CVector assemble(const CVector& factors) const {
    const int d = kind_.d1;
    switch (kind_.family) {
      case Family::bosonic: return sym_embed_raw(factors);
      case Family::fermionic: return raw_wedge(factors.head(d), factors.tail(d));
      case Family::distinguishable: return product_state(factors.head(d), factors.tail(kind_.d2));
    }
    return {};
  }

  /// Split a packed parameter vector into its single-particle factors.
  std::vector<CVector> split(const CVector& x) const {
    if (kind_.family == Family::bosonic) return {x};
    const int n2 = kind_.family == Family::distinguishable ? kind_.d2 : kind_.d1;
    return {x.head(kind_.d1), x.tail(n2)};
  }

 private:
  static CVector raw_wedge(const CVector& a, const CVector& b) {
    const auto d = a.size();
    CVector p(anti_dim(static_cast<int>(d)));
    int k = 0;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = i + 1; j < d; ++j) p(k++) = a(i) * b(j) - a(j) * b(i);
    return p;
  }

  static CVector sym_embed_raw(const CVector& a) {
    if (a.norm() == 0.0) return CVector::Zero(sym_dim(static_cast<int>(a.size())));
    return sym_embed(a).coords;
  }

  VarietyKind kind_;
};

// ---------------------------------------------------------------------------
// Reports

enum class Verdict { counterexample_found, none_found_within_budget, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::counterexample_found: return "counterexample_found";
    case Verdict::none_found_within_budget: return "none_found_within_budget";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct Counterexample {
  std::vector<CVector> input_factors;  // [a] or [a, b] or [v1, v2]
  CVector input_state;                 // ambient coordinates of the product input
  CVector image;                       // U * input_state
  std::vector<CVector> image_factors;  // extracted product factors of the image
  double input_residual = 0.0;
  double image_residual = 0.0;
  double reconstruction_error = 0.0;  // ||image - assemble(image_factors)|| / ||image||
  int restart = -1;
  int iterations = 0;
  bool verified = false;
};

/// Residual histogram over restarts: counts[0] holds r < 1e-16, counts[k] for
/// k = 1..16 holds 10^(k-17) <= r < 10^(k-16); r = 1 lands in the last bin.
struct ResidualHistogram {
  static constexpr int kBins = 17;
  std::vector<int> counts = std::vector<int>(kBins, 0);

  void add(double r) {
    int bin = 0;
    if (r >= 1e-16) bin = std::min(kBins - 1, static_cast<int>(std::floor(std::log10(r))) + 17);
    ++counts[std::max(0, bin)];
  }
};

struct VerificationReport {
  VarietyKind kind;
  std::string gate_provenance;
  Verdict verdict = Verdict::inconclusive;
  double best_residual = 1.0;
  int best_restart = -1;
  ResidualHistogram histogram;
  SearchConfig config;
  std::optional<Counterexample> counterexample;
  int restarts_at_iteration_cap = 0;
  long long total_iterations = 0;
  int polished_restarts = 0;
  std::string known_status;  // set for gates proven to be universal entanglers
  std::string note;
  std::vector<std::string> caveats;
  double wall_time_s = 0.0;
};

// ---------------------------------------------------------------------------
// Search

namespace detail {

struct RestartOutcome {
  CVector point;
  double residual = 1.0;
  int iterations = 0;
  bool hit_cap = false;
  bool polished = false;
};

// Real-coordinate Levenberg-Marquardt with a central-difference Jacobian.
// `residual_fn` maps real parameters to a real residual vector.
template <class Fn>
RVector levenberg_marquardt(Fn&& residual_fn, RVector x, int max_iters, double target = 1e-15) {
  RVector r = residual_fn(x);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  const Eigen::Index n = x.size();
  for (int it = 0; it < max_iters && std::sqrt(cost) > target; ++it) {
    Eigen::MatrixXd jac(r.size(), n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(k)));
      RVector xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      jac.col(k) = (residual_fn(xp) - residual_fn(xm)) / (2 * h);
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const RVector jtr = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const RVector step = a.ldlt().solve(-jtr);
      const RVector xn = x + step;
      const RVector rn = residual_fn(xn);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn < cost) {
        x = xn;
        r = rn;
        cost = cn;
        mu = std::max(mu / 3.0, 1e-12);
        improved = true;
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  return x;
}

inline RVector to_real(const CVector& z) {
  RVector out(2 * z.size());
  out.head(z.size()) = z.real();
  out.tail(z.size()) = z.imag();
  return out;
}

inline CVector to_complex(const RVector& v) {
  const Eigen::Index n = v.size() / 2;
  CVector z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = cplx(v(i), v(n + i));
  return z;
}

/// Polish input parameters x0 by solving U embed(x) = assemble(f) for (x, f)
/// with the input kept on its manifold through extra constraint rows.
inline CVector polish_collision(const ProductModel& model, const CMatrix& u, const CVector& x0) {
  const Eigen::Index nx = x0.size();
  const CVector f0 = model.extract_factors(u * model.embed(x0));
  const Eigen::Index nf = f0.size();
  CVector z0(nx + nf);
  z0 << x0, f0;
  const Manifold man = model.manifold();
  auto residual_fn = [&](const RVector& v) {
    const CVector z = to_complex(v);
    const CVector x = z.head(nx);
    const CVector diff = u * model.embed(x) - model.assemble(z.tail(nf));
    const int extra = man.kind == Manifold::Kind::orthonormal_pair ? 4 : static_cast<int>(man.blocks.size());
    RVector out(2 * diff.size() + extra);
    out.head(diff.size()) = diff.real();
    out.segment(diff.size(), diff.size()) = diff.imag();
    int row = static_cast<int>(2 * diff.size());
    int off = 0;
    for (int b : man.blocks) {
      out(row++) = x.segment(off, b).squaredNorm() - 1.0;
      off += b;
    }
    if (man.kind == Manifold::Kind::orthonormal_pair) {
      const int d = man.blocks[0];
      const cplx ip = x.head(d).dot(x.tail(d));
      out(row++) = ip.real();
      out(row++) = ip.imag();
    }
    return out;
  };
  const CVector z = to_complex(levenberg_marquardt(residual_fn, to_real(z0), 40));
  CVector x = z.head(nx);
  man.retract(x);
  return x;
}

inline RestartOutcome run_restart(const ProductModel& model, const CMatrix& u, const SearchConfig& cfg, int k) {
  const Manifold man = model.manifold();
  const int rank = model.product_rank();
  Objective obj;
  obj.value = [&](const CVector& x) { return low_rank_tail(model.matricize(u * model.embed(x)), rank); };
  obj.value_and_gradient = [&](const CVector& x, CVector& g) {
    CMatrix gm;
    const double t = low_rank_tail(model.matricize(u * model.embed(x)), rank, &gm);
    g = 2.0 * model.embed_pullback(x, u.adjoint() * model.matricize_adjoint(gm));
    return t;
  };
  Rng rng(sub_seed(cfg.seed, static_cast<std::uint64_t>(k)));
  // A tail of 1e-30 is far below any residual tolerance of interest.
  const LocalResult lr = projected_descent(obj, man, man.random_point(rng), cfg.descent(1e-30));

  RestartOutcome out;
  out.point = lr.point;
  out.iterations = lr.iterations;
  out.hit_cap = lr.hit_iteration_cap;
  out.residual = model.residual(u * model.embed(out.point));
  constexpr double kPolishGate = 1e-2;
  if (cfg.polish && out.residual < kPolishGate && out.residual > 0.0) {
    const CVector refined = polish_collision(model, u, out.point);
    const double r = model.residual(u * model.embed(refined));
    if (r < out.residual) {
      out.point = refined;
      out.residual = r;
      out.polished = true;
    }
  }
  return out;
}

inline Counterexample make_counterexample(const ProductModel& model, const CMatrix& u, const CVector& x, int restart,
                                          int iterations, double tolerance) {
  Counterexample ce;
  ce.input_factors = model.split(x);
  ce.input_state = model.embed(x);
  ce.image = u * ce.input_state;
  ce.input_residual = model.residual(ce.input_state);
  ce.image_residual = model.residual(ce.image);
  const CVector f = model.extract_factors(ce.image);
  ce.image_factors = model.split(f);
  ce.reconstruction_error = (ce.image - model.assemble(f)).norm() / ce.image.norm();
  ce.restart = restart;
  ce.iterations = iterations;
  ce.verified = ce.input_residual <= 1e-12 && ce.image_residual <= tolerance && ce.reconstruction_error <= 1e-8;
  if (model.kind().family == Family::fermionic && model.kind().d1 >= 4)
    ce.verified = ce.verified && slater_decompose(AntiVector(model.kind().d1, ce.image)).rank() == 1;
  return ce;
}

inline void check_gate(const GateMatrix& g) {
  if (g.entries.rows() != g.kind.ambient_dim())
    throw std::invalid_argument("gate dimension does not match " + g.kind.label());
  if (g.unitarity_defect() > 1e-10) throw std::invalid_argument("gate is not unitary (defect > 1e-10)");
}

inline std::string known_status(const GateMatrix& g) {
  if (g.kind.family != Family::bosonic) return {};
  if (g.provenance == "permutation" && g.kind.d1 >= 3)
    return "proven universal entangler (explicit permutation construction, d >= 3)";
  if (g.provenance == "householder" && g.kind.d1 >= 5)
    return "proven universal entangler (explicit householder construction, d >= 5)";
  return {};
}

}  // namespace detail

/// Search for a product input whose image under `gate` is again a product
/// state, for whichever family the gate acts on.
inline VerificationReport counterexample_search(const GateMatrix& gate, const SearchConfig& cfg) {
  cfg.validate();
  detail::check_gate(gate);
  const auto t0 = std::chrono::steady_clock::now();

  VerificationReport rep;
  rep.kind = gate.kind;
  rep.gate_provenance = gate.provenance;
  rep.config = cfg;
  rep.known_status = detail::known_status(gate);
  const ProductModel model(gate.kind);

  const bool trivially_decomposable = gate.kind.family == Family::fermionic && gate.kind.d1 <= 3;
  const bool trivially_product = gate.kind.family != Family::fermionic && (gate.kind.family == Family::bosonic
                                                                               ? gate.kind.d1 < 2
                                                                               : std::min(gate.kind.d1, gate.kind.d2) < 2);
  if (trivially_decomposable || trivially_product) {
    CVector x = CVector::Zero(model.manifold().size());
    x(0) = 1.0;
    if (gate.kind.family == Family::fermionic) x(gate.kind.d1 + 1) = 1.0;
    if (gate.kind.family == Family::distinguishable) x(gate.kind.d1) = 1.0;
    rep.counterexample = detail::make_counterexample(model, gate.entries, x, 0, 0, cfg.tolerance);
    rep.best_residual = rep.counterexample->image_residual;
    rep.best_restart = 0;
    rep.histogram.add(rep.best_residual);
    rep.verdict = Verdict::counterexample_found;
    rep.note = trivially_decomposable ? "every state is decomposable for d <= 3; any product input is a counterexample"
                                      : "every state is a product state in this dimension";
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }

  std::vector<detail::RestartOutcome> outcomes(cfg.restarts);
  parallel_for(cfg.restarts, cfg.workers,
               [&](int k) { outcomes[k] = detail::run_restart(model, gate.entries, cfg, k); });

  std::vector<double> residuals;
  residuals.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    residuals.push_back(o.residual);
    rep.histogram.add(o.residual);
    rep.restarts_at_iteration_cap += o.hit_cap;
    rep.total_iterations += o.iterations;
    rep.polished_restarts += o.polished;
  }
  const auto best = argmin_first(residuals);
  rep.best_restart = static_cast<int>(best);
  rep.best_residual = residuals[best];

  if (rep.best_residual < cfg.tolerance) {
    rep.verdict = Verdict::counterexample_found;
    rep.counterexample = detail::make_counterexample(model, gate.entries, outcomes[best].point, rep.best_restart,
                                                     outcomes[best].iterations, cfg.tolerance);
  } else if (rep.best_residual >= cfg.certify_threshold) {
    rep.verdict = Verdict::none_found_within_budget;
    rep.caveats.emplace_back(kNotAProofCaveat);
    if (gate.kind.family == Family::fermionic) rep.caveats.emplace_back(kFermionicCaveat);
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  const ExistencePrediction pred = dimension_gate(gate.kind);
  if (!pred.exists && rep.verdict != Verdict::counterexample_found)
    rep.note = "dimension counting forces a collision for every gate of this kind; the search did not locate it";
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline VerificationReport bue_counterexample_search(const GateMatrix& gate, const SearchConfig& cfg) {
  if (gate.kind.family != Family::bosonic) throw std::invalid_argument("bue_counterexample_search: need a bosonic gate");
  return counterexample_search(gate, cfg);
}

inline VerificationReport fue_counterexample_search(const GateMatrix& gate, const SearchConfig& cfg) {
  if (gate.kind.family != Family::fermionic)
    throw std::invalid_argument("fue_counterexample_search: need a fermionic gate");
  return counterexample_search(gate, cfg);
}

inline VerificationReport distinguishable_counterexample_search(const GateMatrix& gate, int d1, int d2,
                                                                const SearchConfig& cfg) {
  if (gate.kind != VarietyKind::segre(d1, d2))
    throw std::invalid_argument("distinguishable_counterexample_search: gate is not on C^d1 (x) C^d2");
  return counterexample_search(gate, cfg);
}

// ---------------------------------------------------------------------------
// Prevalence

/// Gate k of a trial uses haar seed sub_seed(master, 2k) and search seed
/// sub_seed(master, 2k + 1).
inline std::uint64_t trial_gate_seed(std::uint64_t master, int k) { return sub_seed(master, 2 * static_cast<std::uint64_t>(k)); }
inline std::uint64_t trial_search_seed(std::uint64_t master, int k) {
  return sub_seed(master, 2 * static_cast<std::uint64_t>(k) + 1);
}

struct PrevalenceReport {
  VarietyKind kind;
  int count = 0;
  ExistencePrediction prediction;
  double fraction_none_found = 0.0;
  int counterexamples_found = 0;
  int inconclusive = 0;
  std::string warning;
  std::vector<VerificationReport> reports;
  SearchConfig config;
};

inline PrevalenceReport prevalence_trial(const VarietyKind& kind, int num_unitaries, const SearchConfig& cfg) {
  if (num_unitaries < 1) throw std::invalid_argument("prevalence_trial: need at least one gate");
  cfg.validate();
  PrevalenceReport out;
  out.kind = kind;
  out.count = num_unitaries;
  out.config = cfg;
  out.prediction = dimension_gate(kind);
  if (!out.prediction.exists)
    out.warning = "dimension counting rules out universal entanglers for " + kind.label() +
                  "; every gate is expected to collide";
  int none_found = 0;
  for (int k = 0; k < num_unitaries; ++k) {
    SearchConfig c = cfg;
    c.seed = trial_search_seed(cfg.seed, k);
    VerificationReport r = counterexample_search(sample_haar_unitary(kind, trial_gate_seed(cfg.seed, k)), c);
    none_found += r.verdict == Verdict::none_found_within_budget;
    out.counterexamples_found += r.verdict == Verdict::counterexample_found;
    out.inconclusive += r.verdict == Verdict::inconclusive;
    out.reports.push_back(std::move(r));
  }
  out.fraction_none_found = static_cast<double>(none_found) / num_unitaries;
  return out;
}

// ---------------------------------------------------------------------------
// Entanglement profile

struct EntanglementProfile {
  int samples = 0;
  std::uint64_t seed = 0;
  double min = 0.0, mean = 0.0, max = 0.0;
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
};

/// Image residuals of uniformly random product inputs. The minimum is an
/// upper-bound proxy for the worst case over all product inputs.
inline EntanglementProfile entanglement_profile(const GateMatrix& gate, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("entanglement_profile: samples must be >= 1");
  detail::check_gate(gate);
  const ProductModel model(gate.kind);
  const Manifold man = model.manifold();
  std::vector<double> r(samples);
  for (int s = 0; s < samples; ++s) {
    Rng rng(sub_seed(seed, static_cast<std::uint64_t>(s)));
    r[s] = model.residual(gate.entries * model.embed(man.random_point(rng)));
  }
  EntanglementProfile p;
  p.samples = samples;
  p.seed = seed;
  double sum = 0.0;
  for (double v : r) sum += v;
  p.mean = sum / samples;
  std::sort(r.begin(), r.end());
  auto q = [&](double f) { return r[static_cast<std::size_t>(std::lround(f * (samples - 1)))]; };
  p.min = r.front();
  p.max = r.back();
  p.q05 = q(0.05);
  p.q25 = q(0.25);
  p.q50 = q(0.50);
  p.q75 = q(0.75);
  p.q95 = q(0.95);
  return p;
}

}  // namespace uent

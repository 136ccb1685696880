#pragma once
//
// Explicit bosonic universal entanglers and numerical checks of the two
// polynomial systems their correctness rests on.
//
//   permutation : swaps |ii> with the cyclically adjacent pair {i, i+1} and
//                 fixes every other pair coordinate; valid for d >= 3.
//   householder : U = I - 2 P_S with S spanned by
//                 s_i = |ii> + |i+1,i+2> + |i+2,i+1>   (indices mod d, in 1..d);
//                 valid for d >= 5.
//
// Householder correctness needs two facts about S:
//   (E1) no product state is orthogonal to S, i.e. a_i^2 + 2 a_{i+1} a_{i+2} = 0
//        for all i forces a = 0;
//   (E2) every nonzero state in S has symmetric rank >= 3.
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "uent/gate.hpp"
#include "uent/random.hpp"
#include "uent/search_config.hpp"
#include "uent/subspace.hpp"
#include "uent/varieties.hpp"

namespace uent {

namespace detail {
// 0-based cyclic successor offset in 0..d-1
inline int cyc(int i, int d) { return ((i % d) + d) % d; }
}  // namespace detail

inline GateMatrix build_permutation_bue(int d) {
  if (d < 3) throw std::domain_error("permutation entangler needs d >= 3 (no bosonic universal entangler exists for d <= 2)");
  const int n = sym_dim(d);
  std::vector<int> image(n);
  for (int k = 0; k < n; ++k) image[k] = k;
  for (int i = 1; i <= d; ++i) {
    const int diag = sym_index(i, i, d);
    const int pair = sym_index(i, detail::cyc(i, d) + 1, d);
    image[diag] = pair;
    image[pair] = diag;
  }
  CMatrix u = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) u(image[k], k) = 1.0;
  return {VarietyKind::veronese(d), std::move(u), "permutation"};
}

struct HouseholderSpec {
  int d = 0;
  std::vector<SymVector> spanning;  // s_1 .. s_d, each of norm sqrt(3)
  CMatrix projector;                // P_S = sum_i s_i s_i^H / 3
};

inline HouseholderSpec build_householder_subspace(int d) {
  if (d < 3) throw std::domain_error("householder subspace needs d >= 3");
  HouseholderSpec spec;
  spec.d = d;
  const int n = sym_dim(d);
  spec.projector = CMatrix::Zero(n, n);
  for (int i = 1; i <= d; ++i) {
    SymVector s = SymVector::zero(d);
    s.coords(sym_index(i, i, d)) = 1.0;
    s.coords(sym_index(detail::cyc(i, d) + 1, detail::cyc(i + 1, d) + 1, d)) = kSqrt2;
    spec.projector += s.coords * s.coords.adjoint() / 3.0;
    spec.spanning.push_back(std::move(s));
  }
  return spec;
}

inline GateMatrix build_householder_bue(int d) {
  if (d < 5)
    throw std::domain_error("householder entangler needs d >= 5 (below that S contains states of rank <= 2)");
  const HouseholderSpec spec = build_householder_subspace(d);
  const int n = sym_dim(d);
  return {VarietyKind::veronese(d), CMatrix::Identity(n, n) - 2.0 * spec.projector, "householder"};
}

// ---------------------------------------------------------------------------
// (E1)

namespace detail {

inline double e1_value(const CVector& a, CVector* grad) {
  const int d = static_cast<int>(a.size());
  double f = 0.0;
  if (grad) grad->setZero(d);
  for (int i = 0; i < d; ++i) {
    const int j = cyc(i + 1, d), k = cyc(i + 2, d);
    const cplx q = a(i) * a(i) + 2.0 * a(j) * a(k);
    f += std::norm(q);
    if (grad) {
      // packed gradient 2 J^H q
      (*grad)(i) += 2.0 * std::conj(2.0 * a(i)) * q;
      (*grad)(j) += 2.0 * std::conj(2.0 * a(k)) * q;
      (*grad)(k) += 2.0 * std::conj(2.0 * a(j)) * q;
    }
  }
  return f;
}

}  // namespace detail

/// sum_i |a_i^2 + 2 a_{i+1} a_{i+2}|^2 (cyclic) for unit a; equals
/// 3 ||P_S sym_embed(a)||^2.
inline double e1_residual(const CVector& a) {
  if (a.size() < 3) throw std::invalid_argument("e1_residual: need d >= 3");
  if (std::abs(a.norm() - 1.0) > 1e-10) throw std::invalid_argument("e1_residual: input must be a unit vector");
  return detail::e1_value(a, nullptr);
}

struct CertificationReport {
  std::string check;
  int d = 0;
  bool skipped = false;
  std::string note;
  double threshold = 0.0;
  double minimum = 0.0;  // best value of the certified quantity
  double smooth_minimum = 0.0;  // best value of the descent objective, where it differs
  CVector argmin;
  int best_restart = -1;
  int restarts = 0;
  int restarts_at_iteration_cap = 0;
  long long total_iterations = 0;
  bool passed = false;
  std::string verdict;
};

/// Multistart minimization of e1_residual over the unit sphere of C^d. Passes
/// when the smallest value found is at least `threshold`.
inline CertificationReport e1_certify_positive(int d, const SearchConfig& cfg, double threshold = 1e-3) {
  if (d < 3) throw std::invalid_argument("e1_certify_positive: need d >= 3");
  cfg.validate();
  Objective obj;
  obj.value = [](const CVector& a) { return detail::e1_value(a, nullptr); };
  obj.value_and_gradient = [](const CVector& a, CVector& g) { return detail::e1_value(a, &g); };
  const auto runs = multistart_descent(obj, Manifold::sphere(d), cfg.restarts, cfg.seed, cfg.descent(), cfg.workers);

  CertificationReport rep;
  rep.check = "e1_positive";
  rep.d = d;
  rep.threshold = threshold;
  rep.restarts = cfg.restarts;
  std::vector<double> values;
  for (const auto& r : runs) {
    values.push_back(e1_residual(r.point));
    rep.restarts_at_iteration_cap += r.hit_iteration_cap;
    rep.total_iterations += r.iterations;
  }
  const auto best = argmin_first(values);
  rep.best_restart = static_cast<int>(best);
  rep.argmin = runs[best].point;
  rep.minimum = values[best];
  rep.smooth_minimum = rep.minimum;
  rep.passed = rep.minimum >= threshold;
  rep.verdict = rep.passed ? "consistent with no nonzero solution" : "near-solution found";
  return rep;
}

struct IdentityCheck {
  bool passed = false;
  double max_relative_deviation = 0.0;
  int samples = 0;
};

/// prod_i a_{i+1} a_{i+2} == prod_i a_i^2 (each index appears twice in the
/// cyclic product), checked on random complex points.
inline IdentityCheck e1_product_identity_check(int d, int samples, std::uint64_t seed = 42, double tol = 1e-10) {
  if (d < 3) throw std::invalid_argument("e1_product_identity_check: need d >= 3");
  IdentityCheck out;
  out.samples = samples;
  for (int s = 0; s < samples; ++s) {
    Rng rng(sub_seed(seed, static_cast<std::uint64_t>(s)));
    const CVector a = complex_gaussian(rng, d);
    cplx lhs = 1.0, rhs = 1.0;
    for (int i = 0; i < d; ++i) {
      lhs *= a(detail::cyc(i + 1, d)) * a(detail::cyc(i + 2, d));
      rhs *= a(i) * a(i);
    }
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    out.max_relative_deviation = std::max(out.max_relative_deviation, std::abs(lhs - rhs) / scale);
  }
  out.passed = out.max_relative_deviation <= tol;
  return out;
}

// ---------------------------------------------------------------------------
// (E2)

namespace detail {

// Matricization of sum_i c_i s_i: M_ii = c_i, M_{i+1,i+2} = M_{i+2,i+1} = c_i.
inline CMatrix householder_combination(const CVector& c) {
  const int d = static_cast<int>(c.size());
  CMatrix m = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const int j = cyc(i + 1, d), k = cyc(i + 2, d);
    m(i, i) += c(i);
    m(j, k) += c(i);
    m(k, j) += c(i);
  }
  return m;
}

inline double e2_tail(const CVector& c, CVector* grad) {
  const CMatrix m = householder_combination(c);
  if (!grad) return low_rank_tail(m, 2);
  CMatrix g;
  const double t = low_rank_tail(m, 2, &g);
  const int d = static_cast<int>(c.size());
  grad->resize(d);
  for (int i = 0; i < d; ++i) {
    const int j = cyc(i + 1, d), k = cyc(i + 2, d);
    (*grad)(i) = 2.0 * (g(i, i) + g(j, k) + g(k, j));
  }
  return t;
}

}  // namespace detail

/// sigma_3 / ||M||_F for M the matricization of sum_i c_i s_i.
inline double e2_rank3_ratio(const CVector& c) {
  if (c.size() < 3) throw std::invalid_argument("e2_rank3_ratio: need d >= 3");
  const CMatrix m = detail::householder_combination(c);
  return detail::singular_values(m)(2) / m.norm();
}

/// Multistart search for a rank <= 2 state in S. The descent objective is the
/// smooth rank-2 tail; the certified quantity is sigma_3 / ||M||_F at each
/// restart's endpoint. Passes when the smallest ratio found is at least
/// `threshold`. For d = 3, 4 the subspace does contain low-rank states, and the
/// report is expected to fail with a near-zero minimum.
inline CertificationReport e2_certify_rank3(int d, const SearchConfig& cfg, double threshold = 1e-3) {
  if (d < 3) throw std::invalid_argument("e2_certify_rank3: need d >= 3");
  cfg.validate();
  Objective obj;
  obj.value = [](const CVector& c) { return detail::e2_tail(c, nullptr); };
  obj.value_and_gradient = [](const CVector& c, CVector& g) { return detail::e2_tail(c, &g); };
  // tail <= 1e-24 puts sigma_3 / ||M|| below 1e-12; nothing below that matters.
  const auto runs =
      multistart_descent(obj, Manifold::sphere(d), cfg.restarts, cfg.seed, cfg.descent(1e-24), cfg.workers);

  CertificationReport rep;
  rep.check = "e2_rank3";
  rep.d = d;
  rep.threshold = threshold;
  rep.restarts = cfg.restarts;
  rep.smooth_minimum = 1.0;
  std::vector<double> ratios;
  for (const auto& r : runs) {
    ratios.push_back(e2_rank3_ratio(r.point));
    rep.smooth_minimum = std::min(rep.smooth_minimum, r.value);
    rep.restarts_at_iteration_cap += r.hit_iteration_cap;
    rep.total_iterations += r.iterations;
  }
  const auto best = argmin_first(ratios);
  rep.best_restart = static_cast<int>(best);
  rep.argmin = runs[best].point;
  rep.minimum = ratios[best];
  rep.passed = rep.minimum >= threshold;
  rep.verdict = rep.passed ? "consistent with rank >= 3 everywhere in S" : "low-rank state found in S";
  if (d < 5) rep.note = "the householder construction requires d >= 5";
  return rep;
}

}  // namespace uent

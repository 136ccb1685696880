#pragma once
//
// Product-state varieties and their membership residuals.
//
// Every residual here is a sigma-ratio: a trailing singular value of the
// matricization divided by its Frobenius norm. It lies in [0, 1], is invariant
// under nonzero complex scaling, and vanishes exactly on the variety:
//
//   veronese     (bosonic product |a>|a>)     : sigma_2 / ||M||_F
//   grassmannian (Slater determinant a^b)     : sigma_3 / ||A||_F
//   segre        (distinguishable v1 (x) v2)  : sigma_2 / ||Z||_F
//

#include <cstdint>
#include <stdexcept>
#include <string>

#include "uent/subspace.hpp"

namespace uent {

/// Name recorded in reports for the residual convention above.
inline constexpr const char* kResidualConvention = "sigma-ratio";

/// Default membership tolerance on residuals.
inline constexpr double kMembershipTol = 1e-8;

enum class Family { bosonic, fermionic, distinguishable };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::bosonic: return "bosonic";
    case Family::fermionic: return "fermionic";
    case Family::distinguishable: return "distinguishable";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "bosonic") return Family::bosonic;
  if (s == "fermionic") return Family::fermionic;
  if (s == "distinguishable") return Family::distinguishable;
  throw std::invalid_argument("unknown family '" + s + "' (expected bosonic, fermionic or distinguishable)");
}

/// Which product-state set a gate acts on: veronese(d), grassmannian(d) or segre(d1, d2).
/// For bosonic and fermionic kinds d2 is unused.
struct VarietyKind {
  Family family = Family::bosonic;
  int d1 = 0;
  int d2 = 0;

  static VarietyKind veronese(int d) { return checked({Family::bosonic, d, 0}); }
  static VarietyKind grassmannian(int d) { return checked({Family::fermionic, d, 0}); }
  static VarietyKind segre(int d1, int d2) { return checked({Family::distinguishable, d1, d2}); }

  int d() const { return d1; }

  /// Dimension of the Hilbert space the gate acts on.
  int ambient_dim() const {
    switch (family) {
      case Family::bosonic: return sym_dim(d1);
      case Family::fermionic: return anti_dim(d1);
      case Family::distinguishable: return d1 * d2;
    }
    return 0;
  }

  std::string label() const {
    if (family == Family::distinguishable)
      return std::string("distinguishable(") + std::to_string(d1) + "," + std::to_string(d2) + ")";
    return std::string(family_name(family)) + "(" + std::to_string(d1) + ")";
  }

  friend bool operator==(const VarietyKind&, const VarietyKind&) = default;

 private:
  static VarietyKind checked(VarietyKind k) {
    const bool ok = k.family == Family::bosonic      ? k.d1 >= 1
                    : k.family == Family::fermionic ? k.d1 >= 2
                                                    : (k.d1 >= 1 && k.d2 >= 1);
    if (!ok) throw std::invalid_argument("invalid variety dimensions for " + std::string(family_name(k.family)));
    return k;
  }
};

inline double veronese_residual(const SymVector& x) {
  detail::require_nonzero(x.coords, "veronese_residual");
  if (x.dim < 2) return 0.0;
  const CMatrix m = sym_matricize(x);
  return detail::singular_values(m)(1) / m.norm();
}

/// Every 2-vector with d <= 3 is decomposable; those report 0 exactly.
inline double grassmann_residual(const AntiVector& p) {
  detail::require_nonzero(p.coords, "grassmann_residual");
  if (p.dim <= 3) return 0.0;
  const CMatrix a = anti_matricize(p);
  return detail::singular_values(a)(2) / a.norm();
}

/// max |p_ij p_kl - p_ik p_jl + p_il p_jk| / ||p||^2 over i<j<k<l. Zero iff
/// decomposable; independent of any SVD.
inline double plucker_relations_residual(const AntiVector& p) {
  detail::require_nonzero(p.coords, "plucker_relations_residual");
  const int d = p.dim;
  if (d < 4) return 0.0;
  auto c = [&](int i, int j) { return p.coords(detail::pair_rank(i, j, d)); };
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        for (int l = k + 1; l < d; ++l)
          worst = std::max(worst, std::abs(c(i, j) * c(k, l) - c(i, k) * c(j, l) + c(i, l) * c(j, k)));
  return worst / p.coords.squaredNorm();
}

inline double segre_residual(const CVector& z, int d1, int d2) {
  detail::require_nonzero(z, "segre_residual");
  if (std::min(d1, d2) < 2) {
    if (d1 < 1 || d2 < 1 || z.size() != static_cast<Eigen::Index>(d1) * d2)
      throw std::invalid_argument("bipartite vector length does not match d1*d2");
    return 0.0;
  }
  const CMatrix m = bipartite_matricize(z, d1, d2);
  return detail::singular_values(m)(1) / m.norm();
}

/// Residual of an ambient coordinate vector against the product-state set of `kind`.
inline double product_residual(const VarietyKind& kind, const CVector& y) {
  switch (kind.family) {
    case Family::bosonic: return veronese_residual(SymVector(kind.d1, y));
    case Family::fermionic: return grassmann_residual(AntiVector(kind.d1, y));
    case Family::distinguishable: return segre_residual(y, kind.d1, kind.d2);
  }
  return 0.0;
}

/// Smooth companion of the sigma-ratio: the fraction of squared Frobenius mass
/// beyond the best rank-r approximation, sum_{k>r} sigma_k^2 / ||M||_F^2. It
/// brackets the ratio as sigma_{r+1}^2 <= tail <= (n - r) sigma_{r+1}^2 (after
/// normalization), and unlike the ratio it is differentiable on the variety.
///
/// If `grad` is non-null it receives G with d(tail) = 2 Re <G, dM>.
inline double low_rank_tail(const CMatrix& m, int r, CMatrix* grad = nullptr) {
  const double nrm2 = m.squaredNorm();
  if (nrm2 == 0.0) throw std::invalid_argument("low_rank_tail: zero matrix");
  const int kmax = static_cast<int>(std::min(m.rows(), m.cols()));
  if (r >= kmax) {
    if (grad) grad->setZero(m.rows(), m.cols());
    return 0.0;
  }
  if (!grad) {
    const RVector s = detail::singular_values(m);
    return s.tail(kmax - r).squaredNorm() / nrm2;
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  const double tail = s.tail(kmax - r).squaredNorm();
  // Residual after removing the top-r part, computed from the trailing
  // triplets directly so that it stays accurate when the tail is tiny.
  const auto k = kmax - r;
  CMatrix rest = svd.matrixU().rightCols(k) * s.tail(k).asDiagonal() * svd.matrixV().rightCols(k).adjoint();
  *grad = rest / nrm2 - (tail / (nrm2 * nrm2)) * m;
  return tail / nrm2;
}

/// Complex dimension of the projective product-state variety.
inline int variety_dim(const VarietyKind& kind) {
  switch (kind.family) {
    case Family::bosonic: return kind.d1 - 1;
    case Family::fermionic: return 2 * (kind.d1 - 2);
    case Family::distinguishable: return kind.d1 + kind.d2 - 2;
  }
  return 0;
}

struct ExistencePrediction {
  bool exists = false;
  int lhs = 0;  // 2 * variety dimension
  int rhs = 0;  // ambient projective dimension
  bool inequality_holds = false;
};

/// Dimension counting: two varieties in P^m meet whenever their dimensions sum
/// to at least m, so a universal entangler can only exist when 2 dim < m.
inline ExistencePrediction dimension_gate(const VarietyKind& kind) {
  ExistencePrediction out;
  out.lhs = 2 * variety_dim(kind);
  out.rhs = kind.ambient_dim() - 1;
  out.inequality_holds = out.lhs >= out.rhs;
  out.exists = !out.inequality_holds;
  return out;
}

struct ClosureBound {
  std::int64_t bound = 0;      // upper bound on dim of the closure of non-entangling gates
  std::int64_t group_dim = 0;  // dim GL(n) = n^2
};

/// N^2 - (N - 1) + 2 dim(variety), with N the subspace dimension.
inline ClosureBound closure_dim_bound(const VarietyKind& kind) {
  if (kind.family == Family::distinguishable)
    throw std::invalid_argument("closure_dim_bound: only bosonic and fermionic kinds are supported");
  const std::int64_t n = kind.ambient_dim();
  return {n * n - (n - 1) + 2 * static_cast<std::int64_t>(variety_dim(kind)), n * n};
}

}  // namespace uent

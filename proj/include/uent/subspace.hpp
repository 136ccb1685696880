#pragma once
//
// Coordinates for two-particle states in the symmetric (bosonic) and
// antisymmetric (fermionic) subspaces of C^d (x) C^d, plus the canonical
// decompositions used to decide whether such a state is a product state.
//
// SymVector basis  : |ii>, i = 1..d, then (|ij>+|ji>)/sqrt(2), i<j lexicographic
// AntiVector basis : |i>^|j> = (|ij>-|ji>)/sqrt(2), i<j lexicographic
//
// Both bases are orthonormal, so coordinate 2-norms equal state norms.
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace uent {

using cplx    = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kSqrt2    = 1.41421356237309504880;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Default relative tolerance for rank decisions.
inline constexpr double kRankTol = 1e-8;

inline int sym_dim(int d) { return d * (d + 1) / 2; }
inline int anti_dim(int d) { return d * (d - 1) / 2; }

/// Recover d from the length of a symmetric coordinate vector; -1 if none fits.
inline int dim_from_sym_length(Eigen::Index n) {
  for (int d = 1; sym_dim(d) <= n; ++d)
    if (sym_dim(d) == n) return d;
  return -1;
}

/// Recover d (>= 2) from the length of an antisymmetric coordinate vector.
inline int dim_from_anti_length(Eigen::Index n) {
  for (int d = 2; anti_dim(d) <= n; ++d)
    if (anti_dim(d) == n) return d;
  return -1;
}

struct SymVector {
  int dim = 0;
  CVector coords;

  SymVector() = default;
  SymVector(int d, CVector c) : dim(d), coords(std::move(c)) {
    if (d < 1 || coords.size() != sym_dim(d))
      throw std::invalid_argument("SymVector: expected " + std::to_string(sym_dim(d)) +
                                  " coordinates for d=" + std::to_string(d));
  }
  static SymVector zero(int d) { return {d, CVector::Zero(sym_dim(d))}; }
  double norm() const { return coords.norm(); }
};

struct AntiVector {
  int dim = 0;
  CVector coords;

  AntiVector() = default;
  AntiVector(int d, CVector c) : dim(d), coords(std::move(c)) {
    if (d < 2 || coords.size() != anti_dim(d))
      throw std::invalid_argument("AntiVector: expected " + std::to_string(anti_dim(d)) +
                                  " coordinates for d=" + std::to_string(d));
  }
  static AntiVector zero(int d) { return {d, CVector::Zero(anti_dim(d))}; }
  double norm() const { return coords.norm(); }
};

namespace detail {

// 0-based rank of the pair (i, j), i < j, among all pairs in lexicographic order.
inline int pair_rank(int i, int j, int d) { return i * (2 * d - i - 1) / 2 + (j - i - 1); }

inline void require_nonzero(const CVector& v, const char* what) {
  if (v.size() == 0 || v.norm() == 0.0) throw std::invalid_argument(std::string(what) + ": zero vector");
}

// Singular values in nonincreasing order.
inline RVector singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

}  // namespace detail

/// Position of the basis state {i, j} (1-based, either order) in a SymVector.
inline int sym_index(int i, int j, int d) {
  if (d < 1 || i < 1 || j < 1 || i > d || j > d)
    throw std::out_of_range("sym_index: indices must lie in 1.." + std::to_string(d));
  if (i == j) return i - 1;
  if (i > j) std::swap(i, j);
  return d + detail::pair_rank(i - 1, j - 1, d);
}

/// Position of |i>^|j> (1-based, i != j) in an AntiVector; the sign of the
/// coordinate for i > j is the caller's concern.
inline int anti_index(int i, int j, int d) {
  if (d < 2 || i < 1 || j < 1 || i > d || j > d || i == j)
    throw std::out_of_range("anti_index: need distinct indices in 1.." + std::to_string(d));
  if (i > j) std::swap(i, j);
  return detail::pair_rank(i - 1, j - 1, d);
}

/// Coordinates of the bosonic product state |a>|a>.
inline SymVector sym_embed(const CVector& a) {
  detail::require_nonzero(a, "sym_embed");
  const int d = static_cast<int>(a.size());
  CVector x(sym_dim(d));
  int k = 0;
  for (int i = 0; i < d; ++i) x(k++) = a(i) * a(i);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) x(k++) = kSqrt2 * a(i) * a(j);
  return {d, std::move(x)};
}

/// Plucker coordinates p_ij = a_i b_j - a_j b_i of the Slater determinant a^b.
/// Orthonormal inputs give a unit-norm output.
inline AntiVector wedge_embed(const CVector& a, const CVector& b, double dependence_tol = 1e-12) {
  if (a.size() != b.size()) throw std::invalid_argument("wedge_embed: dimension mismatch");
  if (a.size() < 2) throw std::invalid_argument("wedge_embed: need d >= 2");
  const int d = static_cast<int>(a.size());
  CVector p(anti_dim(d));
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) p(k++) = a(i) * b(j) - a(j) * b(i);
  const double scale = a.norm() * b.norm();
  if (scale == 0.0 || p.norm() <= dependence_tol * scale)
    throw std::invalid_argument("wedge_embed: linearly dependent inputs give the zero vector");
  return {d, std::move(p)};
}

/// Full symmetric coefficient matrix of the state: M_ii = x_ii, M_ij = x_ij / sqrt(2).
inline CMatrix sym_matricize(const SymVector& x) {
  const int d = x.dim;
  CMatrix m(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) m(i, i) = x.coords(k++);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      m(i, j) = m(j, i) = x.coords(k++) * kInvSqrt2;
    }
  return m;
}

/// Inverse of sym_matricize; the input is symmetrized first.
inline SymVector sym_vectorize(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw std::invalid_argument("sym_vectorize: need a square matrix");
  const int d = static_cast<int>(m.rows());
  CVector x(sym_dim(d));
  int k = 0;
  for (int i = 0; i < d; ++i) x(k++) = m(i, i);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) x(k++) = (m(i, j) + m(j, i)) * kInvSqrt2;
  return {d, std::move(x)};
}

/// Full antisymmetric coefficient matrix: A_ij = p_ij / sqrt(2) = -A_ji.
inline CMatrix anti_matricize(const AntiVector& p) {
  const int d = p.dim;
  CMatrix a = CMatrix::Zero(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      a(i, j) = p.coords(k++) * kInvSqrt2;
      a(j, i) = -a(i, j);
    }
  return a;
}

/// Inverse of anti_matricize; the input is antisymmetrized first.
inline AntiVector anti_vectorize(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() < 2) throw std::invalid_argument("anti_vectorize: need a square matrix, d >= 2");
  const int d = static_cast<int>(a.rows());
  CVector p(anti_dim(d));
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) p(k++) = (a(i, j) - a(j, i)) * kInvSqrt2;
  return {d, std::move(p)};
}

struct SymRankData {
  int rank = 0;
  RVector singular_values;
};

/// Symmetric rank of a bosonic state. Over C the order-2 symmetric rank is the
/// matrix rank of the matricization (Takagi), so no tensor-rank search is needed.
inline SymRankData sym_rank(const SymVector& x, double tol = kRankTol) {
  if (!(tol > 0.0)) throw std::invalid_argument("sym_rank: tol must be positive");
  SymRankData out;
  out.singular_values = detail::singular_values(sym_matricize(x));
  const double top = out.singular_values.size() ? out.singular_values(0) : 0.0;
  for (Eigen::Index k = 0; k < out.singular_values.size(); ++k)
    if (top > 0.0 && out.singular_values(k) > tol * top) ++out.rank;
  return out;
}

struct SlaterDecomposition {
  std::vector<double> coefficients;  // nonincreasing
  std::vector<std::pair<CVector, CVector>> pairs;

  int rank(double tol = kRankTol) const {
    if (coefficients.empty()) return 0;
    return static_cast<int>(std::count_if(coefficients.begin(), coefficients.end(),
                                          [&](double c) { return c > tol * coefficients.front(); }));
  }

  AntiVector reconstruct() const {
    const int d = pairs.empty() ? 2 : static_cast<int>(pairs.front().first.size());
    AntiVector out = AntiVector::zero(d);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      out.coords += coefficients[k] * wedge_embed(pairs[k].first, pairs[k].second, 0.0).coords;
    return out;
  }
};

/// Slater decomposition p = sum_k lambda_k alpha_k ^ beta_k with all factors
/// orthonormal. Works by repeated deflation of the antisymmetric matricization A:
/// if A v = s u is the top singular triplet then alpha = u, beta = conj(v) span an
/// invariant 2x2 block with lambda = sqrt(2) s, and subtracting it keeps A
/// antisymmetric with range orthogonal to alpha and beta.
inline SlaterDecomposition slater_decompose(const AntiVector& p, double drop_tol = 1e-14) {
  detail::require_nonzero(p.coords, "slater_decompose");
  CMatrix a = anti_matricize(p);
  SlaterDecomposition out;
  double first = 0.0;
  for (int block = 0; block < p.dim / 2; ++block) {
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double s = svd.singularValues()(0);
    if (block == 0) first = s;
    if (s <= drop_tol * first) break;
    CVector alpha = svd.matrixU().col(0);
    CVector beta = svd.matrixV().col(0).conjugate();
    // Enforce exact orthogonality against numerical drift.
    beta -= alpha * alpha.dot(beta);
    beta.normalize();
    a -= s * (alpha * beta.transpose() - beta * alpha.transpose());
    out.coefficients.push_back(kSqrt2 * s);
    out.pairs.emplace_back(std::move(alpha), std::move(beta));
  }
  return out;
}

struct SchmidtDecomposition {
  RVector coefficients;  // nonincreasing
  CMatrix left;          // columns: factors in C^d1
  CMatrix right;         // columns: factors in C^d2

  CVector reconstruct() const {
    const Eigen::Index d1 = left.rows(), d2 = right.rows();
    CVector z = CVector::Zero(d1 * d2);
    for (Eigen::Index k = 0; k < coefficients.size(); ++k)
      for (Eigen::Index i = 0; i < d1; ++i)
        for (Eigen::Index j = 0; j < d2; ++j) z(i * d2 + j) += coefficients(k) * left(i, k) * right(j, k);
    return z;
  }
};

/// Row-major reshape of a vector in C^d1 (x) C^d2: entry (i, j) = z[i*d2 + j].
inline CMatrix bipartite_matricize(const CVector& z, int d1, int d2) {
  if (d1 < 1 || d2 < 1 || z.size() != static_cast<Eigen::Index>(d1) * d2)
    throw std::invalid_argument("bipartite vector length does not match d1*d2");
  CMatrix m(d1, d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) m(i, j) = z(i * d2 + j);
  return m;
}

/// Kronecker product v1 (x) v2 in the row-major convention above.
inline CVector product_state(const CVector& v1, const CVector& v2) {
  CVector z(v1.size() * v2.size());
  for (Eigen::Index i = 0; i < v1.size(); ++i) z.segment(i * v2.size(), v2.size()) = v1(i) * v2;
  return z;
}

/// z = sum_k c_k left_k (x) right_k with orthonormal factor systems.
inline SchmidtDecomposition schmidt_decompose(const CVector& z, int d1, int d2) {
  detail::require_nonzero(z, "schmidt_decompose");
  Eigen::JacobiSVD<CMatrix> svd(bipartite_matricize(z, d1, d2), Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV().conjugate()};
}

}  // namespace uent

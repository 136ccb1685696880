#include "uent/subspace.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "uent/varieties.hpp"

using namespace uent;
using namespace uent::test;

namespace {
const double kS2 = std::sqrt(2.0);
}

TEST(SymIndex, Examples) {
  EXPECT_EQ(sym_index(1, 1, 3), 0);
  EXPECT_EQ(sym_index(2, 1, 3), 3);
  EXPECT_EQ(sym_index(2, 3, 4), 7);
}

TEST(SymIndex, MatchesEnumeratedOrdering) {
  for (int d = 1; d <= 7; ++d) {
    // diagonal first, then lexicographic pairs
    std::vector<std::pair<int, int>> order;
    for (int i = 1; i <= d; ++i) order.emplace_back(i, i);
    for (int i = 1; i <= d; ++i)
      for (int j = i + 1; j <= d; ++j) order.emplace_back(i, j);
    std::set<int> seen;
    for (int pos = 0; pos < static_cast<int>(order.size()); ++pos) {
      const auto [i, j] = order[pos];
      EXPECT_EQ(sym_index(i, j, d), pos);
      EXPECT_EQ(sym_index(j, i, d), pos);
      seen.insert(sym_index(i, j, d));
    }
    EXPECT_EQ(static_cast<int>(seen.size()), sym_dim(d));
  }
}

TEST(SymIndex, RejectsOutOfRange) {
  EXPECT_THROW(sym_index(0, 1, 3), std::out_of_range);
  EXPECT_THROW(sym_index(1, 4, 3), std::out_of_range);
}

TEST(SymEmbed, Examples) {
  const SymVector x = sym_embed(basis(3, 1));
  CVector expect = CVector::Zero(6);
  expect(0) = 1.0;
  EXPECT_LT((x.coords - expect).norm(), 1e-15);

  const CVector a = (basis(3, 1) + basis(3, 2)) / kS2;
  CVector want(6);
  want << 0.5, 0.5, 0.0, kS2 / 2, 0.0, 0.0;
  EXPECT_LT((sym_embed(a).coords - want).norm(), 1e-15);
  // oracle: project the full tensor a (x) a
  EXPECT_LT((sym_embed(a).coords - sym_coords_oracle(kron(a, a), 3)).norm(), 1e-15);
}

TEST(SymEmbed, RejectsZero) { EXPECT_THROW(sym_embed(CVector::Zero(3)), std::invalid_argument); }

TEST(SymEmbed, PropertiesOnRandomInputs) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 8;
    const CVector a = random_complex(rng, d);
    const SymVector x = sym_embed(a);
    EXPECT_NEAR(x.norm(), a.squaredNorm(), 1e-12 * a.squaredNorm());
    EXPECT_LT((x.coords - sym_coords_oracle(kron(a, a), d)).norm(), 1e-12 * a.squaredNorm());
    const CMatrix outer = a * a.transpose();
    EXPECT_LT((sym_matricize(x) - outer).norm(), 1e-12 * a.squaredNorm());
    EXPECT_LE(veronese_residual(x), 1e-12);
  }
}

TEST(WedgeEmbed, Examples) {
  CVector want(3);
  want << 1.0, 0.0, 0.0;
  EXPECT_LT((wedge_embed(basis(3, 1), basis(3, 2)).coords - want).norm(), 1e-15);
  EXPECT_LT((wedge_embed(basis(3, 2), basis(3, 1)).coords + want).norm(), 1e-15);

  const CVector a = (basis(3, 1) + basis(3, 3)) / kS2;
  want << 1.0 / kS2, 0.0, -1.0 / kS2;
  EXPECT_LT((wedge_embed(a, basis(3, 2)).coords - want).norm(), 1e-15);
  // oracle: (a (x) b - b (x) a)/sqrt(2) in the Slater basis
  const CVector t = (kron(a, basis(3, 2)) - kron(basis(3, 2), a)) / kS2;
  EXPECT_LT((wedge_embed(a, basis(3, 2)).coords - anti_coords_oracle(t, 3)).norm(), 1e-15);
}

TEST(WedgeEmbed, RejectsDependentInputs) {
  const CVector a = basis(4, 2);
  EXPECT_THROW(wedge_embed(a, cplx(0, 2) * a), std::invalid_argument);
  EXPECT_THROW(wedge_embed(a, CVector::Zero(4)), std::invalid_argument);
}

TEST(WedgeEmbed, PropertiesOnRandomInputs) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 7;
    const CVector a = random_complex(rng, d), b = random_complex(rng, d);
    const AntiVector p = wedge_embed(a, b), q = wedge_embed(b, a);
    EXPECT_EQ((p.coords + q.coords).norm(), 0.0);
    EXPECT_LE(grassmann_residual(p), 1e-12);
    // orthonormal inputs: unit norm, matricizes to (ab^T - ba^T)/sqrt(2)
    CVector u = a / a.norm();
    CVector v = b - u * u.dot(b);
    v /= v.norm();
    const AntiVector w = wedge_embed(u, v);
    EXPECT_NEAR(w.norm(), 1.0, 1e-12);
    EXPECT_LT((anti_matricize(w) - (u * v.transpose() - v * u.transpose()) / kS2).norm(), 1e-12);
  }
}

TEST(Matricize, SymExamplesAndRoundTrip) {
  CMatrix m = sym_matricize(sym_embed(basis(3, 1)));
  CMatrix want = CMatrix::Zero(3, 3);
  want(0, 0) = 1.0;
  EXPECT_EQ(m, want);

  SymVector pair = SymVector::zero(3);
  pair.coords(sym_index(1, 2, 3)) = 1.0;
  m = sym_matricize(pair);
  EXPECT_DOUBLE_EQ(m(0, 1).real(), 1.0 / kS2);
  EXPECT_DOUBLE_EQ(m(1, 0).real(), 1.0 / kS2);
  EXPECT_NEAR(m.cwiseAbs().sum(), kS2, 1e-15);

  std::mt19937_64 rng(3);
  for (int d = 1; d <= 8; ++d) {
    const SymVector x(d, random_complex(rng, sym_dim(d)));
    const CMatrix mx = sym_matricize(x);
    EXPECT_LT((sym_vectorize(mx).coords - x.coords).norm(), 1e-14 * x.norm());
    EXPECT_LE(std::abs(mx.norm() - x.norm()), 1e-13 * std::max(1.0, x.norm()));
    EXPECT_LT((mx - mx.transpose()).norm(), 1e-15);
  }
}

TEST(Matricize, AntiExamplesAndRoundTrip) {
  const CMatrix a = anti_matricize(wedge_embed(basis(2, 1), basis(2, 2)));
  CMatrix want(2, 2);
  want << 0.0, 1.0 / kS2, -1.0 / kS2, 0.0;
  EXPECT_LT((a - want).norm(), 1e-15);
  EXPECT_EQ(anti_matricize(AntiVector::zero(4)), CMatrix::Zero(4, 4));

  std::mt19937_64 rng(4);
  for (int d = 2; d <= 8; ++d) {
    const AntiVector p(d, random_complex(rng, anti_dim(d)));
    const CMatrix mp = anti_matricize(p);
    EXPECT_LT((anti_vectorize(mp).coords - p.coords).norm(), 1e-14 * p.norm());
    EXPECT_LE(std::abs(mp.norm() - p.norm()), 1e-13 * std::max(1.0, p.norm()));
    EXPECT_LT((mp + mp.transpose()).norm(), 1e-15);
  }
}

TEST(VectorTypes, RejectWrongLength) {
  EXPECT_THROW(SymVector(3, CVector::Zero(5)), std::invalid_argument);
  EXPECT_THROW(AntiVector(4, CVector::Zero(5)), std::invalid_argument);
  EXPECT_THROW(AntiVector(1, CVector::Zero(0)), std::invalid_argument);
}

TEST(SymRank, Examples) {
  EXPECT_EQ(sym_rank(sym_embed(CVector::Ones(4))).rank, 1);

  SymVector pair = SymVector::zero(3);
  pair.coords(sym_index(1, 2, 3)) = 1.0;
  EXPECT_EQ(sym_rank(pair).rank, 2);
  EXPECT_EQ(lu_rank(sym_matricize(pair)), 2);

  // s1 = |11> + |23> + |32>, d = 5, normalized
  CVector t = CVector::Zero(25);
  t(0 * 5 + 0) = 1.0;
  t(1 * 5 + 2) = 1.0;
  t(2 * 5 + 1) = 1.0;
  t /= t.norm();
  const SymVector s1(5, sym_coords_oracle(t, 5));
  EXPECT_EQ(sym_rank(s1).rank, 3);
  EXPECT_EQ(lu_rank(bipartite_matricize(t, 5, 5)), 3);
}

TEST(SymRank, ScaleInvariantAndMatchesLuRank) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 6;
    const int r = 1 + trial % d;
    CVector x = CVector::Zero(sym_dim(d));
    for (int k = 0; k < r; ++k) x += sym_embed(random_complex(rng, d)).coords;
    const SymVector sx(d, x);
    const int rank = sym_rank(sx).rank;
    EXPECT_EQ(rank, r);
    EXPECT_EQ(rank, lu_rank(sym_matricize(sx), 1e-9));
    const cplx c(std::exp(-3.0 + trial % 7), 0.3 * trial);
    EXPECT_EQ(sym_rank(SymVector(d, c * x)).rank, rank);
  }
}

TEST(SymRank, RejectsNonPositiveTol) { EXPECT_THROW(sym_rank(sym_embed(basis(2, 1)), 0.0), std::invalid_argument); }

TEST(Slater, Examples) {
  SlaterDecomposition s = slater_decompose(wedge_embed(basis(3, 1), basis(3, 2)));
  ASSERT_EQ(s.coefficients.size(), 1u);
  EXPECT_NEAR(s.coefficients[0], 1.0, 1e-14);
  // pair spans {e1, e2}: the wedge agrees up to phase
  const cplx overlap = wedge_embed(basis(3, 1), basis(3, 2)).coords.dot(
      wedge_embed(s.pairs[0].first, s.pairs[0].second).coords);
  EXPECT_NEAR(std::abs(overlap), 1.0, 1e-14);

  const AntiVector p(4, (wedge_embed(basis(4, 1), basis(4, 2)).coords + wedge_embed(basis(4, 3), basis(4, 4)).coords) / kS2);
  s = slater_decompose(p);
  ASSERT_EQ(s.coefficients.size(), 2u);
  EXPECT_NEAR(s.coefficients[0], 1.0 / kS2, 1e-14);
  EXPECT_NEAR(s.coefficients[1], 1.0 / kS2, 1e-14);
  EXPECT_EQ(s.rank(), 2);
  // oracle: A^H A has eigenvalues lambda^2 / 2, each twice
  const Eigen::VectorXd sv = eig_singular_values(anti_matricize(p));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(sv(k), 0.5, 1e-14);
}

TEST(Slater, RejectsZero) { EXPECT_THROW(slater_decompose(AntiVector::zero(4)), std::invalid_argument); }

TEST(Slater, ReconstructsRandomInputs) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 8;
    CVector c = random_complex(rng, anti_dim(d));
    const AntiVector p(d, c / c.norm());
    const SlaterDecomposition s = slater_decompose(p);
    double sum2 = 0.0;
    for (double l : s.coefficients) sum2 += l * l;
    EXPECT_NEAR(sum2, 1.0, 1e-10);
    EXPECT_TRUE(std::is_sorted(s.coefficients.rbegin(), s.coefficients.rend()));
    EXPECT_LE((s.reconstruct().coords - p.coords).norm(), 1e-10);
    // all factors mutually orthonormal
    CMatrix f(d, 2 * s.pairs.size());
    for (std::size_t k = 0; k < s.pairs.size(); ++k) {
      f.col(2 * k) = s.pairs[k].first;
      f.col(2 * k + 1) = s.pairs[k].second;
    }
    EXPECT_LE((f.adjoint() * f - CMatrix::Identity(f.cols(), f.cols())).cwiseAbs().maxCoeff(), 1e-10);
    // coefficient list agrees with the eigen-based oracle (pairs of equal values)
    const Eigen::VectorXd sv = eig_singular_values(anti_matricize(p));
    for (std::size_t k = 0; k < s.coefficients.size(); ++k) EXPECT_NEAR(s.coefficients[k], kS2 * sv(2 * k), 1e-7);
  }
}

TEST(Slater, RankOfDecomposableIsOne) {
  std::mt19937_64 rng(7);
  for (int d = 2; d <= 8; ++d) {
    const AntiVector p = wedge_embed(random_complex(rng, d), random_complex(rng, d));
    EXPECT_EQ(slater_decompose(p).rank(), 1);
  }
}

TEST(Schmidt, Examples) {
  std::mt19937_64 rng(8);
  const CVector z = kron(random_complex(rng, 3), random_complex(rng, 4));
  const SchmidtDecomposition s = schmidt_decompose(z, 3, 4);
  EXPECT_GT(s.coefficients(0), 0.1);
  EXPECT_LT(s.coefficients(1), 1e-12 * s.coefficients(0));

  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / kS2;
  const SchmidtDecomposition b = schmidt_decompose(bell, 2, 2);
  EXPECT_NEAR(b.coefficients(0), 1.0 / kS2, 1e-15);
  EXPECT_NEAR(b.coefficients(1), 1.0 / kS2, 1e-15);
  EXPECT_THROW(schmidt_decompose(CVector::Zero(4), 2, 2), std::invalid_argument);
}

TEST(Schmidt, ReconstructsRandomInputs) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int d1 = 1 + trial % 5, d2 = 1 + (trial / 5) % 6;
    const CVector z = random_complex(rng, d1 * d2);
    const SchmidtDecomposition s = schmidt_decompose(z, d1, d2);
    EXPECT_NEAR(s.coefficients.squaredNorm(), z.squaredNorm(), 1e-10 * z.squaredNorm());
    EXPECT_LE((s.reconstruct() - z).norm(), 1e-10 * z.norm());
    const auto k = s.coefficients.size();
    EXPECT_LE((s.left.adjoint() * s.left - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((s.right.adjoint() * s.right - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

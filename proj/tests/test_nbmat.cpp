// Copyright 2026 The nbspectra Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numeric>

#include "nbspectra/nbmat.hpp"
#include "nbspectra/spectra.hpp"
#include "support/graphs.hpp"

namespace nbspectra {
namespace {

using testing::complete;
using testing::complete_bipartite;
using testing::make;

std::vector<SimpleGraph> suite() {
  std::vector<SimpleGraph> gs{complete(4), complete_bipartite(2, 3), complete_bipartite(3, 3),
                              testing::petersen()};
  for (std::uint64_t seed = 0; seed < 40; ++seed) gs.push_back(testing::random_two_core(30, seed));
  return gs;
}

TEST(BuildB, K4) {
  SparseOperator b = build_B(oriented_edges(complete(4)));
  EXPECT_EQ(b.rows(), 12u);
  EXPECT_EQ(b.nnz(), 24u);
  for (double s : row_sums(b)) EXPECT_EQ(s, 2.0);
  b.for_each([](std::size_t, std::size_t, double v) { EXPECT_EQ(v, 1.0); });
}

TEST(BuildB, SingleEdgeIsZero) {
  SparseOperator b = build_B(oriented_edges(make(2, {{0, 1}})));
  EXPECT_EQ(b.rows(), 2u);
  EXPECT_EQ(b.nnz(), 0u);
}

TEST(BuildB, K23) { EXPECT_EQ(build_B(oriented_edges(complete_bipartite(2, 3))).nnz(), 18u); }

TEST(BuildB, EntryRule) {
  OrientedEdgeIndex idx = oriented_edges(testing::petersen());
  SparseOperator b = build_B(idx);
  for (EdgeId e = 0; e < idx.oriented_count(); ++e)
    for (EdgeId f = 0; f < idx.oriented_count(); ++f) {
      const bool expect = idx.endpoint(e) == idx.startpoint(f) && f != idx.reverse(e);
      EXPECT_EQ(b.coeff(e, f), expect ? 1.0 : 0.0);
    }
}

TEST(ApplyV, Examples) {
  std::vector<double> x{1, 2, 3, 4};
  EXPECT_EQ(apply_V(x, 2), (std::vector<double>{3, 4, 1, 2}));
  EXPECT_EQ(apply_V(apply_V(x, 2), 2), x);
  std::vector<double> ones(6, 1.0);
  EXPECT_EQ(apply_V(ones, 3), ones);
  EXPECT_THROW(apply_V(x, 3), Error);
}

TEST(Degrees, DRowAndDCol) {
  EXPECT_EQ(build_D_row(oriented_edges(complete(4))).diagonal, std::vector<double>(12, 2.0));

  OrientedEdgeIndex k23 = oriented_edges(complete_bipartite(2, 3));
  auto drow = build_D_row(k23);
  for (EdgeId e = 0; e < k23.oriented_count(); ++e) {
    EXPECT_EQ(drow[e], k23.degree(k23.endpoint(e)) == 3 ? 2.0 : 1.0);
  }
  OrientedEdgeIndex p3 = oriented_edges(testing::path(3));
  auto dp = build_D_row(p3);
  EXPECT_EQ(dp[0], 1.0);  // 0 -> 1, node 1 has degree 2
  EXPECT_EQ(dp[2], 0.0);  // 1 -> 0 ends at a leaf
}

TEST(BuildT, K4IsHalfB) {
  OrientedEdgeIndex idx = oriented_edges(complete(4));
  SparseOperator t = build_T(idx);
  SparseOperator half = scale_rows(DiagonalOperator{std::vector<double>(12, 0.5)}, build_B(idx));
  EXPECT_EQ(t, half);
}

TEST(BuildT, RejectsLeaves) {
  try {
    build_T(oriented_edges(testing::path(3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegreeTooSmall);
  }
}

TEST(BuildT, K23DoublyStochastic) {
  SparseOperator t = build_T(oriented_edges(complete_bipartite(2, 3)));
  for (double s : row_sums(t)) EXPECT_NEAR(s, 1.0, 1e-15);
  for (double s : column_sums(t)) EXPECT_NEAR(s, 1.0, 1e-15);
}

TEST(BuildL, IsIdentityMinusT) {
  OrientedEdgeIndex idx = oriented_edges(testing::petersen());
  Eigen::MatrixXd l = build_L(idx).to_dense();
  Eigen::MatrixXd t = build_T(idx).to_dense();
  EXPECT_EQ((l - (Eigen::MatrixXd::Identity(30, 30) - t)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Incidence, K4) {
  OrientedEdgeIndex idx = oriented_edges(complete(4));
  SparseOperator end = build_End(idx);
  EXPECT_EQ(multiply(transpose(end), end), scale_rows(DiagonalOperator{std::vector<double>(4, 3.0)},
                                                      SparseOperator::identity(4)));
}

TEST(Incidence, RowsAndInflation) {
  OrientedEdgeIndex idx = oriented_edges(testing::random_two_core(25, 7));
  SparseOperator end = build_End(idx), start = build_Start(idx);
  for (double s : row_sums(end)) EXPECT_EQ(s, 1.0);
  for (double s : row_sums(start)) EXPECT_EQ(s, 1.0);
  std::vector<double> u(idx.node_count());
  std::iota(u.begin(), u.end(), 0.0);
  auto inflated = matvec(end, u);
  auto inflated_start = matvec(start, u);
  for (EdgeId e = 0; e < idx.oriented_count(); ++e) {
    EXPECT_EQ(inflated[e], static_cast<double>(idx.endpoint(e)));
    EXPECT_EQ(inflated_start[e], static_cast<double>(idx.startpoint(e)));
  }
}

TEST(Primitives, MatvecTransposeAndShapes) {
  SparseOperator b = build_B(oriented_edges(complete(4)));
  EXPECT_EQ(matvec(b, std::vector<double>(12, 1.0)), std::vector<double>(12, 2.0));
  EXPECT_EQ(transpose(transpose(b)), b);
  EXPECT_THROW(matvec(b, std::vector<double>(11, 1.0)), Error);
  EXPECT_THROW(multiply(b, build_End(oriented_edges(complete(5)))), Error);
}

TEST(Primitives, FrobeniusNorm) {
  SparseOperator b = build_B(oriented_edges(complete(4)));
  EXPECT_DOUBLE_EQ(frobenius_norm(b), std::sqrt(24.0));
}

TEST(SpectralNorm, K4IsTwo) {
  EXPECT_NEAR(spectral_norm(build_B(oriented_edges(complete(4)))), 2.0, 2e-10);
}

TEST(SpectralNorm, MatchesSvdOnRandomSparse) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t j = 0; j < 30; ++j)
        if (u(rng) > 0.6) t.push_back({i, j, u(rng)});
    SparseOperator m = SparseOperator::from_triplets(40, 30, t);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.to_dense());
    const double ref = svd.singularValues()(0);
    EXPECT_NEAR(spectral_norm(m, {.seed = static_cast<std::uint64_t>(trial)}), ref, 1e-10 * ref);
  }
}

// Identity properties on every graph of the suite.

TEST(Identities, PTInvarianceBitExact) {
  for (const auto& g : suite()) {
    OrientedEdgeIndex idx = oriented_edges(g);
    SparseOperator b = build_B(idx);
    EXPECT_EQ(transpose(b), conjugate_V(b));
    SparseOperator bv = times_V(b);
    SparseOperator vb = V_times(b);
    EXPECT_TRUE(is_symmetric(bv));
    EXPECT_TRUE(is_symmetric(vb));
    SparseOperator end = build_End(idx);
    EXPECT_EQ(bv, combine(1.0, multiply(end, transpose(end)), -1.0,
                          SparseOperator::identity(idx.oriented_count())));
  }
}

TEST(Identities, DegreeOperators) {
  for (const auto& g : suite()) {
    OrientedEdgeIndex idx = oriented_edges(g);
    DiagonalOperator drow = build_D_row(idx), dcol = build_D_col(idx);
    EXPECT_EQ(dcol.diagonal, apply_V(drow.diagonal, idx.edge_count()));
    EXPECT_EQ(row_sums(build_B(idx)), drow.diagonal);
    EXPECT_EQ(column_sums(build_B(idx)), dcol.diagonal);
    SparseOperator end = build_End(idx), start = build_Start(idx);
    SparseOperator d = build_D(idx).to_sparse();
    EXPECT_EQ(multiply(transpose(end), end), d);
    EXPECT_EQ(multiply(transpose(start), start), d);
  }
}

TEST(Identities, EntryCountAndStochasticity) {
  for (const auto& g : suite()) {
    OrientedEdgeIndex idx = oriented_edges(g);
    std::size_t sq = 0;
    for (auto d : idx.degrees()) sq += d * d;
    EXPECT_EQ(build_B(idx).nnz(), sq - idx.oriented_count());
    SparseOperator t = build_T(idx);
    for (double s : row_sums(t)) EXPECT_LE(std::abs(s - 1.0), 1e-12);
    for (double s : column_sums(t)) EXPECT_LE(std::abs(s - 1.0), 1e-12);
  }
}

TEST(Identities, SingularValuesOfB) {
  for (const auto& g : suite()) {
    OrientedEdgeIndex idx = oriented_edges(g);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(build_B(idx).to_dense());
    auto expect = closed_form_singular_values_B(idx);
    ASSERT_EQ(static_cast<std::size_t>(svd.singularValues().size()), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
      EXPECT_NEAR(svd.singularValues()(static_cast<Eigen::Index>(i)), expect[i], 1e-8);
    }
  }
}

}  // namespace
}  // namespace nbspectra

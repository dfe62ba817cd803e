#include <random>

#include <gtest/gtest.h>

#include "datainf/linalg.hpp"

using namespace datainf;

namespace {

MatrixXd random_rank(Eigen::Index rows, Eigen::Index cols, Eigen::Index r, unsigned seed) {
  std::srand(seed);
  return MatrixXd::Random(rows, r) * MatrixXd::Random(r, cols);
}

}  // namespace

TEST(NumericalRank, Examples) {
  EXPECT_EQ(numerical_rank(MatrixXd::Identity(3, 3)), 3);
  EXPECT_EQ(numerical_rank(MatrixXd::Zero(2, 2)), 0);
  MatrixXd M(2, 2);
  M << 1, 2, 2, 4;
  EXPECT_EQ(numerical_rank(M), 1);
}

TEST(NumericalRank, ConstructedRankUpTo50) {
  for (unsigned s = 0; s < 30; ++s) {
    const Eigen::Index rows = 1 + s % 50, cols = 1 + (7 * s) % 50;
    const Eigen::Index r = std::min(rows, cols) * (s % 4) / 3;
    EXPECT_EQ(numerical_rank(random_rank(rows, cols, r, s)), r) << "seed " << s;
  }
}

TEST(NumericalRank, ScaleInvariant) {
  const MatrixXd M = random_rank(12, 9, 4, 3);
  for (double c : {1e-3, 1.0, 1e3}) EXPECT_EQ(numerical_rank(MatrixXd(c * M)), 4);
}

TEST(NumericalRank, ReferenceScaleForSlices) {
  MatrixXd M = MatrixXd::Zero(2, 2);
  M(0, 0) = 1.0;
  M(1, 1) = 1e-13;
  EXPECT_EQ(numerical_rank(M.bottomRows(1)), 1);
  EXPECT_EQ(numerical_rank(M.bottomRows(1), {}, sigma_max(M)), 0);
}

TEST(KernelBasis, Examples) {
  MatrixXd a(1, 2);
  a << 1, 0;
  const MatrixXd Na = kernel_basis(a);
  ASSERT_EQ(Na.cols(), 1);
  EXPECT_NEAR(std::abs(Na(1, 0)), 1.0, 1e-12);
  EXPECT_EQ(kernel_basis(MatrixXd::Identity(2, 2)).cols(), 0);

  MatrixXd b(2, 3);
  b << 1, 1, 0, 0, 0, 1;
  const MatrixXd Nb = kernel_basis(b);
  ASSERT_EQ(Nb.cols(), 1);
  const VectorXd dir = VectorXd(Eigen::Vector3d(1, -1, 0)).normalized();
  EXPECT_NEAR(std::abs(Nb.col(0).dot(dir)), 1.0, 1e-12);
}

TEST(KernelBasis, RankNullity) {
  for (unsigned s = 0; s < 20; ++s) {
    const Eigen::Index rows = 2 + s % 9, cols = 3 + (5 * s) % 11;
    const MatrixXd M = random_rank(rows, cols, std::min(rows, cols) / 2, s);
    const MatrixXd N = kernel_basis(M);
    EXPECT_EQ(numerical_rank(M) + N.cols(), cols);
    EXPECT_LT((M * N).norm(), 1e-10);
    EXPECT_LT((N.transpose() * N - MatrixXd::Identity(N.cols(), N.cols())).norm(), 1e-10);
  }
}

TEST(RangeBasis, SpansColumnSpace) {
  const MatrixXd M = random_rank(8, 6, 3, 11);
  const MatrixXd R = range_basis(M);
  ASSERT_EQ(R.cols(), 3);
  EXPECT_LT((M - R * (R.transpose() * M)).norm(), 1e-10);
}

TEST(CompressColumns, KeepsRowRelations) {
  MatrixXd M = random_rank(6, 10, 3, 5);
  M.row(5) = 2 * M.row(0) - M.row(3);
  const MatrixXd X = compress_columns(M);
  ASSERT_EQ(X.cols(), 3);
  EXPECT_LT((X.row(5) - 2 * X.row(0) + X.row(3)).norm(), 1e-10);
  EXPECT_EQ(numerical_rank(MatrixXd(X.transpose())), 3);
}

TEST(InSpan, Examples) {
  MatrixXd G(2, 1);
  G << 0, 1;
  EXPECT_TRUE(in_span(VectorXd::Zero(2), G));
  EXPECT_FALSE(in_span(VectorXd(Eigen::Vector2d(1, 0)), G));
  G << 1, 2;
  EXPECT_TRUE(in_span(VectorXd(Eigen::Vector2d(3, 6)), G));
}

TEST(InSpan, ImageOfCoefficients) {
  std::mt19937 gen(4);
  std::normal_distribution<double> nd;
  for (int s = 0; s < 20; ++s) {
    const MatrixXd G = random_rank(10, 5, 1 + s % 5, static_cast<unsigned>(s));
    VectorXd x(5);
    for (auto& v : x) v = nd(gen);
    EXPECT_TRUE(in_span(G * x, G));
  }
}

TEST(RightInverse, Examples) {
  EXPECT_LT((right_inverse(MatrixXd::Identity(3, 3)) - MatrixXd::Identity(3, 3)).norm(), 1e-14);
  MatrixXd a(1, 2);
  a << 2, 0;
  EXPECT_LT((right_inverse(a) - Eigen::Vector2d(0.5, 0)).norm(), 1e-14);
  a << 1, 1;
  EXPECT_LT((right_inverse(a) - Eigen::Vector2d(0.5, 0.5)).norm(), 1e-14);
  EXPECT_THROW(right_inverse(MatrixXd::Zero(2, 3)), Error);
}

TEST(Lstsq, MatchesNormalEquations) {
  const MatrixXd M = random_rank(9, 4, 4, 8);
  const MatrixXd rhs = random_rank(9, 2, 2, 9);
  const MatrixXd X = lstsq(M, rhs);
  const MatrixXd ref = (M.transpose() * M).ldlt().solve(M.transpose() * rhs);
  EXPECT_LT((X - ref).norm(), 1e-10);
}

TEST(Eigenvalues, Examples) {
  const auto d = eigenvalues(Eigen::Vector3d(1, 2, 3).asDiagonal().toDenseMatrix());
  std::vector<double> re{d(0).real(), d(1).real(), d(2).real()};
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], 1, 1e-12);
  EXPECT_NEAR(re[2], 3, 1e-12);

  MatrixXd R(2, 2);
  R << 0, -1, 1, 0;
  const auto r = eigenvalues(R);
  EXPECT_NEAR(std::abs(r(0).imag()), 1.0, 1e-12);
  EXPECT_NEAR(r(0).real(), 0.0, 1e-12);
  EXPECT_NEAR(r(0).imag() + r(1).imag(), 0.0, 1e-12);

  MatrixXd N(2, 2);
  N << 0, 1, 0, 0;
  const auto z = eigenvalues(N);
  EXPECT_LT(z.norm(), 1e-12);
}

TEST(Stability, SchurExamples) {
  EXPECT_EQ(is_schur_stable(MatrixXd::Constant(1, 1, 0.5)), Stability::Stable);
  EXPECT_EQ(is_schur_stable(MatrixXd::Constant(1, 1, 2.0)), Stability::Unstable);
  EXPECT_EQ(is_schur_stable(MatrixXd(0, 0)), Stability::Stable);
  EXPECT_EQ(is_schur_stable(MatrixXd::Constant(1, 1, 1.0)), Stability::Boundary);
  EXPECT_EQ(is_hurwitz_stable(MatrixXd::Constant(1, 1, -1.0)), Stability::Stable);
  EXPECT_EQ(is_hurwitz_stable(MatrixXd::Zero(1, 1)), Stability::Boundary);
}

TEST(Stability, SimilarityInvariant) {
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> ud(-1, 1);
  for (int s = 0; s < 40; ++s) {
    const int n = 1 + s % 5;
    MatrixXd M(n, n), T(n, n);
    for (auto& v : M.reshaped()) v = ud(gen);
    M *= (s % 2 == 0 ? 0.5 : 1.8) / std::max(1e-3, eigenvalues(M).cwiseAbs().maxCoeff());
    for (auto& v : T.reshaped()) v = ud(gen);
    T += 2.0 * MatrixXd::Identity(n, n);
    const Eigen::JacobiSVD<MatrixXd> svd(T);
    if (svd.singularValues()(0) / svd.singularValues()(n - 1) > 1e3) continue;
    EXPECT_EQ(is_schur_stable(M), is_schur_stable(MatrixXd(T * M * T.inverse())));
  }
}

TEST(Tolerances, Validation) {
  ToleranceConfig t;
  EXPECT_NO_THROW(t.validate());
  t.rank_rtol = 0;
  EXPECT_THROW(t.validate(), Error);
  t.rank_rtol = 2;
  EXPECT_THROW(t.validate(), Error);
}

TEST(Vstack, ToleratesEmptyBlocks) {
  const MatrixXd S = vstack<double>({MatrixXd(0, 2), MatrixXd::Ones(1, 2), MatrixXd::Zero(2, 2)}, 2);
  EXPECT_EQ(S.rows(), 3);
  EXPECT_EQ(S(0, 1), 1.0);
}

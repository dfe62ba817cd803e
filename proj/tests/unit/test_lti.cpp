#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"

using namespace datainf;
using namespace datainf::testing;

namespace {

/// Finite generalized eigenvalues of the Rosenbrock pencil [[zI - A, -B], [C, D]].
Eigen::VectorXcd transmission_zeros(const DiscreteStateSpace& s) {
  const Eigen::Index n = s.n(), m = s.m();
  MatrixXd M(n + m, n + m), E = MatrixXd::Zero(n + m, n + m);
  M << s.A, s.B, s.C, s.D;
  E.topLeftCorner(n, n).setIdentity();
  Eigen::GeneralizedEigenSolver<MatrixXd> ges(M, E);
  std::vector<std::complex<double>> z;
  for (Eigen::Index i = 0; i < n + m; ++i) {
    if (std::abs(ges.betas()(i)) > 1e-9) z.push_back(ges.alphas()(i) / ges.betas()(i));
  }
  return Eigen::Map<Eigen::VectorXcd>(z.data(), static_cast<Eigen::Index>(z.size()));
}

/// ZOH by the matrix exponential and composite Simpson quadrature of e^{As} B.
std::pair<MatrixXd, MatrixXd> zoh_reference(const MatrixXd& A, const MatrixXd& B, double h) {
  const int N = 400;
  MatrixXd acc = MatrixXd::Zero(B.rows(), B.cols());
  for (int k = 0; k <= N; ++k) {
    const double w = (k == 0 || k == N) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * MatrixXd((A * (h * k / N)).exp()) * B;
  }
  return {(A * h).exp(), acc * (h / N / 3.0)};
}

Eigen::VectorXcd spectrum(const MatrixXd& M) { return M.size() ? eigenvalues(M) : Eigen::VectorXcd(0); }

}  // namespace

TEST(Simulate, Examples) {
  const auto d = unit_delay();
  MatrixXd u(3, 1);
  u << 1, 0, 0;
  EXPECT_EQ(simulate<double>(d, VectorXd::Zero(1), u).y, MatrixXd(Eigen::Vector3d(0, 1, 0)));
  u << 1, 2, 3;
  EXPECT_EQ(simulate<double>(d, VectorXd::Zero(1), u).y, MatrixXd(Eigen::Vector3d(0, 1, 2)));
  EXPECT_TRUE(simulate<double>(zd_siso(0.5), VectorXd::Zero(2), MatrixXd::Zero(5, 1)).y.isZero());
}

TEST(Simulate, Linearity) {
  RandomSystemSpec spec;
  spec.n = 4;
  spec.m = 2;
  spec.p = 2;
  const auto sys = random_system(spec, 12);
  std::srand(3);
  const VectorXd x0 = VectorXd::Random(4);
  const MatrixXd u1 = MatrixXd::Random(20, 2), u2 = MatrixXd::Random(20, 2);
  const MatrixXd lhs = simulate<double>(sys, x0, MatrixXd(u1 + u2)).y;
  const MatrixXd rhs = simulate<double>(sys, x0, u1).y + simulate<double>(sys, VectorXd::Zero(4), u2).y;
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ImpulseResponse, Examples) {
  const auto h = impulse_response(unit_delay(), 3);
  EXPECT_EQ(h[0](0, 0), 0);
  EXPECT_EQ(h[1](0, 0), 1);
  EXPECT_EQ(h[2](0, 0), 0);

  MatrixXd A(2, 2), B(2, 1), C(1, 2);
  A << 0, 1, 0, 0;
  B << 0, 1;
  C << 1, 0;
  const auto g = impulse_response(DiscreteStateSpace{A, B, C, MatrixXd::Zero(1, 1)}, 4);
  EXPECT_EQ(g[0](0, 0), 0);
  EXPECT_EQ(g[1](0, 0), 0);
  EXPECT_EQ(g[2](0, 0), 1);
  EXPECT_EQ(g[3](0, 0), 0);

  const DiscreteStateSpace zeroB{A, MatrixXd::Zero(2, 1), C, MatrixXd::Zero(1, 1)};
  for (const auto& H : impulse_response(zeroB, 5)) EXPECT_TRUE(H.isZero());
}

TEST(ImpulseResponse, MatchesMarkovProducts) {
  RandomSystemSpec spec;
  spec.n = 5;
  spec.m = 2;
  spec.p = 3;
  const auto sys = random_system(spec, 4);
  const auto h = impulse_response(sys, 9);
  for (int k = 0; k < 9; ++k) EXPECT_LT((h[static_cast<std::size_t>(k)] - markov(sys, k)).norm(), 1e-12);
}

TEST(Lag, Examples) {
  const DiscreteStateSpace stat{MatrixXd(0, 0), MatrixXd(0, 1), MatrixXd(1, 0), MatrixXd::Ones(1, 1)};
  EXPECT_EQ(lag(stat), 0);
  EXPECT_EQ(lag(unit_delay()), 1);
  EXPECT_EQ(lag(example_ba(0.7)), 2);
}

TEST(Lag, InvariantUnderSimilarity) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    RandomSystemSpec spec;
    spec.n = 1 + static_cast<int>(s % 5);
    spec.p = 1 + static_cast<int>(s % 2);
    const auto sys = random_system(spec, s);
    std::srand(static_cast<unsigned>(s));
    const MatrixXd T = MatrixXd::Random(spec.n, spec.n) + 3 * MatrixXd::Identity(spec.n, spec.n);
    const DiscreteStateSpace t{T * sys.A * T.inverse(), T * sys.B, sys.C * T.inverse(), sys.D};
    EXPECT_EQ(lag(sys), lag(t));
  }
}

TEST(RelativeDegree, Examples) {
  const DiscreteStateSpace feed{MatrixXd::Zero(1, 1), MatrixXd::Ones(1, 1), MatrixXd::Ones(1, 1),
                                MatrixXd::Constant(1, 1, 5)};
  EXPECT_EQ(oracle_relative_degree(feed), Degree::finite(0));
  EXPECT_EQ(oracle_relative_degree(unit_delay()), Degree::finite(1));
  MatrixXd A(2, 2), B(2, 1), C(1, 2);
  A << 0.5, 0, 0, 0.3;
  B << 1, 0;
  C << 0, 1;
  EXPECT_EQ(oracle_relative_degree(DiscreteStateSpace{A, B, C, MatrixXd::Zero(1, 1)}), Degree::infinity());
}

TEST(RelativeDegree, BoundedByLag) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    RandomSystemSpec spec;
    spec.n = 1 + static_cast<int>(s % 5);
    spec.r = std::vector<int>{static_cast<int>(s % static_cast<std::uint64_t>(spec.n + 1))};
    const auto sys = random_system(spec, s);
    const auto r = oracle_relative_degree(sys);
    EXPECT_TRUE(r.infinite || r.value <= lag(sys)) << "seed " << s;
  }
}

TEST(VectorRelativeDegree, Examples) {
  const auto vr = oracle_vector_relative_degree(example_ba(0.7));
  ASSERT_TRUE(vr.has_value());
  EXPECT_EQ(vr->r, (std::vector<int>{2, 1}));
  MatrixXd G(2, 2);
  G << 1, 0.7, 0, 1;
  EXPECT_LT((vr->G - G).norm(), 1e-12);

  MatrixXd B2(2, 1), C2(2, 2);
  B2 << 1, 0;
  C2 << 1, 0, 0, 1;
  const DiscreteStateSpace tall{MatrixXd::Identity(2, 2) * 0.5, B2, C2, MatrixXd::Zero(2, 1)};
  EXPECT_FALSE(oracle_vector_relative_degree(tall).has_value());

  const DiscreteStateSpace diag{MatrixXd::Identity(2, 2) * 0.5, MatrixXd::Identity(2, 2),
                                MatrixXd::Identity(2, 2), MatrixXd::Zero(2, 2)};
  const auto d = oracle_vector_relative_degree(diag);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->r, (std::vector<int>{1, 1}));
  EXPECT_LT((d->G - MatrixXd::Identity(2, 2)).norm(), 1e-14);
}

TEST(NormalForm, SisoZeroPoleMatchesRosenbrockPencil) {
  MatrixXd alpha(1, 2);
  alpha << 0.2, 0.3;
  const auto sys = build_from_bif<double>({1}, MatrixXd::Constant(1, 1, 0.5), MatrixXd::Ones(1, 1), alpha,
                                          MatrixXd::Ones(1, 1));
  EXPECT_EQ(sys.n(), 2);
  const auto z = transmission_zeros(sys);
  ASSERT_EQ(z.size(), 1);
  EXPECT_NEAR(z(0).real(), 0.5, 1e-10);
  const auto bif = byrnes_isidori(sys);
  EXPECT_TRUE(same_spectrum(spectrum(bif.Q), z, 1e-8));
  EXPECT_EQ(oracle_zero_dynamics_stable(sys), Stability::Stable);

  const auto unstable = build_from_bif<double>({1}, MatrixXd::Constant(1, 1, 2.0), MatrixXd::Ones(1, 1), alpha,
                                               MatrixXd::Ones(1, 1));
  EXPECT_EQ(oracle_zero_dynamics_stable(unstable), Stability::Unstable);
}

TEST(NormalForm, MimoShape) {
  MatrixXd alpha = MatrixXd::Zero(2, 4);
  alpha(0, 3) = 0.4;
  alpha(1, 0) = 0.1;
  const auto sys = build_from_bif<double>({2, 1}, MatrixXd::Constant(1, 1, 0.3), MatrixXd::Ones(1, 2), alpha,
                                          MatrixXd::Identity(2, 2));
  EXPECT_EQ(sys.n(), 4);
  const auto vr = oracle_vector_relative_degree(sys);
  ASSERT_TRUE(vr.has_value());
  EXPECT_EQ(vr->r, (std::vector<int>{2, 1}));
}

TEST(NormalForm, TrivialZeroDynamics) {
  const DiscreteStateSpace diag{MatrixXd::Identity(2, 2) * 0.5, MatrixXd::Identity(2, 2),
                                MatrixXd::Identity(2, 2), MatrixXd::Zero(2, 2)};
  EXPECT_EQ(byrnes_isidori(diag).Q.rows(), 0);
  EXPECT_EQ(oracle_zero_dynamics_stable(diag), Stability::Stable);
}

TEST(NormalForm, RoundTripAgainstPencil) {
  std::mt19937_64 gen(21);
  for (std::uint64_t s = 0; s < 60; ++s) {
    RandomSystemSpec spec;
    spec.m = spec.p = 1 + static_cast<int>(s % 2);
    spec.r = std::vector<int>(static_cast<std::size_t>(spec.p), 1 + static_cast<int>(s % 2));
    const int rs = spec.p * (*spec.r)[0];
    spec.n = rs + static_cast<int>(s % 3);
    spec.zd = (s % 4 < 2 || spec.n == rs) ? ZdRequirement::Stable : ZdRequirement::Unstable;
    const auto sys = random_system(spec, gen());
    const auto vr = oracle_vector_relative_degree(sys);
    ASSERT_TRUE(vr.has_value());
    EXPECT_EQ(vr->r, *spec.r);
    const auto bif = byrnes_isidori(sys);
    EXPECT_TRUE(same_spectrum(spectrum(bif.Q), transmission_zeros(sys), 1e-6)) << "seed " << s;
    const auto zd = zero_dynamics(sys);
    EXPECT_TRUE(same_spectrum(spectrum(zd.Q), spectrum(bif.Q), 1e-8));
    EXPECT_EQ(oracle_zero_dynamics_stable(sys),
              spec.zd == ZdRequirement::Stable ? Stability::Stable : Stability::Unstable);
  }
}

TEST(NormalForm, ZeroOutputTrajectories) {
  const auto sys = zd_siso(0.5);
  const auto zd = zero_dynamics(sys);
  ASSERT_EQ(zd.Q.rows(), 1);
  // x = N eta, u = K eta keeps the output at zero and eta evolves with Q.
  double eta = 1.0;
  VectorXd x = zd.N * eta;
  for (int t = 0; t < 6; ++t) {
    EXPECT_NEAR((sys.C * x)(0), 0.0, 1e-12);
    const double u = (zd.K * eta)(0, 0);
    x = sys.A * x + sys.B * u;
    eta = zd.Q(0, 0) * eta;
    EXPECT_LT((x - zd.N * eta).norm(), 1e-12);
  }
}

TEST(ContinuousZeroDynamics, MarginalPoleIsBoundary) {
  MatrixXd A(2, 2), B(2, 1), C(1, 2);
  A << -1, 0.3, 1, 0;
  B << 1, 0;
  C << 1, 0;
  EXPECT_EQ(oracle_ct_zero_dynamics(ContinuousStateSpace{A, B, C, MatrixXd::Zero(1, 1)}), Stability::Boundary);
}

TEST(Zoh, Examples) {
  const ContinuousStateSpace integ{MatrixXd::Zero(2, 2), MatrixXd::Ones(2, 1), MatrixXd::Ones(1, 2),
                                   MatrixXd::Constant(1, 1, 3)};
  const auto d = zoh_discretize(integ, 0.25);
  EXPECT_LT((d.A - MatrixXd::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LT((d.B - 0.25 * integ.B).norm(), 1e-15);
  EXPECT_EQ(impulse_response(d, 1)[0], integ.D);

  const double h = 0.3;
  MatrixXd R(2, 2);
  R << 0, -1, 1, 0;
  const auto r = zoh_discretize(ContinuousStateSpace{R, MatrixXd::Ones(2, 1), MatrixXd::Ones(1, 2),
                                                     MatrixXd::Zero(1, 1)},
                                h);
  MatrixXd rot(2, 2);
  rot << std::cos(h), -std::sin(h), std::sin(h), std::cos(h);
  EXPECT_LT((r.A - rot).norm(), 1e-14);
}

TEST(Zoh, AliasedRepresentationsAgree) {
  const double h = 0.5, w = 1 + 2 * std::numbers::pi / h;
  MatrixXd A1(2, 2), A2(2, 2), B1(2, 1);
  A1 << 0, -1, 1, 0;
  A2 << 0, -w, w, 0;
  B1 << 0.3, 1;
  const auto d1 = zoh_discretize(ContinuousStateSpace{A1, B1, MatrixXd::Ones(1, 2), MatrixXd::Zero(1, 1)}, h);
  const auto d2 = zoh_discretize(ContinuousStateSpace{A2, MatrixXd(w * B1), MatrixXd::Ones(1, 2),
                                                      MatrixXd::Zero(1, 1)},
                                 h);
  EXPECT_LT((d1.A - d2.A).norm(), 1e-10);
  EXPECT_LT((d1.B - d2.B).norm(), 1e-10);
}

TEST(Zoh, MatchesQuadratureAndSpectralMap) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const int n = 1 + static_cast<int>(s % 6);
    const auto ct = random_ct_system(n, 1 + static_cast<int>(s % 2), 1, {0.7}, s);
    const auto d = zoh_discretize(ct, 0.7);
    const auto [Ad, Bd] = zoh_reference(ct.A, ct.B, 0.7);
    EXPECT_LT((d.A - Ad).norm(), 1e-10);
    EXPECT_LT((d.B - Bd).norm(), 1e-8);
    const Eigen::VectorXcd mapped = (spectrum(ct.A) * 0.7).array().exp().matrix();
    EXPECT_TRUE(same_spectrum(spectrum(d.A), mapped, 1e-8));
  }
}

TEST(RandomSystem, Contracts) {
  RandomSystemSpec spec;
  spec.n = 2;
  spec.r = std::vector<int>{1};
  const auto a = random_system(spec, 7);
  EXPECT_EQ(oracle_relative_degree(a), Degree::finite(1));

  RandomSystemSpec plain;
  plain.n = 3;
  const auto b = random_system(plain, 1);
  EXPECT_TRUE(is_minimal(b));
  const auto c = random_system(plain, 1);
  EXPECT_EQ(b.A, c.A);
  EXPECT_EQ(b.B, c.B);
  EXPECT_EQ(b.C, c.C);

  RandomSystemSpec bad;
  bad.n = 1;
  bad.r = std::vector<int>{1};
  bad.zd = ZdRequirement::Unstable;
  EXPECT_THROW(random_system(bad, 3), Error);
}

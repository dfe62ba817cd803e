#include "datainf/ct.hpp"

#include <numbers>
#include <random>

#include "helpers.hpp"

using namespace datainf;
using namespace datainf::testing;

namespace {

using cd = std::complex<double>;

const std::array<double, 3> kRates{1.0, 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt3};

Eigen::VectorXcd exp_spectrum(const Eigen::VectorXcd& lam, double h) {
  Eigen::VectorXcd out(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) out(i) = std::exp(lam(i) * h);
  return out;
}

/// Markov parameters of the ZOH discretization at a rate not used for reconstruction.
bool same_io(const ContinuousStateSpace& a, const ContinuousStateSpace& b, double h, int N, double rtol) {
  const auto da = zoh_discretize(a, h), db = zoh_discretize(b, h);
  for (int k = 0; k < N; ++k) {
    const MatrixXd ha = markov(da, k), hb = markov(db, k);
    if ((ha - hb).norm() > rtol * std::max(1.0, ha.norm())) return false;
  }
  return true;
}

DataSetD ct_data(const ContinuousStateSpace& ct, double h, int n, std::uint64_t seed, int& l) {
  const auto d = zoh_discretize(ct, h);
  l = lag(d);
  auto ds = pe_data(d, l + 3 * n + 1, seed, 20);
  ds.sampling_time = h;
  return ds;
}

}  // namespace

TEST(PairEigenvalues, RealPair) {
  Eigen::VectorXcd lam(2);
  lam << -1.0, -2.0;
  const auto r = pair_eigenvalues(exp_spectrum(lam, kRates[0]), exp_spectrum(lam, kRates[1]),
                                  exp_spectrum(lam, kRates[2]), kRates[0], kRates[1], kRates[2]);
  EXPECT_TRUE(same_spectrum(r.lambdas, lam, 1e-9));
}

TEST(PairEigenvalues, ResolvesAliasedPair) {
  const double w = 1.0 + 2 * std::numbers::pi / kRates[0];
  Eigen::VectorXcd lam(2);
  lam << cd(-0.5, w), cd(-0.5, -w);
  const auto E1 = exp_spectrum(lam, kRates[0]);
  Eigen::VectorXcd principal(2);
  principal << cd(-0.5, 1.0), cd(-0.5, -1.0);
  EXPECT_TRUE(same_spectrum(E1, exp_spectrum(principal, kRates[0]), 1e-12));
  const auto r = pair_eigenvalues(E1, exp_spectrum(lam, kRates[1]), exp_spectrum(lam, kRates[2]), kRates[0],
                                  kRates[1], kRates[2]);
  EXPECT_TRUE(same_spectrum(r.lambdas, lam, 1e-9));
}

TEST(PairEigenvalues, RandomSpectraAndConjugateClosure) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> re(-2.0, 0.5), im(0.1, 20.0);
  for (int c = 0; c < 40; ++c) {
    const int pairs = 1 + c % 3, reals = c % 2;
    Eigen::VectorXcd lam(2 * pairs + reals);
    for (int k = 0; k < pairs; ++k) {
      const cd z(re(gen), im(gen));
      lam(2 * k) = z;
      lam(2 * k + 1) = std::conj(z);
    }
    if (reals) lam(2 * pairs) = re(gen);
    // Shuffle the later spectra so that pairing cannot rely on order.
    Eigen::VectorXcd E2 = exp_spectrum(lam, kRates[1]).reverse(), E3 = exp_spectrum(lam, kRates[2]);
    std::rotate(E3.begin(), E3.begin() + 1, E3.end());
    const auto r = pair_eigenvalues(exp_spectrum(lam, kRates[0]), E2, E3, kRates[0], kRates[1], kRates[2]);
    EXPECT_TRUE(same_spectrum(r.lambdas, lam, 1e-7)) << "case " << c;
    EXPECT_TRUE(same_spectrum(r.lambdas, r.lambdas.conjugate(), 1e-7)) << "case " << c;
  }
}

TEST(PairEigenvalues, InconsistentSpectraRejected) {
  Eigen::VectorXcd a(1), b(1);
  a << -1.0;
  b << -3.0;
  EXPECT_THROW(pair_eigenvalues(exp_spectrum(a, 1.0), exp_spectrum(b, 0.5), exp_spectrum(a, 0.3), 1.0, 0.5, 0.3),
               Error);
}

TEST(ReconstructCt, DiagonalSystem) {
  const ContinuousStateSpace ct{Eigen::Vector2d(-1, -2).asDiagonal().toDenseMatrix(), MatrixXd::Ones(2, 1),
                                MatrixXd::Ones(1, 2), MatrixXd::Zero(1, 1)};
  DiscretizationTriple tri;
  tri.sampling_times = kRates;
  for (int i = 0; i < 3; ++i) tri.systems[static_cast<std::size_t>(i)] = zoh_discretize(ct, kRates[static_cast<std::size_t>(i)]);
  const auto rec = reconstruct_ct(tri);
  EXPECT_LT((rec.A - ct.A).norm(), 1e-8);
  EXPECT_LT((rec.B - ct.B).norm(), 1e-8);
}

TEST(ReconstructCt, AliasedExample) {
  const double h = 0.1, w = 2 * std::numbers::pi / h;
  MatrixXd A1(2, 2), A2(2, 2), B1(2, 1), C(1, 2);
  A1 << -1, -3, 3, -1;
  A2 << -1, -3 - w, 3 + w, -1;
  B1 << 0, 1;
  C << -2, 0.25;
  const ContinuousStateSpace s1{A1, B1, C, MatrixXd::Zero(1, 1)};
  const ContinuousStateSpace s2{A2, MatrixXd(A2 * A1.inverse() * B1), C, MatrixXd::Zero(1, 1)};
  const auto d1 = zoh_discretize(s1, h), d2 = zoh_discretize(s2, h);
  EXPECT_LT((d1.A - d2.A).norm(), 1e-10);
  EXPECT_LT((d1.B - d2.B).norm(), 1e-10);

  for (const auto* s : {&s1, &s2}) {
    DiscretizationTriple tri;
    tri.sampling_times = {h, h / std::numbers::sqrt2, h / std::numbers::sqrt3};
    for (std::size_t i = 0; i < 3; ++i) tri.systems[i] = zoh_discretize(*s, tri.sampling_times[i]);
    const auto rec = reconstruct_ct(tri);
    EXPECT_LT((rec.A - s->A).norm(), 1e-6 * s->A.norm());
    EXPECT_LT((rec.B - s->B).norm(), 1e-6 * s->B.norm());
    EXPECT_EQ(oracle_ct_zero_dynamics(ContinuousStateSpace{rec.A, rec.B, C, MatrixXd::Zero(1, 1)}),
              s == &s1 ? Stability::Stable : Stability::Unstable);
  }
}

TEST(RealizeFromData, UnitDelay) {
  const auto rec = realize_from_data(pe_data(unit_delay(), 6, 1), 1, 1);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(markov(rec, k)(0, 0), markov(unit_delay(), k)(0, 0), 1e-9);
}

TEST(RealizeFromData, ImpulseResponseMatches) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    RandomSystemSpec spec;
    spec.n = 1 + static_cast<int>(s % 5);
    spec.m = 1 + static_cast<int>(s % 2);
    spec.p = 1 + static_cast<int>((s / 2) % 2);
    const auto sys = random_system(spec, s + 60);
    const int l = lag(sys);
    const auto rec = realize_from_data(pe_data(sys, l + 3 * spec.n + 1, s, 20), l, spec.n);
    EXPECT_EQ(rec.n(), spec.n);
    for (int k = 0; k < 3 * spec.n; ++k) {
      EXPECT_LT((markov(rec, k) - markov(sys, k)).norm(), 1e-7 * std::max(1.0, markov(sys, k).norm()))
          << "seed " << s << " k " << k;
    }
  }
}

TEST(RealizeFromData, OrderTooLarge) {
  try {
    realize_from_data(pe_data(unit_delay(), 10, 2), 1, 3);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RankDeficientHankel);
  }
}

TEST(ReconstructFromData, RoundTrip) {
  const std::vector<double> rates(kRates.begin(), kRates.end());
  for (std::uint64_t s = 0; s < 8; ++s) {
    const int n = 1 + static_cast<int>(s % 4), m = 1 + static_cast<int>(s % 2);
    const auto ct = random_ct_system(n, m, 1, rates, s + 5);
    std::array<DataSetD, 3> ds;
    std::array<int, 3> lags{};
    for (std::size_t i = 0; i < 3; ++i) ds[i] = ct_data(ct, kRates[i], n, s * 3 + i, lags[i]);
    const auto rec = reconstruct_from_data({&ds[0], &ds[1], &ds[2]}, lags, {n, n, n});
    EXPECT_TRUE(same_spectrum(eigenvalues(rec.A), eigenvalues(ct.A), 1e-6 * std::max(1.0, ct.A.norm())))
        << "seed " << s;
    EXPECT_TRUE(same_io(rec, ct, 0.37, 3 * n, 1e-6)) << "seed " << s;
  }
}

TEST(ReconstructFromData, MixedSystemsRejected) {
  const std::vector<double> rates(kRates.begin(), kRates.end());
  const auto ct = random_ct_system(2, 1, 1, rates, 3);
  auto other = ct;
  other.C = 2.0 * ct.C + MatrixXd::Ones(1, 2);
  std::array<DataSetD, 3> ds;
  std::array<int, 3> lags{};
  for (std::size_t i = 0; i < 3; ++i) ds[i] = ct_data(i == 2 ? other : ct, kRates[i], 2, i + 1, lags[i]);
  try {
    reconstruct_from_data({&ds[0], &ds[1], &ds[2]}, lags, {2, 2, 2});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MarkovMismatch);
  }
}

TEST(ReconstructFromData, StaticSystem) {
  const DiscreteStateSpace gain{MatrixXd(0, 0), MatrixXd(0, 1), MatrixXd(1, 0), MatrixXd::Constant(1, 1, 2.5)};
  std::array<DataSetD, 3> ds;
  for (std::size_t i = 0; i < 3; ++i) {
    ds[i] = pe_data(gain, 2, i + 1);
    ds[i].sampling_time = kRates[i];
  }
  const auto rec = reconstruct_from_data({&ds[0], &ds[1], &ds[2]}, {0, 0, 0}, {0, 0, 0});
  EXPECT_EQ(rec.n(), 0);
  EXPECT_NEAR(rec.D(0, 0), 2.5, 1e-9);
}

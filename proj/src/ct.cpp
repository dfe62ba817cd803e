#include "datainf/ct.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/SVD>

namespace datainf {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double shell_gap(double rho) { return 1e-6 * std::max(1.0, std::abs(rho)); }

struct Shell {
  double rho;
  std::vector<int> members;
};

/// Groups eigenvalues by rho = ln|mu| / h (single linkage on the sorted values).
std::vector<Shell> shells_of(const Eigen::VectorXcd& E, double h) {
  std::vector<std::pair<double, int>> rho;
  for (Eigen::Index i = 0; i < E.size(); ++i) {
    if (!(std::abs(E(i)) > 0.0)) fail(Errc::ShellMismatch, "discrete eigenvalue with zero modulus");
    rho.emplace_back(std::log(std::abs(E(i))) / h, static_cast<int>(i));
  }
  std::sort(rho.begin(), rho.end());
  std::vector<Shell> out;
  for (const auto& [r, idx] : rho) {
    if (out.empty() || r - out.back().rho > shell_gap(r)) {
      out.push_back({r, {idx}});
    } else {
      out.back().members.push_back(idx);
    }
  }
  for (auto& s : out) {
    double sum = 0.0;
    for (int idx : s.members) sum += std::log(std::abs(E(idx))) / h;
    s.rho = sum / static_cast<double>(s.members.size());
  }
  return out;
}

bool close(cd a, cd b, double atol) { return std::abs(a - b) <= atol * std::max(1.0, std::abs(b)); }

/// Index of the nearest unused member within tolerance, or -1.
int match_in(const Eigen::VectorXcd& E, const std::vector<int>& members, const std::vector<bool>& used,
             cd target, double atol) {
  int best = -1;
  double best_d = 0.0;
  for (int idx : members) {
    if (used[static_cast<std::size_t>(idx)]) continue;
    const double dist = std::abs(target - E(idx));
    if (close(target, E(idx), atol) && (best < 0 || dist < best_d)) {
      best = idx;
      best_d = dist;
    }
  }
  return best;
}

int branch_index(double omega, double h, cd mu) {
  return static_cast<int>(std::lround((omega * h - std::arg(mu)) / kTwoPi));
}

cd phi1(cd z) {
  if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0;
  return (std::exp(z) - 1.0) / z;
}

double rel_err(const MatrixXd& a, const MatrixXd& b) {
  const double nb = b.norm();
  return nb > 0.0 ? (a - b).norm() / nb : (a - b).norm();
}

/// A and B from the first discretization given the spectra of the other two.
ContinuousStateSpace reconstruct_core(const DiscreteStateSpace& s1, double h1,
                                      const Eigen::VectorXcd& E2, double h2,
                                      const Eigen::VectorXcd& E3, double h3, int k_max,
                                      const ToleranceConfig& tol) {
  s1.validate();
  const auto n = s1.n();
  if (n == 0) return {MatrixXd(0, 0), MatrixXd(0, s1.m()), s1.C, s1.D};
  Eigen::EigenSolver<MatrixXd> es(s1.A);
  if (es.info() != Eigen::Success) fail(Errc::Defective, "eigendecomposition of A1 failed");
  const Eigen::MatrixXcd V = es.eigenvectors();
  const auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(V).singularValues();
  if (!(sv(n - 1) > 1e-8 * sv(0))) fail(Errc::Defective, "A1 is not diagonalizable");

  const auto pairing = pair_eigenvalues(es.eigenvalues(), E2, E3, h1, h2, h3, k_max, tol);
  const Eigen::MatrixXcd Vinv = V.inverse();
  const Eigen::MatrixXcd Ac = V * pairing.lambdas.asDiagonal() * Vinv;

  Eigen::VectorXcd inv_int(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cd f = phi1(pairing.lambdas(i) * h1);
    if (std::abs(f) < 1e-6) fail(Errc::NearSingularIntegral, "ZOH integral is nearly singular");
    inv_int(i) = 1.0 / (h1 * f);
  }
  const Eigen::MatrixXcd Bc = V * inv_int.asDiagonal() * (Vinv * s1.B.cast<cd>());

  const double imag_tol = 10.0 * tol.match_atol;
  if (Ac.imag().norm() > imag_tol * std::max(1.0, Ac.real().norm()) ||
      Bc.imag().norm() > imag_tol * std::max(1.0, Bc.real().norm())) {
    fail(Errc::ValidationFailed, "reconstructed matrices are not real");
  }
  return {Ac.real(), Bc.real(), s1.C, s1.D};
}

}  // namespace

EigenPairing pair_eigenvalues(const Eigen::VectorXcd& E1, const Eigen::VectorXcd& E2,
                              const Eigen::VectorXcd& E3, double h1, double h2, double h3,
                              int k_max, const ToleranceConfig& tol) {
  const auto n = E1.size();
  if (E2.size() != n || E3.size() != n) fail(Errc::ShellMismatch, "spectra have different sizes");
  if (!(h1 > 0 && h2 > 0 && h3 > 0)) fail(Errc::InvalidArgument, "sampling times must be positive");
  const auto S1 = shells_of(E1, h1), S2 = shells_of(E2, h2), S3 = shells_of(E3, h3);
  if (S1.size() != S2.size() || S1.size() != S3.size()) {
    fail(Errc::ShellMismatch, "numbers of magnitude shells differ");
  }
  for (std::size_t s = 0; s < S1.size(); ++s) {
    const double g = 10.0 * shell_gap(S1[s].rho);
    if (S1[s].members.size() != S2[s].members.size() ||
        S1[s].members.size() != S3[s].members.size() || std::abs(S1[s].rho - S2[s].rho) > g ||
        std::abs(S1[s].rho - S3[s].rho) > g) {
      fail(Errc::ShellMismatch, "magnitude shells are inconsistent across sampling times");
    }
  }

  EigenPairing out;
  out.lambdas.resize(n);
  out.k_indices.resize(n, 3);
  std::vector<bool> used2(static_cast<std::size_t>(n), false), used3(used2);
  for (std::size_t s = 0; s < S1.size(); ++s) {
    out.shells.push_back(S1[s].members);
    for (int a : S1[s].members) {
      const cd mu = E1(a);
      const double re = std::log(std::abs(mu)) / h1;
      struct Hit {
        int k, b, c;
      };
      std::vector<Hit> hits;
      for (int k = -k_max; k <= k_max; ++k) {
        const double om = (std::arg(mu) + kTwoPi * k) / h1;
        const cd lam(re, om);
        const int b = match_in(E2, S2[s].members, used2, std::exp(lam * h2), tol.match_atol);
        if (b < 0) continue;
        const int c = match_in(E3, S3[s].members, used3, std::exp(lam * h3), tol.match_atol);
        if (c < 0) continue;
        hits.push_back({k, b, c});
      }
      if (hits.empty()) {
        fail(Errc::NoBranchMatch, "no branch |k| <= " + std::to_string(k_max) + " matches all rates");
      }
      if (hits.size() > 1) {
        for (int a2 : S1[s].members) {
          if (a2 != a && close(E1(a2), mu, tol.match_atol)) {
            fail(Errc::DuplicateAlias, "repeated discrete eigenvalue resolves to distinct branches");
          }
        }
        fail(Errc::AmbiguousBranch, "several branches match within tolerance");
      }
      const auto& hit = hits.front();
      const double om = (std::arg(mu) + kTwoPi * hit.k) / h1;
      used2[static_cast<std::size_t>(hit.b)] = true;
      used3[static_cast<std::size_t>(hit.c)] = true;
      out.lambdas(a) = cd(re, om);
      out.k_indices(a, 0) = hit.k;
      out.k_indices(a, 1) = branch_index(om, h2, E2(hit.b));
      out.k_indices(a, 2) = branch_index(om, h3, E3(hit.c));
    }
  }
  return out;
}

ContinuousStateSpace reconstruct_ct(const DiscretizationTriple& triple, int k_max,
                                    const ToleranceConfig& tol) {
  const auto& sys = triple.systems;
  const auto& h = triple.sampling_times;
  for (const auto& s : sys) {
    s.validate();
    if (s.n() != sys[0].n() || s.m() != sys[0].m() || s.p() != sys[0].p()) {
      fail(Errc::DimensionMismatch, "discretizations have different dimensions");
    }
  }
  if (h[0] == h[1] || h[0] == h[2] || h[1] == h[2]) {
    fail(Errc::InvalidArgument, "sampling times must be pairwise distinct");
  }
  auto ct = reconstruct_core(sys[0], h[0], eigenvalues(sys[1].A), h[1], eigenvalues(sys[2].A), h[2],
                             k_max, tol);
  const double lim = 10.0 * tol.match_atol;
  for (int i = 1; i < 3; ++i) {
    const auto d = zoh_discretize(ct, h[i]);
    if (rel_err(d.A, sys[i].A) >= lim || rel_err(d.B, sys[i].B) >= lim) {
      fail(Errc::ValidationFailed,
           "rediscretization does not reproduce system " + std::to_string(i + 1));
    }
  }
  return ct;
}

std::vector<MatrixXd> markov_from_data(const DataSetD& ds, int lag, int N, const ToleranceConfig& tol) {
  ds.validate();
  if (lag < 0 || N < 1) fail(Errc::InvalidArgument, "markov_from_data needs lag >= 0 and N >= 1");
  if (ds.min_length() < lag + N) fail(Errc::DataTooShort, "data shorter than lag + N");
  const auto gen = window_generators(ds, lag + N, tol);
  const Eigen::Index m = ds.m, p = ds.p;
  std::vector<MatrixXd> H(static_cast<std::size_t>(N), MatrixXd(p, m));
  const VectorXd up = VectorXd::Zero(lag * m), yp = VectorXd::Zero(lag * p);
  for (Eigen::Index j = 0; j < m; ++j) {
    VectorXd uf = VectorXd::Zero(N * m);
    uf(j) = 1.0;
    VectorXd z;
    try {
      z = unique_continuation(gen, lag, N, up, yp, uf, tol);
    } catch (const Error& e) {
      if (e.code() == Errc::Infeasible || e.code() == Errc::NotUnique) {
        fail(Errc::NotPersistentlyExciting, std::string("impulse response not determined: ") + e.what());
      }
      throw;
    }
    for (int k = 0; k < N; ++k) H[static_cast<std::size_t>(k)].col(j) = z.segment(k * p, p);
  }
  return H;
}

DiscreteStateSpace ho_kalman(const std::vector<MatrixXd>& markov, int n, const ToleranceConfig& tol) {
  if (n < 0 || static_cast<int>(markov.size()) < 2 * n + 1) {
    fail(Errc::InvalidArgument, "ho_kalman needs 2n + 1 Markov parameters");
  }
  const Eigen::Index p = markov[0].rows(), m = markov[0].cols();
  if (n == 0) return {MatrixXd(0, 0), MatrixXd(0, m), MatrixXd(p, 0), markov[0]};
  MatrixXd H1(n * p, n * m), H2(n * p, n * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      H1.block(i * p, j * m, p, m) = markov[static_cast<std::size_t>(i + j + 1)];
      H2.block(i * p, j * m, p, m) = markov[static_cast<std::size_t>(i + j + 2)];
    }
  }
  Eigen::JacobiSVD<MatrixXd> svd(H1, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& s = svd.singularValues();
  if (s.size() < n || !(s(n - 1) > tol.membership_rtol * s(0))) {
    fail(Errc::RankDeficientHankel, "Markov Hankel matrix has rank below the declared order");
  }
  const MatrixXd U = svd.matrixU().leftCols(n), V = svd.matrixV().leftCols(n);
  const VectorXd sq = s.head(n).cwiseSqrt(), isq = sq.cwiseInverse();
  DiscreteStateSpace sys;
  sys.A = isq.asDiagonal() * U.transpose() * H2 * V * isq.asDiagonal();
  sys.B = (sq.asDiagonal() * V.transpose()).leftCols(m);
  sys.C = (U * sq.asDiagonal()).topRows(p);
  sys.D = markov[0];
  return sys;
}

namespace {

double markov_distance(const std::vector<MatrixXd>& a, const std::vector<MatrixXd>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += (a[k] - b[k]).squaredNorm();
    den += b[k].squaredNorm();
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

DiscreteStateSpace realize_checked(const std::vector<MatrixXd>& markov, int n,
                                   const ToleranceConfig& tol) {
  auto sys = ho_kalman(markov, n, tol);
  const auto h = impulse_response(sys, static_cast<int>(markov.size()));
  if (markov_distance(h, markov) > tol.match_atol) {
    fail(Errc::ValidationFailed, "realization does not reproduce the Markov parameters");
  }
  return sys;
}

}  // namespace

DiscreteStateSpace realize_from_data(const DataSetD& ds, int lag, int n, const ToleranceConfig& tol) {
  if (n < 0) fail(Errc::InvalidArgument, "order must be nonnegative");
  return realize_checked(markov_from_data(ds, lag, 2 * n + 1, tol), n, tol);
}

ContinuousStateSpace reconstruct_from_data(const std::array<const DataSetD*, 3>& ds,
                                           const std::array<int, 3>& lags,
                                           const std::array<int, 3>& ns, int k_max,
                                           const ToleranceConfig& tol) {
  std::array<double, 3> h{};
  std::array<std::vector<MatrixXd>, 3> markov;
  std::array<DiscreteStateSpace, 3> sys;
  for (int i = 0; i < 3; ++i) {
    if (ds[i] == nullptr || !ds[i]->sampling_time) {
      fail(Errc::InvalidArgument, "every dataset needs a sampling time");
    }
    if (ns[i] != ns[0]) fail(Errc::DimensionMismatch, "declared orders differ");
    h[i] = *ds[i]->sampling_time;
    markov[i] = markov_from_data(*ds[i], lags[i], 2 * ns[i] + 1, tol);
    sys[i] = realize_checked(markov[i], ns[i], tol);
  }
  if (h[0] == h[1] || h[0] == h[2] || h[1] == h[2]) {
    fail(Errc::InvalidArgument, "sampling times must be pairwise distinct");
  }
  auto ct = reconstruct_core(sys[0], h[0], eigenvalues(sys[1].A), h[1], eigenvalues(sys[2].A),
                             h[2], k_max, tol);
  for (int i = 1; i < 3; ++i) {
    const auto d = zoh_discretize(ct, h[i]);
    const auto hi = impulse_response(d, static_cast<int>(markov[i].size()));
    if (markov_distance(hi, markov[i]) > 10.0 * tol.match_atol) {
      fail(Errc::MarkovMismatch, "Markov parameters at rate " + std::to_string(i + 1) +
                                     " are not reproduced by the reconstruction");
    }
  }
  return ct;
}

}  // namespace datainf

#include "datainf/lti.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace datainf {

template <typename S>
SimResult<S> simulate(const StateSpace<S, DiscreteTime>& sys, const Vec<S>& x0, const Mat<S>& u) {
  sys.validate();
  if (x0.size() != sys.n() || u.cols() != sys.m()) {
    fail(Errc::DimensionMismatch, "simulate: x0 or u has the wrong dimension");
  }
  const Eigen::Index T = u.rows();
  SimResult<S> out{Mat<S>(T, sys.p()), Mat<S>(T + 1, sys.n())};
  Vec<S> x = x0;
  out.x.row(0) = x.transpose();
  for (Eigen::Index t = 0; t < T; ++t) {
    const Vec<S> ut = u.row(t).transpose();
    out.y.row(t) = (sys.C * x + sys.D * ut).transpose();
    x = sys.A * x + sys.B * ut;
    out.x.row(t + 1) = x.transpose();
  }
  return out;
}

template <typename S>
std::vector<Mat<S>> impulse_response(const StateSpace<S, DiscreteTime>& sys, int N) {
  sys.validate();
  if (N < 1) fail(Errc::InvalidArgument, "impulse_response: N must be >= 1");
  std::vector<Mat<S>> h;
  h.reserve(N);
  h.push_back(sys.D);
  Mat<S> AkB = sys.B;
  for (int k = 1; k < N; ++k) {
    h.push_back(sys.C * AkB);
    AkB = sys.A * AkB;
  }
  return h;
}

template <typename S>
Mat<S> observability_matrix(const Mat<S>& A, const Mat<S>& C, int L) {
  Mat<S> O(C.rows() * L, A.cols());
  Mat<S> CAk = C;
  for (int k = 0; k < L; ++k) {
    O.middleRows(k * C.rows(), C.rows()) = CAk;
    CAk = CAk * A;
  }
  return O;
}

template <typename S>
Mat<S> controllability_matrix(const Mat<S>& A, const Mat<S>& B, int L) {
  Mat<S> K(A.rows(), B.cols() * L);
  Mat<S> AkB = B;
  for (int k = 0; k < L; ++k) {
    K.middleCols(k * B.cols(), B.cols()) = AkB;
    AkB = A * AkB;
  }
  return K;
}

template <typename S, typename Domain>
bool is_minimal(const StateSpace<S, Domain>& sys, const ToleranceConfig& tol) {
  sys.validate();
  const auto n = sys.n();
  if (n == 0) return true;
  const int L = static_cast<int>(n);
  return numerical_rank(controllability_matrix<S>(sys.A, sys.B, L), tol) == n &&
         numerical_rank(observability_matrix<S>(sys.A, sys.C, L), tol) == n;
}

template <typename S>
int lag(const StateSpace<S, DiscreteTime>& sys, const ToleranceConfig& tol) {
  sys.validate();
  const auto n = sys.n();
  for (int L = 0; L <= n; ++L) {
    if (numerical_rank(observability_matrix<S>(sys.A, sys.C, L), tol) == n) return L;
  }
  fail(Errc::NotObservable, "lag: observability matrix never reaches rank n");
}

namespace {

/// Markov-type row C_i A^{k-1} B (k >= 1) or D_i (k = 0), with the zero-test scale.
template <typename S>
struct MarkovRows {
  const Mat<S>& A;
  const Mat<S>& B;
  const Mat<S>& C;
  const Mat<S>& D;
  const ToleranceConfig& tol;

  bool row_nonzero(const Mat<S>& row, S scale) const {
    return row.norm() > S(tol.membership_rtol) * std::max(S(1), scale);
  }

  /// Smallest k with a nonzero row i; -1 if none up to n.
  int first_nonzero(Eigen::Index i, Mat<S>& lead) const {
    if (row_nonzero(D.row(i), D.norm())) {
      lead = D.row(i);
      return 0;
    }
    const auto n = A.rows();
    const S nA = A.norm(), nB = B.norm(), nC = C.row(i).norm();
    Mat<S> CAk = C.row(i);
    S scale = nC * nB;
    for (int k = 1; k <= n; ++k) {
      const Mat<S> h = CAk * B;
      if (row_nonzero(h, scale)) {
        lead = h;
        return k;
      }
      CAk = CAk * A;
      scale *= nA;
    }
    return -1;
  }
};

}  // namespace

template <typename S, typename Domain>
Degree oracle_relative_degree(const StateSpace<S, Domain>& sys, const ToleranceConfig& tol) {
  sys.validate();
  if (sys.m() != 1 || sys.p() != 1) fail(Errc::NotSiso, "oracle_relative_degree needs m = p = 1");
  MarkovRows<S> mr{sys.A, sys.B, sys.C, sys.D, tol};
  Mat<S> lead;
  const int k = mr.first_nonzero(0, lead);
  return k < 0 ? Degree::infinity() : Degree::finite(k);
}

template <typename S, typename Domain>
std::optional<VectorRelativeDegree<S>> oracle_vector_relative_degree(
    const StateSpace<S, Domain>& sys, const ToleranceConfig& tol) {
  sys.validate();
  MarkovRows<S> mr{sys.A, sys.B, sys.C, sys.D, tol};
  VectorRelativeDegree<S> out{std::vector<int>(sys.p()), Mat<S>(sys.p(), sys.m())};
  for (Eigen::Index i = 0; i < sys.p(); ++i) {
    Mat<S> lead;
    const int k = mr.first_nonzero(i, lead);
    if (k < 0) return std::nullopt;
    out.r[i] = k;
    out.G.row(i) = lead;
  }
  if (numerical_rank(out.G, tol) != sys.p()) return std::nullopt;
  return out;
}

namespace {

template <typename S>
struct ChainRows {
  Mat<S> Phi;    // rows C_i A^k, k < r_i, grouped per output
  Mat<S> alpha;  // rows C_i A^{r_i}
  std::vector<Eigen::Index> offset;
  Eigen::Index sum_r = 0;
};

template <typename S>
ChainRows<S> chain_rows(const Mat<S>& A, const Mat<S>& C, const std::vector<int>& r) {
  ChainRows<S> out;
  for (int ri : r) {
    out.offset.push_back(out.sum_r);
    out.sum_r += ri;
  }
  out.Phi.resize(out.sum_r, A.cols());
  out.alpha.resize(static_cast<Eigen::Index>(r.size()), A.cols());
  for (std::size_t i = 0; i < r.size(); ++i) {
    Mat<S> CAk = C.row(static_cast<Eigen::Index>(i));
    for (int k = 0; k < r[i]; ++k) {
      out.Phi.row(out.offset[i] + k) = CAk;
      CAk = CAk * A;
    }
    out.alpha.row(static_cast<Eigen::Index>(i)) = CAk;
  }
  return out;
}

}  // namespace

template <typename S, typename Domain>
ZeroDynamics<S> zero_dynamics(const StateSpace<S, Domain>& sys, const ToleranceConfig& tol) {
  sys.validate();
  if (sys.m() != sys.p()) fail(Errc::NoVectorRelativeDegree, "zero dynamics need m = p");
  auto vrd = oracle_vector_relative_degree(sys, tol);
  if (!vrd) fail(Errc::NoVectorRelativeDegree, "decoupling matrix is not of full rank");
  const auto cr = chain_rows<S>(sys.A, sys.C, vrd->r);
  const Mat<S> N = kernel_basis(cr.Phi, tol);
  if (N.cols() != sys.n() - cr.sum_r) {
    fail(Errc::NoVectorRelativeDegree, "chain rows are linearly dependent");
  }
  const Mat<S> Ginv = vrd->G.inverse();
  const Mat<S> Acl = sys.A - sys.B * Ginv * cr.alpha;
  ZeroDynamics<S> zd;
  zd.r = vrd->r;
  zd.G = vrd->G;
  zd.N = N;
  zd.Q = N.transpose() * Acl * N;
  zd.K = -Ginv * cr.alpha * N;
  return zd;
}

template <typename S>
BifForm<S> byrnes_isidori(const StateSpace<S, DiscreteTime>& sys, const ToleranceConfig& tol) {
  sys.validate();
  if (!is_minimal(sys, tol)) fail(Errc::NotMinimal, "byrnes_isidori: system is not minimal");
  if (sys.m() != sys.p()) fail(Errc::NoVectorRelativeDegree, "byrnes_isidori needs m = p");
  auto vrd = oracle_vector_relative_degree(sys, tol);
  if (!vrd) fail(Errc::NoVectorRelativeDegree, "decoupling matrix is not of full rank");
  for (int ri : vrd->r) {
    if (ri < 1) fail(Errc::NoVectorRelativeDegree, "byrnes_isidori needs all r_i >= 1");
  }
  const auto n = sys.n();
  const auto cr = chain_rows<S>(sys.A, sys.C, vrd->r);
  const Eigen::Index sr = cr.sum_r;
  const Mat<S> N = kernel_basis(cr.Phi, tol);
  const Eigen::Index d = n - sr;
  if (N.cols() != d) fail(Errc::NoVectorRelativeDegree, "chain rows are linearly dependent");

  // W B = 0 and W N = I, so eta does not see u directly.
  const Mat<S> PhiB = cr.Phi * sys.B;
  const Mat<S> PhiB_pinv = lstsq(PhiB, Mat<S>::Identity(sr, sr), tol);
  const Mat<S> W = N.transpose() - N.transpose() * sys.B * PhiB_pinv * cr.Phi;

  Mat<S> T(n, n);
  T.topRows(sr) = cr.Phi;
  T.bottomRows(d) = W;
  const Mat<S> A0 = T * sys.A * T.inverse();
  const Mat<S> Q = A0.bottomRightCorner(d, d);

  // Remove the dependence of eta on xi_{i,j}, j >= 2.
  Mat<S> R = Mat<S>::Zero(d, sr);
  for (std::size_t i = 0; i < vrd->r.size(); ++i) {
    const Eigen::Index off = cr.offset[i];
    for (int j = vrd->r[i]; j >= 2; --j) {
      R.col(off + j - 2) = Q * R.col(off + j - 1) - A0.block(sr, off + j - 1, d, 1);
    }
  }
  T.bottomRows(d) = W + R * cr.Phi;

  const Mat<S> Tinv = T.inverse();
  const Mat<S> At = T * sys.A * Tinv;
  const Mat<S> Bt = T * sys.B;

  BifForm<S> bif;
  bif.r = vrd->r;
  bif.Q = At.bottomRightCorner(d, d);
  bif.P.resize(d, sys.p());
  bif.alpha.resize(sys.p(), n);
  bif.G.resize(sys.p(), sys.m());
  for (std::size_t i = 0; i < vrd->r.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const Eigen::Index end = cr.offset[i] + vrd->r[i] - 1;
    bif.P.col(ii) = At.block(sr, cr.offset[i], d, 1);
    bif.alpha.row(ii) = At.row(end);
    bif.G.row(ii) = Bt.row(end);
  }
  bif.T = T;
  return bif;
}

template <typename S>
StateSpace<S, DiscreteTime> build_from_bif(const std::vector<int>& r, const Mat<S>& Q,
                                           const Mat<S>& P, const Mat<S>& alpha, const Mat<S>& G,
                                           const ToleranceConfig& tol) {
  const auto p = static_cast<Eigen::Index>(r.size());
  const Eigen::Index m = G.cols();
  Eigen::Index sr = 0;
  for (int ri : r) {
    if (ri < 1) fail(Errc::InvalidArgument, "build_from_bif needs all r_i >= 1");
    sr += ri;
  }
  const Eigen::Index d = Q.rows();
  const Eigen::Index n = sr + d;
  if (Q.cols() != d || P.rows() != d || P.cols() != p || alpha.rows() != p || alpha.cols() != n ||
      G.rows() != p) {
    fail(Errc::DimensionMismatch, "build_from_bif: inconsistent block sizes");
  }
  if (numerical_rank(G, tol) != p) fail(Errc::SingularG, "build_from_bif: G lacks full row rank");

  StateSpace<S, DiscreteTime> sys{Mat<S>::Zero(n, n), Mat<S>::Zero(n, m), Mat<S>::Zero(p, n),
                                  Mat<S>::Zero(p, m)};
  Eigen::Index off = 0;
  for (Eigen::Index i = 0; i < p; ++i) {
    for (int j = 0; j + 1 < r[i]; ++j) sys.A(off + j, off + j + 1) = S(1);
    const Eigen::Index end = off + r[i] - 1;
    sys.A.row(end) = alpha.row(i);
    sys.B.row(end) = G.row(i);
    sys.C(i, off) = S(1);
    sys.A.block(sr, off, d, 1) = P.col(i);
    off += r[i];
  }
  sys.A.bottomRightCorner(d, d) = Q;
  return sys;
}

namespace {

template <typename S, typename Domain>
Stability static_zd(const StateSpace<S, Domain>& sys, const ToleranceConfig& tol) {
  return numerical_rank(sys.D, tol) == sys.m() ? Stability::Stable : Stability::Unstable;
}

}  // namespace

template <typename S>
Stability oracle_zero_dynamics_stable(const StateSpace<S, DiscreteTime>& sys,
                                      const ToleranceConfig& tol) {
  sys.validate();
  if (sys.n() == 0) return static_zd(sys, tol);
  if (!is_minimal(sys, tol)) fail(Errc::NotMinimal, "zero dynamics oracle needs a minimal system");
  return is_schur_stable(zero_dynamics(sys, tol).Q, tol);
}

template <typename S>
Stability oracle_ct_zero_dynamics(const StateSpace<S, ContinuousTime>& sys,
                                  const ToleranceConfig& tol) {
  sys.validate();
  if (sys.n() == 0) return static_zd(sys, tol);
  if (!is_minimal(sys, tol)) fail(Errc::NotMinimal, "zero dynamics oracle needs a minimal system");
  return is_hurwitz_stable(zero_dynamics(sys, tol).Q, tol);
}

template <typename S>
StateSpace<S, DiscreteTime> zoh_discretize(const StateSpace<S, ContinuousTime>& sys, S h) {
  sys.validate();
  if (!(h > S(0))) fail(Errc::InvalidArgument, "zoh_discretize: h must be positive");
  const auto n = sys.n(), m = sys.m();
  Mat<S> M = Mat<S>::Zero(n + m, n + m);
  M.topLeftCorner(n, n) = sys.A * h;
  M.topRightCorner(n, m) = sys.B * h;
  const Mat<S> E = M.exp();
  return {E.topLeftCorner(n, n), E.topRightCorner(n, m), sys.C, sys.D};
}

// ---------------------------------------------------------------------------
// random systems

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  bool coin() { return uniform(0.0, 1.0) < 0.5; }

  MatrixXd randn(Eigen::Index r, Eigen::Index c) {
    MatrixXd M(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) M(i, j) = normal();
    return M;
  }

  MatrixXd orthogonal(Eigen::Index n) {
    Eigen::HouseholderQR<MatrixXd> qr(randn(n, n));
    return qr.householderQ() * MatrixXd::Identity(n, n);
  }

  /// Condition number at most 4.
  MatrixXd well_conditioned(Eigen::Index n) {
    VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i) s(i) = std::exp(uniform(std::log(0.5), std::log(2.0)));
    return orthogonal(n) * s.asDiagonal() * orthogonal(n);
  }

 private:
  std::mt19937_64 gen_;
};


/// Eigenvalue list, conjugate-closed, with moduli drawn per call of pick(first).
template <typename Pick>
std::vector<std::complex<double>> random_spectrum(Eigen::Index d, Sampler& rng, Pick pick) {
  std::vector<std::complex<double>> ev;
  bool first = true;
  while (static_cast<Eigen::Index>(ev.size()) < d) {
    const double rho = pick(first);
    first = false;
    if (d - static_cast<Eigen::Index>(ev.size()) >= 2 && rng.coin()) {
      const double th = rng.uniform(0.2, std::numbers::pi - 0.2);
      ev.push_back(std::polar(rho, th));
      ev.push_back(std::polar(rho, -th));
    } else {
      ev.emplace_back(rng.coin() ? rho : -rho, 0.0);
    }
  }
  return ev;
}

/// Real block-diagonal matrix with the given conjugate-closed spectrum (pairs adjacent).
MatrixXd realify(const std::vector<std::complex<double>>& ev) {
  const auto d = static_cast<Eigen::Index>(ev.size());
  MatrixXd L = MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (ev[i].imag() != 0.0 && i + 1 < d) {
      L(i, i) = ev[i].real();
      L(i + 1, i + 1) = ev[i].real();
      L(i, i + 1) = -ev[i].imag();
      L(i + 1, i) = ev[i].imag();
      ++i;
    } else {
      L(i, i) = ev[i].real();
    }
  }
  return L;
}

/// Real coefficients c_0..c_n of prod (s - ev_k), c_n = 1.
VectorXd char_poly(const std::vector<std::complex<double>>& ev) {
  std::vector<std::complex<double>> c{1.0};
  for (const auto& z : ev) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= z * c[k];
    }
    c = std::move(next);
  }
  VectorXd out(static_cast<Eigen::Index>(c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) out(static_cast<Eigen::Index>(k)) = c[k].real();
  return out;
}

/// Single-input Ackermann gain k with eig(A + b k) = ev.
std::optional<Eigen::RowVectorXd> ackermann(const MatrixXd& A, const VectorXd& b,
                                            const std::vector<std::complex<double>>& ev) {
  const auto n = A.rows();
  const MatrixXd Ctrb = controllability_matrix<double>(A, b, static_cast<int>(n));
  Eigen::JacobiSVD<MatrixXd> svd(Ctrb);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) < 1e-9 * sv(0)) return std::nullopt;
  const VectorXd c = char_poly(ev);
  MatrixXd phi = MatrixXd::Zero(n, n);
  MatrixXd Ak = MatrixXd::Identity(n, n);
  for (Eigen::Index k = 0; k <= n; ++k) {
    phi += c(k) * Ak;
    Ak = Ak * A;
  }
  const Eigen::RowVectorXd en = Eigen::RowVectorXd::Unit(n, n - 1);
  return Eigen::RowVectorXd(-en * Ctrb.partialPivLu().solve(phi));
}

double spectral_radius(const MatrixXd& A) {
  if (A.rows() == 0) return 0.0;
  return eigenvalues(A).cwiseAbs().maxCoeff();
}

bool zd_matches(const DiscreteStateSpace& sys, ZdRequirement req, double margin) {
  if (req == ZdRequirement::Any) return true;
  Stability s;
  CVec<double> spec;
  if (sys.n() == 0) {
    s = oracle_zero_dynamics_stable(sys);
  } else {
    spec = eigenvalues(zero_dynamics(sys).Q);
    for (Eigen::Index i = 0; i < spec.size(); ++i) {
      if (std::abs(std::abs(spec(i)) - 1.0) < margin) return false;
    }
    s = classify_discrete<double>(spec, {});
  }
  return req == ZdRequirement::Stable ? s == Stability::Stable : s == Stability::Unstable;
}

std::optional<DiscreteStateSpace> try_bif(const RandomSystemSpec& spec, Sampler& rng) {
  const auto& r = *spec.r;
  const Eigen::Index p = spec.p, m = spec.m, n = spec.n;
  const Eigen::Index sr = std::accumulate(r.begin(), r.end(), Eigen::Index{0});
  const Eigen::Index d = n - sr;
  const double lo = 1.0 - spec.zd_margin, hi = 1.0 + spec.zd_margin;

  auto zd_radius = [&](bool first) {
    bool stable;
    switch (spec.zd) {
      case ZdRequirement::Stable: stable = true; break;
      case ZdRequirement::Unstable: stable = !first && rng.coin(); break;
      default: stable = rng.coin(); break;
    }
    return stable ? rng.uniform(0.05, lo) : rng.uniform(hi, 1.8);
  };
  const auto zd_ev = random_spectrum(d, rng, zd_radius);
  MatrixXd Q = realify(zd_ev);
  if (d > 0) {
    const MatrixXd Sq = rng.well_conditioned(d);
    Q = Sq * Q * Sq.inverse();
  }
  const MatrixXd P = rng.randn(d, p);
  MatrixXd G = rng.randn(p, m);
  Eigen::JacobiSVD<MatrixXd> gsv(G);
  if (gsv.singularValues()(p - 1) < 0.2 * gsv.singularValues()(0)) return std::nullopt;

  // A = A0 + E alpha with E the chain-end unit vectors; alpha places the poles.
  const MatrixXd zero_alpha = MatrixXd::Zero(p, n);
  const MatrixXd A0 = build_from_bif<double>(r, Q, P, zero_alpha, G).A;
  MatrixXd E = MatrixXd::Zero(n, p);
  Eigen::Index off = 0;
  for (Eigen::Index i = 0; i < p; ++i) {
    off += r[i];
    E(off - 1, i) = 1.0;
  }
  const MatrixXd K0 = 0.5 * rng.randn(p, n);
  const VectorXd w = rng.randn(p, 1);
  auto pole_radius = [&](bool) { return rng.uniform(0.1, spec.max_pole_radius); };
  const auto poles = random_spectrum(n, rng, pole_radius);
  const auto k = ackermann(A0 + E * K0, E * w, poles);
  if (!k) return std::nullopt;
  const MatrixXd alpha = K0 + w * (*k);
  auto sys = build_from_bif<double>(r, Q, P, alpha, G);
  if (spectral_radius(sys.A) > spec.max_pole_radius + 1e-6) return std::nullopt;
  return sys;
}

std::optional<DiscreteStateSpace> try_generic(const RandomSystemSpec& spec, Sampler& rng,
                                              bool feedthrough) {
  const Eigen::Index n = spec.n, m = spec.m, p = spec.p;
  auto pole_radius = [&](bool) { return rng.uniform(0.1, spec.max_pole_radius); };
  MatrixXd A = realify(random_spectrum(n, rng, pole_radius));
  if (n > 0) {
    const MatrixXd Sa = rng.well_conditioned(n);
    A = Sa * A * Sa.inverse();
  }
  DiscreteStateSpace sys{A, rng.randn(n, m), rng.randn(p, n), MatrixXd::Zero(p, m)};
  if (feedthrough) {
    sys.D = rng.randn(p, m);
    Eigen::JacobiSVD<MatrixXd> dsv(sys.D);
    if (dsv.singularValues()(dsv.singularValues().size() - 1) < 0.2 * dsv.singularValues()(0)) {
      return std::nullopt;
    }
  }
  return sys;
}

}  // namespace

DiscreteStateSpace random_system(const RandomSystemSpec& spec, std::uint64_t seed) {
  if (spec.n < 0 || spec.m < 1 || spec.p < 1) {
    fail(Errc::InfeasibleConstraints, "random_system: need n >= 0, m >= 1, p >= 1");
  }
  if (spec.zd != ZdRequirement::Any && spec.m != spec.p) {
    fail(Errc::InfeasibleConstraints, "zero-dynamics constraints need m = p");
  }
  bool use_bif = false, feedthrough = false;
  if (spec.r) {
    const auto& r = *spec.r;
    if (static_cast<int>(r.size()) != spec.p || spec.m < spec.p) {
      fail(Errc::InfeasibleConstraints, "prescribed r needs length p and m >= p");
    }
    const int sr = std::accumulate(r.begin(), r.end(), 0);
    const bool all_zero = std::all_of(r.begin(), r.end(), [](int v) { return v == 0; });
    const bool all_pos = std::all_of(r.begin(), r.end(), [](int v) { return v >= 1; });
    if (sr > spec.n || !(all_zero || all_pos)) {
      fail(Errc::InfeasibleConstraints, "unsupported relative degree pattern");
    }
    if (spec.zd == ZdRequirement::Unstable && all_pos && sr == spec.n) {
      fail(Errc::InfeasibleConstraints, "trivial zero dynamics cannot be unstable");
    }
    use_bif = all_pos;
    feedthrough = all_zero;
  }

  Sampler rng(seed);
  const ToleranceConfig tol;
  for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
    auto cand = use_bif ? try_bif(spec, rng) : try_generic(spec, rng, feedthrough);
    if (!cand) continue;
    auto sys = *cand;
    if (spec.random_basis && sys.n() > 0) {
      const MatrixXd Sb = rng.well_conditioned(sys.n());
      const MatrixXd Sinv = Sb.inverse();
      sys.A = Sb * sys.A * Sinv;
      sys.B = Sb * sys.B;
      sys.C = sys.C * Sinv;
    }
    const int n = static_cast<int>(sys.n());
    if (spec.controllable && n > 0 &&
        numerical_rank(controllability_matrix<double>(sys.A, sys.B, n), tol) != n) {
      continue;
    }
    if (spec.observable && n > 0 &&
        numerical_rank(observability_matrix<double>(sys.A, sys.C, n), tol) != n) {
      continue;
    }
    if (spec.r) {
      auto vrd = oracle_vector_relative_degree(sys, tol);
      if (!vrd || vrd->r != *spec.r) continue;
    }
    if (!zd_matches(sys, spec.zd, spec.zd_margin)) continue;
    return sys;
  }
  fail(Errc::InfeasibleConstraints, "random_system: retry budget exhausted");
}

// ---------------------------------------------------------------------------

using DS = StateSpace<double, DiscreteTime>;
using CS = StateSpace<double, ContinuousTime>;

template SimResult<double> simulate<double>(const DS&, const Vec<double>&, const Mat<double>&);
template std::vector<Mat<double>> impulse_response<double>(const DS&, int);
template Mat<double> observability_matrix<double>(const Mat<double>&, const Mat<double>&, int);
template Mat<double> controllability_matrix<double>(const Mat<double>&, const Mat<double>&, int);
template bool is_minimal<double, DiscreteTime>(const DS&, const ToleranceConfig&);
template bool is_minimal<double, ContinuousTime>(const CS&, const ToleranceConfig&);
template int lag<double>(const DS&, const ToleranceConfig&);
template Degree oracle_relative_degree<double, DiscreteTime>(const DS&, const ToleranceConfig&);
template Degree oracle_relative_degree<double, ContinuousTime>(const CS&, const ToleranceConfig&);
template std::optional<VectorRelativeDegree<double>>
oracle_vector_relative_degree<double, DiscreteTime>(const DS&, const ToleranceConfig&);
template std::optional<VectorRelativeDegree<double>>
oracle_vector_relative_degree<double, ContinuousTime>(const CS&, const ToleranceConfig&);
template ZeroDynamics<double> zero_dynamics<double, DiscreteTime>(const DS&, const ToleranceConfig&);
template ZeroDynamics<double> zero_dynamics<double, ContinuousTime>(const CS&,
                                                                    const ToleranceConfig&);
template BifForm<double> byrnes_isidori<double>(const DS&, const ToleranceConfig&);
template DS build_from_bif<double>(const std::vector<int>&, const Mat<double>&, const Mat<double>&,
                                   const Mat<double>&, const Mat<double>&, const ToleranceConfig&);
template Stability oracle_zero_dynamics_stable<double>(const DS&, const ToleranceConfig&);
template Stability oracle_ct_zero_dynamics<double>(const CS&, const ToleranceConfig&);
template DS zoh_discretize<double>(const CS&, double);

}  // namespace datainf

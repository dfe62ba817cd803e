#include "datainf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/SVD>

#include "datainf/ct.hpp"
#include "datainf/mpum.hpp"
#include "datainf/reldeg.hpp"
#include "datainf/zerodyn.hpp"

namespace datainf {

using Eigen::Index;

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  std::uint64_t next() { return gen_(); }

  MatrixXd randn(Index r, Index c) {
    std::normal_distribution<double> nd;
    MatrixXd M(r, c);
    for (Index j = 0; j < c; ++j)
      for (Index i = 0; i < r; ++i) M(i, j) = nd(gen_);
    return M;
  }

 private:
  std::mt19937_64 gen_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double cond(const MatrixXd& M) {
  const auto sv = Eigen::JacobiSVD<MatrixXd>(M).singularValues();
  return sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
}

double rel_fro(const MatrixXd& a, const MatrixXd& b) {
  const double nb = b.norm();
  return (a - b).norm() / (nb > 0 ? nb : 1.0);
}

/// First nonzero Markov coefficient of a SISO system at index r.
double markov_at(const DiscreteStateSpace& sys, int r) {
  const auto h = impulse_response(sys, r + 1);
  return h[static_cast<std::size_t>(r)](0, 0);
}

/// Multiset match of two spectra by brute force over permutations (small sizes only).
bool spectra_match(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double atol) {
  if (a.size() != b.size()) return false;
  std::vector<int> perm(static_cast<std::size_t>(a.size()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (Index i = 0; i < a.size() && ok; ++i) ok = std::abs(a(i) - b(perm[static_cast<std::size_t>(i)])) <= atol;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

double min_separation(const Eigen::VectorXcd& v) {
  double s = INFINITY;
  for (Index i = 0; i < v.size(); ++i)
    for (Index j = i + 1; j < v.size(); ++j) s = std::min(s, std::abs(v(i) - v(j)));
  return s;
}

/// Maps reconstructed coordinates onto the true ones via discrete observability at step h.
std::pair<MatrixXd, MatrixXd> align(const ContinuousStateSpace& truth, const ContinuousStateSpace& rec,
                                    double h) {
  const Index n = truth.n();
  const int L = static_cast<int>(n) + 4;
  const auto dt = zoh_discretize(truth, h);
  const auto dr = zoh_discretize(rec, h);
  const MatrixXd Ot = observability_matrix<double>(dt.A, dt.C, L);
  const MatrixXd Or = observability_matrix<double>(dr.A, dr.C, L);
  const MatrixXd T = Ot.completeOrthogonalDecomposition().solve(Or);
  const MatrixXd Ti = T.inverse();
  return {T * rec.A * Ti, T * rec.B};
}

/// sigma_n / sigma_1 of the n x n block Hankel of H(1..2n-1).
double hankel_ratio(const DiscreteStateSpace& d, int n) {
  const auto H = impulse_response(d, 2 * n);
  const Index p = d.p(), m = d.m();
  MatrixXd M(n * p, n * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M.block(i * p, j * m, p, m) = H[static_cast<std::size_t>(i + j + 1)];
  const auto sv = Eigen::JacobiSVD<MatrixXd>(M).singularValues();
  return sv(n - 1) / sv(0);
}

std::string trial_tag(const char* what, int trial) { return std::string(what) + " #" + std::to_string(trial); }

/// PE dataset of a discrete system with a random initial state.
DataSetD pe_dataset(const DiscreteStateSpace& sys, Index order, Index extra, Rng& rng,
                    const ToleranceConfig& tol) {
  const Index m = sys.m();
  const Index T = (m + 1) * order + extra;
  const MatrixXd u = pe_input(T, m, order, rng.next(), tol);
  return simulate_dataset(sys, u, rng.randn(sys.n(), 1));
}

DataSetD truncated(const DataSetD& ds, Index T) {
  DataSetD out = ds;
  for (auto& s : out.sequences) {
    s.u = s.u.topRows(std::min(T, s.length())).eval();
    s.y = s.y.topRows(std::min(T, s.length())).eval();
  }
  return out;
}

}  // namespace

MatrixXd pe_input(Index T, Index m, Index order, std::uint64_t seed, const ToleranceConfig& tol) {
  if (T < 1 || m < 1 || order < 0) fail(Errc::InvalidArgument, "pe_input needs T, m >= 1");
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(0.5);
  for (int attempt = 0; attempt < 64; ++attempt) {
    MatrixXd u(T, m);
    for (Index t = 0; t < T; ++t)
      for (Index k = 0; k < m; ++k) u(t, k) = coin(gen) ? 1.0 : -1.0;
    if (order == 0) return u;
    if (order <= T) {
      const DataSetD probe{m, 1, {{u, MatrixXd::Zero(T, 1)}}, std::nullopt};
      if (is_persistently_exciting(probe, order, tol)) return u;
    }
  }
  fail(Errc::NotPersistentlyExciting, "no persistently exciting +-1 draw of the requested order");
}

MatrixXd impulse_input(Index m, Index settle) {
  const Index block = settle + 1;
  MatrixXd u = MatrixXd::Zero(m * block + settle, m);
  for (Index k = 0; k < m; ++k) u(settle + k * block, k) = 1.0;
  return u;
}

DataSetD simulate_dataset(const DiscreteStateSpace& sys, const MatrixXd& u, const VectorXd& x0) {
  const auto sim = simulate<double>(sys, x0, u);
  return DataSetD{sys.m(), sys.p(), {{u, sim.y}}, std::nullopt};
}

VectorXd stacked_window(const TrajectoryD& w) {
  const Index L = w.length(), m = w.u.cols(), p = w.y.cols();
  VectorXd v(L * (m + p));
  for (Index t = 0; t < L; ++t) {
    v.segment(t * m, m) = w.u.row(t).transpose();
    v.segment(L * m + t * p, p) = w.y.row(t).transpose();
  }
  return v;
}

ContinuousStateSpace random_ct_system(int n, int m, int p, const std::vector<double>& rates,
                                      std::uint64_t seed, double min_hankel_ratio,
                                      const ToleranceConfig& tol) {
  if (n < 1 || m < 1 || p < 1) fail(Errc::InvalidArgument, "random_ct_system needs n, m, p >= 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < 500; ++attempt) {
    const int pairs = rng.integer(0, n / 2);
    Eigen::VectorXcd lam(n);
    MatrixXd J = MatrixXd::Zero(n, n);
    Index k = 0;
    for (int i = 0; i < pairs; ++i, k += 2) {
      const double a = rng.uniform(-1.0, -0.1), b = rng.uniform(0.05, 20.0);
      lam(k) = {a, b};
      lam(k + 1) = {a, -b};
      J.block(k, k, 2, 2) << a, b, -b, a;
    }
    for (; k < n; ++k) {
      lam(k) = rng.uniform(-1.0, -0.1);
      J(k, k) = lam(k).real();
    }
    if (min_separation(lam) < 1e-2) continue;
    bool separated = true;
    for (double h : rates) separated = separated && min_separation((lam * h).array().exp().matrix()) >= 1e-2;
    if (!separated) continue;
    const MatrixXd S = rng.randn(n, n);
    if (cond(S) > 10.0) continue;
    ContinuousStateSpace sys{S * J * S.inverse(), rng.randn(n, m), rng.randn(p, n), MatrixXd::Zero(p, m)};
    bool ok = is_minimal(sys, tol);
    for (double h : rates) {
      if (!ok) break;
      const auto d = zoh_discretize(sys, h);
      ok = is_minimal(d, tol) && hankel_ratio(d, n) >= min_hankel_ratio;
    }
    if (ok) return sys;
  }
  fail(Errc::InfeasibleConstraints, "random_ct_system: retry budget exhausted");
}

SuiteResult verify_reldeg(int trials, std::uint64_t seed, const ToleranceConfig& tol) {
  const auto t0 = Clock::now();
  SuiteResult res{"relative degree", 0, 0, 0.0, {}};
  Rng rng(seed);
  int degraded = 0, unsound = 0;
  for (int trial = 0; trial < trials; ++trial) {
    ++res.total;
    const int n = 1 + trial % 5;
    const int r = rng.integer(0, n);
    RandomSystemSpec spec;
    spec.n = n;
    spec.r = std::vector<int>{r};
    try {
      const auto sys = random_system(spec, rng.next());
      const Degree truth = oracle_relative_degree(sys, tol);
      const int l = lag(sys, tol);
      const int L = l + n + 1;
      const auto ds = pe_dataset(sys, L + n, 10, rng, tol);

      const Degree pe = reldeg_pe(ds, l, n, L, tol);
      const auto sharp = reldeg_sharp(ds, l, L, tol);
      const auto alg = reldeg_informativity(ds, l, tol);
      const bool ok = !truth.infinite && truth.value == r && pe == truth && sharp && *sharp == r &&
                      alg.informative() && alg.r == r &&
                      std::abs(*alg.witness - markov_at(sys, r)) <=
                          1e-6 * std::max(1.0, std::abs(markov_at(sys, r)));
      if (!ok) {
        ++res.failures;
        res.notes.push_back(trial_tag("reldeg", trial) + ": n=" + std::to_string(n) +
                            " oracle r=" + std::to_string(r) + " pe=" + std::to_string(pe.value) +
                            " sharp=" + (sharp ? std::to_string(*sharp) : "none") +
                            " alg=" + kind_name(alg.kind) + "(" + std::to_string(alg.r) + ")");
      }

      // Degraded data: prefixes of the PE record and poorly exciting inputs.
      std::vector<DataSetD> variants;
      for (Index T : {Index(l + 1), Index(l + 2 + rng.integer(0, n)), ds.min_length() / 3}) {
        variants.push_back(truncated(ds, T));
      }
      const Index T = ds.min_length();
      variants.push_back(simulate_dataset(sys, MatrixXd::Zero(T, 1), rng.randn(n, 1)));
      variants.push_back(simulate_dataset(sys, MatrixXd::Ones(T, 1), rng.randn(n, 1)));
      MatrixXd alt(T, 1);
      for (Index t = 0; t < T; ++t) alt(t, 0) = (t % 2 == 0) ? 1.0 : -1.0;
      variants.push_back(simulate_dataset(sys, alt, rng.randn(n, 1)));
      variants.push_back(truncated(simulate_dataset(sys, impulse_input(1, l), VectorXd::Zero(n)), l + 1 + r));
      for (const auto& v : variants) {
        ++degraded;
        try {
          const auto verdict = reldeg_informativity(v, l, tol);
          if (verdict.informative() && verdict.r != r) {
            ++unsound;
            ++res.failures;
            res.notes.push_back(trial_tag("unsound", trial) + ": Informative(" +
                                std::to_string(verdict.r) + ") vs oracle " + std::to_string(r));
          }
        } catch (const Error& e) {
          if (e.code() != Errc::DataTooShort) throw;
        }
      }
    } catch (const Error& e) {
      ++res.failures;
      res.notes.push_back(trial_tag("reldeg", trial) + ": " + std::string(errc_name(e.code())) + ": " + e.what());
    }
  }
  res.notes.insert(res.notes.begin(), std::to_string(degraded) + " degraded datasets, " +
                                          std::to_string(unsound) + " unsound verdicts");
  res.seconds = seconds_since(t0);
  return res;
}

SuiteResult verify_zerodyn(int trials, std::uint64_t seed, const ToleranceConfig& tol) {
  const auto t0 = Clock::now();
  SuiteResult res{"zero dynamics", 0, 0, 0.0, {}};
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    ++res.total;
    const int p = 1 + trial % 2;
    const int d = rng.integer(0, 3);
    std::vector<int> r(static_cast<std::size_t>(p));
    int budget = 6 - d - p;  // extra delay beyond r_i = 1
    for (auto& ri : r) {
      const int extra = rng.integer(0, std::min(budget, 2));
      ri = 1 + extra;
      budget -= extra;
    }
    const int rs = std::accumulate(r.begin(), r.end(), 0);
    const int n = rs + d;
    const bool want_stable = d == 0 || trial % 4 < 2;
    RandomSystemSpec spec;
    spec.n = n;
    spec.m = spec.p = p;
    spec.r = r;
    spec.zd = want_stable ? ZdRequirement::Stable : ZdRequirement::Unstable;
    try {
      const auto sys = random_system(spec, rng.next());
      const auto zd = zero_dynamics(sys, tol);
      const int l = lag(sys, tol);
      const auto ds = pe_dataset(sys, 2 * l + 1 + n, 20, rng, tol);
      const auto qt = qtilde(ds, l, tol);
      const auto verdict = algorithm2(ds, l, n, rs, tol);
      const bool spec_ok = spectra_match(eigenvalues(qt.Q), eigenvalues(zd.Q), 1e-6);
      const int want_s = want_stable ? 1 : -1;
      if (!spec_ok || verdict.s != want_s || !verdict.conditions.mcmillan_ok) {
        ++res.failures;
        res.notes.push_back(trial_tag("zerodyn", trial) + ": n=" + std::to_string(n) +
                            " d=" + std::to_string(d) + " spectrum " + (spec_ok ? "ok" : "mismatch") +
                            " s=" + std::to_string(verdict.s) + " want " + std::to_string(want_s) +
                            " mcmillan=" + (verdict.conditions.mcmillan_ok ? "1" : "0") +
                            " reldeg_sum=" + (verdict.conditions.reldeg_sum_ok ? "1" : "0"));
      }
    } catch (const Error& e) {
      ++res.failures;
      res.notes.push_back(trial_tag("zerodyn", trial) + ": " + std::string(errc_name(e.code())) + ": " + e.what());
    }
  }
  res.seconds = seconds_since(t0);
  return res;
}

SuiteResult verify_ct(int trials, int adversarial, std::uint64_t seed, const ToleranceConfig& tol) {
  const auto t0 = Clock::now();
  SuiteResult res{"continuous reconstruction", 0, 0, 0.0, {}};
  Rng rng(seed);
  const std::array<double, 3> h{1.0, 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt3};
  const std::vector<double> rates(h.begin(), h.end());

  auto dataset_at = [&](const ContinuousStateSpace& ct, int i, int n, int& l) {
    const auto d = zoh_discretize(ct, h[static_cast<std::size_t>(i)]);
    l = lag(d, tol);
    auto ds = pe_dataset(d, l + 2 * n + 1 + n, 20, rng, tol);
    ds.sampling_time = h[static_cast<std::size_t>(i)];
    return ds;
  };

  for (int trial = 0; trial < trials + adversarial; ++trial) {
    ++res.total;
    const bool adv = trial >= trials;
    const int n = 1 + trial % 6;
    const int m = 1 + (trial / 6) % 2;
    const int p = 1 + (trial / 12) % 2;
    try {
      const auto ct = random_ct_system(n, m, p, rates, rng.next(), 1e-6, tol);
      std::array<DataSetD, 3> ds;
      std::array<int, 3> lags{};
      for (int i = 0; i < 3; ++i) {
        auto src = ct;
        if (adv && i == 2) {
          // Same A, different input or output map.
          if (trial % 2 == 0) src.B = rng.randn(n, m);
          else src.C = rng.randn(p, n);
        }
        ds[static_cast<std::size_t>(i)] = dataset_at(src, i, n, lags[static_cast<std::size_t>(i)]);
      }
      const std::array<const DataSetD*, 3> ptrs{&ds[0], &ds[1], &ds[2]};
      if (adv) {
        try {
          reconstruct_from_data(ptrs, lags, {n, n, n}, kDefaultKmax, tol);
          ++res.failures;
          res.notes.push_back(trial_tag("mixed", trial) + ": reconstruction accepted");
        } catch (const Error& e) {
          if (e.code() != Errc::MarkovMismatch) {
            ++res.failures;
            res.notes.push_back(trial_tag("mixed", trial) + ": " + std::string(errc_name(e.code())));
          }
        }
        continue;
      }
      const auto rec = reconstruct_from_data(ptrs, lags, {n, n, n}, kDefaultKmax, tol);
      const auto [A, B] = align(ct, rec, h[0]);
      const double ea = rel_fro(A, ct.A), eb = rel_fro(B, ct.B);
      if (!(ea < 1e-6 && eb < 1e-6)) {
        ++res.failures;
        res.notes.push_back(trial_tag("ct", trial) + ": n=" + std::to_string(n) +
                            " relerr A=" + std::to_string(ea) + " B=" + std::to_string(eb));
      }
    } catch (const Error& e) {
      ++res.failures;
      res.notes.push_back(trial_tag(adv ? "mixed" : "ct", trial) + ": " + std::string(errc_name(e.code())) +
                          ": " + e.what());
    }
  }
  res.seconds = seconds_since(t0);
  return res;
}

SuiteResult verify_properties(std::uint64_t seed, const ToleranceConfig& tol) {
  const auto t0 = Clock::now();
  SuiteResult res{"properties", 0, 0, 0.0, {}};
  Rng rng(seed);
  auto check = [&](bool ok, const std::string& what) {
    ++res.total;
    if (!ok) {
      ++res.failures;
      res.notes.push_back(what);
    }
  };

  // Hankel layout and shift structure.
  for (int c = 0; c < 20; ++c) {
    const Index T = rng.integer(1, 12), q = rng.integer(1, 3), L = rng.integer(1, static_cast<int>(T));
    const MatrixXd w = rng.randn(T, q);
    const MatrixXd H = hankel<double>(w, L);
    bool ok = H.rows() == L * q && H.cols() == T - L + 1;
    for (Index i = 0; ok && i < L; ++i)
      for (Index j = 0; j < H.cols(); ++j) ok = ok && H.block(i * q, j, q, 1) == w.row(i + j).transpose();
    if (ok && L > 1 && H.cols() > 1) {
      ok = H.bottomRows((L - 1) * q).leftCols(H.cols() - 1) == H.topRows((L - 1) * q).rightCols(H.cols() - 1);
    }
    check(ok, "hankel layout/shift case " + std::to_string(c));
  }

  // Persistency of excitation is monotone in the order.
  for (int c = 0; c < 20; ++c) {
    const Index m = rng.integer(1, 2), T = rng.integer(4, 30);
    MatrixXd u(T, m);
    if (c % 3 == 0) {
      const int period = rng.integer(1, 4);
      const MatrixXd base = rng.randn(period, m);
      for (Index t = 0; t < T; ++t) u.row(t) = base.row(t % period);
    } else {
      u = rng.randn(T, m);
    }
    const DataSetD ds{m, 1, {{u, MatrixXd::Zero(T, 1)}}, std::nullopt};
    bool ok = true, prev = true;
    for (Index L = 1; L <= T; ++L) {
      const bool pe = is_persistently_exciting(ds, L, tol);
      ok = ok && (prev || !pe);
      prev = pe;
    }
    check(ok, "PE monotonicity case " + std::to_string(c));
  }

  // Fundamental lemma: fresh trajectories lie in the span of PE data.
  for (int c = 0; c < 20; ++c) {
    RandomSystemSpec spec;
    spec.n = rng.integer(1, 4);
    spec.m = rng.integer(1, 2);
    spec.p = rng.integer(1, 2);
    const auto sys = random_system(spec, rng.next());
    const int L = lag(sys, tol) + 1 + rng.integer(0, 2);
    const auto ds = pe_dataset(sys, L + spec.n, 10, rng, tol);
    const MatrixXd H = mosaic_hankel(ds, L, HankelPart::Stacked);
    const auto fresh = simulate_dataset(sys, rng.randn(L, spec.m), rng.randn(spec.n, 1));
    const VectorXd v = stacked_window(fresh.sequences.front());
    VectorXd off = v;
    off(off.size() - 1) += 1.0;
    check(in_span(v, H, tol) && !in_span(off, H, tol), "fundamental lemma case " + std::to_string(c));
  }

  // mpum_extended with k = 0 spans the same windows as mpum_generators.
  for (int c = 0; c < 12; ++c) {
    RandomSystemSpec spec;
    spec.n = rng.integer(1, 4);
    spec.m = rng.integer(1, 2);
    spec.p = rng.integer(1, 2);
    const auto sys = random_system(spec, rng.next());
    const int l = lag(sys, tol);
    auto ds = pe_dataset(sys, l + 1 + spec.n, 10, rng, tol);
    if (c % 2 == 1) ds = truncated(ds, l + 3);
    const MatrixXd G0 = mpum_generators(ds, l).generators;
    const MatrixXd G1 = mpum_extended(ds, l, 0, tol).generators;
    MatrixXd both(G0.rows(), G0.cols() + G1.cols());
    both << G0, G1;
    const Index r0 = numerical_rank(G0, tol);
    check(G0.rows() == G1.rows() && numerical_rank(G1, tol) == r0 && numerical_rank(both, tol) == r0,
          "mpum_extended(k=0) case " + std::to_string(c));
  }

  // Certificates for Informative verdicts and scaling invariance of every verdict.
  for (int c = 0; c < 24; ++c) {
    const int n = rng.integer(1, 4);
    RandomSystemSpec spec;
    spec.n = n;
    spec.r = std::vector<int>{rng.integer(0, n)};
    const auto sys = random_system(spec, rng.next());
    const int l = lag(sys, tol);
    auto ds = pe_dataset(sys, l + 2 * n + 1, 10, rng, tol);
    if (c % 3 == 1) ds = truncated(ds, l + 2 + c % 4);
    if (c % 3 == 2) ds = simulate_dataset(sys, MatrixXd::Ones(ds.min_length(), 1), rng.randn(n, 1));
    const auto base = reldeg_informativity(ds, l, tol);
    if (base.informative()) {
      const auto cert = reldeg_certificate(l, base.r, *base.witness);
      check(in_span(stacked_window(cert), mpum_generators(ds, l).generators, tol),
            "certificate case " + std::to_string(c));
    }
    for (double s : {1e-3, 1.0, 1e3}) {
      const auto sc = ds.scaled(s);
      const auto v = reldeg_informativity(sc, l, tol);
      bool ok = v.kind == base.kind && v.r == base.r;
      if (ok && base.informative()) ok = std::abs(*v.witness - *base.witness) <= 1e-6 * std::max(1.0, std::abs(*base.witness));
      ok = ok && is_persistently_exciting(sc, l + 1, tol) == is_persistently_exciting(ds, l + 1, tol);
      check(ok, "scaling reldeg case " + std::to_string(c) + " c=" + std::to_string(s));
    }
  }
  for (int c = 0; c < 12; ++c) {
    RandomSystemSpec spec;
    spec.m = spec.p = 1 + c % 2;
    spec.r = std::vector<int>(static_cast<std::size_t>(spec.p), 1);
    spec.n = spec.p + rng.integer(0, 2);
    spec.zd = (c % 4 < 2 || spec.n == spec.p) ? ZdRequirement::Stable : ZdRequirement::Unstable;
    const auto sys = random_system(spec, rng.next());
    const int l = lag(sys, tol);
    const auto ds = pe_dataset(sys, 2 * l + 1 + spec.n, 20, rng, tol);
    const auto vb = vecreldeg_informativity(ds, l, tol);
    const auto zb = algorithm2(ds, l, spec.n, spec.p, tol);
    for (double s : {1e-3, 1e3}) {
      const auto sc = ds.scaled(s);
      const auto v = vecreldeg_informativity(sc, l, tol);
      const auto z = algorithm2(sc, l, spec.n, spec.p, tol);
      const bool ok = v.kind == vb.kind && v.r == vb.r && (v.G - vb.G).norm() <= 1e-6 * std::max(1.0, vb.G.norm()) &&
                      z.s == zb.s && z.conditions.mcmillan_ok == zb.conditions.mcmillan_ok &&
                      z.conditions.reldeg_sum_ok == zb.conditions.reldeg_sum_ok;
      check(ok, "scaling vecreldeg/zerodyn case " + std::to_string(c) + " c=" + std::to_string(s));
    }
  }
  res.seconds = seconds_since(t0);
  return res;
}

}  // namespace datainf

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "datainf/linalg.hpp"

namespace datainf {

struct DiscreteTime {};
struct ContinuousTime {};

/// @brief Quadruple (A, B, C, D). n = 0 is allowed and means y = D u.
template <typename S, typename Domain>
struct StateSpace {
  Mat<S> A;
  Mat<S> B;
  Mat<S> C;
  Mat<S> D;

  Eigen::Index n() const { return A.rows(); }
  Eigen::Index m() const { return B.cols(); }
  Eigen::Index p() const { return C.rows(); }

  /// Throws DimensionMismatch on inconsistent block sizes.
  void validate() const {
    const auto nn = A.rows();
    if (A.cols() != nn || B.rows() != nn || C.cols() != nn || D.rows() != C.rows() ||
        D.cols() != B.cols()) {
      fail(Errc::DimensionMismatch, "state-space blocks have inconsistent sizes");
    }
  }
};

using DiscreteStateSpace = StateSpace<double, DiscreteTime>;
using ContinuousStateSpace = StateSpace<double, ContinuousTime>;

/// Nonnegative integer or infinity.
struct Degree {
  bool infinite = false;
  int value = 0;

  static Degree finite(int v) { return {false, v}; }
  static Degree infinity() { return {true, 0}; }
  bool operator==(const Degree& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

template <typename S>
struct SimResult {
  Mat<S> y;  ///< T x p, row t = y(t)
  Mat<S> x;  ///< (T+1) x n, row t = x(t)
};

/// Byrnes-Isidori normal form. State order in BIF coordinates: the chains
/// xi_{i,1..r_i} for each output i, followed by eta.
template <typename S>
struct BifForm {
  std::vector<int> r;
  Mat<S> Q;      ///< d x d
  Mat<S> P;      ///< d x m, eta(t+1) = Q eta(t) + P y(t)
  Mat<S> alpha;  ///< p x n, rows in BIF coordinates
  Mat<S> G;      ///< p x m decoupling matrix
  Mat<S> T;      ///< n x n, z = T x
};

/// Zero-output dynamics x = N eta, u = K eta, eta+ = Q eta (or d/dt eta = Q eta).
template <typename S>
struct ZeroDynamics {
  std::vector<int> r;
  Mat<S> G;
  Mat<S> Q;
  Mat<S> N;
  Mat<S> K;
};

template <typename S>
struct VectorRelativeDegree {
  std::vector<int> r;
  Mat<S> G;
};

/// @brief Exact recursion from x0 driven by u (T x m, row t = u(t)).
/// @throws Error DimensionMismatch
template <typename S>
SimResult<S> simulate(const StateSpace<S, DiscreteTime>& sys, const Vec<S>& x0, const Mat<S>& u);

/// H(0) = D, H(k) = C A^{k-1} B for 1 <= k < N.
template <typename S>
std::vector<Mat<S>> impulse_response(const StateSpace<S, DiscreteTime>& sys, int N);

template <typename S>
Mat<S> observability_matrix(const Mat<S>& A, const Mat<S>& C, int L);
template <typename S>
Mat<S> controllability_matrix(const Mat<S>& A, const Mat<S>& B, int L);

template <typename S, typename Domain>
bool is_minimal(const StateSpace<S, Domain>& sys, const ToleranceConfig& tol = {});

/// @brief Smallest L with rank O_L(C, A) = n.
/// @throws Error NotObservable
template <typename S>
int lag(const StateSpace<S, DiscreteTime>& sys, const ToleranceConfig& tol = {});

/// SISO relative degree; search capped at n Markov parameters.
template <typename S, typename Domain>
Degree oracle_relative_degree(const StateSpace<S, Domain>& sys, const ToleranceConfig& tol = {});

/// Per-output degrees and decoupling matrix; empty unless rank G = p.
template <typename S, typename Domain>
std::optional<VectorRelativeDegree<S>> oracle_vector_relative_degree(
    const StateSpace<S, Domain>& sys, const ToleranceConfig& tol = {});

/// Zero dynamics of a square system with a vector relative degree (r_i = 0 allowed).
template <typename S, typename Domain>
ZeroDynamics<S> zero_dynamics(const StateSpace<S, Domain>& sys, const ToleranceConfig& tol = {});

/// @throws Error NotMinimal, NoVectorRelativeDegree
template <typename S>
BifForm<S> byrnes_isidori(const StateSpace<S, DiscreteTime>& sys, const ToleranceConfig& tol = {});

/// @throws Error DimensionMismatch, SingularG
template <typename S>
StateSpace<S, DiscreteTime> build_from_bif(const std::vector<int>& r, const Mat<S>& Q,
                                           const Mat<S>& P, const Mat<S>& alpha, const Mat<S>& G,
                                           const ToleranceConfig& tol = {});

template <typename S>
Stability oracle_zero_dynamics_stable(const StateSpace<S, DiscreteTime>& sys,
                                      const ToleranceConfig& tol = {});

template <typename S>
Stability oracle_ct_zero_dynamics(const StateSpace<S, ContinuousTime>& sys,
                                  const ToleranceConfig& tol = {});

/// A_d = e^{Ah}, B_d = int_0^h e^{As} ds B via exp(h [[A, B], [0, 0]]).
template <typename S>
StateSpace<S, DiscreteTime> zoh_discretize(const StateSpace<S, ContinuousTime>& sys, S h);

enum class ZdRequirement { Any, Stable, Unstable };

struct RandomSystemSpec {
  int n = 2;
  int m = 1;
  int p = 1;
  bool controllable = true;
  bool observable = true;
  std::optional<std::vector<int>> r;
  ZdRequirement zd = ZdRequirement::Any;
  double zd_margin = 0.05;
  double max_pole_radius = 0.9;
  /// Apply a random well-conditioned change of basis after construction.
  bool random_basis = true;
  int max_retries = 200;
};

/// Deterministic in the seed. Prescribed r with all r_i >= 1 goes through build_from_bif.
/// @throws Error InfeasibleConstraints
DiscreteStateSpace random_system(const RandomSystemSpec& spec, std::uint64_t seed);

}  // namespace datainf

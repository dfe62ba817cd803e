#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "datainf/lti.hpp"
#include "datainf/verify.hpp"

namespace datainf::testing {

inline DiscreteStateSpace unit_delay() {
  return {MatrixXd::Zero(1, 1), MatrixXd::Ones(1, 1), MatrixXd::Ones(1, 1), MatrixXd::Zero(1, 1)};
}

/// The three-state two-input system with decoupling matrix [[1, a], [0, 1]].
inline DiscreteStateSpace example_ba(double a) {
  MatrixXd A(3, 3), B(3, 2), C(2, 3);
  A << 0, 1, a, 0, 0, 0, 0, 0, 0;
  B << 0, 0, 1, 0, 0, 1;
  C << 1, 0, 0, 0, 0, 1;
  return {A, B, C, MatrixXd::Zero(2, 2)};
}

/// Minimal two-state SISO system with relative degree 1, zero-dynamics pole q and
/// poles {0.6, -0.3}.
inline DiscreteStateSpace zd_siso(double q) {
  const double a = 0.3 - q, b = q * a + 0.18;
  MatrixXd A(2, 2), B(2, 1), C(1, 2);
  A << a, b, 1.0, q;
  B << 1, 0;
  C << 1, 0;
  return {A, B, C, MatrixXd::Zero(1, 1)};
}

/// PE data of the given order from sys with a random initial state.
inline DataSetD pe_data(const DiscreteStateSpace& sys, Eigen::Index order, std::uint64_t seed,
                        Eigen::Index extra = 10) {
  const Eigen::Index T = (sys.m() + 1) * order + extra;
  const MatrixXd u = pe_input(T, sys.m(), order, seed);
  std::srand(static_cast<unsigned>(seed));
  return simulate_dataset(sys, u, VectorXd::Random(sys.n()));
}

inline DataSetD zero_data(Eigen::Index m, Eigen::Index p, Eigen::Index T) {
  return {m, p, {{MatrixXd::Zero(T, m), MatrixXd::Zero(T, p)}}, std::nullopt};
}

/// Multiset comparison of spectra by greedy nearest matching.
inline bool same_spectrum(Eigen::VectorXcd a, Eigen::VectorXcd b, double atol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(static_cast<std::size_t>(b.size()), false);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      if (best < 0 || std::abs(a(i) - b(j)) < std::abs(a(i) - b(best))) best = j;
    }
    if (best < 0 || std::abs(a(i) - b(best)) > atol) return false;
    used[static_cast<std::size_t>(best)] = true;
  }
  return true;
}

/// Direct Markov parameter C A^{k-1} B by repeated multiplication.
inline MatrixXd markov(const DiscreteStateSpace& s, int k) {
  if (k == 0) return s.D;
  MatrixXd X = s.B;
  for (int i = 1; i < k; ++i) X = s.A * X;
  return s.C * X;
}

}  // namespace datainf::testing

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "datainf/hankel.hpp"
#include "datainf/lti.hpp"

namespace datainf {

/// @brief Seeded +-1 input of T samples and m channels, persistently exciting of the given order.
/// Redrawn with a derived seed until the excitation check passes.
/// @throws Error NotPersistentlyExciting when no draw passes (T too short)
MatrixXd pe_input(Eigen::Index T, Eigen::Index m, Eigen::Index order, std::uint64_t seed,
                  const ToleranceConfig& tol = {});

/// Unit impulse on each input channel in turn, separated by settle zero samples.
MatrixXd impulse_input(Eigen::Index m, Eigen::Index settle);

/// Single-sequence dataset from a simulation of sys.
DataSetD simulate_dataset(const DiscreteStateSpace& sys, const MatrixXd& u, const VectorXd& x0);

/// Stacked window vector (u(0..L-1), y(0..L-1)) in generator row layout.
VectorXd stacked_window(const TrajectoryD& w);

/// Random continuous system with a diagonalizable real-part-negative spectrum:
/// Re in [-1, -0.1], |Im| <= 20, eigenvalue separation >= 1e-2, D = 0, minimal.
/// ZOH spectra at the given sampling times stay separated, and the block Hankel of
/// Markov parameters at every rate has sigma_n / sigma_1 >= min_hankel_ratio.
ContinuousStateSpace random_ct_system(int n, int m, int p, const std::vector<double>& rates,
                                      std::uint64_t seed, double min_hankel_ratio = 1e-6,
                                      const ToleranceConfig& tol = {});

struct SuiteResult {
  std::string name;
  int total = 0;
  int failures = 0;
  double seconds = 0.0;
  std::vector<std::string> notes;  ///< one line per failed case

  bool passed() const { return total > 0 && failures == 0; }
};

/// Relative degree from PE SISO data against the oracle, plus soundness on degraded data.
SuiteResult verify_reldeg(int trials, std::uint64_t seed, const ToleranceConfig& tol = {});

/// Zero-dynamics spectrum and algorithm2 verdict on systems built from the normal form.
SuiteResult verify_zerodyn(int trials, std::uint64_t seed, const ToleranceConfig& tol = {});

/// Continuous reconstruction from three-rate data plus mixed-system triples.
SuiteResult verify_ct(int trials, int adversarial, std::uint64_t seed,
                      const ToleranceConfig& tol = {});

/// Hankel, excitation, fundamental-lemma, MPUM, certificate and scaling properties.
SuiteResult verify_properties(std::uint64_t seed, const ToleranceConfig& tol = {});

}  // namespace datainf

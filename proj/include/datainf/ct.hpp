#pragma once

#include <array>
#include <vector>

#include "datainf/lti.hpp"
#include "datainf/mpum.hpp"

namespace datainf {

/// Three ZOH discretizations of one continuous system in a common state basis.
struct DiscretizationTriple {
  std::array<DiscreteStateSpace, 3> systems;
  std::array<double, 3> sampling_times{};
};

struct EigenPairing {
  Eigen::VectorXcd lambdas;                ///< one per entry of E1, same order
  std::vector<std::vector<int>> shells;    ///< indices into E1 grouped by ln|mu| / h
  Eigen::Matrix<int, Eigen::Dynamic, 3> k_indices;  ///< branch index per sampling time
};

constexpr int kDefaultKmax = 32;

/// @brief Continuous eigenvalues consistent with all three discrete spectra.
/// @throws Error ShellMismatch, NoBranchMatch, AmbiguousBranch, DuplicateAlias
EigenPairing pair_eigenvalues(const Eigen::VectorXcd& E1, const Eigen::VectorXcd& E2,
                              const Eigen::VectorXcd& E3, double h1, double h2, double h3,
                              int k_max = kDefaultKmax, const ToleranceConfig& tol = {});

/// @brief Continuous system whose ZOH discretizations reproduce the triple.
/// @throws Error Defective, NearSingularIntegral, ValidationFailed and pairing errors
ContinuousStateSpace reconstruct_ct(const DiscretizationTriple& triple, int k_max = kDefaultKmax,
                                    const ToleranceConfig& tol = {});

/// H(0), ..., H(N-1) by unique continuation from zero past with unit impulses.
/// @throws Error NotPersistentlyExciting, DataTooShort
std::vector<MatrixXd> markov_from_data(const DataSetD& ds, int lag, int N,
                                       const ToleranceConfig& tol = {});

/// @brief Balanced Ho-Kalman realization of order n from Markov parameters H(0..2n).
/// @throws Error NotPersistentlyExciting, RankDeficientHankel, ValidationFailed
DiscreteStateSpace realize_from_data(const DataSetD& ds, int lag, int n,
                                     const ToleranceConfig& tol = {});

/// Ho-Kalman step alone; markov must hold at least 2n + 1 terms.
DiscreteStateSpace ho_kalman(const std::vector<MatrixXd>& markov, int n,
                             const ToleranceConfig& tol = {});

/// @brief Continuous system from three datasets with sampling_time set.
/// @throws Error MarkovMismatch and the errors of the steps
ContinuousStateSpace reconstruct_from_data(const std::array<const DataSetD*, 3>& ds,
                                           const std::array<int, 3>& lags,
                                           const std::array<int, 3>& ns,
                                           int k_max = kDefaultKmax,
                                           const ToleranceConfig& tol = {});

}  // namespace datainf

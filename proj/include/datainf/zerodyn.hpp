#pragma once

#include <optional>

#include "datainf/reldeg.hpp"

namespace datainf {

struct ZdConditions {
  bool mcmillan_ok = false;
  bool reldeg_sum_ok = false;
  Stability mpum_zd_stable = Stability::Boundary;
};

/// s = +1 stable, -1 unstable, 0 inconclusive.
struct ZdVerdict {
  int s = 0;
  std::optional<MatrixXd> q_tilde;
  std::optional<Eigen::VectorXcd> spectrum;
  ZdConditions conditions;
};

struct QTilde {
  MatrixXd Q;  ///< d x d
  MatrixXd V;  ///< d x (m * lag), orthonormal rows
};

/// rank of the output Hankel of order 1 equals m.
bool static_zd_informativity(const DataSetD& ds, const ToleranceConfig& tol = {});

/// @brief Generators of the inputs of zero-output MPUM windows of length L >= lag + 1.
/// @throws Error DataTooShort
MatrixXd zd_input_generators(const DataSetD& ds, int lag, int L, const ToleranceConfig& tol = {});

/// @throws Error ContinuationNotUnique, DataTooShort
QTilde qtilde(const DataSetD& ds, int lag, const ToleranceConfig& tol = {});

/// @throws Error NotPersistentlyExciting, DimensionMismatchZD, DataTooShort
Stability zd_stability_pe(const DataSetD& ds, int lag, int n, const std::vector<int>& r, int L,
                          const ToleranceConfig& tol = {});

/// rank(H_y ker H_u) = n on windows of length lag + 1.
/// @throws Error DataTooShort
bool mcmillan_condition(const DataSetD& ds, int lag, int n, const ToleranceConfig& tol = {});

/// Sufficient check: Algorithm-1 based certification of r with sum r_s.
bool reldeg_sum_informative(const DataSetD& ds, int lag, int r_s, const ToleranceConfig& tol = {});

/// @throws Error DataTooShort, ContinuationNotUnique
ZdVerdict algorithm2(const DataSetD& ds, int lag, int n, int r_s, const ToleranceConfig& tol = {});

}  // namespace datainf

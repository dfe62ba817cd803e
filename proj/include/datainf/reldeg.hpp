#pragma once

#include <optional>
#include <vector>

#include "datainf/lti.hpp"
#include "datainf/mpum.hpp"

namespace datainf {

struct RelDegVerdict {
  enum class Kind { Informative, InformativeInfinite, NotInformative };
  Kind kind = Kind::NotInformative;
  int r = 0;
  /// First nonzero Markov coefficient; present iff kind == Informative.
  std::optional<double> witness;

  bool informative() const { return kind == Kind::Informative; }
};

struct VecRelDegVerdict {
  enum class Kind { Full, DecouplingOnly, NotInformative };
  Kind kind = Kind::NotInformative;
  std::vector<int> r;
  MatrixXd G;
  /// true where G(i, j) is proven (known value or proven zero).
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> identified_mask;
  /// Per-pair degrees from the induced SISO analyses; -1 where not informative.
  Eigen::MatrixXi pair_degree;
  /// Per-pair lower bounds (only meaningful where pair_degree is -1).
  Eigen::MatrixXi pair_lower_bound;
};

const char* kind_name(RelDegVerdict::Kind k) noexcept;
const char* kind_name(VecRelDegVerdict::Kind k) noexcept;

/// @brief Relative degree from persistently exciting SISO data.
/// @throws Error NotPersistentlyExciting, DataTooShort, NotSiso, InvalidArgument
Degree reldeg_pe(const DataSetD& ds, int lag, int n, int L, const ToleranceConfig& tol = {});

/// Sharp test without excitation assumptions; empty when its condition fails.
/// @throws Error DataTooShort, NotSiso
std::optional<int> reldeg_sharp(const DataSetD& ds, int lag, int L, const ToleranceConfig& tol = {});

/// @brief MPUM relative-degree test on SISO window generators of length lag + 1.
/// @throws Error DataTooShort
RelDegVerdict reldeg_informativity(const GeneratorSubspaceD& gen, int lag,
                                   const ToleranceConfig& tol = {});
RelDegVerdict reldeg_informativity(const DataSetD& ds, int lag, const ToleranceConfig& tol = {});

/// Largest t for which the MPUM holds a trajectory with zero past, a unit input at time
/// lag and zero output through lag + t - 1; r itself when reldeg_informativity would determine it.
/// @throws Error DataTooShort
int reldeg_lower_bound(const GeneratorSubspaceD& gen, int lag, const ToleranceConfig& tol = {});
int reldeg_lower_bound(const DataSetD& ds, int lag, const ToleranceConfig& tol = {});

/// @brief Vector relative degree and decoupling matrix from persistently exciting data.
/// @throws Error NotPersistentlyExciting, DataTooShort
std::optional<VectorRelativeDegree<double>> vecreldeg_pe(const DataSetD& ds, int lag, int n, int L,
                                                         const ToleranceConfig& tol = {});

/// @throws Error DataTooShort
VecRelDegVerdict vecreldeg_informativity(const DataSetD& ds, int lag, const ToleranceConfig& tol = {});

/// Window of length lag + 1 with a unit input at time lag - r and output a at time lag,
/// zero elsewhere. It lies in the MPUM whenever reldeg_informativity returned Informative(r) with witness a.
TrajectoryD reldeg_certificate(int lag, int r, double a);

}  // namespace datainf

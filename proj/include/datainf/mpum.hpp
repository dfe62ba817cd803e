#pragma once

#include "datainf/hankel.hpp"

namespace datainf {

/// @brief Stacked mosaic Hankel of order lag + 1.
/// @throws Error DataTooShort
template <typename S>
GeneratorSubspace<S> mpum_generators(const DataSet<S>& ds, Eigen::Index lag);

/// @brief Windows of length lag + k + 1 of the most powerful unfalsified model,
/// obtained by gluing k + 1 overlapping windows of length lag + 1 (X_k ker Z_k).
/// @throws Error DataTooShort
template <typename S>
GeneratorSubspace<S> mpum_extended(const DataSet<S>& ds, Eigen::Index lag, Eigen::Index k,
                                   const ToleranceConfig& tol = {});

/// Same construction starting from generators of windows of length lag + 1.
template <typename S>
GeneratorSubspace<S> mpum_extended(const GeneratorSubspace<S>& base, Eigen::Index k,
                                   const ToleranceConfig& tol = {});

/// @brief Unique output continuation y_f from past (u_p, y_p) and future input u_f.
/// Vectors are time-stacked: u_p has T_p*m entries, u_f has T_f*m, y_p has T_p*p.
/// The generator window length must be T_p + T_f.
/// @throws Error Infeasible, NotUnique
template <typename S>
Vec<S> unique_continuation(const GeneratorSubspace<S>& gen, Eigen::Index T_p, Eigen::Index T_f,
                           const Vec<S>& u_p, const Vec<S>& y_p, const Vec<S>& u_f,
                           const ToleranceConfig& tol = {});

/// Builds the window generators of length T_p + T_f from data first.
/// @throws Error DataTooShort, Infeasible, NotUnique
template <typename S>
Vec<S> unique_continuation(const DataSet<S>& ds, Eigen::Index T_p, Eigen::Index T_f,
                           const Vec<S>& u_p, const Vec<S>& y_p, const Vec<S>& u_f,
                           const ToleranceConfig& tol = {});

}  // namespace datainf

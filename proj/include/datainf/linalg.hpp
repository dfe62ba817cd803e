#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "datainf/error.hpp"

namespace datainf {

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using CVec = Eigen::Matrix<std::complex<S>, Eigen::Dynamic, 1>;

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Relative thresholds used by every rank, membership and stability decision.
struct ToleranceConfig {
  double rank_rtol = 1e-10;
  double membership_rtol = 1e-8;
  double stability_margin = 1e-9;
  double match_atol = 1e-7;

  /// Throws InvalidArgument unless every field lies in (0, 1).
  void validate() const;
};

enum class Stability { Stable, Unstable, Boundary };

const char* stability_name(Stability s) noexcept;

namespace detail {
template <typename S>
Eigen::Index numerical_rank_impl(const Mat<S>& M, const ToleranceConfig& tol, S ref);
template <typename S>
Mat<S> kernel_basis_impl(const Mat<S>& M, const ToleranceConfig& tol, S ref);
template <typename S>
Mat<S> range_basis_impl(const Mat<S>& M, const ToleranceConfig& tol, S ref);
template <typename S>
Mat<S> compress_columns_impl(const Mat<S>& M, const ToleranceConfig& tol, S ref);
template <typename S>
bool in_span_impl(const Vec<S>& v, const Mat<S>& G, const ToleranceConfig& tol);
template <typename S>
Mat<S> right_inverse_impl(const Mat<S>& M, const ToleranceConfig& tol);
template <typename S>
Mat<S> lstsq_impl(const Mat<S>& M, const Mat<S>& rhs, const ToleranceConfig& tol, S ref);
template <typename S>
S sigma_max_impl(const Mat<S>& M);
template <typename S>
CVec<S> eigenvalues_impl(const Mat<S>& M);
template <typename S>
Stability is_schur_stable_impl(const Mat<S>& M, const ToleranceConfig& tol);
template <typename S>
Stability is_hurwitz_stable_impl(const Mat<S>& M, const ToleranceConfig& tol);
}  // namespace detail

/// @brief Number of singular values above rank_rtol * sigma_max * max(rows, cols).
/// A positive ref replaces sigma_max when it is larger, so slices of a matrix can be
/// ranked on the scale of the whole.
template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& M, const ToleranceConfig& tol = {},
                            typename Derived::RealScalar ref = 0) {
  return detail::numerical_rank_impl<typename Derived::Scalar>(M.eval(), tol, ref);
}

/// Largest singular value; 0 for an empty matrix.
template <typename Derived>
auto sigma_max(const Eigen::MatrixBase<Derived>& M) {
  return detail::sigma_max_impl<typename Derived::Scalar>(M.eval());
}

/// @brief Orthonormal basis of the numerical kernel (may have zero columns).
template <typename Derived>
auto kernel_basis(const Eigen::MatrixBase<Derived>& M, const ToleranceConfig& tol = {},
          typename Derived::RealScalar ref = 0) {
  return detail::kernel_basis_impl<typename Derived::Scalar>(M.eval(), tol, ref);
}

/// @brief Orthonormal basis of the numerical column space.
template <typename Derived>
auto range_basis(const Eigen::MatrixBase<Derived>& M, const ToleranceConfig& tol = {},
          typename Derived::RealScalar ref = 0) {
  return detail::range_basis_impl<typename Derived::Scalar>(M.eval(), tol, ref);
}

/// @brief U_r * Sigma_r: a matrix with rank(M) columns and the same column space as M.
/// Linear relations among the rows of M carry over to the result.
template <typename Derived>
auto compress_columns(const Eigen::MatrixBase<Derived>& M, const ToleranceConfig& tol = {},
          typename Derived::RealScalar ref = 0) {
  return detail::compress_columns_impl<typename Derived::Scalar>(M.eval(), tol, ref);
}

/// @brief Least-squares residual test ||v - P v|| <= membership_rtol * max(||v||, 1).
template <typename DV, typename DG>
bool in_span(const Eigen::MatrixBase<DV>& v, const Eigen::MatrixBase<DG>& G,
             const ToleranceConfig& tol = {}) {
  using S = typename DG::Scalar;
  return detail::in_span_impl<S>(Vec<S>(v), Mat<S>(G), tol);
}

/// @brief Minimum-norm right inverse of a full-row-rank matrix.
/// @throws Error RankDeficient
template <typename Derived>
auto right_inverse(const Eigen::MatrixBase<Derived>& M, const ToleranceConfig& tol = {}) {
  return detail::right_inverse_impl<typename Derived::Scalar>(M.eval(), tol);
}

/// Minimum-norm least-squares solution of M X = rhs with singular values below the rank threshold dropped.
template <typename DM, typename DR>
auto lstsq(const Eigen::MatrixBase<DM>& M, const Eigen::MatrixBase<DR>& rhs,
           const ToleranceConfig& tol = {}, typename DM::RealScalar ref = 0) {
  using S = typename DM::Scalar;
  return detail::lstsq_impl<S>(Mat<S>(M), Mat<S>(rhs), tol, ref);
}

template <typename Derived>
auto eigenvalues(const Eigen::MatrixBase<Derived>& M) {
  return detail::eigenvalues_impl<typename Derived::Scalar>(M.eval());
}

/// Discrete-time stability with a margin around the unit circle; 0x0 is Stable.
template <typename Derived>
Stability is_schur_stable(const Eigen::MatrixBase<Derived>& M, const ToleranceConfig& tol = {}) {
  return detail::is_schur_stable_impl<typename Derived::Scalar>(M.eval(), tol);
}

/// Continuous-time analogue: margin around the imaginary axis.
template <typename Derived>
Stability is_hurwitz_stable(const Eigen::MatrixBase<Derived>& M, const ToleranceConfig& tol = {}) {
  return detail::is_hurwitz_stable_impl<typename Derived::Scalar>(M.eval(), tol);
}

template <typename S>
Stability classify_discrete(const CVec<S>& spectrum, const ToleranceConfig& tol);
template <typename S>
Stability classify_continuous(const CVec<S>& spectrum, const ToleranceConfig& tol);

/// Vertical concatenation helper that tolerates empty blocks.
template <typename S>
Mat<S> vstack(const std::vector<Mat<S>>& blocks, Eigen::Index cols);

}  // namespace datainf

#include "datainf/zerodyn.hpp"

#include <algorithm>
#include <numeric>


namespace datainf {

namespace {

void require_square(const DataSetD& ds) {
  ds.validate();
  if (ds.m != ds.p) fail(Errc::InvalidArgument, "zero-dynamics analysis needs m = p");
}

void require_length(const DataSetD& ds, Eigen::Index L) {
  if (ds.min_length() < L) fail(Errc::DataTooShort, "data shorter than the required window");
}

}  // namespace

bool static_zd_informativity(const DataSetD& ds, const ToleranceConfig& tol) {
  return numerical_rank(mosaic_hankel(ds, 1, HankelPart::Output), tol) == ds.m;
}

MatrixXd zd_input_generators(const DataSetD& ds, int lag, int L, const ToleranceConfig& tol) {
  ds.validate();
  if (lag < 0 || L < lag + 1) fail(Errc::InvalidArgument, "zd_input_generators needs L >= lag + 1");
  require_length(ds, lag + 1);
  const auto ext = mpum_extended(ds, lag, L - lag - 1, tol);
  const double ref = sigma_max(ext.generators);
  const MatrixXd K = kernel_basis(ext.y_rows(), tol, ref);
  return compress_columns(MatrixXd(ext.u_rows() * K), tol, ref);
}

QTilde qtilde(const DataSetD& ds, int lag, const ToleranceConfig& tol) {
  const Eigen::Index m = ds.m, l = lag;
  const MatrixXd Z = zd_input_generators(ds, lag, 2 * lag + 1, tol);
  const MatrixXd top = Z.topRows(l * m);
  const double smax = sigma_max(Z);
  const MatrixXd U = range_basis(top, tol, smax);
  const Eigen::Index d = U.cols();
  QTilde out{MatrixXd(d, d), U.transpose()};
  if (d == 0) return out;

  const MatrixXd next = Z.middleRows(l * m, m);
  const MatrixXd Kt = kernel_basis(top, tol, smax);
  if (Kt.cols() > 0) {
    if ((next * Kt).norm() > tol.membership_rtol * smax) {
      fail(Errc::ContinuationNotUnique, "zero-output continuation is not unique");
    }
  }
  // Row k of W is the shifted window (v_k without its first sample, continuation u_k).
  const MatrixXd C = lstsq(top, U, tol, smax);
  MatrixXd W(d, l * m);
  W.leftCols((l - 1) * m) = U.bottomRows((l - 1) * m).transpose();
  W.rightCols(m) = (next * C).transpose();
  out.Q = W * right_inverse(out.V, tol);
  return out;
}

Stability zd_stability_pe(const DataSetD& ds, int lag, int n, const std::vector<int>& r, int L,
                          const ToleranceConfig& tol) {
  require_square(ds);
  if (static_cast<Eigen::Index>(r.size()) != ds.p) {
    fail(Errc::DimensionMismatch, "r must have one entry per output");
  }
  const int rmax = r.empty() ? 0 : *std::max_element(r.begin(), r.end());
  if (L < lag + rmax + 1) fail(Errc::InvalidArgument, "zd_stability_pe needs L >= lag + max r + 1");
  require_length(ds, L + n);
  if (!is_persistently_exciting(ds, L + n, tol)) {
    fail(Errc::NotPersistentlyExciting, "input is not persistently exciting of order L + n");
  }
  const auto qt = qtilde(ds, lag, tol);
  const int sr = std::accumulate(r.begin(), r.end(), 0);
  if (qt.Q.rows() != n - sr) {
    fail(Errc::DimensionMismatchZD, "dimension of the zero-dynamics state differs from n - sum(r)");
  }
  return is_schur_stable(qt.Q, tol);
}

bool mcmillan_condition(const DataSetD& ds, int lag, int n, const ToleranceConfig& tol) {
  ds.validate();
  require_length(ds, 2 * lag + 1);
  const auto gen = window_generators(ds, lag + 1, tol);
  const double ref = sigma_max(gen.generators);
  const MatrixXd K = kernel_basis(gen.u_rows(), tol, ref);
  return numerical_rank(MatrixXd(gen.y_rows() * K), tol, ref) == n;
}

bool reldeg_sum_informative(const DataSetD& ds, int lag, int r_s, const ToleranceConfig& tol) {
  const auto v = vecreldeg_informativity(ds, lag, tol);
  if (v.kind != VecRelDegVerdict::Kind::Full) return false;
  return std::accumulate(v.r.begin(), v.r.end(), 0) == r_s;
}

ZdVerdict algorithm2(const DataSetD& ds, int lag, int n, int r_s, const ToleranceConfig& tol) {
  require_square(ds);
  require_length(ds, 2 * lag + 1);
  ZdVerdict v;
  const auto qt = qtilde(ds, lag, tol);
  v.q_tilde = qt.Q;
  v.spectrum = eigenvalues(qt.Q);
  v.conditions.mpum_zd_stable = is_schur_stable(qt.Q, tol);
  v.conditions.mcmillan_ok = mcmillan_condition(ds, lag, n, tol);
  v.conditions.reldeg_sum_ok = reldeg_sum_informative(ds, lag, r_s, tol);
  const bool all_ok = v.conditions.mpum_zd_stable == Stability::Stable &&
                      v.conditions.mcmillan_ok && v.conditions.reldeg_sum_ok;
  if (n == 0) {
    v.s = (all_ok && static_zd_informativity(ds, tol)) ? 1 : 0;
    return v;
  }
  if (v.conditions.mpum_zd_stable == Stability::Unstable) {
    v.s = -1;
  } else if (all_ok) {
    v.s = 1;
  }
  return v;
}

}  // namespace datainf

#include "datainf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

namespace datainf {

void ToleranceConfig::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      fail(Errc::InvalidArgument, std::string(name) + " must lie in (0, 1)");
    }
  };
  check(rank_rtol, "rank_rtol");
  check(membership_rtol, "membership_rtol");
  check(stability_margin, "stability_margin");
  check(match_atol, "match_atol");
}

const char* stability_name(Stability s) noexcept {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Unstable: return "Unstable";
    case Stability::Boundary: return "Boundary";
  }
  return "Unknown";
}

namespace {

template <typename S>
Eigen::Index rank_from_singular(const Vec<S>& sv, Eigen::Index rows, Eigen::Index cols,
                                const ToleranceConfig& tol, S ref = S(0)) {
  const S top = std::max(sv.size() > 0 ? sv(0) : S(0), ref);
  if (sv.size() == 0 || !(top > S(0))) return 0;
  const S thresh = S(tol.rank_rtol) * top * S(std::max(rows, cols));
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > thresh) ++r;
  return r;
}

}  // namespace

namespace detail {

template <typename S>
Eigen::Index numerical_rank_impl(const Mat<S>& M, const ToleranceConfig& tol, S ref) {
  if (M.size() == 0) return 0;
  Eigen::BDCSVD<Mat<S>> svd(M);
  return rank_from_singular<S>(svd.singularValues(), M.rows(), M.cols(), tol, ref);
}

template <typename S>
Mat<S> kernel_basis_impl(const Mat<S>& M, const ToleranceConfig& tol, S ref) {
  const Eigen::Index n = M.cols();
  if (n == 0) return Mat<S>(0, 0);
  if (M.rows() == 0) return Mat<S>::Identity(n, n);
  Eigen::BDCSVD<Mat<S>> svd(M, Eigen::ComputeFullV);
  const Eigen::Index r = rank_from_singular<S>(svd.singularValues(), M.rows(), n, tol, ref);
  return svd.matrixV().rightCols(n - r);
}

template <typename S>
Mat<S> range_basis_impl(const Mat<S>& M, const ToleranceConfig& tol, S ref) {
  if (M.size() == 0) return Mat<S>(M.rows(), 0);
  Eigen::BDCSVD<Mat<S>> svd(M, Eigen::ComputeThinU);
  const Eigen::Index r = rank_from_singular<S>(svd.singularValues(), M.rows(), M.cols(), tol, ref);
  return svd.matrixU().leftCols(r);
}

template <typename S>
Mat<S> compress_columns_impl(const Mat<S>& M, const ToleranceConfig& tol, S ref) {
  if (M.size() == 0) return Mat<S>(M.rows(), 0);
  Eigen::BDCSVD<Mat<S>> svd(M, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const Eigen::Index r = rank_from_singular<S>(sv, M.rows(), M.cols(), tol, ref);
  return svd.matrixU().leftCols(r) * sv.head(r).asDiagonal();
}

template <typename S>
bool in_span_impl(const Vec<S>& v, const Mat<S>& G, const ToleranceConfig& tol) {
  if (v.size() != G.rows()) fail(Errc::DimensionMismatch, "in_span: length(v) != rows(G)");
  const S vn = v.norm();
  if (vn == S(0)) return true;
  const Mat<S> U = range_basis_impl<S>(G, tol, S(0));
  const Vec<S> res = v - U * (U.transpose() * v);
  return res.norm() <= S(tol.membership_rtol) * std::max(vn, S(1));
}

template <typename S>
Mat<S> lstsq_impl(const Mat<S>& M, const Mat<S>& rhs, const ToleranceConfig& tol, S ref) {
  if (M.rows() != rhs.rows()) fail(Errc::DimensionMismatch, "lstsq: row mismatch");
  if (M.size() == 0) return Mat<S>::Zero(M.cols(), rhs.cols());
  Eigen::BDCSVD<Mat<S>> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Eigen::Index r = rank_from_singular<S>(sv, M.rows(), M.cols(), tol, ref);
  const Mat<S> coeff = svd.matrixU().leftCols(r).transpose() * rhs;
  return svd.matrixV().leftCols(r) * (sv.head(r).cwiseInverse().asDiagonal() * coeff);
}

template <typename S>
Mat<S> right_inverse_impl(const Mat<S>& M, const ToleranceConfig& tol) {
  if (numerical_rank_impl<S>(M, tol, S(0)) < M.rows()) {
    fail(Errc::RankDeficient, "right_inverse: matrix does not have full row rank");
  }
  return lstsq_impl<S>(M, Mat<S>::Identity(M.rows(), M.rows()), tol, S(0));
}

template <typename S>
S sigma_max_impl(const Mat<S>& M) {
  if (M.size() == 0) return S(0);
  return Eigen::BDCSVD<Mat<S>>(M).singularValues()(0);
}

template <typename S>
CVec<S> eigenvalues_impl(const Mat<S>& M) {
  if (M.rows() != M.cols()) fail(Errc::NonSquare, "eigenvalues: matrix is not square");
  if (M.rows() == 0) return CVec<S>(0);
  Eigen::EigenSolver<Mat<S>> es(M, false);
  return es.eigenvalues();
}

template <typename S>
Stability is_schur_stable_impl(const Mat<S>& M, const ToleranceConfig& tol) {
  return classify_discrete<S>(eigenvalues_impl<S>(M), tol);
}

template <typename S>
Stability is_hurwitz_stable_impl(const Mat<S>& M, const ToleranceConfig& tol) {
  return classify_continuous<S>(eigenvalues_impl<S>(M), tol);
}

}  // namespace detail

template <typename S>
Stability classify_discrete(const CVec<S>& spectrum, const ToleranceConfig& tol) {
  S rho = 0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) rho = std::max(rho, std::abs(spectrum(i)));
  if (rho < S(1) - S(tol.stability_margin)) return Stability::Stable;
  if (rho > S(1) + S(tol.stability_margin)) return Stability::Unstable;
  return Stability::Boundary;
}

template <typename S>
Stability classify_continuous(const CVec<S>& spectrum, const ToleranceConfig& tol) {
  if (spectrum.size() == 0) return Stability::Stable;
  S re = spectrum.real().maxCoeff();
  if (re < -S(tol.stability_margin)) return Stability::Stable;
  if (re > S(tol.stability_margin)) return Stability::Unstable;
  return Stability::Boundary;
}

template <typename S>
Mat<S> vstack(const std::vector<Mat<S>>& blocks, Eigen::Index cols) {
  Eigen::Index rows = 0;
  for (const auto& b : blocks) {
    if (b.rows() > 0 && b.cols() != cols) fail(Errc::DimensionMismatch, "vstack: column mismatch");
    rows += b.rows();
  }
  Mat<S> out(rows, cols);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    if (b.rows() == 0) continue;
    out.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return out;
}

namespace detail {
template Eigen::Index numerical_rank_impl<double>(const Mat<double>&, const ToleranceConfig&, double);
template Mat<double> kernel_basis_impl<double>(const Mat<double>&, const ToleranceConfig&, double);
template Mat<double> range_basis_impl<double>(const Mat<double>&, const ToleranceConfig&, double);
template Mat<double> compress_columns_impl<double>(const Mat<double>&, const ToleranceConfig&, double);
template bool in_span_impl<double>(const Vec<double>&, const Mat<double>&, const ToleranceConfig&);
template Mat<double> right_inverse_impl<double>(const Mat<double>&, const ToleranceConfig&);
template Mat<double> lstsq_impl<double>(const Mat<double>&, const Mat<double>&, const ToleranceConfig&, double);
template double sigma_max_impl<double>(const Mat<double>&);
template CVec<double> eigenvalues_impl<double>(const Mat<double>&);
template Stability is_schur_stable_impl<double>(const Mat<double>&, const ToleranceConfig&);
template Stability is_hurwitz_stable_impl<double>(const Mat<double>&, const ToleranceConfig&);
}  // namespace detail

template Stability classify_discrete<double>(const CVec<double>&, const ToleranceConfig&);
template Stability classify_continuous<double>(const CVec<double>&, const ToleranceConfig&);
template Mat<double> vstack<double>(const std::vector<Mat<double>>&, Eigen::Index);

}  // namespace datainf

#include "datainf/hankel.hpp"

#include <string>

namespace datainf {

template <typename S>
void DataSet<S>::validate() const {
  if (sequences.empty()) fail(Errc::InvalidArgument, "dataset has no sequences");
  if (m < 0 || p < 0) fail(Errc::InvalidArgument, "dataset dimensions must be nonnegative");
  if (sampling_time && !(*sampling_time > S(0))) {
    fail(Errc::InvalidArgument, "sampling time must be positive");
  }
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const auto& tr = sequences[s];
    if (tr.u.cols() != m || tr.y.cols() != p || tr.u.rows() != tr.y.rows()) {
      fail(Errc::DimensionMismatch, "sequence " + std::to_string(s) + " does not match (m, p)");
    }
    if (tr.u.rows() < 1) fail(Errc::InvalidArgument, "sequence " + std::to_string(s) + " is empty");
    if (!tr.u.allFinite() || !tr.y.allFinite()) {
      fail(Errc::InvalidArgument, "sequence " + std::to_string(s) + " has non-finite samples");
    }
  }
}

template <typename S>
DataSet<S> DataSet<S>::scaled(S c) const {
  DataSet out = *this;
  for (auto& tr : out.sequences) {
    tr.u *= c;
    tr.y *= c;
  }
  return out;
}

template <typename S>
Eigen::Index DataSet<S>::min_length() const {
  Eigen::Index len = -1;
  for (const auto& tr : sequences) len = (len < 0) ? tr.length() : std::min(len, tr.length());
  return std::max<Eigen::Index>(len, 0);
}

template <typename S>
Mat<S> hankel(const Mat<S>& w, Eigen::Index L) {
  const Eigen::Index N = w.rows(), d = w.cols();
  if (L < 1 || L > N) fail(Errc::WindowTooLong, "hankel: need 1 <= L <= number of samples");
  const Eigen::Index cols = N - L + 1;
  Mat<S> H(L * d, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < L; ++i) H.block(i * d, j, d, 1) = w.row(i + j).transpose();
  return H;
}

template <typename S>
Mat<S> mosaic_hankel(const DataSet<S>& ds, Eigen::Index L, HankelPart which) {
  ds.validate();
  Eigen::Index cols = 0;
  for (const auto& tr : ds.sequences) {
    if (L < 1 || tr.length() < L) fail(Errc::WindowTooLong, "mosaic_hankel: window exceeds a sequence");
    cols += tr.length() - L + 1;
  }
  const Eigen::Index ru = which == HankelPart::Output ? 0 : L * ds.m;
  const Eigen::Index ry = which == HankelPart::Input ? 0 : L * ds.p;
  Mat<S> H(ru + ry, cols);
  Eigen::Index at = 0;
  for (const auto& tr : ds.sequences) {
    const Eigen::Index c = tr.length() - L + 1;
    if (ru > 0) H.block(0, at, ru, c) = hankel<S>(tr.u, L);
    if (ry > 0) H.block(ru, at, ry, c) = hankel<S>(tr.y, L);
    at += c;
  }
  return H;
}

template <typename S>
bool is_persistently_exciting(const DataSet<S>& ds, Eigen::Index L, const ToleranceConfig& tol) {
  return numerical_rank(mosaic_hankel(ds, L, HankelPart::Input), tol) == L * ds.m;
}

template <typename S>
GeneratorSubspace<S> window_generators(const DataSet<S>& ds, Eigen::Index L,
                                       const ToleranceConfig& tol) {
  return {compress_columns(mosaic_hankel(ds, L, HankelPart::Stacked), tol), L, ds.m, ds.p};
}

template <typename S>
GeneratorSubspace<S> induced_siso(const GeneratorSubspace<S>& gen, Eigen::Index i, Eigen::Index j,
                                  const ToleranceConfig& tol) {
  if (i < 0 || i >= gen.p || j < 0 || j >= gen.m) {
    fail(Errc::IndexOutOfRange, "induced_siso: channel index out of range");
  }
  const Eigen::Index L = gen.window_length;
  const Mat<S>& G = gen.generators;
  Mat<S> others((gen.m - 1) * L, G.cols());
  Eigen::Index at = 0;
  for (Eigen::Index t = 0; t < L; ++t)
    for (Eigen::Index k = 0; k < gen.m; ++k)
      if (k != j) others.row(at++) = G.row(gen.u_row(t, k));
  const S ref = sigma_max(G);
  const Mat<S> K = kernel_basis(others, tol, ref);
  Mat<S> rows(2 * L, G.cols());
  for (Eigen::Index t = 0; t < L; ++t) {
    rows.row(t) = G.row(gen.u_row(t, j));
    rows.row(L + t) = G.row(gen.y_row(t, i));
  }
  return {compress_columns(Mat<S>(rows * K), tol, ref), L, 1, 1};
}

template <typename S>
GeneratorSubspace<S> induced_siso_generators(const DataSet<S>& ds, Eigen::Index L, Eigen::Index i,
                                             Eigen::Index j, const ToleranceConfig& tol) {
  return induced_siso(window_generators(ds, L, tol), i, j, tol);
}

template struct DataSet<double>;
template Mat<double> hankel<double>(const Mat<double>&, Eigen::Index);
template Mat<double> mosaic_hankel<double>(const DataSet<double>&, Eigen::Index, HankelPart);
template bool is_persistently_exciting<double>(const DataSet<double>&, Eigen::Index,
                                               const ToleranceConfig&);
template GeneratorSubspace<double> window_generators<double>(const DataSet<double>&, Eigen::Index,
                                                             const ToleranceConfig&);
template GeneratorSubspace<double> induced_siso<double>(const GeneratorSubspace<double>&,
                                                        Eigen::Index, Eigen::Index,
                                                        const ToleranceConfig&);
template GeneratorSubspace<double> induced_siso_generators<double>(const DataSet<double>&,
                                                                   Eigen::Index, Eigen::Index,
                                                                   Eigen::Index,
                                                                   const ToleranceConfig&);

}  // namespace datainf

#include "datainf/mpum.hpp"

#include <Eigen/SVD>

namespace datainf {

namespace {

template <typename S>
void require_length(const DataSet<S>& ds, Eigen::Index L) {
  ds.validate();
  if (ds.min_length() < L) fail(Errc::DataTooShort, "a sequence is shorter than the window");
}

}  // namespace

template <typename S>
GeneratorSubspace<S> mpum_generators(const DataSet<S>& ds, Eigen::Index lag) {
  if (lag < 0) fail(Errc::InvalidArgument, "lag must be nonnegative");
  require_length(ds, lag + 1);
  return {mosaic_hankel(ds, lag + 1, HankelPart::Stacked), lag + 1, ds.m, ds.p};
}

template <typename S>
GeneratorSubspace<S> mpum_extended(const GeneratorSubspace<S>& base, Eigen::Index k,
                                   const ToleranceConfig& tol) {
  if (k < 0) fail(Errc::InvalidArgument, "mpum_extended: k must be nonnegative");
  const Eigen::Index l = base.window_length - 1;
  const Eigen::Index m = base.m, p = base.p, q = m + p;
  const Mat<S> H = compress_columns(base.generators, tol);
  const Eigen::Index c = H.cols();

  // Per-sample rows of the window: u block at time t, y block at time t.
  auto u_blk = [&](Eigen::Index t0, Eigen::Index len) { return H.middleRows(t0 * m, len * m); };
  auto y_blk = [&](Eigen::Index t0, Eigen::Index len) {
    return H.middleRows((l + 1) * m + t0 * p, len * p);
  };

  const Eigen::Index Lx = l + k + 1;
  Mat<S> X = Mat<S>::Zero(Lx * q, (k + 1) * c);
  X.block(0, 0, (l + 1) * m, c) = u_blk(0, l + 1);
  X.block(Lx * m, 0, (l + 1) * p, c) = y_blk(0, l + 1);
  for (Eigen::Index i = 1; i <= k; ++i) {
    X.block((l + i) * m, i * c, m, c) = u_blk(l, 1);
    X.block(Lx * m + (l + i) * p, i * c, p, c) = y_blk(l, 1);
  }

  // Gluing: last l samples of window i equal the first l samples of window i + 1.
  const Eigen::Index zr = l * q;
  Mat<S> Z = Mat<S>::Zero(k * zr, (k + 1) * c);
  if (l > 0) {
    Mat<S> Wplus(zr, c), Wminus(zr, c);
    Wplus.topRows(l * m) = u_blk(1, l);
    Wplus.bottomRows(l * p) = y_blk(1, l);
    Wminus.topRows(l * m) = u_blk(0, l);
    Wminus.bottomRows(l * p) = y_blk(0, l);
    for (Eigen::Index i = 0; i < k; ++i) {
      Z.block(i * zr, i * c, zr, c) = Wplus;
      Z.block(i * zr, (i + 1) * c, zr, c) = -Wminus;
    }
  }
  const S ref = sigma_max(H);
  const Mat<S> K = kernel_basis(Z, tol, ref);
  return {compress_columns(Mat<S>(X * K), tol, ref), Lx, m, p};
}

template <typename S>
GeneratorSubspace<S> mpum_extended(const DataSet<S>& ds, Eigen::Index lag, Eigen::Index k,
                                   const ToleranceConfig& tol) {
  return mpum_extended(mpum_generators(ds, lag), k, tol);
}

template <typename S>
Vec<S> unique_continuation(const GeneratorSubspace<S>& gen, Eigen::Index T_p, Eigen::Index T_f,
                           const Vec<S>& u_p, const Vec<S>& y_p, const Vec<S>& u_f,
                           const ToleranceConfig& tol) {
  const Eigen::Index m = gen.m, p = gen.p, L = T_p + T_f;
  if (T_p < 0 || T_f < 1 || gen.window_length != L) {
    fail(Errc::DimensionMismatch, "unique_continuation: window length must equal T_p + T_f");
  }
  if (u_p.size() != T_p * m || y_p.size() != T_p * p || u_f.size() != T_f * m) {
    fail(Errc::DimensionMismatch, "unique_continuation: past/future vectors have wrong length");
  }
  const Mat<S> G = compress_columns(gen.generators, tol);
  const Eigen::Index c = G.cols();
  Mat<S> Gc(L * m + T_p * p, c);
  Gc.topRows(L * m) = G.topRows(L * m);
  Gc.bottomRows(T_p * p) = G.middleRows(L * m, T_p * p);
  const Mat<S> Gf = G.bottomRows(T_f * p);
  Vec<S> rhs(L * m + T_p * p);
  rhs.head(T_p * m) = u_p;
  rhs.segment(T_p * m, T_f * m) = u_f;
  rhs.tail(T_p * p) = y_p;

  if (!in_span(rhs, Gc, tol)) {
    fail(Errc::Infeasible, "no trajectory in the data matches the given past and future input");
  }
  const S smax = sigma_max(G);
  const Vec<S> g = lstsq(Gc, rhs, tol, smax);
  const Mat<S> K = kernel_basis(Gc, tol, smax);
  if (K.cols() > 0 && c > 0) {
    if ((Gf * K).norm() > S(tol.membership_rtol) * smax) {
      fail(Errc::NotUnique, "future output is not determined by the constraints");
    }
  }
  return Gf * g;
}

template <typename S>
Vec<S> unique_continuation(const DataSet<S>& ds, Eigen::Index T_p, Eigen::Index T_f,
                           const Vec<S>& u_p, const Vec<S>& y_p, const Vec<S>& u_f,
                           const ToleranceConfig& tol) {
  require_length(ds, T_p + T_f);
  return unique_continuation(window_generators(ds, T_p + T_f, tol), T_p, T_f, u_p, y_p, u_f, tol);
}

template GeneratorSubspace<double> mpum_generators<double>(const DataSet<double>&, Eigen::Index);
template GeneratorSubspace<double> mpum_extended<double>(const GeneratorSubspace<double>&,
                                                         Eigen::Index, const ToleranceConfig&);
template GeneratorSubspace<double> mpum_extended<double>(const DataSet<double>&, Eigen::Index,
                                                         Eigen::Index, const ToleranceConfig&);
template Vec<double> unique_continuation<double>(const GeneratorSubspace<double>&, Eigen::Index,
                                                 Eigen::Index, const Vec<double>&,
                                                 const Vec<double>&, const Vec<double>&,
                                                 const ToleranceConfig&);
template Vec<double> unique_continuation<double>(const DataSet<double>&, Eigen::Index,
                                                 Eigen::Index, const Vec<double>&,
                                                 const Vec<double>&, const Vec<double>&,
                                                 const ToleranceConfig&);

}  // namespace datainf

#include "datainf/reldeg.hpp"

#include <algorithm>
#include <limits>

namespace datainf {

const char* kind_name(RelDegVerdict::Kind k) noexcept {
  switch (k) {
    case RelDegVerdict::Kind::Informative: return "Informative";
    case RelDegVerdict::Kind::InformativeInfinite: return "InformativeInfinite";
    case RelDegVerdict::Kind::NotInformative: return "NotInformative";
  }
  return "Unknown";
}

const char* kind_name(VecRelDegVerdict::Kind k) noexcept {
  switch (k) {
    case VecRelDegVerdict::Kind::Full: return "Full";
    case VecRelDegVerdict::Kind::DecouplingOnly: return "DecouplingOnly";
    case VecRelDegVerdict::Kind::NotInformative: return "NotInformative";
  }
  return "Unknown";
}

namespace {

using Index = Eigen::Index;

/// Rows of a generator matrix, selected by index; membership tests in their span.
class RowSpace {
 public:
  explicit RowSpace(const MatrixXd& G) : G_(G) {}

  MatrixXd rows(const std::vector<Index>& idx) const {
    MatrixXd R(static_cast<Index>(idx.size()), G_.cols());
    for (std::size_t k = 0; k < idx.size(); ++k) R.row(static_cast<Index>(k)) = G_.row(idx[k]);
    return R;
  }

  bool contains(Index row, const std::vector<Index>& basis, const ToleranceConfig& tol) const {
    const VectorXd v = G_.row(row).transpose();
    if (basis.empty()) return in_span(v, MatrixXd(v.size(), 0), tol);
    return in_span(v, rows(basis).transpose(), tol);
  }

 private:
  const MatrixXd& G_;
};

std::vector<Index> range_rows(Index first, Index count) {
  std::vector<Index> out(static_cast<std::size_t>(std::max<Index>(count, 0)));
  for (Index k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = first + k;
  return out;
}

std::vector<Index> concat(std::vector<Index> a, const std::vector<Index>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void require_siso(const DataSetD& ds) {
  ds.validate();
  if (ds.m != 1 || ds.p != 1) fail(Errc::NotSiso, "relative degree test needs SISO data");
}

GeneratorSubspaceD generators_or_short(const DataSetD& ds, Index L, const ToleranceConfig& tol) {
  ds.validate();
  if (L < 1 || ds.min_length() < L) fail(Errc::DataTooShort, "data shorter than the window");
  return window_generators(ds, L, tol);
}

void require_pe(const DataSetD& ds, Index order, const ToleranceConfig& tol) {
  if (ds.min_length() < order) fail(Errc::DataTooShort, "data too short for the excitation order");
  if (!is_persistently_exciting(ds, order, tol)) {
    fail(Errc::NotPersistentlyExciting, "input is not persistently exciting of the required order");
  }
}

/// SISO rule: first y-row after the lag that leaves span{u, y rows before the lag}.
Degree reldeg_pe_rows(const GeneratorSubspaceD& gen, int lag, int n, const ToleranceConfig& tol) {
  const Index L = gen.window_length;
  RowSpace rs(gen.generators);
  const auto base = concat(range_rows(gen.u_row(0, 0), lag), range_rows(gen.y_row(0, 0), lag));
  for (Index j = 1; j <= L - lag; ++j) {
    if (!rs.contains(gen.y_row(lag + j - 1, 0), base, tol)) {
      return j <= n + 1 ? Degree::finite(static_cast<int>(j - 1)) : Degree::infinity();
    }
  }
  return Degree::infinity();
}

}  // namespace

Degree reldeg_pe(const DataSetD& ds, int lag, int n, int L, const ToleranceConfig& tol) {
  require_siso(ds);
  if (lag < 0 || n < 0 || L < lag + n + 1) fail(Errc::InvalidArgument, "reldeg_pe needs L >= lag + n + 1");
  require_pe(ds, L + n, tol);
  return reldeg_pe_rows(generators_or_short(ds, L, tol), lag, n, tol);
}

std::optional<int> reldeg_sharp(const DataSetD& ds, int lag, int L, const ToleranceConfig& tol) {
  require_siso(ds);
  if (lag < 0 || L < lag + 1) fail(Errc::InvalidArgument, "reldeg_sharp needs L >= lag + 1");
  const auto gen = generators_or_short(ds, L, tol);
  RowSpace rs(gen.generators);
  const auto M = concat(range_rows(gen.u_row(0, 0), lag), range_rows(gen.y_row(0, 0), lag));
  std::optional<Index> ku, ky;
  for (Index t = 0; t < L && !(ku && ky); ++t) {
    if (!ku && !rs.contains(gen.u_row(t, 0), M, tol)) ku = t;
    if (!ky && !rs.contains(gen.y_row(t, 0), M, tol)) ky = t;
  }
  if (!ky || !ku || *ky < *ku) return std::nullopt;
  return static_cast<int>(*ky - *ku);
}

RelDegVerdict reldeg_informativity(const GeneratorSubspaceD& gen, int lag, const ToleranceConfig& tol) {
  if (gen.m != 1 || gen.p != 1) fail(Errc::NotSiso, "the MPUM relative-degree test needs SISO generators");
  if (gen.window_length < lag + 1) fail(Errc::DataTooShort, "generators shorter than lag + 1");
  const Index l = lag;
  RowSpace rs(gen.generators);
  const auto y_past = range_rows(gen.y_row(0, 0), l);
  for (Index i = l + 1; i >= 1; --i) {
    const auto Mi = concat(range_rows(gen.u_row(0, 0), i - 1), y_past);
    if (rs.contains(gen.u_row(i - 1, 0), Mi, tol)) return {};
    if (!rs.contains(gen.y_row(l, 0), Mi, tol)) {
      // Unit input at time i - 1, zero input elsewhere, zero past output.
      const auto cons = concat(range_rows(gen.u_row(0, 0), l + 1), y_past);
      VectorXd rhs = VectorXd::Zero(static_cast<Index>(cons.size()));
      rhs(i - 1) = 1.0;
      const VectorXd g = lstsq(rs.rows(cons), rhs, tol);
      const double a = gen.generators.row(gen.y_row(l, 0)).dot(g);
      RelDegVerdict v;
      v.kind = RelDegVerdict::Kind::Informative;
      v.r = static_cast<int>(l + 1 - i);
      v.witness = a;
      return v;
    }
  }
  return {};
}

RelDegVerdict reldeg_informativity(const DataSetD& ds, int lag, const ToleranceConfig& tol) {
  require_siso(ds);
  return reldeg_informativity(generators_or_short(ds, lag + 1, tol), lag, tol);
}

namespace {

std::vector<Index> other_input_rows(const GeneratorSubspaceD& gen, Index j) {
  std::vector<Index> out;
  for (Index t = 0; t < gen.window_length; ++t)
    for (Index k = 0; k < gen.m; ++k)
      if (k != j) out.push_back(gen.u_row(t, k));
  return out;
}

std::vector<Index> past_rows(const GeneratorSubspaceD& gen, Index lag) {
  std::vector<Index> out;
  for (Index t = 0; t < lag; ++t) {
    for (Index k = 0; k < gen.m; ++k) out.push_back(gen.u_row(t, k));
    for (Index k = 0; k < gen.p; ++k) out.push_back(gen.y_row(t, k));
  }
  return out;
}

/// PE rule for the pair (i, j): other inputs held at zero, the past of every channel
/// pins the state, and r_ij is the first y_i row after the lag outside the past span.
Degree reldeg_pe_pair(const GeneratorSubspaceD& gen, Index i, Index j, int lag, int n,
                      const ToleranceConfig& tol) {
  const double ref = sigma_max(gen.generators);
  const MatrixXd N = kernel_basis(RowSpace(gen.generators).rows(other_input_rows(gen, j)), tol, ref);
  const MatrixXd R = gen.generators * N;
  RowSpace rs(R);
  const auto base = past_rows(gen, lag);
  for (Index t = 0; t < gen.window_length - lag; ++t) {
    if (!rs.contains(gen.y_row(lag + t, i), base, tol)) {
      return t <= n ? Degree::finite(static_cast<int>(t)) : Degree::infinity();
    }
  }
  return Degree::infinity();
}

struct PairVerdict {
  RelDegVerdict::Kind kind = RelDegVerdict::Kind::NotInformative;
  int r = 0;
  double witness = 0.0;
  int lower_bound = 0;
};

bool vanishes(const VectorXd& row, const MatrixXd& N, double ref, const ToleranceConfig& tol) {
  const double rn = N.cols() == 0 ? 0.0 : (N.transpose() * row).norm();
  const double floor = tol.rank_rtol * ref * static_cast<double>(row.size());
  return rn <= tol.membership_rtol * row.norm() || rn <= floor;
}

/// Pair (i, j) on MPUM windows of length lag + 1 + t, t = 0..K: every channel zero
/// before time lag, inputs other than j zero throughout, u_j(lag) = 1. The first t at
/// which y_i(lag + t) is not forced to zero gives r_ij with witness y_i(lag + t); when
/// u_j(lag) stops being free, t is a lower bound. Zero through t = K >= n means r_ij = inf.
PairVerdict pair_informativity(const std::vector<GeneratorSubspaceD>& ext, Index i, Index j, int lag,
                               const ToleranceConfig& tol) {
  PairVerdict out;
  const int K = static_cast<int>(ext.size()) - 1;
  for (int t = 0; t <= K; ++t) {
    const auto& gen = ext[static_cast<std::size_t>(t)];
    const MatrixXd& G = gen.generators;
    const double ref = sigma_max(G);
    auto cons = concat(past_rows(gen, lag), other_input_rows(gen, j));
    for (int s = 0; s < t; ++s) cons.push_back(gen.y_row(lag + s, i));
    const MatrixXd N = kernel_basis(RowSpace(G).rows(cons), tol, ref);
    const VectorXd urow = G.row(gen.u_row(lag, j)).transpose();
    const VectorXd yrow = G.row(gen.y_row(lag + t, i)).transpose();
    if (vanishes(urow, N, ref, tol)) {
      out.lower_bound = t;
      return out;
    }
    if (!vanishes(yrow, N, ref, tol)) {
      const VectorXd un = N.transpose() * urow, yn = N.transpose() * yrow;
      const double a = yn.dot(un) / un.squaredNorm();
      if ((yn - a * un).norm() > tol.membership_rtol * std::max(yn.norm(), tol.rank_rtol * ref)) {
        out.lower_bound = t;
        return out;
      }
      out.kind = RelDegVerdict::Kind::Informative;
      out.r = t;
      out.witness = a;
      return out;
    }
  }
  out.kind = RelDegVerdict::Kind::InformativeInfinite;
  out.lower_bound = K + 1;
  return out;
}

}  // namespace

int reldeg_lower_bound(const GeneratorSubspaceD& gen, int lag, const ToleranceConfig& tol) {
  if (gen.m != 1 || gen.p != 1) fail(Errc::NotSiso, "lower bound needs SISO generators");
  if (lag < 0) fail(Errc::InvalidArgument, "lag must be nonnegative");
  if (gen.window_length < lag + 1) fail(Errc::DataTooShort, "generators shorter than lag + 1");
  const Index L = lag + 1;
  GeneratorSubspaceD base{MatrixXd(2 * L, gen.generators.cols()), L, 1, 1};
  base.generators.topRows(L) = gen.generators.topRows(L);
  base.generators.bottomRows(L) = gen.generators.middleRows(gen.y_row(0, 0), L);
  std::vector<GeneratorSubspaceD> ext;
  for (int t = 0; t <= lag; ++t) ext.push_back(t == 0 ? base : mpum_extended(base, t, tol));
  const auto v = pair_informativity(ext, 0, 0, lag, tol);
  return v.kind == RelDegVerdict::Kind::Informative ? v.r : v.lower_bound;
}

int reldeg_lower_bound(const DataSetD& ds, int lag, const ToleranceConfig& tol) {
  require_siso(ds);
  return reldeg_lower_bound(generators_or_short(ds, lag + 1, tol), lag, tol);
}

std::optional<VectorRelativeDegree<double>> vecreldeg_pe(const DataSetD& ds, int lag, int n, int L,
                                                         const ToleranceConfig& tol) {
  ds.validate();
  if (lag < 0 || n < 0 || L < lag + n + 1) {
    fail(Errc::InvalidArgument, "vecreldeg_pe needs L >= lag + n + 1");
  }
  require_pe(ds, L + n, tol);
  const auto gen = generators_or_short(ds, L, tol);
  const Index m = ds.m, p = ds.p;
  std::vector<int> r(static_cast<std::size_t>(p));
  for (Index i = 0; i < p; ++i) {
    Degree best = Degree::infinity();
    for (Index j = 0; j < m; ++j) {
      const Degree rij = reldeg_pe_pair(gen, i, j, lag, n, tol);
      if (!rij.infinite && (best.infinite || rij.value < best.value)) best = rij;
    }
    if (best.infinite) return std::nullopt;
    r[static_cast<std::size_t>(i)] = best.value;
  }
  const Index Tf = L - lag;
  MatrixXd G(p, m);
  for (Index j = 0; j < m; ++j) {
    VectorXd uf = VectorXd::Zero(Tf * m);
    uf(j) = 1.0;
    const VectorXd up = VectorXd::Zero(lag * m), yp = VectorXd::Zero(lag * p);
    const VectorXd z = unique_continuation(gen, lag, Tf, up, yp, uf, tol);
    for (Index i = 0; i < p; ++i) G(i, j) = z(r[static_cast<std::size_t>(i)] * p + i);
  }
  if (numerical_rank(G, tol) != p) return std::nullopt;
  return VectorRelativeDegree<double>{r, G};
}

namespace {

/// Certifies full row rank for every completion of the unknown entries by peeling
/// rows that have exactly one possibly nonzero entry, which must be known and nonzero.
bool triangular_completion(const MatrixXd& G, const Eigen::Matrix<bool, -1, -1>& known,
                           double zero_tol) {
  const Index p = G.rows(), m = G.cols();
  std::vector<bool> row_left(static_cast<std::size_t>(p), true);
  std::vector<bool> col_left(static_cast<std::size_t>(m), true);
  for (Index step = 0; step < p; ++step) {
    bool peeled = false;
    for (Index i = 0; i < p && !peeled; ++i) {
      if (!row_left[static_cast<std::size_t>(i)]) continue;
      Index count = 0, col = -1;
      for (Index j = 0; j < m; ++j) {
        if (!col_left[static_cast<std::size_t>(j)]) continue;
        if (!known(i, j) || std::abs(G(i, j)) > zero_tol) {
          ++count;
          col = j;
        }
      }
      if (count == 1 && known(i, col)) {
        row_left[static_cast<std::size_t>(i)] = false;
        col_left[static_cast<std::size_t>(col)] = false;
        peeled = true;
      }
    }
    if (!peeled) return false;
  }
  return true;
}

}  // namespace

VecRelDegVerdict vecreldeg_informativity(const DataSetD& ds, int lag, const ToleranceConfig& tol) {
  ds.validate();
  if (lag < 0) fail(Errc::InvalidArgument, "lag must be nonnegative");
  const auto gen = mpum_generators(ds, lag);
  const Index m = ds.m, p = ds.p;

  // Any system with lag <= lag has order <= lag * p, so K = lag * p windows decide r_ij = inf.
  const int K = lag * static_cast<int>(p);
  std::vector<GeneratorSubspaceD> ext;
  for (int t = 0; t <= K; ++t) ext.push_back(mpum_extended(gen, t, tol));

  VecRelDegVerdict out;
  out.pair_degree = Eigen::MatrixXi::Constant(p, m, -1);
  out.pair_lower_bound = Eigen::MatrixXi::Zero(p, m);
  MatrixXd witness = MatrixXd::Zero(p, m);
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < m; ++j) {
      const auto v = pair_informativity(ext, i, j, lag, tol);
      if (v.kind == RelDegVerdict::Kind::Informative) {
        out.pair_degree(i, j) = v.r;
        witness(i, j) = v.witness;
      } else {
        out.pair_lower_bound(i, j) = v.lower_bound;
      }
    }
  }

  out.r.assign(static_cast<std::size_t>(p), 0);
  out.G = MatrixXd::Zero(p, m);
  out.identified_mask = Eigen::Matrix<bool, -1, -1>::Constant(p, m, true);
  for (Index i = 0; i < p; ++i) {
    int ri = std::numeric_limits<int>::max();
    for (Index j = 0; j < m; ++j) {
      if (out.pair_degree(i, j) >= 0) ri = std::min(ri, out.pair_degree(i, j));
    }
    if (ri == std::numeric_limits<int>::max()) {
      out.kind = VecRelDegVerdict::Kind::NotInformative;
      return out;
    }
    out.r[static_cast<std::size_t>(i)] = ri;
    for (Index j = 0; j < m; ++j) {
      if (out.pair_degree(i, j) >= 0) {
        if (out.pair_degree(i, j) == ri) out.G(i, j) = witness(i, j);
      } else if (out.pair_lower_bound(i, j) < ri) {
        out.kind = VecRelDegVerdict::Kind::NotInformative;
        return out;
      } else if (out.pair_lower_bound(i, j) == ri) {
        out.identified_mask(i, j) = false;
      }
    }
  }

  const double zero_tol = tol.membership_rtol * std::max(1.0, out.G.cwiseAbs().maxCoeff());
  const bool certified = out.identified_mask.all()
                             ? numerical_rank(out.G, tol) == p
                             : triangular_completion(out.G, out.identified_mask, zero_tol);
  out.kind = certified ? VecRelDegVerdict::Kind::Full : VecRelDegVerdict::Kind::DecouplingOnly;
  return out;
}

TrajectoryD reldeg_certificate(int lag, int r, double a) {
  if (r < 0 || r > lag) fail(Errc::InvalidArgument, "certificate needs 0 <= r <= lag");
  TrajectoryD w{MatrixXd::Zero(lag + 1, 1), MatrixXd::Zero(lag + 1, 1)};
  w.u(lag - r, 0) = 1.0;
  w.y(lag, 0) = a;
  return w;
}

}  // namespace datainf

#pragma once

#include <optional>
#include <vector>

#include "datainf/linalg.hpp"

namespace datainf {

/// One input/output record; row t of u and y holds the sample at time t.
template <typename S>
struct Trajectory {
  Mat<S> u;  ///< T x m
  Mat<S> y;  ///< T x p

  Eigen::Index length() const { return u.rows(); }
};

template <typename S>
struct DataSet {
  Eigen::Index m = 0;
  Eigen::Index p = 0;
  std::vector<Trajectory<S>> sequences;
  std::optional<S> sampling_time;

  /// Throws DimensionMismatch or InvalidArgument.
  void validate() const;
  /// All samples multiplied by c.
  DataSet scaled(S c) const;
  Eigen::Index min_length() const;
};

/// Columns span a set of window trajectories. Layout: u(0), ..., u(L-1) stacked
/// above y(0), ..., y(L-1), each time step contributing m (resp. p) rows.
template <typename S>
struct GeneratorSubspace {
  Mat<S> generators;
  Eigen::Index window_length = 0;
  Eigen::Index m = 0;
  Eigen::Index p = 0;

  Eigen::Index u_row(Eigen::Index t, Eigen::Index k) const { return t * m + k; }
  Eigen::Index y_row(Eigen::Index t, Eigen::Index i) const { return window_length * m + t * p + i; }
  auto u_rows() const { return generators.topRows(window_length * m); }
  auto y_rows() const { return generators.bottomRows(window_length * p); }
};

using TrajectoryD = Trajectory<double>;
using DataSetD = DataSet<double>;
using GeneratorSubspaceD = GeneratorSubspace<double>;

enum class HankelPart { Input, Output, Stacked };

/// @brief Block Hankel of order L; w has one sample per row.
/// @throws Error WindowTooLong
template <typename S>
Mat<S> hankel(const Mat<S>& w, Eigen::Index L);

/// Per-sequence Hankels concatenated horizontally.
template <typename S>
Mat<S> mosaic_hankel(const DataSet<S>& ds, Eigen::Index L, HankelPart which);

template <typename S>
bool is_persistently_exciting(const DataSet<S>& ds, Eigen::Index L, const ToleranceConfig& tol = {});

/// @brief Generators of the behavior seen from input j to output i (0-based) when
/// all other inputs are held at zero.
/// @throws Error IndexOutOfRange
template <typename S>
GeneratorSubspace<S> induced_siso(const GeneratorSubspace<S>& gen, Eigen::Index i, Eigen::Index j,
                                  const ToleranceConfig& tol = {});

/// induced_siso applied to the stacked mosaic Hankel of order L.
template <typename S>
GeneratorSubspace<S> induced_siso_generators(const DataSet<S>& ds, Eigen::Index L, Eigen::Index i,
                                             Eigen::Index j, const ToleranceConfig& tol = {});

/// Stacked mosaic Hankel of order L with columns compressed to a basis.
template <typename S>
GeneratorSubspace<S> window_generators(const DataSet<S>& ds, Eigen::Index L,
                                       const ToleranceConfig& tol = {});

}  // namespace datainf

#pragma once

#include <functional>

#include "strips/geometry.hpp"
#include "strips/grid.hpp"
#include "strips/operators.hpp"

namespace strips {

enum class MetricKind { kFull, kGeodesic };

/// Five-point stiffness matrix of the weighted form
///   sum over cells of  h^{-1} |d_s psi|^2 + h |d_t psi|^2   (times ds dt),
/// with the coefficient evaluated at edge midpoints.  MetricKind::kGeodesic
/// replaces h by h0.  Dirichlet rows/columns are eliminated.
/// Throws hypothesis_error when a sup|k| >= 1.
SparseSymOperator assemble_stiffness(const StripGeometry& g, const Grid2D& grid,
                                     MetricKind metric = MetricKind::kFull);

/// Node weight selector for the diagonal mass matrix.
struct MassWeight {
  enum Kind { kH, kH0, kH0RhoInvSq, kH0TimesW } kind = kH;
  double s0 = 0.0;                            // kH0RhoInvSq
  std::function<double(double)> longitudinal;  // kH0TimesW, must be positive

  static MassWeight h() { return {kH, 0.0, nullptr}; }
  static MassWeight h0() { return {kH0, 0.0, nullptr}; }
  static MassWeight h0_rho_inv_sq(double s0) { return {kH0RhoInvSq, s0, nullptr}; }
  static MassWeight h0_times_w(std::function<double(double)> w) {
    return {kH0TimesW, 0.0, std::move(w)};
  }
};

/// Diagonal mass matrix with entries weight(s_i, t_j) ds dt.  Throws
/// std::runtime_error naming the node when a weight fails to be positive.
SparseSymOperator assemble_mass(const StripGeometry& g, const Grid2D& grid,
                                const MassWeight& weight = MassWeight::h());

/// 1D transverse pencil at fixed s: stiffness -(h0 phi')' with h0 at
/// midpoints, diagonal mass with h0 at nodes (both scaled by dt).
TridiagonalPair assemble_transverse(const StripGeometry& g, double s, int n);
TridiagonalPair assemble_transverse(double a, double sigma_sq, int n);

/// Potential form of the same problem: -phi'' + V(s,.) phi with identity
/// mass (scaled by dt).
TridiagonalPair assemble_transverse_schrodinger(const StripGeometry& g, double s,
                                                int n);
TridiagonalPair assemble_transverse_schrodinger(double a, double sigma_sq, int n);

/// First eigenvalue of the discrete flat transverse problem on the same
/// grid, (4/dt^2) sin^2(pi dt / (4a)); the discrete counterpart of
/// first_mode_energy(a).
double discrete_first_mode_energy(double a, int n);

}  // namespace strips

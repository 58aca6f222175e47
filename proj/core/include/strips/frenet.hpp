#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "strips/geometry.hpp"
#include "strips/grid.hpp"

namespace strips {

/// Frenet data sampled along a curve: position and the orthonormal triple
/// (tangent, normal, binormal) as matrix columns.
struct FrenetFrame {
  std::vector<double> s;
  std::vector<Eigen::Vector3d> position;
  std::vector<Eigen::Matrix3d> frame;  // columns T, N, B; det = +1

  /// max over samples of ||F^T F - I||_inf, the orthonormality drift.
  double max_orthonormality_defect() const;
};

/// Integrates the Frenet system Gamma' = T, T' = kappa N, N' = -kappa T +
/// tau B, B' = -tau N from the identity frame at s_grid.front(), with
/// classical RK4 steps of at most max_step and a polar re-orthonormalization
/// after every step.  kappa must stay positive on the grid, except for the
/// straight-line case kappa == 0 and tau == 0 (constant frame).  Throws
/// hypothesis_error otherwise (in particular for kappa == 0 with tau != 0).
FrenetFrame integrate_frenet(const FunctionSpec& kappa, const FunctionSpec& tau,
                             std::span<const double> s_grid, double max_step = 1e-3);

/// Lattice of surface points L(s,t) = Gamma(s) + t (N cos theta - B sin theta).
struct SurfaceMesh {
  std::vector<double> s, t;
  std::vector<Eigen::Vector3d> vertices;  // s-major

  int n_s() const { return static_cast<int>(s.size()); }
  int n_t() const { return static_cast<int>(t.size()); }
  const Eigen::Vector3d& at(int i, int j) const { return vertices[i * n_t() + j]; }
};

/// Builds the mesh on the grid's interior lattice; the frame must have been
/// integrated on exactly grid.s(0..n_s-1).
SurfaceMesh build_mesh(const StripGeometry& g, const FrenetFrame& frame,
                       const Grid2D& grid);

/// Measured first fundamental form via central differences of the mesh;
/// defined on the interior ring (NaN on the boundary).
struct FundamentalForm {
  int n_s = 0, n_t = 0;
  std::vector<double> g11, g12, g22;

  bool valid(int i, int j) const {
    return i > 0 && j > 0 && i + 1 < n_s && j + 1 < n_t;
  }
  double at11(int i, int j) const { return g11[i * n_t + j]; }
  double at12(int i, int j) const { return g12[i * n_t + j]; }
  double at22(int i, int j) const { return g22[i * n_t + j]; }
};

FundamentalForm measure_metric(const SurfaceMesh& mesh);

/// CSV rows s,t,x,y,z.
void write_mesh_csv(std::ostream& os, const SurfaceMesh& mesh);
/// Wavefront-style text: v lines plus quad faces over the lattice.
void write_mesh_obj(std::ostream& os, const SurfaceMesh& mesh);

}  // namespace strips

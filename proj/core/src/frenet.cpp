#include "strips/frenet.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "strips/errors.hpp"

namespace strips {

namespace {

struct FrenetState {
  Eigen::Vector3d gamma;
  Eigen::Matrix3d F;  // columns T, N, B
};

// Right-hand side of the Frenet system at curvature k, torsion tau.
FrenetState rhs(const FrenetState& x, double k, double tau) {
  FrenetState d;
  const Eigen::Vector3d T = x.F.col(0), N = x.F.col(1), B = x.F.col(2);
  d.gamma = T;
  d.F.col(0) = k * N;
  d.F.col(1) = -k * T + tau * B;
  d.F.col(2) = -tau * N;
  return d;
}

FrenetState axpy(const FrenetState& x, double h, const FrenetState& d) {
  return {x.gamma + h * d.gamma, x.F + h * d.F};
}

// Two Newton steps toward the orthogonal polar factor; the frame is within
// O(step^5) of orthogonal, so this reaches machine precision.
void reorthonormalize(Eigen::Matrix3d& F) {
  for (int it = 0; it < 2; ++it) {
    F = 0.5 * (F + F.inverse().transpose());
  }
}

}  // namespace

double FrenetFrame::max_orthonormality_defect() const {
  double worst = 0.0;
  for (const auto& F : frame) {
    const Eigen::Matrix3d G = F.transpose() * F - Eigen::Matrix3d::Identity();
    worst = std::max(worst, G.cwiseAbs().maxCoeff());
  }
  return worst;
}

FrenetFrame integrate_frenet(const FunctionSpec& kappa, const FunctionSpec& tau,
                             std::span<const double> s_grid, double max_step) {
  if (s_grid.size() < 2) {
    throw std::invalid_argument("integrate_frenet: need at least two samples");
  }
  if (!(max_step > 0.0)) {
    throw std::invalid_argument("integrate_frenet: max_step must be positive");
  }
  for (size_t i = 0; i + 1 < s_grid.size(); ++i) {
    if (!(s_grid[i] < s_grid[i + 1])) {
      throw std::invalid_argument("integrate_frenet: s_grid must be increasing");
    }
  }

  const bool straight = kappa.identically_zero();
  if (straight && !tau.identically_zero()) {
    throw hypothesis_error(
        "integrate_frenet: kappa == 0 with tau != 0 is unsupported (torsion of "
        "a straight line is undefined)");
  }

  FrenetFrame out;
  out.s.assign(s_grid.begin(), s_grid.end());
  out.position.reserve(s_grid.size());
  out.frame.reserve(s_grid.size());

  if (straight) {
    for (double s : s_grid) {
      out.position.emplace_back(s - s_grid.front(), 0.0, 0.0);
      out.frame.emplace_back(Eigen::Matrix3d::Identity());
    }
    return out;
  }

  FrenetState x{Eigen::Vector3d::Zero(), Eigen::Matrix3d::Identity()};
  out.position.push_back(x.gamma);
  out.frame.push_back(x.F);

  for (size_t i = 0; i + 1 < s_grid.size(); ++i) {
    const double s0 = s_grid[i], s1 = s_grid[i + 1];
    const int n_sub = std::max(1, static_cast<int>(std::ceil((s1 - s0) / max_step)));
    const double h = (s1 - s0) / n_sub;
    for (int sub = 0; sub < n_sub; ++sub) {
      const double s = s0 + h * sub;
      const double ka = kappa.value(s), kb = kappa.value(s + 0.5 * h),
                   kc = kappa.value(s + h);
      if (!(ka > 0.0) || !(kb > 0.0) || !(kc > 0.0)) {
        throw hypothesis_error(
            "integrate_frenet: kappa must stay positive along the curve");
      }
      const double ta = tau.value(s), tb = tau.value(s + 0.5 * h),
                   tc = tau.value(s + h);
      const FrenetState k1 = rhs(x, ka, ta);
      const FrenetState k2 = rhs(axpy(x, 0.5 * h, k1), kb, tb);
      const FrenetState k3 = rhs(axpy(x, 0.5 * h, k2), kb, tb);
      const FrenetState k4 = rhs(axpy(x, h, k3), kc, tc);
      x.gamma += (h / 6.0) * (k1.gamma + 2.0 * k2.gamma + 2.0 * k3.gamma + k4.gamma);
      x.F += (h / 6.0) * (k1.F + 2.0 * k2.F + 2.0 * k3.F + k4.F);
      reorthonormalize(x.F);
    }
    out.position.push_back(x.gamma);
    out.frame.push_back(x.F);
  }
  return out;
}

SurfaceMesh build_mesh(const StripGeometry& g, const FrenetFrame& frame,
                       const Grid2D& grid) {
  if (static_cast<int>(frame.s.size()) != grid.n_s) {
    throw std::invalid_argument("build_mesh: frame does not cover the grid");
  }
  for (int i = 0; i < grid.n_s; ++i) {
    if (std::abs(frame.s[i] - grid.s(i)) > 1e-9 * (1.0 + std::abs(grid.s(i)))) {
      throw std::invalid_argument("build_mesh: frame samples differ from grid nodes");
    }
  }

  SurfaceMesh mesh;
  mesh.s.resize(grid.n_s);
  mesh.t.resize(grid.n_t);
  for (int i = 0; i < grid.n_s; ++i) mesh.s[i] = grid.s(i);
  for (int j = 0; j < grid.n_t; ++j) mesh.t[j] = grid.t(j);
  mesh.vertices.reserve(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.n_s; ++i) {
    const double th = g.theta().value(mesh.s[i]);
    const Eigen::Vector3d dir = frame.frame[i].col(1) * std::cos(th) -
                                frame.frame[i].col(2) * std::sin(th);
    for (int j = 0; j < grid.n_t; ++j) {
      mesh.vertices.push_back(frame.position[i] + mesh.t[j] * dir);
    }
  }
  return mesh;
}

FundamentalForm measure_metric(const SurfaceMesh& mesh) {
  FundamentalForm form;
  form.n_s = mesh.n_s();
  form.n_t = mesh.n_t();
  const size_t n = mesh.vertices.size();
  form.g11.assign(n, std::nan(""));
  form.g12.assign(n, std::nan(""));
  form.g22.assign(n, std::nan(""));

  for (int i = 1; i + 1 < form.n_s; ++i) {
    const double two_ds = mesh.s[i + 1] - mesh.s[i - 1];
    for (int j = 1; j + 1 < form.n_t; ++j) {
      const double two_dt = mesh.t[j + 1] - mesh.t[j - 1];
      const Eigen::Vector3d du = (mesh.at(i + 1, j) - mesh.at(i - 1, j)) / two_ds;
      const Eigen::Vector3d dv = (mesh.at(i, j + 1) - mesh.at(i, j - 1)) / two_dt;
      const int idx = i * form.n_t + j;
      form.g11[idx] = du.dot(du);
      form.g12[idx] = du.dot(dv);
      form.g22[idx] = dv.dot(dv);
    }
  }
  return form;
}

void write_mesh_csv(std::ostream& os, const SurfaceMesh& mesh) {
  os << "s,t,x,y,z\n";
  char buf[200];
  for (int i = 0; i < mesh.n_s(); ++i) {
    for (int j = 0; j < mesh.n_t(); ++j) {
      const auto& v = mesh.at(i, j);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", mesh.s[i],
                    mesh.t[j], v.x(), v.y(), v.z());
      os << buf;
    }
  }
}

void write_mesh_obj(std::ostream& os, const SurfaceMesh& mesh) {
  char buf[160];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    os << buf;
  }
  for (int i = 0; i + 1 < mesh.n_s(); ++i) {
    for (int j = 0; j + 1 < mesh.n_t(); ++j) {
      const int v00 = i * mesh.n_t() + j + 1;  // 1-based
      const int v10 = (i + 1) * mesh.n_t() + j + 1;
      std::snprintf(buf, sizeof(buf), "f %d %d %d %d\n", v00, v10, v10 + 1, v00 + 1);
      os << buf;
    }
  }
}

}  // namespace strips

#include "strips/assemble.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "strips/errors.hpp"

namespace strips {

namespace {

double metric_coeff(const StripGeometry& g, MetricKind metric, double s, double t) {
  return metric == MetricKind::kFull ? eval_h(g, s, t) : eval_h0(g, s, t);
}

}  // namespace

SparseSymOperator assemble_stiffness(const StripGeometry& g, const Grid2D& grid,
                                     MetricKind metric) {
  if (!(grid.a == g.half_width())) {
    throw std::invalid_argument("assemble_stiffness: grid half-width differs from geometry");
  }
  if (!(g.half_width() * g.k_sup_bound() < 1.0)) {
    throw hypothesis_error("assemble_stiffness: a * sup|k| >= 1, metric may degenerate");
  }

  const double ds = grid.ds(), dt = grid.dt();
  const double cell = ds * dt;
  const double cs = cell / (ds * ds);
  const double ct = cell / (dt * dt);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(grid.size()) * 5);
  for (int i = 0; i < grid.n_s; ++i) {
    for (int j = 0; j < grid.n_t; ++j) {
      const int row = grid.index(i, j);
      // s-direction edges carry 1/h at (s_mid, t_j); t-direction edges carry
      // h at (s_i, t_mid).  Edges to eliminated boundary nodes contribute to
      // the diagonal only.
      const double wl = cs / metric_coeff(g, metric, grid.s_mid(i), grid.t(j));
      const double wr = cs / metric_coeff(g, metric, grid.s_mid(i + 1), grid.t(j));
      const double wd = ct * metric_coeff(g, metric, grid.s(i), grid.t_mid(j));
      const double wu = ct * metric_coeff(g, metric, grid.s(i), grid.t_mid(j + 1));
      trip.emplace_back(row, row, wl + wr + wd + wu);
      if (i + 1 < grid.n_s) {
        trip.emplace_back(row, grid.index(i + 1, j), -wr);
        trip.emplace_back(grid.index(i + 1, j), row, -wr);
      }
      if (j + 1 < grid.n_t) {
        trip.emplace_back(row, grid.index(i, j + 1), -wu);
        trip.emplace_back(grid.index(i, j + 1), row, -wu);
      }
    }
  }
  return SparseSymOperator::from_triplets(grid.size(), trip);
}

SparseSymOperator assemble_mass(const StripGeometry& g, const Grid2D& grid,
                                const MassWeight& weight) {
  if (!(grid.a == g.half_width())) {
    throw std::invalid_argument("assemble_mass: grid half-width differs from geometry");
  }
  const double cell = grid.ds() * grid.dt();
  Eigen::VectorXd d(grid.size());
  for (int i = 0; i < grid.n_s; ++i) {
    const double s = grid.s(i);
    for (int j = 0; j < grid.n_t; ++j) {
      const double t = grid.t(j);
      double w = 0.0;
      switch (weight.kind) {
        case MassWeight::kH:
          w = eval_h(g, s, t);
          break;
        case MassWeight::kH0:
          w = eval_h0(g, s, t);
          break;
        case MassWeight::kH0RhoInvSq: {
          const double d0 = s - weight.s0;
          w = eval_h0(g, s, t) / (1.0 + d0 * d0);
          break;
        }
        case MassWeight::kH0TimesW:
          if (!weight.longitudinal) {
            throw std::invalid_argument("assemble_mass: missing longitudinal weight");
          }
          w = eval_h0(g, s, t) * weight.longitudinal(s);
          break;
      }
      if (!(w > 0.0)) {
        std::ostringstream os;
        os << "assemble_mass: non-positive weight " << w << " at node (i=" << i
           << ", j=" << j << "), s=" << s << ", t=" << t;
        throw std::runtime_error(os.str());
      }
      d[grid.index(i, j)] = w * cell;
    }
  }
  return SparseSymOperator::diagonal(std::move(d));
}

TridiagonalPair assemble_transverse(double a, double sigma_sq, int n) {
  if (n < 16) throw std::invalid_argument("assemble_transverse: n >= 16 required");
  const double d = 2.0 * a / (n + 1);
  auto h0 = [&](double t) { return std::sqrt(1.0 + t * t * sigma_sq); };

  TridiagonalPair T;
  T.a_diag.resize(n);
  T.a_off.resize(n - 1);
  T.b_diag.resize(n);
  const double c = d / (d * d);  // edge coefficient scaled by the dt cell
  for (int j = 0; j < n; ++j) {
    const double tm_lo = -a + d * (j + 0.5);
    const double tm_hi = -a + d * (j + 1.5);
    T.a_diag[j] = c * (h0(tm_lo) + h0(tm_hi));
    if (j + 1 < n) T.a_off[j] = -c * h0(tm_hi);
    T.b_diag[j] = d * h0(-a + d * (j + 1));
  }
  return T;
}

TridiagonalPair assemble_transverse(const StripGeometry& g, double s, int n) {
  const double sg = g.sigma(s);
  return assemble_transverse(g.half_width(), sg * sg, n);
}

TridiagonalPair assemble_transverse_schrodinger(double a, double sigma_sq, int n) {
  if (n < 16) throw std::invalid_argument("assemble_transverse_schrodinger: n >= 16 required");
  const double d = 2.0 * a / (n + 1);
  TridiagonalPair T;
  T.a_diag.resize(n);
  T.a_off = Eigen::VectorXd::Constant(n - 1, -1.0 / d);
  T.b_diag = Eigen::VectorXd::Constant(n, d);
  for (int j = 0; j < n; ++j) {
    const double t = -a + d * (j + 1);
    const double h0sq = 1.0 + t * t * sigma_sq;
    const double V = sigma_sq * (2.0 - t * t * sigma_sq) / (4.0 * h0sq * h0sq);
    T.a_diag[j] = 2.0 / d + d * V;
  }
  return T;
}

TridiagonalPair assemble_transverse_schrodinger(const StripGeometry& g, double s,
                                                int n) {
  const double sg = g.sigma(s);
  return assemble_transverse_schrodinger(g.half_width(), sg * sg, n);
}

double discrete_first_mode_energy(double a, int n) {
  const double d = 2.0 * a / (n + 1);
  const double s = std::sin(std::numbers::pi * d / (4.0 * a));
  return 4.0 / (d * d) * s * s;
}

}  // namespace strips

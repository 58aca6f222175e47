#pragma once

#include <stdexcept>

namespace strips {

/// Uniform interior grid on (lo, hi) with n nodes; the Dirichlet boundary
/// nodes are eliminated, so spacing = (hi - lo)/(n + 1).
struct Grid1D {
  double lo = -1.0;
  double hi = 1.0;
  int n = 0;

  Grid1D(double lo_, double hi_, int n_) : lo(lo_), hi(hi_), n(n_) {
    if (!(hi > lo)) throw std::invalid_argument("Grid1D: hi must exceed lo");
    if (n < 8) throw std::invalid_argument("Grid1D: need at least 8 nodes");
  }

  double spacing() const { return (hi - lo) / (n + 1); }
  double node(int j) const { return lo + spacing() * (j + 1); }
  double midpoint(int j) const { return lo + spacing() * (j + 0.5); }  // j in [0, n]
};

/// Tensor grid of interior nodes on (-L, L) x (-a, a).
struct Grid2D {
  double L = 1.0;
  double a = 0.5;
  int n_s = 0;
  int n_t = 0;

  Grid2D(double L_, double a_, int n_s_, int n_t_)
      : L(L_), a(a_), n_s(n_s_), n_t(n_t_) {
    if (!(L > 0.0) || !(a > 0.0)) {
      throw std::invalid_argument("Grid2D: L and a must be positive");
    }
    if (n_s < 8 || n_t < 8) {
      throw std::invalid_argument("Grid2D: need at least 8 nodes per direction");
    }
  }

  double ds() const { return 2.0 * L / (n_s + 1); }
  double dt() const { return 2.0 * a / (n_t + 1); }
  double s(int i) const { return -L + ds() * (i + 1); }
  double t(int j) const { return -a + dt() * (j + 1); }
  double s_mid(int i) const { return -L + ds() * (i + 0.5); }  // i in [0, n_s]
  double t_mid(int j) const { return -a + dt() * (j + 0.5); }

  int index(int i, int j) const { return i * n_t + j; }
  int size() const { return n_s * n_t; }
};

}  // namespace strips

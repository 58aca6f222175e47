#include <cmath>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "strips/assemble.hpp"
#include "strips/eigensolver.hpp"
#include "strips/errors.hpp"
#include "strips/grid.hpp"
#include "strips/quadrature.hpp"
#include "strips/trial.hpp"
#include "support.hpp"

using namespace strips;

TEST_CASE("flat strip stiffness is the scaled five-point Laplacian") {
  const auto g = testsupport::flat(0.5);
  const Grid2D grid(2.0, 0.5, 9, 9);
  const auto A = assemble_stiffness(g, grid);
  const double ds = grid.ds(), dt = grid.dt();
  const double cell = ds * dt;

  const Eigen::MatrixXd M(A.matrix());
  const int c = grid.index(4, 4);  // interior node with all four neighbours
  CHECK(M(c, c) == doctest::Approx(cell * (2.0 / (ds * ds) + 2.0 / (dt * dt))));
  CHECK(M(c, grid.index(5, 4)) == doctest::Approx(-cell / (ds * ds)));
  CHECK(M(c, grid.index(4, 5)) == doctest::Approx(-cell / (dt * dt)));
  CHECK(M(c, grid.index(3, 4)) == doctest::Approx(-cell / (ds * ds)));
}

TEST_CASE("assembled operators are exactly symmetric") {
  const StripGeometry g(0.5, FunctionSpec::gaussian_bump(0.4, 0.3, 1.5),
                        FunctionSpec::gaussian_bump(1.0, -0.5, 2.0),
                        FunctionSpec::constant(0.2));
  const Grid2D grid(4.0, 0.5, 24, 12);
  CHECK(assemble_stiffness(g, grid).max_asymmetry() == 0.0);
  CHECK(assemble_stiffness(g, grid, MetricKind::kGeodesic).max_asymmetry() == 0.0);
}

TEST_CASE("mass matrices") {
  SUBCASE("unit weight gives ds*dt times identity") {
    const auto g = testsupport::flat(0.5);
    const Grid2D grid(3.0, 0.5, 11, 9);
    const auto B = assemble_mass(g, grid);
    const double cell = grid.ds() * grid.dt();
    for (int i = 0; i < B.dim(); ++i) {
      CHECK(B.diagonal_values()[i] == doctest::Approx(cell).epsilon(1e-15));
    }
  }
  SUBCASE("h0 weight at a node with t=0.5, sigma=2") {
    const auto g = testsupport::const_twist(0.6, 2.0);
    const Grid2D grid(3.0, 0.6, 11, 11);  // dt = 0.1, so t=0.5 is node j=10
    CHECK(grid.t(10) == doctest::Approx(0.5).epsilon(1e-14));
    const auto B = assemble_mass(g, grid, MassWeight::h0());
    const double expected = std::numbers::sqrt2 * grid.ds() * grid.dt();
    CHECK(B.diagonal_values()[grid.index(5, 10)] ==
          doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("rho weight is h0 * ds*dt at the anchor") {
    const auto g = testsupport::const_twist(0.5, 1.0);
    const Grid2D grid(3.0, 0.5, 11, 9);  // s=0 is node i=5
    CHECK(grid.s(5) == doctest::Approx(0.0));
    const auto B = assemble_mass(g, grid, MassWeight::h0_rho_inv_sq(0.0));
    const auto B0 = assemble_mass(g, grid, MassWeight::h0());
    CHECK(B.diagonal_values()[grid.index(5, 4)] ==
          doctest::Approx(B0.diagonal_values()[grid.index(5, 4)]).epsilon(1e-14));
  }
  SUBCASE("all mass weights are positive") {
    const auto g = testsupport::const_kt(0.5, 0.4, 1.0);
    const Grid2D grid(3.0, 0.5, 16, 12);
    for (const auto& w : {MassWeight::h(), MassWeight::h0()}) {
      const auto B = assemble_mass(g, grid, w);
      CHECK((B.diagonal_values().array() > 0.0).all());
    }
  }
  SUBCASE("non-positive weight is reported with the node") {
    const auto g = testsupport::const_twist(0.5, 1.0);
    const Grid2D grid(3.0, 0.5, 11, 9);
    const auto w = MassWeight::h0_times_w([](double s) { return s < 0.0 ? -1.0 : 1.0; });
    CHECK_THROWS_WITH_AS(assemble_mass(g, grid, w),
                         doctest::Contains("non-positive weight"), std::runtime_error);
  }
}

TEST_CASE("stiffness is positive definite under the basic assumption") {
  const auto g = testsupport::const_kt(0.5, 0.4, 0.8);
  const Grid2D grid(4.0, 0.5, 20, 12);
  const auto A = assemble_stiffness(g, grid);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(A.dim());
  const auto B = SparseSymOperator::diagonal(ones);
  const auto res = smallest_eig(A, B);
  CHECK(res.value >= -1e-10);
  CHECK(res.value > 0.0);
}

TEST_CASE("assumption gate on assembly") {
  const auto g = testsupport::const_kt(0.5, 2.5, 0.0);  // a sup|k| = 1.25
  const Grid2D grid(3.0, 0.5, 12, 10);
  CHECK_THROWS_AS(assemble_stiffness(g, grid), hypothesis_error);
  const Grid2D mismatched(3.0, 0.4, 12, 10);
  CHECK_THROWS_AS(assemble_stiffness(testsupport::flat(0.5), mismatched),
                  std::invalid_argument);
}

TEST_CASE("discrete rectangle mode matches the analytic eigenvalue") {
  const auto g = testsupport::flat(0.5);
  const double L = 5.0;
  const Grid2D grid(L, 0.5, 200, 40);
  const auto A = assemble_stiffness(g, grid);
  const auto B = assemble_mass(g, grid);
  // Rayleigh quotient of the sampled first rectangle mode.
  Eigen::VectorXd x(grid.size());
  for (int i = 0; i < grid.n_s; ++i) {
    for (int j = 0; j < grid.n_t; ++j) {
      x[grid.index(i, j)] = std::cos(std::numbers::pi * grid.s(i) / (2.0 * L)) *
                            std::cos(std::numbers::pi * grid.t(j));
    }
  }
  const double rq = rayleigh_quotient(A, B, x);
  const double exact =
      std::pow(std::numbers::pi / (2.0 * L), 2) + std::numbers::pi * std::numbers::pi;
  const double delta = std::max(grid.ds(), grid.dt());
  CHECK(std::abs(rq - exact) <= 3.0 * delta * delta);
}

TEST_CASE("flat rectangle eigenvalue within 3 max(ds,dt)^2 at default proportions") {
  const auto g = testsupport::flat(0.5);
  const Grid2D grid(12.0, 0.5, 600, 60);
  const auto A = assemble_stiffness(g, grid);
  const auto B = assemble_mass(g, grid);
  EigOptions opt;
  opt.tol = 1e-9;
  const auto res = smallest_eig(A, B, opt);
  const double exact =
      std::pow(std::numbers::pi / 24.0, 2) + std::numbers::pi * std::numbers::pi;
  const double delta = std::max(grid.ds(), grid.dt());
  CHECK(std::abs(res.value - exact) <= 3.0 * delta * delta);
}

TEST_CASE("discrete form value converges to the quadrature value at order 2") {
  const StripGeometry g(0.5, FunctionSpec::gaussian_bump(0.3, 0.0, 2.0),
                        FunctionSpec::constant(1.0), FunctionSpec::constant(0.0));
  const TrialFunction psi(FunctionSpec::gaussian_bump(1.0, 0.0, 1.0), 0.5, 0.3);

  // Oracle: tensor quadrature of h^{-1} (d_s psi)^2 + h (d_t psi)^2.
  const auto breaks = uniform_breaks(-9.0, 9.0, 0.25);
  std::vector<double> sn, sw;
  panel_nodes(breaks, 16, sn, sw);
  const auto& tr = gauss_legendre::rule(64);
  double q_exact = 0.0;
  for (size_t is = 0; is < sn.size(); ++is) {
    for (size_t jt = 0; jt < tr.nodes.size(); ++jt) {
      const double t = 0.5 * tr.nodes[jt];
      const double wt = sw[is] * 0.5 * tr.weights[jt];
      const double h = eval_h(g, sn[is], t);
      const double vs = psi.d_s(sn[is], t);
      const double vt = psi.d_t(sn[is], t);
      q_exact += wt * (vs * vs / h + h * vt * vt);
    }
  }

  auto discrete_q = [&](int n_s, int n_t) {
    const Grid2D grid(9.0, 0.5, n_s, n_t);
    const auto A = assemble_stiffness(g, grid);
    Eigen::VectorXd x(grid.size());
    for (int i = 0; i < grid.n_s; ++i) {
      for (int j = 0; j < grid.n_t; ++j) {
        x[grid.index(i, j)] = psi.value(grid.s(i), grid.t(j));
      }
    }
    return x.dot(A.apply(x));
  };

  const double e1 = std::abs(discrete_q(319, 39) - q_exact);
  const double e2 = std::abs(discrete_q(639, 79) - q_exact);
  CHECK(testsupport::fitted_order(e1, e2) >= 1.9);
  CHECK(e2 < e1);
}

TEST_CASE("transverse pair at sigma=0 reproduces the flat mode") {
  const double a = 0.5;
  for (int n : {64, 128}) {
    const auto T = assemble_transverse(a, 0.0, n);
    const auto res = smallest_eig(T);
    CHECK(res.value == doctest::Approx(discrete_first_mode_energy(a, n)).epsilon(1e-12));
  }
  // discrete -> continuum at order 2
  const double E1 = std::numbers::pi * std::numbers::pi;
  const double e1 = std::abs(discrete_first_mode_energy(a, 64) - E1);
  const double e2 = std::abs(discrete_first_mode_energy(a, 128) - E1);
  CHECK(testsupport::fitted_order(e1, e2) >= 1.9);
}

TEST_CASE("transverse schrodinger pair has identity mass and the right potential") {
  const auto T = assemble_transverse_schrodinger(0.5, 1.0, 31);  // dt = 1/32
  const double d = 1.0 / 32.0;
  CHECK(T.b_diag[0] == doctest::Approx(d).epsilon(1e-15));
  // node t=0 is j=15; V(0) = sigma^2/2
  CHECK(T.a_diag[15] == doctest::Approx(2.0 / d + d * 0.5).epsilon(1e-14));
}

TEST_CASE("coordinate export round-trips entries") {
  const auto g = testsupport::const_twist(0.5, 1.0);
  const Grid2D grid(2.0, 0.5, 8, 8);
  const auto A = assemble_stiffness(g, grid);
  std::ostringstream os;
  A.write_coordinate(os);
  std::istringstream is(os.str());
  int r, c;
  double v;
  int count = 0;
  double diag_sum = 0.0;
  while (is >> r >> c >> v) {
    ++count;
    if (r == c) diag_sum += v;
    CHECK(r >= 0);
    CHECK(c >= 0);
    CHECK(r < A.dim());
    CHECK(c < A.dim());
  }
  CHECK(count == A.matrix().nonZeros());
  Eigen::VectorXd diag = Eigen::MatrixXd(A.matrix()).diagonal();
  CHECK(diag_sum == doctest::Approx(diag.sum()).epsilon(1e-12));
}

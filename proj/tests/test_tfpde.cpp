#include <doctest.h>

#include <cmath>

#include "mlosc/tfpde.hpp"

using namespace mlosc;

TEST_CASE("symbol algebra") {
  TfpdeParams flat;
  flat.mu = 1.0;
  flat.ell = 1.0;
  for (double xi : {-5.0, 0.0, 0.3, 11.0}) CHECK(symbol(flat, xi) == doctest::Approx(1.0));

  TfpdeParams p;
  p.mu = 2.0;
  p.ell = 0.5;
  CHECK(symbol(p, 0.0) == doctest::Approx(2.0));
  CHECK(symbol(p, 1e6) == doctest::Approx(2.0).epsilon(1e-8));  // -> 1/ell

  TfpdeParams q = tfpde_defaults_b();  // mu=1, ell=2
  double lo = std::min(q.mu, 1.0 / q.ell), hi = std::max(q.mu, 1.0 / q.ell);
  for (double xi = -12; xi <= 12; xi += 0.25) {
    double s = symbol(q, xi);
    CHECK(s >= lo - 1e-12);
    CHECK(s <= hi + 1e-12);
  }
}

TEST_CASE("t = 0 reproduces the initial datum") {
  TfpdeParams p = tfpde_defaults_a();
  TfpdeSolver solver(p);
  auto u0 = solver.solve(0.0);
  double worst = 0;
  for (size_t i = 0; i < p.x_grid.size(); ++i)
    worst = std::max(worst, std::abs(u0[i] - Complex(p.init(p.x_grid[i]), 0)));
  CHECK(worst <= 1e-8);
}

TEST_CASE("even initial datum gives an even solution") {
  TfpdeParams p = tfpde_defaults_a();
  TfpdeSolver solver(p);
  auto u = solver.solve(5.0);
  size_t n = p.x_grid.size();
  double worst = 0;
  for (size_t i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(u[i] - u[n - 1 - i]));
  CHECK(worst <= 1e-8);
}

TEST_CASE("nearly classical evolution keeps the sup norm flat") {
  TfpdeParams p;
  p.alpha = 0.999;
  p.mu = 1.0;
  p.ell = 1.0;  // flat symbol: u(t,x) = E(i t^alpha) psi(x)
  TfpdeSolver solver(p);
  double s0 = solver.sup_norm(0.0);
  double s10 = solver.sup_norm(10.0);
  CHECK(std::fabs(s10 - s0) / s0 < 0.05);
}

TEST_CASE("dispersive sup-norm decay for the shipped parameter sets") {
  DispersiveReport ra = dispersive_check(tfpde_defaults_a());
  CHECK(ra.slope <= -0.5 + 0.15);
  CHECK(ra.pass);
  DispersiveReport rb = dispersive_check(tfpde_defaults_b());
  CHECK(rb.slope <= -0.8 + 0.15);
  CHECK(rb.pass);
}

TEST_CASE("parameter validation") {
  TfpdeParams p = tfpde_defaults_a();
  p.alpha = 1.0;
  CHECK_THROWS_AS(TfpdeSolver{p}, RegimeError);
  TfpdeParams q = tfpde_defaults_a();
  q.mu = -1;
  CHECK_THROWS_AS(TfpdeSolver{q}, std::invalid_argument);
}

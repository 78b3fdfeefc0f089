#include <doctest.h>

#include "mlosc/config.hpp"

using namespace mlosc;

TEST_CASE("sweep config round-trips losslessly") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::sweep;
  cfg.alpha = 0.5;
  cfg.beta = 0.7;
  cfg.a = 0;
  cfg.b = 1;
  cfg.phase = FunctionSpec::affine(2, 1);
  cfg.amp = FunctionSpec::polynomial({1}, Role::amplitude);
  cfg.variant = Variant::direct;
  cfg.grid = GridSpec{GridSpec::Kind::log_scale, 1, 1e4, 17, {}};
  cfg.quad.abs_tol = 1e-10;
  cfg.fit_window = {100.0, 10000.0};
  cfg.log_factor = false;
  cfg.output_name = "th1_sweep";

  ExperimentConfig back = ExperimentConfig::parse(cfg.serialize());
  CHECK(back == cfg);
  // a second round trip is byte-stable
  CHECK(back.serialize() == cfg.serialize());
}

TEST_CASE("awkward doubles survive the round trip") {
  ExperimentConfig cfg;
  cfg.alpha = 0.1;  // not exactly representable
  cfg.beta = 1e-300;
  cfg.a = -0.0;
  cfg.b = 12345.678901234567;
  cfg.grid = GridSpec{GridSpec::Kind::list, 0, 0, 0, {0.0, 1e-12, 3.141592653589793}};
  ExperimentConfig back = ExperimentConfig::parse(cfg.serialize());
  CHECK(back.alpha == cfg.alpha);
  CHECK(back.beta == cfg.beta);
  CHECK(back.b == cfg.b);
  CHECK(back.grid.values == cfg.grid.values);
}

TEST_CASE("pde config round-trips") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentConfig::Kind::pde;
  cfg.pde_alpha = 0.8;
  cfg.pde_ell = 2.0;
  cfg.pde_mu = 1.0;
  cfg.pde_init = FunctionSpec::gaussian(0, 1, Role::amplitude);
  cfg.pde_t = GridSpec{GridSpec::Kind::log_scale, 1, 1000, 13, {}};
  ExperimentConfig back = ExperimentConfig::parse(cfg.serialize());
  CHECK(back == cfg);
  TfpdeParams p = back.tfpde_params();
  CHECK(p.alpha == 0.8);
  CHECK(p.t_grid.size() == 13);
  CHECK(p.x_grid.size() == 257);  // module default kept
}

TEST_CASE("unknown keys and sections are rejected") {
  CHECK_THROWS_AS(ExperimentConfig::parse("[order]\nalpha = 1\ngamma = 2\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("[nosuch]\nk = 1\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("alpha = 1\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("[order]\nalpha\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("[phase]\nfamily = cubic\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("[sweep]\ngrid = log 1\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
  ExperimentConfig cfg = ExperimentConfig::parse(
      "# experiment\n\n[order]\n  alpha = 0.5  \nbeta = 0.7\n# done\n");
  CHECK(cfg.alpha == 0.5);
  CHECK(cfg.beta == 0.7);
}

TEST_CASE("grid shorthands expand") {
  GridSpec log{GridSpec::Kind::log_scale, 1, 100, 5, {}};
  auto v = log.expand();
  REQUIRE(v.size() == 5);
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[2] == doctest::Approx(10.0));
  CHECK(v[4] == doctest::Approx(100.0));

  GridSpec uni{GridSpec::Kind::uniform, -1, 1, 3, {}};
  auto u = uni.expand();
  CHECK(u[1] == doctest::Approx(0.0));

  GridSpec bad{GridSpec::Kind::log_scale, -1, 10, 3, {}};
  CHECK_THROWS_AS(bad.expand(), ConfigError);
}

TEST_CASE("complex literal parsing") {
  CHECK(parse_complex("0+1i") == Complex(0, 1));
  CHECK(parse_complex("1-2i") == Complex(1, -2));
  CHECK(parse_complex("-2.5") == Complex(-2.5, 0));
  CHECK(parse_complex("3i") == Complex(0, 3));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("1e2+1e-3i") == Complex(100, 0.001));
  CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
  CHECK_THROWS_AS(parse_complex(""), ConfigError);
}

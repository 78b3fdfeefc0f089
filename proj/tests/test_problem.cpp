#include <doctest.h>

#include <cmath>

#include "mlosc/problem.hpp"

using namespace mlosc;

TEST_CASE("family evaluation and exact derivatives") {
  auto mono = FunctionSpec::monomial(1, 2);
  CHECK(mono.eval(3.0, 0) == doctest::Approx(9.0));
  CHECK(mono.eval(3.0, 1) == doctest::Approx(6.0));
  CHECK(mono.eval(3.0, 2) == doctest::Approx(2.0));
  CHECK(mono.eval(3.0, 3) == 0.0);

  auto aff = FunctionSpec::affine(2, 1);
  CHECK(aff(0.0) == doctest::Approx(2.0));
  CHECK(aff.eval(0.0, 1) == doctest::Approx(1.0));
  CHECK(aff.eval(0.0, 2) == 0.0);

  auto poly = FunctionSpec::polynomial({1, -2, 0, 4});
  CHECK(poly(2.0) == doctest::Approx(1 - 4 + 32));
  CHECK(poly.eval(2.0, 1) == doctest::Approx(-2 + 48));
  CHECK(poly.eval(2.0, 3) == doctest::Approx(24));

  auto sp = FunctionSpec::shifted_power(2.0, 1.5, 1.0);
  CHECK(sp(2.0) == doctest::Approx(2.0));
  CHECK(sp.eval(2.0, 1) == doctest::Approx(3.0));
  CHECK(sp(1.0) == 0.0);
}

TEST_CASE("bump vanishes with all derivatives at its support boundary") {
  auto b = FunctionSpec::bump(0.5, 0.4);
  for (int d = 0; d <= 3; ++d) {
    CHECK(b.eval(0.1, d) == 0.0);
    CHECK(b.eval(0.9, d) == 0.0);
    CHECK(b.eval(0.05, d) == 0.0);
  }
  CHECK(b(0.5) == doctest::Approx(1.0));
  CHECK(b(0.7) > 0.0);
  CHECK_THROWS_AS(b.eval(0.5, 4), UnsupportedDerivative);
}

TEST_CASE("bump and gaussian derivatives agree with finite differences") {
  auto check_fd = [](const FunctionSpec& f, double x) {
    double h = 1e-5;
    for (int d = 1; d <= 3; ++d) {
      double fd = (f.eval(x + h, d - 1) - f.eval(x - h, d - 1)) / (2 * h);
      CHECK(f.eval(x, d) == doctest::Approx(fd).epsilon(1e-6));
    }
  };
  check_fd(FunctionSpec::bump(0.5, 0.4), 0.62);
  check_fd(FunctionSpec::gaussian(0.0, 1.0), 0.7);
  check_fd(FunctionSpec::gaussian(1.0, 0.5), 1.4);
}

TEST_CASE("stats on simple phases") {
  auto one = FunctionSpec::constant(1.0);
  {
    DomainStats st = compute_stats(FunctionSpec::affine(2, 1), one, {0, 1});
    CHECK(st.inf_abs_phase == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(st.sup_abs_phase == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(st.zeros_of_phase.empty());
    CHECK(st.phase_monotonic);
    CHECK(st.phase_increasing);
    CHECK(st.amp_L1 == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    DomainStats st = compute_stats(FunctionSpec::affine(0, 1), one, {-1, 1});
    CHECK(st.inf_abs_phase == 0.0);
    REQUIRE(st.zeros_of_phase.size() == 1);
    CHECK(st.zeros_of_phase[0] == doctest::Approx(0.0).epsilon(1e-10));
  }
  {
    DomainStats st = compute_stats(FunctionSpec::monomial(1, 2), one, {-1, 1});
    CHECK(st.inf_abs_phase == 0.0);
    CHECK(st.min_abs_kth_deriv.at(2) == doctest::Approx(2.0).epsilon(1e-10));
    REQUIRE(st.zeros_of_phase.size() >= 1);
    CHECK(std::fabs(st.zeros_of_phase[0]) <= 1e-8);
  }
}

TEST_CASE("stats are stable under grid refinement") {
  auto amp = FunctionSpec::gaussian(0.2, 0.7, Role::amplitude);
  auto phase = FunctionSpec::polynomial({0.3, 1.0, -0.4});
  DomainStats c = compute_stats(phase, amp, {-1, 1}, 256);
  DomainStats f = compute_stats(phase, amp, {-1, 1}, 1024);
  CHECK(std::fabs(c.inf_abs_phase - f.inf_abs_phase) < 1e-8);
  CHECK(std::fabs(c.sup_abs_phase - f.sup_abs_phase) < 1e-8);
  CHECK(std::fabs(c.inf_abs_phase_deriv - f.inf_abs_phase_deriv) < 1e-8);
  CHECK(std::fabs(c.amp_L1 - f.amp_L1) < 1e-8);
  CHECK(std::fabs(c.sup_abs_amp - f.sup_abs_amp) < 1e-8);
}

TEST_CASE("stats extrema are exact on polynomial phases") {
  auto one = FunctionSpec::constant(1.0);
  DomainStats st = compute_stats(FunctionSpec::polynomial({0, 0, 1}), one, {-1, 1});
  CHECK(std::fabs(st.min_phase - 0.0) < 1e-10);
  CHECK(std::fabs(st.max_phase - 1.0) < 1e-10);
  DomainStats st2 = compute_stats(FunctionSpec::affine(-0.25, 1), one, {0, 1});
  CHECK(std::fabs(st2.inf_abs_phase - 0.0) < 1e-10);  // zero at 0.25
  CHECK(std::fabs(st2.sup_abs_phase - 0.75) < 1e-10);
}

TEST_CASE("amplitude integrals handle sign changes") {
  // int_{-1}^{1} |x| dx = 1
  CHECK(amp_abs_integral(FunctionSpec::affine(0, 1, Role::amplitude), {-1, 1}) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // int |psi'| with psi = x^2: int_{-1}^1 |2x| = 2
  CHECK(amp_deriv_abs_integral(FunctionSpec::monomial(1, 2, Role::amplitude), {-1, 1}) ==
        doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("rescaling keeps the integrand identity available") {
  auto phase = FunctionSpec::monomial(3, 2);
  auto r = rescale_phase(phase, 3.0);
  REQUIRE(r.has_value());
  CHECK(r->lambda_factor == doctest::Approx(3.0));
  CHECK(r->phase(2.0) == doctest::Approx(4.0));  // (3 x^2)/3 at x=2
  CHECK(!rescale_phase(FunctionSpec::bump(0, 1), 2.0).has_value());
}

TEST_CASE("hypothesis checks") {
  auto one = FunctionSpec::constant(1.0);
  {
    HypothesisReport r =
        check_hypotheses(TheoremId::th1, FunctionSpec::affine(2, 1), one, {0, 1}, {0.5, 0.7});
    CHECK(r.pass());
    CHECK(r.items[2].measured == doctest::Approx(2.0).epsilon(1e-10));  // m
  }
  {
    // the two-sided regime demands alpha <= 1/2
    HypothesisReport r =
        check_hypotheses(TheoremId::th4_1, FunctionSpec::affine(1, 1), one, {0, 1}, {0.6, 1.3});
    CHECK(!r.pass());
  }
  {
    // gaussian amplitude has nonzero endpoint derivatives
    HypothesisReport r = check_hypotheses(TheoremId::nonstat, FunctionSpec::affine(0, 1),
                                          FunctionSpec::gaussian(0.5, 0.2), {0, 1}, {0.95, 1.0});
    CHECK(!r.pass());
  }
  {
    HypothesisReport r = check_hypotheses(TheoremId::nonstat, FunctionSpec::affine(0, 1),
                                          FunctionSpec::bump(0.5, 0.35), {0, 1}, {0.95, 1.0});
    CHECK(r.pass());
  }
  CHECK_THROWS_AS(theorem_from_name("nosuch"), UnknownTheorem);
  CHECK(theorem_from_name("th1.3+ii") == TheoremId::th1_3p_ii);
  CHECK(all_theorems().size() == 17);
}

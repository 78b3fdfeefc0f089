#include <doctest.h>

#include <cmath>

#include "mlosc/special.hpp"
#include "support/oracles.hpp"

using namespace mlosc;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("sinpi is exact at integers and accurate elsewhere") {
  CHECK(sinpi(0.0) == 0.0);
  CHECK(sinpi(3.0) == 0.0);
  CHECK(sinpi(-17.0) == 0.0);
  CHECK(sinpi(1e15) == 0.0);
  CHECK(sinpi(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sinpi(-0.5) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(sinpi(2.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(sinpi(3.25) == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("recip_gamma basic values") {
  CHECK(recip_gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(recip_gamma(0.0) == 0.0);
  CHECK(recip_gamma(-1.0) == 0.0);
  CHECK(recip_gamma(-7.0) == 0.0);
  CHECK(recip_gamma(0.5) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
  CHECK(recip_gamma(5.0) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
}

TEST_CASE("recip_gamma reflection region") {
  // Gamma(-1.5) = Gamma(0.5) / ((-1.5)(-0.5)) = 4 sqrt(pi) / 3
  double g_m15 = 4.0 * std::sqrt(kPi) / 3.0;
  CHECK(recip_gamma(-1.5) == doctest::Approx(1.0 / g_m15).epsilon(1e-13));
  // Gamma(-0.5) = -2 sqrt(pi)
  CHECK(recip_gamma(-0.5) == doctest::Approx(-1.0 / (2.0 * std::sqrt(kPi))).epsilon(1e-13));
  // functional equation 1/Gamma(x) = x * (1/Gamma(x+1)) off the poles
  for (double x : {-6.3, -3.7, -0.9, 0.3, 2.6}) {
    CHECK(recip_gamma(x) == doctest::Approx(recip_gamma(x + 1.0) * x).epsilon(1e-12));
  }
}

TEST_CASE("recip_gamma stays finite far out") {
  CHECK(recip_gamma(200.0) == 0.0);  // Gamma overflows, reciprocal underflows
  CHECK(std::isfinite(recip_gamma(-200.5)));
}

TEST_CASE("erfcx against the defining-integral oracle") {
  for (double x : {0.0, 0.3, 1.0, 2.5, 5.0, 8.0, 11.0, 13.0}) {
    double ref = oracle::erfcx_ref(x);
    CHECK(erfcx(x) == doctest::Approx(ref).epsilon(5e-11));
  }
  // e * erfc(1), the classical closed-form pivot value
  CHECK(erfcx(1.0) == doctest::Approx(std::exp(1.0) * oracle::erfc_ref(1.0)).epsilon(1e-12));
}

TEST_CASE("dawson against the defining-integral oracle") {
  for (double x : {0.0, 0.2, 1.0, 3.0, 8.0, 11.0, 14.0, 50.0}) {
    double ref = oracle::dawson_ref(x);
    CHECK(dawson(x) == doctest::Approx(ref).epsilon(5e-11));
    CHECK(dawson(-x) == doctest::Approx(-ref).epsilon(5e-11));
  }
}

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int n : {8, 10, 16, 24}) {
    const GaussRule& r = gauss_legendre(n);
    REQUIRE(r.node.size() == static_cast<size_t>(n));
    double wsum = 0;
    for (double w : r.weight) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // exact for degree 2n-1: check x^{2n-2} whose integral is 2/(2n-1)
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += r.weight[i] * std::pow(r.node[i], 2 * n - 2);
    CHECK(acc == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
    // odd powers vanish by symmetry
    double odd = 0;
    for (int i = 0; i < n; ++i) odd += r.weight[i] * std::pow(r.node[i], 3);
    CHECK(odd == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("gauss-legendre against a transcendental integral") {
  const GaussRule& r = gauss_legendre(16);
  double acc = 0;
  for (size_t i = 0; i < r.node.size(); ++i) acc += r.weight[i] * std::exp(r.node[i]);
  CHECK(acc == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-15));
}

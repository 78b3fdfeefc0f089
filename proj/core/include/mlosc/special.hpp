#pragma once

#include <vector>

namespace mlosc {

// sin(pi*x), exactly zero at integers
double sinpi(double x);

// 1/Gamma(x) as a total function: exactly 0 at the poles of Gamma
// (non-positive integers), saturating instead of overflowing for very
// negative non-integers.
double recip_gamma(double x);

// Gamma(x) for x > 0 (envelope constants and the like)
double gamma_pos(double x);

// scaled complementary error function e^{x^2} erfc(x), x >= 0
double erfcx(double x);

// Dawson integral e^{-x^2} * int_0^x e^{s^2} ds
double dawson(double x);

struct GaussRule {
  std::vector<double> node;    // on (-1, 1)
  std::vector<double> weight;  // sums to 2
};

// n-point Gauss-Legendre rule, cached per n; thread-safe
const GaussRule& gauss_legendre(int n);

}  // namespace mlosc

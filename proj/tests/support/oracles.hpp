#pragma once

// Test-side oracles, independent of the library's evaluation paths: plain
// composite Simpson / trapezoid quadrature and reference special functions
// built from defining integrals.

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// erfc(x) from its defining integral; accurate to ~1e-12 for moderate x
inline double erfc_ref(double x) {
  const double sqrt_pi = std::sqrt(std::acos(-1.0));
  if (x < 0) return 2.0 - erfc_ref(-x);
  // integrate e^{-s^2} over [x, x+6]; the tail beyond is a factor e^{-12x-36}
  // down, far below the quadrature resolution
  auto f = [](double s) { return std::exp(-s * s); };
  return 2.0 / sqrt_pi * simpson(f, x, x + 6.0, 200000);
}

inline double erfcx_ref(double x) { return std::exp(x * x) * erfc_ref(x); }

// Dawson integral e^{-x^2} int_0^x e^{s^2} ds by direct quadrature
inline double dawson_ref(double x) {
  if (x == 0) return 0;
  double sign = x < 0 ? -1.0 : 1.0;
  x = std::fabs(x);
  // integrate e^{s^2 - x^2} over [0, x]; integrand in [e^{-x^2}, 1]
  auto f = [x](double s) { return std::exp(s * s - x * x); };
  return sign * simpson(f, 0.0, x, 200000);
}

// trapezoid with one Richardson step, for oscillatory-integral cross checks
inline std::complex<double> trapezoid_richardson(
    const std::function<std::complex<double>(double)>& f, double a, double b, long n) {
  auto trap = [&](long m) {
    std::complex<double> s = 0.5 * (f(a) + f(b));
    double h = (b - a) / m;
    for (long i = 1; i < m; ++i) s += f(a + i * h);
    return s * h;
  };
  std::complex<double> t1 = trap(n), t2 = trap(2 * n);
  return (4.0 * t2 - t1) / 3.0;
}

}  // namespace oracle

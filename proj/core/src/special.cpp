#include "mlosc/special.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mlosc/bigfloat.hpp"

namespace mlosc {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
}  // namespace

double sinpi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double n = std::nearbyint(x);
  double r = x - n;  // |r| <= 0.5
  if (r == 0.0) return 0.0;
  double s = std::sin(kPi * r);
  // parity of n flips the sign
  bool odd = std::fmod(std::fabs(n), 2.0) == 1.0;
  return odd ? -s : s;
}

double recip_gamma(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("recip_gamma: non-finite argument");
  if (x > 0.5) {
    if (x > 171.0) {
      // Gamma overflows double; its reciprocal underflows
      double lg = std::lgamma(x);
      return lg > 708.0 ? 0.0 : std::exp(-lg);
    }
    return 1.0 / std::tgamma(x);
  }
  // reflection: 1/Gamma(x) = sin(pi x) * Gamma(1-x) / pi
  double s = sinpi(x);
  if (s == 0.0) return 0.0;  // pole of Gamma
  double y = 1.0 - x;
  if (y > 171.0) {
    double mag = std::lgamma(y) + std::log(std::fabs(s) / kPi);
    double sign = s > 0 ? 1.0 : -1.0;
    if (mag > 708.0) return sign * std::numeric_limits<double>::max();  // saturate
    return sign * std::exp(mag);
  }
  return s * std::tgamma(y) / kPi;
}

double gamma_pos(double x) {
  if (!(x > 0)) throw std::invalid_argument("gamma_pos: argument must be positive");
  return std::tgamma(x);
}

namespace {

// erf(x) Taylor sum in wide precision; accurate until ~digits of cancellation
// exhaust the accumulator, so only used for moderate x.
double erfcx_series(double x) {
  // the partial sums peak near e^{+x^2} while erfc itself sits e^{-x^2}
  // below 1, so the accumulator must span both scales
  double digits = 2.0 * x * x / 2.302585092994046 + 30.0;
  // erfc(x) itself sits e^{-x^2} below the partial sums, so the tail has to
  // be driven to that absolute scale
  double stop_abs = std::pow(10.0, -(x * x / 2.302585092994046 + 20.0));
  auto prec = static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 16);
  Wide sum(prec), term(prec), x2(prec), t(prec);
  x2.set(x);
  Wide xw(x, prec);
  x2.mul(xw);  // x^2
  term.set(x);
  sum.set(x);
  // erf(x)*sqrt(pi)/2 = sum_{n>=0} (-1)^n x^{2n+1} / (n! (2n+1))
  for (long n = 1; n < 100000; ++n) {
    term.mul(x2);
    term.div_ui(static_cast<unsigned long>(n));
    term.neg();
    t.set(term);
    t.div_ui(static_cast<unsigned long>(2 * n + 1));
    sum.add(t);
    if (t.abs_double() < stop_abs && n > 4) break;
  }
  // erfcx = e^{x^2} (1 - 2/sqrt(pi) * sum)
  Wide pi(prec), rt(prec), res(prec);
  mpfr_const_pi(pi.raw(), MPFR_RNDN);
  mpfr_sqrt(rt.raw(), pi.raw(), MPFR_RNDN);
  mpfr_ui_div(rt.raw(), 2, rt.raw(), MPFR_RNDN);  // 2/sqrt(pi)
  sum.mul(rt);
  res.set(1.0);
  res.sub(sum);  // erfc(x)
  Wide ex(prec);
  ex.exp_of(x2);
  res.mul(ex);
  return res.to_double();
}

}  // namespace

double erfcx(double x) {
  if (x < 0) throw std::invalid_argument("erfcx: negative argument");
  if (x < 12.0) return erfcx_series(x);
  // asymptotic: erfcx(x) ~ 1/(x sqrt(pi)) (1 + sum (-1)^n (2n-1)!!/(2x^2)^n)
  double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0, sum = 1.0;
  for (int n = 1; n <= 12; ++n) {
    term *= -(2 * n - 1) * inv2x2;
    sum += term;
    if (std::fabs(term) < 1e-18) break;
  }
  return sum / (x * kSqrtPi);
}

double dawson(double x) {
  double ax = std::fabs(x);
  double sign = x < 0 ? -1.0 : 1.0;
  if (ax < 12.0) {
    // D(x) = sum (-1)^n 2^n x^{2n+1} / (2n+1)!!, wide accumulation
    double digits = ax * ax / 2.302585092994046 + 30.0;
    auto prec = static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 16);
    Wide sum(prec), term(prec), x2(prec);
    Wide xw(ax, prec);
    x2.sqr_of(xw);
    term.set(ax);
    sum.set(ax);
    for (long n = 1; n < 100000; ++n) {
      term.mul(x2);
      term.mul_ui(2);
      term.div_ui(static_cast<unsigned long>(2 * n + 1));
      term.neg();
      sum.add(term);
      if (term.abs_double() < 1e-25 * (sum.abs_double() + 1e-300) && n > 4) break;
    }
    return sign * sum.to_double();
  }
  // D(x) ~ sum_{n>=0} (2n-1)!! / (2^{n+1} x^{2n+1})
  double inv2x2 = 1.0 / (2.0 * ax * ax);
  double term = 1.0 / (2.0 * ax), sum = term;
  for (int n = 1; n <= 12; ++n) {
    term *= (2 * n - 1) * inv2x2;
    sum += term;
    if (term < 1e-18) break;
  }
  return sign * sum;
}

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 512) throw std::invalid_argument("gauss_legendre: order out of range");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule r;
  r.node.resize(n);
  r.weight.resize(n);
  // Newton iteration on P_n from Chebyshev-like initial guesses
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    r.node[i] = -x;
    r.node[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weight[i] = w;
    r.weight[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.node[n / 2] = 0.0;
  auto [pos, inserted] = cache.emplace(n, std::move(r));
  (void)inserted;
  return pos->second;
}

}  // namespace mlosc

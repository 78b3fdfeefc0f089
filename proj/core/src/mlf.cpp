#include "mlosc/mlf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlosc/bigfloat.hpp"
#include "mlosc/special.hpp"

namespace mlosc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLn10 = 2.302585092994045684017991454684364208;
constexpr double kLog10_2 = 0.301029995663981195213738894724493027;

double cospi(double x) { return sinpi(x + 0.5); }

bool near(double a, double b) { return std::fabs(a - b) <= 1e-12; }

bool near_int(double v, long& out) {
  double r = std::nearbyint(v);
  if (std::fabs(v - r) <= 1e-12) {
    out = static_cast<long>(r);
    return true;
  }
  return false;
}

double log10_abs(const Wide& w) {
  if (w.is_zero()) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(mpfr_get_exp(w.raw())) * kLog10_2;
}

// log10 of the largest series term |z|^k / Gamma(alpha k + beta); this is the
// cancellation scale the accumulator has to absorb on the negative axis.
double log10_max_term(double alpha, double beta, double absz) {
  if (absz <= 1.0) return 3.0;
  double g = std::pow(absz, 1.0 / alpha);  // ridge of the term sequence
  if (g < 2.0) g = 2.0;
  // k* = (g - beta)/alpha, f(k*) = k* ln|z| - lgamma(g)
  double kstar = std::max(0.0, (g - beta) / alpha);
  double f = kstar * std::log(absz) - std::lgamma(g);
  return std::max(3.0, f / kLn10);
}

struct SeriesStop {
  double alpha, beta, absz, tol;
  double digits;
  double max_term_log10 = -std::numeric_limits<double>::infinity();

  // returns true when the geometric tail bound at term k (log10 magnitude
  // term_l10) is below both the relative target and the accumulator floor
  bool done(long k, double term_l10, double sum_l10) {
    max_term_log10 = std::max(max_term_log10, term_l10);
    double g = alpha * static_cast<double>(k) + beta;
    if (g < 1.5) return false;
    double ratio = absz * std::exp(alpha / (2.0 * g)) / std::pow(g, alpha);
    if (!(ratio < 0.9)) return false;
    double tail_l10 = term_l10 + std::log10(ratio / (1.0 - ratio));
    double floor_l10 = max_term_log10 - digits + 8.0;
    double target = std::max(std::log10(tol) + sum_l10, floor_l10);
    return tail_l10 <= target;
  }
};

}  // namespace

void validate(const EvalPolicy& p) {
  if (!(p.series_tol > 0)) throw std::invalid_argument("EvalPolicy: series_tol must be > 0");
  if (p.max_terms < 8) throw std::invalid_argument("EvalPolicy: max_terms must be >= 8");
  if (!(p.switch_radius > 0)) throw std::invalid_argument("EvalPolicy: switch_radius must be > 0");
  if (p.asym_terms < 1) throw std::invalid_argument("EvalPolicy: asym_terms must be >= 1");
  if (p.accum_precision < 20) throw std::invalid_argument("EvalPolicy: accum_precision must be >= 20");
}

Complex ml_series(const MLOrder& order, Complex z, const EvalPolicy& policy) {
  validate(policy);
  double absz = std::abs(z);
  if (!std::isfinite(absz)) throw NumericError("ml_series: non-finite argument");

  double digits = std::max(static_cast<double>(policy.accum_precision),
                           log10_max_term(order.alpha, order.beta, absz) + 30.0);
  auto prec = static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 16);

  Wide sum_re(prec), sum_im(prec), pow_re(prec), pow_im(prec);
  Wide zr(z.real(), prec), zi(z.imag(), prec);
  Wide g(prec), rg(prec), t_re(prec), t_im(prec), tmp(prec);
  pow_re.set(1.0);
  pow_im.set(0.0);

  SeriesStop stop{order.alpha, order.beta, absz, policy.series_tol, digits};
  bool converged = false;
  for (long k = 0; k < policy.max_terms; ++k) {
    g.set_linear(order.alpha, k, order.beta);
    double term_l10 = -std::numeric_limits<double>::infinity();
    if (!g.is_nonpositive_integer()) {
      rg.gamma_of(g);
      rg.recip();
      t_re.set(pow_re);
      t_re.mul(rg);
      t_im.set(pow_im);
      t_im.mul(rg);
      sum_re.add(t_re);
      sum_im.add(t_im);
      term_l10 = std::max(log10_abs(t_re), log10_abs(t_im));
    }
    double sum_l10 = std::max(log10_abs(sum_re), log10_abs(sum_im));
    if (stop.done(k, term_l10, sum_l10)) {
      converged = true;
      break;
    }
    // pow *= z
    tmp.set(pow_re);
    Wide::mul2sub(t_re, pow_re, zr, pow_im, zi);
    Wide::mul2add(t_im, tmp, zi, pow_im, zr);
    pow_re.set(t_re);
    pow_im.set(t_im);
  }
  if (!converged)
    throw NoConvergence("ml_series: max_terms reached before the tail bound was met");
  Complex out(sum_re.to_double(), sum_im.to_double());
  if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
    throw NumericError("ml_series: overflow in result");
  return out;
}

namespace {

// real-argument series for E_{alpha,beta}(-x) with wide accumulation
double ml_series_neg_wide(double alpha, double beta, double x, const EvalPolicy& policy,
                          double digits) {
  auto prec = static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 16);
  Wide sum(prec), pw(prec), g(prec), rg(prec), t(prec);
  Wide mz(-x, prec);
  pw.set(1.0);
  SeriesStop stop{alpha, beta, x, policy.series_tol, digits};
  for (long k = 0; k < policy.max_terms; ++k) {
    g.set_linear(alpha, k, beta);
    double term_l10 = -std::numeric_limits<double>::infinity();
    if (!g.is_nonpositive_integer()) {
      rg.gamma_of(g);
      rg.recip();
      t.set(pw);
      t.mul(rg);
      sum.add(t);
      term_l10 = log10_abs(t);
    }
    if (stop.done(k, term_l10, log10_abs(sum))) return sum.to_double();
    pw.mul(mz);
  }
  throw NoConvergence("ml_neg_real: series max_terms reached");
}

// plain double loop; only safe when neither the powers nor the cancellation
// exceed double range (checked by the caller)
double ml_series_neg_double(double alpha, double beta, double x, const EvalPolicy& policy) {
  double sum = 0.0, comp = 0.0, pw = 1.0;
  double max_abs = 0.0;
  for (long k = 0; k < policy.max_terms; ++k) {
    double gk = alpha * static_cast<double>(k) + beta;
    double c = recip_gamma(gk);
    double term = pw * c;
    double y = term - comp;
    double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    max_abs = std::max(max_abs, std::fabs(term));
    if (gk > 1.5) {
      double ratio = x * std::exp(alpha / (2.0 * gk)) / std::pow(gk, alpha);
      if (ratio < 0.9) {
        double tail = std::fabs(term) * ratio / (1.0 - ratio);
        if (tail <= std::max(policy.series_tol * std::fabs(sum), 1e-17 * max_abs + 5e-324))
          return sum;
      }
    }
    pw *= -x;
  }
  throw NoConvergence("ml_neg_real: series max_terms reached");
}

}  // namespace

NegRealEvaluator::NegRealEvaluator(MLOrder order, EvalPolicy policy)
    : order_(order), pol_(policy) {
  validate(policy);
  if (order_.alpha > 2.0)
    throw RegimeError("ml_neg_real: alpha must be in (0, 2]");
  alg_coeff_.resize(pol_.asym_terms + 1);
  for (int k = 1; k <= pol_.asym_terms + 1; ++k)
    alg_coeff_[k - 1] = recip_gamma(order_.beta - order_.alpha * k);

  // push the switch point out until the truncated tail is accurate enough
  double target = std::max(1e-13, pol_.series_tol * 0.05);
  double x = pol_.switch_radius;
  while (asym_err_estimate(x) > target && x < 3.0e7) x *= 1.25;
  x_switch_ = x;
}

double NegRealEvaluator::asym_err_estimate(double x) const {
  double best = std::numeric_limits<double>::infinity();
  double xp = 1.0;
  for (int k = 1; k <= pol_.asym_terms; ++k) {
    xp /= x;
    best = std::min(best, std::fabs(alg_coeff_[k]) * xp / x);  // first omitted term
  }
  return best;
}

double NegRealEvaluator::asym_backend(double x) const {
  double a = order_.alpha, b = order_.beta;
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  double xp = 1.0;
  for (int k = 1; k <= pol_.asym_terms; ++k) {
    xp /= x;
    double term = (k % 2 == 1 ? 1.0 : -1.0) * xp * alg_coeff_[k - 1];
    if (std::fabs(term) > prev) break;  // past the optimal truncation
    sum += term;
    prev = std::fabs(term);
  }
  if (a == 1.0) {
    sum += std::pow(x, 1.0 - b) * std::exp(-x) * cospi(1.0 - b);
  } else if (a > 1.0) {
    // decaying oscillatory branch contribution; reduces to the classical
    // cosine expansion at alpha = 2
    double xa = std::pow(x, 1.0 / a);
    double expo = xa * std::cos(kPi / a);
    if (expo > -745.0) {
      double amp = (2.0 / a) * std::pow(x, (1.0 - b) / a) * std::exp(expo);
      sum += amp * std::cos(xa * std::sin(kPi / a) + kPi * (1.0 - b) / a);
    }
  }
  return sum;
}

double NegRealEvaluator::series_backend(double x) const {
  double l10 = log10_max_term(order_.alpha, order_.beta, x);
  double kend = (std::pow(x, 1.0 / order_.alpha) - order_.beta) / order_.alpha + 40.0;
  if (l10 < 13.0 && kend * std::log(std::max(x, 2.0)) < 600.0)
    return ml_series_neg_double(order_.alpha, order_.beta, x, pol_);
  double digits =
      std::max(static_cast<double>(pol_.accum_precision), l10 + 30.0);
  return ml_series_neg_wide(order_.alpha, order_.beta, x, pol_, digits);
}

double NegRealEvaluator::operator()(double x) const {
  if (!(x >= 0)) throw std::invalid_argument("ml_neg_real: x must be >= 0");
  if (x == 0.0) return recip_gamma(order_.beta);
  double v = x <= x_switch_ ? series_backend(x) : asym_backend(x);
  if (!std::isfinite(v)) throw NumericError("ml_neg_real: non-finite result");
  return v;
}

double ml_neg_real(const MLOrder& order, double x, const EvalPolicy& policy) {
  return NegRealEvaluator(order, policy)(x);
}

ImagAxisEvaluator::ImagAxisEvaluator(MLOrder order, EvalPolicy policy)
    : even_(MLOrder(2.0 * order.alpha, order.beta), policy),
      odd_(MLOrder(2.0 * order.alpha, order.beta + order.alpha), policy) {
  if (order.alpha > 1.0)
    throw RegimeError("euler_decompose: alpha must be in (0, 1]");
}

Complex ImagAxisEvaluator::operator()(double t) const {
  double x = t * t;
  return Complex(even_(x), t * odd_(x));
}

Complex euler_decompose(const MLOrder& order, double t, const EvalPolicy& policy) {
  return ImagAxisEvaluator(order, policy)(t);
}

namespace {

// truncated Taylor tail sum_{j>=0} z^j / g(j)! used by the closed forms near 0
Complex factorial_tail(Complex z, const std::function<double(long)>& fact_arg) {
  Complex sum(0, 0), pw(1, 0);
  for (long j = 0; j < 80; ++j) {
    double f = std::lgamma(fact_arg(j) + 1.0);
    Complex term = pw * std::exp(-f);
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)) && j > 4) break;
    pw *= z;
  }
  return sum;
}

}  // namespace

std::optional<Complex> ml_closed_form(const MLOrder& order, Complex z) {
  double a = order.alpha, b = order.beta;
  long m = 0;

  if (near(a, 1.0)) {
    if (near(b, 1.0)) return std::exp(z);
    if (near_int(b, m) && m >= 2) {
      // z^{1-m} (e^z - sum_{k<=m-2} z^k/k!), series tail near 0
      if (std::abs(z) <= 8.0)
        return factorial_tail(z, [m](long j) { return static_cast<double>(j + m - 1); });
      if (z.real() > 700.0) return std::nullopt;  // e^z overflows
      Complex part(0, 0), pw(1, 0);
      double fact = 1.0;
      for (long k = 0; k <= m - 2; ++k) {
        part += pw / fact;
        pw *= z;
        fact *= static_cast<double>(k + 1);
      }
      return std::pow(z, Complex(1.0 - static_cast<double>(m), 0)) * (std::exp(z) - part);
    }
    if (near_int(b, m) && m <= 0) return std::pow(z, Complex(1 - m, 0)) * std::exp(z);
    return std::nullopt;
  }

  if (near(a, 0.5) && near(b, 1.0)) {
    // e^{z^2} erfc(-z) on the two supported axes
    if (z.imag() == 0.0) {
      double x = z.real();
      if (x <= 0.0) return Complex(erfcx(-x), 0.0);
      if (x * x > 700.0) return std::nullopt;
      return Complex(2.0 * std::exp(x * x) - erfcx(x), 0.0);
    }
    if (z.real() == 0.0) {
      double t = z.imag();
      return Complex(std::exp(-t * t), 2.0 / std::sqrt(kPi) * dawson(t));
    }
    return std::nullopt;
  }

  if (near(a, 2.0)) {
    bool neg_real_axis = (z.imag() == 0.0 && z.real() <= 0.0);
    double xr = -z.real();
    if (near(b, 1.0)) {
      if (neg_real_axis) return Complex(std::cos(std::sqrt(xr)), 0.0);
      return std::cosh(std::sqrt(z));
    }
    if (near(b, 2.0)) {
      if (std::abs(z) < 1e-30) return Complex(1.0, 0.0);
      if (neg_real_axis) {
        double r = std::sqrt(xr);
        return Complex(std::sin(r) / r, 0.0);
      }
      Complex w = std::sqrt(z);
      return std::sinh(w) / w;
    }
    if (near_int(b, m)) {
      if (m >= 3 && m % 2 == 1) {
        long mm = (m - 1) / 2;  // b = 2mm+1
        if (std::abs(z) <= 8.0)
          return factorial_tail(z, [mm](long j) { return 2.0 * static_cast<double>(j + mm); });
        Complex w = std::sqrt(z);
        Complex part(0, 0), pw(1, 0);
        double fact = 1.0;  // (2k)!
        for (long k = 0; k <= mm - 1; ++k) {
          part += pw / fact;
          pw *= z;
          fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        }
        return std::pow(z, Complex(-static_cast<double>(mm), 0)) * (std::cosh(w) - part);
      }
      if (m >= 4 && m % 2 == 0) {
        long mm = m / 2;  // b = 2mm
        if (std::abs(z) <= 8.0)
          return factorial_tail(z, [mm](long j) { return 2.0 * static_cast<double>(j + mm) - 1.0; });
        // subtract the odd powers below 2mm-1 of sinh's series
        Complex w = std::sqrt(z);
        Complex val = std::pow(w, Complex(1.0 - 2.0 * static_cast<double>(mm), 0)) * std::sinh(w);
        double fact = 1.0;  // (2k+1)!
        for (long k = 0; k <= mm - 2; ++k) {
          val -= std::pow(w, Complex(2.0 * (static_cast<double>(k) + 1.0 - mm), 0)) / fact;
          fact *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
        }
        return val;
      }
      if (m <= 0 && m % 2 == 0) {
        long mm = -m / 2;  // b = -2mm
        Complex w = std::sqrt(z);
        return std::pow(w, Complex(2.0 * mm + 1.0, 0)) * std::sinh(w);
      }
      if (m <= 0 && (-m) % 2 == 1) {
        long mm = (1 - m) / 2;  // b = -2mm+1
        Complex w = std::sqrt(z);
        return std::pow(w, Complex(2.0 * mm, 0)) * std::cosh(w);
      }
    }
    return std::nullopt;
  }

  return std::nullopt;
}

MlResult ml_eval_ex(const MLOrder& order, Complex z, const EvalPolicy& policy) {
  validate(policy);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw NumericError("ml_eval: non-finite argument");

  if (auto cf = ml_closed_form(order, z)) {
    Complex v = *cf;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericError("ml_eval: closed form overflowed");
    return {v, MlBackend::closed_form, 1e-13 * (1.0 + std::abs(v))};
  }
  if (z == Complex(0, 0)) {
    double v = recip_gamma(order.beta);
    return {Complex(v, 0), MlBackend::series, 1e-15 * (1.0 + std::fabs(v))};
  }
  if (z.real() == 0.0 && order.alpha <= 1.0) {
    Complex v = euler_decompose(order, z.imag(), policy);
    return {v, MlBackend::euler, 10.0 * policy.series_tol * (1.0 + std::abs(v))};
  }
  if (z.imag() == 0.0 && z.real() < 0.0 && order.alpha <= 2.0) {
    double x = -z.real();
    NegRealEvaluator ev(order, policy);
    double v = ev(x);
    MlBackend bk = x > ev.effective_switch() ? MlBackend::asymptotic : MlBackend::series;
    return {Complex(v, 0), bk, 10.0 * policy.series_tol * (1.0 + std::fabs(v))};
  }
  if (std::abs(z) <= policy.switch_radius) {
    Complex v = ml_series(order, z, policy);
    return {v, MlBackend::series, policy.series_tol * (1.0 + std::abs(v))};
  }
  throw UnsupportedRegion(
      "ml_eval: argument outside the supported axes and switch radius");
}

Complex ml_eval(const MLOrder& order, Complex z, const EvalPolicy& policy) {
  return ml_eval_ex(order, z, policy).value;
}

std::pair<double, double> ml_real_bounds(const MLOrder& order, double x) {
  if (!(x >= 0)) throw std::invalid_argument("ml_real_bounds: x must be >= 0");
  double a = order.alpha, b = order.beta;
  if (near(b, 1.0) && a > 0.0 && a < 1.0 && !near(a, 1.0)) {
    double lo = 1.0 / (1.0 + gamma_pos(1.0 - a) * x);
    double hi = 1.0 / (1.0 + x / gamma_pos(1.0 + a));
    return {lo, hi};
  }
  if (near(b, a) && a > 0.0 && a < 1.0 && !near(a, 1.0)) {
    double ga = gamma_pos(a);
    double cl = std::sqrt(gamma_pos(1.0 - a) / gamma_pos(1.0 + a));
    double cu = std::sqrt(gamma_pos(1.0 + a) / gamma_pos(1.0 + 2.0 * a));
    double lo = 1.0 / (ga * (1.0 + cl * x) * (1.0 + cl * x));
    double hi = 1.0 / (ga * (1.0 + cu * x) * (1.0 + cu * x));
    return {lo, hi};
  }
  if (b > a && a > 0.0 && (a < 1.0 || near(a, 1.0))) {
    double gb = gamma_pos(b);
    double lo = 1.0 / (gb * (1.0 + gamma_pos(b - a) / gb * x));
    double hi = 1.0 / (gb * (1.0 + gb / gamma_pos(b + a) * x));
    return {lo, hi};
  }
  throw RegimeError("ml_real_bounds: no optimal-bound regime matches (alpha, beta)");
}

double sector_bound_ratio(const MLOrder& order, Complex z, const EvalPolicy& policy) {
  if (!(order.alpha > 0.0 && order.alpha < 2.0))
    throw RegimeError("sector_bound_ratio: requires 0 < alpha < 2");
  Complex v = ml_eval(order, z, policy);
  return std::abs(v) * (1.0 + std::abs(z));
}

double ml_derivative_identity_residual(double alpha, const RealFn& phi, const RealFn& dphi,
                                       double lambda, double x, double h,
                                       const EvalPolicy& policy) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw RegimeError("derivative identity: alpha must be in (0, 1]");
  if (lambda == 0.0) throw DegenerateInput("derivative identity: lambda must be nonzero");
  double dp = dphi(x);
  if (dp == 0.0) throw DegenerateInput("derivative identity: phi'(x) must be nonzero");
  if (!(h > 0.0)) throw std::invalid_argument("derivative identity: h must be positive");

  ImagAxisEvaluator e1(MLOrder(alpha, 1.0), policy);
  ImagAxisEvaluator eaa(MLOrder(alpha, alpha), policy);
  Complex diff = (e1(lambda * phi(x + h)) - e1(lambda * phi(x - h))) / (2.0 * h);
  Complex lhs = eaa(lambda * phi(x));
  Complex rhs = alpha / (Complex(0, 1) * lambda * dp) * diff;
  return std::abs(lhs - rhs);
}

}  // namespace mlosc

#include "mlosc/frac.hpp"

#include <cmath>

#include "mlosc/special.hpp"

namespace mlosc {

FracSpec::FracSpec(double a, FunctionSpec p, Interval i, Side s)
    : alpha(a), phi(std::move(p)), iv(i), side(s) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw RegimeError("FracSpec: alpha must be in (0, 1]");
  // phi must be increasing with phi' > 0
  int n = 64;
  for (int k = 0; k <= n; ++k) {
    double x = iv.a + iv.length() * k / n;
    if (!(phi.eval(x, 1) > 0))
      throw std::invalid_argument("FracSpec: phi' must be positive on the interval");
  }
}

namespace {

// monotone coordinate map u = phi(s) with inverse by closed form or bisection
struct PhiMap {
  const FunctionSpec& phi;
  Interval iv;

  double inverse(double u) const {
    if (phi.family == Family::affine) return (u - phi.coeff[0]) / phi.coeff[1];
    double lo = iv.a, hi = iv.b;
    double flo = phi(lo) - u;
    if (flo >= 0) return lo;
    if (phi(hi) - u <= 0) return hi;
    while (hi - lo > 1e-14 * (1.0 + std::fabs(lo) + std::fabs(hi))) {
      double mid = 0.5 * (lo + hi);
      if (phi(mid) - u < 0)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }
};

double gauss_on(const RealFn& f, double a, double b, const GaussRule& gr) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (size_t q = 0; q < gr.node.size(); ++q)
    acc += gr.weight[q] * f(mid + half * gr.node[q]);
  return acc * half;
}

// exact end-panel handling: int_{u0}^{B} (B-u)^{p-1} S(u) du after v = (B-u)^p,
// layered toward v = V where the transform steepens for small p
double end_panel_right(const RealFn& S, double u0, double B, double p, const GaussRule& gr) {
  double V = std::pow(B - u0, p);
  auto g = [&](double v) { return S(B - std::pow(v, 1.0 / p)); };
  int layers = std::max(6, static_cast<int>(std::ceil(std::log2(1.0 / p))) + 8);
  double acc = gauss_on(g, 0.0, 0.5 * V, gr);
  double d = 0.5;
  for (int j = 0; j < layers; ++j) {
    double dn = d * 0.5;
    acc += gauss_on(g, V * (1.0 - d), V * (1.0 - dn), gr);
    d = dn;
  }
  acc += gauss_on(g, V * (1.0 - d), V, gr);
  return acc / p;
}

double end_panel_left(const RealFn& S, double A, double u1, double q, const GaussRule& gr) {
  double V = std::pow(u1 - A, q);
  auto g = [&](double v) { return S(A + std::pow(v, 1.0 / q)); };
  int layers = std::max(6, static_cast<int>(std::ceil(std::log2(1.0 / q))) + 8);
  double acc = gauss_on(g, 0.0, 0.5 * V, gr);
  double d = 0.5;
  for (int j = 0; j < layers; ++j) {
    double dn = d * 0.5;
    acc += gauss_on(g, V * (1.0 - d), V * (1.0 - dn), gr);
    d = dn;
  }
  acc += gauss_on(g, V * (1.0 - d), V, gr);
  return acc / q;
}

double grading_for(double power) {
  if (power >= 1.0) return power > 1.0 ? 4.0 : 1.0;
  return std::clamp(2.0 / power, 2.0, 16.0);
}

// one mesh level of the weighted integral
double weighted_pass(const RealFn& h, double A, double B, double q, double p, int M,
                     const GaussRule& gr) {
  auto G = [&](double u) {
    double w = 1.0;
    if (q != 1.0) w *= std::pow(u - A, q - 1.0);
    if (p != 1.0) w *= std::pow(B - u, p - 1.0);
    return w * h(u);
  };
  double mid = 0.5 * (A + B);
  double acc = 0.0;
  int half_M = std::max(2, M / 2);

  // left half [A, mid]
  {
    double g = grading_for(q);
    std::vector<double> pts(half_M + 1);
    for (int i = 0; i <= half_M; ++i)
      pts[i] = A + (mid - A) * std::pow(static_cast<double>(i) / half_M, g);
    int start = 0;
    if (q < 1.0) {
      auto S = [&](double u) {
        double w = p != 1.0 ? std::pow(B - u, p - 1.0) : 1.0;
        return w * h(u);
      };
      acc += end_panel_left(S, A, pts[1], q, gr);
      start = 1;
    }
    for (int i = start; i < half_M; ++i) acc += gauss_on(G, pts[i], pts[i + 1], gr);
  }
  // right half [mid, B]
  {
    double g = grading_for(p);
    std::vector<double> pts(half_M + 1);
    for (int i = 0; i <= half_M; ++i)
      pts[i] = B - (B - mid) * std::pow(static_cast<double>(half_M - i) / half_M, g);
    int stop = half_M;
    if (p < 1.0) {
      auto S = [&](double u) {
        double w = q != 1.0 ? std::pow(u - A, q - 1.0) : 1.0;
        return w * h(u);
      };
      acc += end_panel_right(S, pts[half_M - 1], B, p, gr);
      stop = half_M - 1;
    }
    for (int i = 0; i < stop; ++i) acc += gauss_on(G, pts[i], pts[i + 1], gr);
  }
  return acc;
}

}  // namespace

double weighted_endpoint_integral(const RealFn& h, double A, double B, double q, double p,
                                  const FracQuadOpts& opts) {
  if (!(p > 0.0) || !(q > 0.0))
    throw std::invalid_argument("weighted_endpoint_integral: powers must be positive");
  if (!(B >= A)) throw std::invalid_argument("weighted_endpoint_integral: needs B >= A");
  if (B == A) return 0.0;
  const GaussRule& gr = gauss_legendre(opts.gauss_n);

  int M = opts.panels;
  double prev = weighted_pass(h, A, B, q, p, M, gr);
  for (;;) {
    M *= 2;
    double cur = weighted_pass(h, A, B, q, p, M, gr);
    double err = std::fabs(cur - prev);
    if (err <= opts.rel_tol * (std::fabs(cur) + 1e-30)) return cur;
    if (M >= opts.max_panels)
      throw SingularityFailure("weighted_endpoint_integral: refinement stalled");
    prev = cur;
  }
}

double frac_integral(const FracSpec& spec, const RealFn& f, double x, const FracQuadOpts& opts) {
  if (!(x >= spec.iv.a && x <= spec.iv.b))
    throw std::invalid_argument("frac_integral: x outside the interval");
  PhiMap map{spec.phi, spec.iv};
  double ga = recip_gamma(spec.alpha);
  if (spec.side == Side::left) {
    if (x == spec.iv.a) return 0.0;
    double A = spec.phi(spec.iv.a), B = spec.phi(x);
    auto h = [&](double u) { return f(map.inverse(u)); };
    return ga * weighted_endpoint_integral(h, A, B, 1.0, spec.alpha, opts);
  }
  if (x == spec.iv.b) return 0.0;
  double A = spec.phi(x), B = spec.phi(spec.iv.b);
  auto h = [&](double u) { return f(map.inverse(u)); };
  return ga * weighted_endpoint_integral(h, A, B, spec.alpha, 1.0, opts);
}

double frac_integral(const FracSpec& spec, const FunctionSpec& f, double x,
                     const FracQuadOpts& opts) {
  return frac_integral(spec, [&](double s) { return f(s); }, x, opts);
}

double caputo_deriv(const FracSpec& spec, const RealFn& fprime, double x,
                    const FracQuadOpts& opts) {
  if (!(x >= spec.iv.a && x <= spec.iv.b))
    throw std::invalid_argument("caputo_deriv: x outside the interval");
  if (spec.alpha == 1.0) {
    double d = fprime(x) / spec.phi.eval(x, 1);
    return spec.side == Side::left ? d : -d;
  }
  PhiMap map{spec.phi, spec.iv};
  double gc = recip_gamma(1.0 - spec.alpha);
  auto h = [&](double u) {
    double s = map.inverse(u);
    return fprime(s) / spec.phi.eval(s, 1);
  };
  if (spec.side == Side::left) {
    if (x == spec.iv.a) return 0.0;
    double A = spec.phi(spec.iv.a), B = spec.phi(x);
    return gc * weighted_endpoint_integral(h, A, B, 1.0, 1.0 - spec.alpha, opts);
  }
  if (x == spec.iv.b) return 0.0;
  double A = spec.phi(x), B = spec.phi(spec.iv.b);
  return -gc * weighted_endpoint_integral(h, A, B, 1.0 - spec.alpha, 1.0, opts);
}

double caputo_deriv(const FracSpec& spec, const FunctionSpec& f, double x,
                    const FracQuadOpts& opts) {
  return caputo_deriv(spec, [&](double s) { return f.eval(s, 1); }, x, opts);
}

double rl_deriv(const FracSpec& spec, const FunctionSpec& f, double x, const FracQuadOpts& opts) {
  if (!(spec.alpha < 1.0)) throw RegimeError("rl_deriv: alpha must be < 1");
  double c = caputo_deriv(spec, f, x, opts);
  double gc = recip_gamma(1.0 - spec.alpha);
  if (spec.side == Side::left) {
    double fa = f(spec.iv.a);
    double w = spec.phi(x) - spec.phi(spec.iv.a);
    if (w == 0.0) {
      if (fa != 0.0) throw DegenerateInput("rl_deriv: boundary term diverges at x = a");
      return c;
    }
    return c + fa * std::pow(w, -spec.alpha) * gc;
  }
  double fb = f(spec.iv.b);
  double w = spec.phi(spec.iv.b) - spec.phi(x);
  if (w == 0.0) {
    if (fb != 0.0) throw DegenerateInput("rl_deriv: boundary term diverges at x = b");
    return c;
  }
  return c + fb * std::pow(w, -spec.alpha) * gc;
}

double eigen_residual(double alpha, const FunctionSpec& phi, const Interval& iv, double lambda,
                      double x, const FracQuadOpts& opts) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw RegimeError("eigen_residual: alpha in (0,1]");
  if (!(x > iv.a && x <= iv.b))
    throw std::invalid_argument("eigen_residual: x must be strictly inside the interval");
  FracSpec spec(alpha, phi, iv, Side::left);
  (void)spec;
  double A = phi(iv.a), B = phi(x);

  ImagAxisEvaluator e1(MLOrder(alpha, 1.0), EvalPolicy{});
  Complex gx = e1(lambda * std::pow(B - A, alpha));
  if (lambda == 0.0) return 0.0;  // g constant, derivative of a constant

  Complex cap;
  if (alpha == 1.0) {
    // classical limit: the derivative formula gives i*lambda*g directly
    ImagAxisEvaluator eaa(MLOrder(1.0, 1.0), EvalPolicy{});
    cap = Complex(0, 1) * lambda * eaa(lambda * (B - A));
  } else {
    ImagAxisEvaluator eaa(MLOrder(alpha, alpha), EvalPolicy{});
    auto h_re = [&](double u) {
      Complex e = Complex(0, 1) * eaa(lambda * std::pow(u - A, alpha));
      return e.real();
    };
    auto h_im = [&](double u) {
      Complex e = Complex(0, 1) * eaa(lambda * std::pow(u - A, alpha));
      return e.imag();
    };
    double gc = lambda * recip_gamma(1.0 - alpha);
    double re = gc * weighted_endpoint_integral(h_re, A, B, alpha, 1.0 - alpha, opts);
    double im = gc * weighted_endpoint_integral(h_im, A, B, alpha, 1.0 - alpha, opts);
    cap = Complex(re, im);
  }
  return std::abs(cap - Complex(0, 1) * lambda * gx);
}

double semigroup_residual(double a, double b, const FunctionSpec& phi, const FunctionSpec& f,
                          const Interval& iv, double x, const FracQuadOpts& opts) {
  if (!(a > 0 && a < 1 && b > 0 && b < 1))
    throw DegenerateInput("semigroup_residual: orders must lie in (0,1)");
  double ord = a + b;
  if (!(ord > 1.0 && ord < 2.0))
    throw DegenerateInput("semigroup_residual: requires 1 < a+b < 2");
  if (!(x > iv.a && x <= iv.b))
    throw std::invalid_argument("semigroup_residual: x must be strictly inside");

  PhiMap map{phi, iv};
  double A = phi(iv.a), B = phi(x);
  auto f1 = [&](double s) { return f.eval(s, 1) / phi.eval(s, 1); };
  auto f1p = [&](double s) {
    double d1 = phi.eval(s, 1);
    return (f.eval(s, 2) * d1 - f.eval(s, 1) * phi.eval(s, 2)) / (d1 * d1);
  };
  auto h_f1p = [&](double u) {
    double s = map.inverse(u);
    return f1p(s) / phi.eval(s, 1);
  };

  FracQuadOpts inner = opts;
  inner.panels = std::max(16, opts.panels / 2);
  // the outer refinement loop must not chase the inner quadrature noise
  FracQuadOpts outer = opts;
  outer.rel_tol = opts.rel_tol * 30;

  double f1a = f1(iv.a);
  // nested form of the iterated derivative: the inner convolution evaluated
  // at each outer node
  auto h_outer = [&](double u) {
    double win = u == A ? 0.0
                        : weighted_endpoint_integral(h_f1p, A, u, 1.0, 1.0 - b, inner);
    return f1a + std::pow(u - A, b) * win;
  };
  double lhs = recip_gamma(1.0 - a) * recip_gamma(1.0 - b) *
               weighted_endpoint_integral(h_outer, A, B, 1.0 - b, 1.0 - a, outer);

  // single operator of order a+b in (1,2): kernel exponent 1-(a+b) applied to
  // the first-order phi-derivative of f
  double rhs = recip_gamma(2.0 - ord) *
               weighted_endpoint_integral(h_f1p, A, B, 1.0, 2.0 - ord, opts);
  return std::fabs(lhs - rhs);
}

double int_by_parts_residual(double alpha, const FunctionSpec& phi, const FunctionSpec& f,
                             const FunctionSpec& g, const Interval& iv,
                             const FracQuadOpts& opts) {
  if (!(alpha > 0 && alpha < 1)) throw RegimeError("int_by_parts_residual: alpha in (0,1)");
  PhiMap map{phi, iv};
  double A = phi(iv.a), B = phi(iv.b);
  FracSpec left(alpha, phi, iv, Side::left);
  FracSpec right(alpha, phi, iv, Side::right);
  auto w = [&](double s) { return f(s) / phi.eval(s, 1); };
  auto wprime = [&](double s) {
    double d1 = phi.eval(s, 1);
    return (f.eval(s, 1) * d1 - f(s) * phi.eval(s, 2)) / (d1 * d1);
  };

  FracQuadOpts inner = opts;
  inner.panels = std::max(16, opts.panels / 2);
  FracQuadOpts outer = opts;
  outer.rel_tol = opts.rel_tol * 30;  // keep ahead of the inner noise floor

  // T1 = int f * D^{alpha}_{a+} g dx; the integrand vanishes like
  // (u-A)^{1-alpha} at the left end
  auto h1 = [&](double u) {
    double s = map.inverse(u);
    double dcap = caputo_deriv(left, g, s, inner);
    double lift = u == A ? 0.0 : std::pow(u - A, alpha - 1.0);
    return f(s) * dcap / phi.eval(s, 1) * lift;
  };
  double t1 = weighted_endpoint_integral(h1, A, B, 2.0 - alpha, 1.0, outer);

  // T2a = int g phi' Dc^{alpha}_{b-} w dx, vanishing like (B-u)^{1-alpha}
  auto h2a = [&](double u) {
    double s = map.inverse(u);
    double dcap = caputo_deriv(right, wprime, s, inner);
    double lift = u == B ? 0.0 : std::pow(B - u, alpha - 1.0);
    return g(s) * dcap * lift;
  };
  double t2a = weighted_endpoint_integral(h2a, A, B, 1.0, 2.0 - alpha, outer);

  // T2b: explicit boundary-weight part of the right RL derivative
  double wb = w(iv.b);
  double t2b = 0.0;
  if (wb != 0.0) {
    auto h2b = [&](double u) { return g(map.inverse(u)); };
    t2b = wb * recip_gamma(1.0 - alpha) *
          weighted_endpoint_integral(h2b, A, B, 1.0, 1.0 - alpha, opts);
  }

  // boundary term g(a) * I^{1-alpha}_{b-} w (a)
  FracSpec right_int(1.0 - alpha, phi, iv, Side::right);
  double Ha = frac_integral(right_int, [&](double s) { return w(s); }, iv.a, opts);
  return std::fabs(t1 - (t2a + t2b) + g(iv.a) * Ha);
}

}  // namespace mlosc

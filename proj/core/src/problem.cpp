#include "mlosc/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlosc/special.hpp"

namespace mlosc {

namespace {
constexpr double kZeroTol = 1e-10;
constexpr int kBisectIters = 60;
constexpr int kAnalytic = 1 << 20;
}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::affine: return "affine";
    case Family::monomial: return "monomial";
    case Family::polynomial: return "polynomial";
    case Family::shifted_power: return "shifted_power";
    case Family::bump: return "bump";
    case Family::gaussian: return "gaussian";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  if (s == "affine") return Family::affine;
  if (s == "monomial") return Family::monomial;
  if (s == "polynomial") return Family::polynomial;
  if (s == "shifted_power") return Family::shifted_power;
  if (s == "bump") return Family::bump;
  if (s == "gaussian") return Family::gaussian;
  throw ConfigError("unknown function family: " + s);
}

FunctionSpec FunctionSpec::affine(double c0, double c1, Role r) {
  return {Family::affine, {c0, c1}, r};
}
FunctionSpec FunctionSpec::monomial(double c, int k, Role r) {
  if (k < 0) throw std::invalid_argument("monomial: power must be >= 0");
  return {Family::monomial, {c, static_cast<double>(k)}, r};
}
FunctionSpec FunctionSpec::polynomial(std::vector<double> coeffs, Role r) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return {Family::polynomial, std::move(coeffs), r};
}
FunctionSpec FunctionSpec::constant(double c, Role r) {
  return {Family::polynomial, {c}, r};
}
FunctionSpec FunctionSpec::shifted_power(double c, double exponent, double shift, Role r) {
  return {Family::shifted_power, {c, exponent, shift}, r};
}
FunctionSpec FunctionSpec::bump(double center, double width, Role r) {
  if (!(width > 0)) throw std::invalid_argument("bump: width must be positive");
  return {Family::bump, {center, width}, r};
}
FunctionSpec FunctionSpec::gaussian(double center, double width, Role r) {
  if (!(width > 0)) throw std::invalid_argument("gaussian: width must be positive");
  return {Family::gaussian, {center, width}, r};
}

int FunctionSpec::smoothness() const {
  switch (family) {
    case Family::bump: return 3;
    case Family::shifted_power: return 4;
    default: return kAnalytic;
  }
}

namespace {

double falling(double p, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (p - i);
  return r;
}

double eval_bump(double center, double width, double x, int d) {
  double u = (x - center) / width;
  if (std::fabs(u) >= 1.0) return 0.0;
  double q = 1.0 - u * u;
  double f = std::exp(1.0 - 1.0 / q);
  // g(u) = 1 - 1/q; chain-rule polynomials in u and 1/q
  double iq = 1.0 / q;
  double g1 = -2.0 * u * iq * iq;
  if (d == 0) return f;
  if (d == 1) return f * g1 / width;
  double g2 = -2.0 * iq * iq - 8.0 * u * u * iq * iq * iq;
  if (d == 2) return f * (g2 + g1 * g1) / (width * width);
  double g3 = -24.0 * u * iq * iq * iq - 48.0 * u * u * u * iq * iq * iq * iq;
  if (d == 3) return f * (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) / (width * width * width);
  throw UnsupportedDerivative("bump: derivatives above order 3 not provided");
}

double eval_gaussian(double center, double width, double x, int d) {
  double v = (x - center) / width;
  double f = std::exp(-0.5 * v * v);
  if (d == 0) return f;
  // p_{k+1}(v) = p_k'(v) - v p_k(v); f^(k) = p_k(v) f / width^k
  std::vector<double> p{1.0};
  for (int k = 0; k < d; ++k) {
    std::vector<double> np(p.size() + 1, 0.0);
    for (size_t i = 0; i + 1 < p.size() + 1; ++i) {
      if (i + 1 < p.size()) np[i] += (i + 1) * p[i + 1];  // derivative
    }
    for (size_t i = 0; i < p.size(); ++i) np[i + 1] -= p[i];  // -v p
    p = std::move(np);
  }
  double val = 0.0;
  for (size_t i = p.size(); i-- > 0;) val = val * v + p[i];
  return val * f / std::pow(width, d);
}

}  // namespace

double FunctionSpec::eval(double x, int d) const {
  if (!std::isfinite(x)) throw std::invalid_argument("FunctionSpec: non-finite x");
  if (d < 0) throw std::invalid_argument("FunctionSpec: negative derivative order");
  switch (family) {
    case Family::affine: {
      if (d == 0) return coeff[0] + coeff[1] * x;
      if (d == 1) return coeff[1];
      return 0.0;
    }
    case Family::monomial: {
      int k = static_cast<int>(coeff[1]);
      if (d > k) return 0.0;
      return coeff[0] * falling(k, d) * std::pow(x, k - d);
    }
    case Family::polynomial: {
      double val = 0.0;
      for (size_t i = 0; i < coeff.size(); ++i) {
        int n = static_cast<int>(i);
        if (n >= d) val += coeff[i] * falling(n, d) * std::pow(x, n - d);
      }
      return val;
    }
    case Family::shifted_power: {
      double c = coeff[0], p = coeff[1], s = coeff[2];
      if (d > smoothness()) throw UnsupportedDerivative("shifted_power: order too high");
      double w = x - s;
      double q = p - d;
      if (w < 0.0) {
        double r = std::nearbyint(p);
        if (std::fabs(p - r) > 1e-12)
          throw std::domain_error("shifted_power: x below shift with non-integer exponent");
      }
      if (w == 0.0) {
        if (q > 0) return 0.0;
        if (q == 0) return c * falling(p, d);
        throw std::domain_error("shifted_power: singular derivative at the shift point");
      }
      return c * falling(p, d) * std::pow(w, q);
    }
    case Family::bump: return eval_bump(coeff[0], coeff[1], x, d);
    case Family::gaussian: return eval_gaussian(coeff[0], coeff[1], x, d);
  }
  throw std::logic_error("FunctionSpec: unknown family");
}

std::optional<FunctionSpec> FunctionSpec::scaled(double s) const {
  FunctionSpec out = *this;
  switch (family) {
    case Family::monomial:
    case Family::shifted_power:
      out.coeff[0] *= s;
      return out;
    case Family::affine:
      out.coeff[0] *= s;
      out.coeff[1] *= s;
      return out;
    case Family::polynomial:
      for (auto& c : out.coeff) c *= s;
      return out;
    case Family::bump:
    case Family::gaussian:
      return std::nullopt;  // no amplitude coefficient in these families
  }
  return std::nullopt;
}

std::optional<RescaledProblem> rescale_phase(const FunctionSpec& phase, double c) {
  if (!(c > 0)) throw std::invalid_argument("rescale_phase: c must be positive");
  auto scaled = phase.scaled(1.0 / c);
  if (!scaled) return std::nullopt;
  return RescaledProblem{*scaled, c};
}

namespace {

// golden-section refinement of a bracketed extremum of f
double golden_refine(const std::function<double(double)>& f, double a, double b, bool maximize,
                     double* residual) {
  const double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 80 && (b - a) > 1e-14 * (1.0 + std::fabs(a)); ++i) {
    bool pick_left = maximize ? (f1 > f2) : (f1 < f2);
    if (pick_left) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  if (residual) *residual = std::max(*residual, b - a);
  return 0.5 * (a + b);
}

double bisect_zero(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < kBisectIters; ++i) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0) != (fm < 0)) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

DomainStats compute_stats(const FunctionSpec& phase, const FunctionSpec& amp,
                          const Interval& iv, int grid_n) {
  if (grid_n < 64) throw std::invalid_argument("compute_stats: grid_n must be >= 64");
  if (!std::isfinite(iv.a) || !std::isfinite(iv.b))
    throw std::invalid_argument("compute_stats: interval must be finite");

  DomainStats st;
  auto f = [&](double x) { return phase(x); };
  auto fd = [&](double x) { return phase.eval(x, 1); };
  auto g = [&](double x) { return amp(x); };

  double h = iv.length() / grid_n;
  std::vector<double> xs(grid_n + 1);
  for (int i = 0; i <= grid_n; ++i) xs[i] = iv.a + h * i;
  xs.back() = iv.b;

  st.min_phase = std::numeric_limits<double>::infinity();
  st.max_phase = -st.min_phase;
  st.inf_abs_phase = std::numeric_limits<double>::infinity();
  st.inf_abs_phase_deriv = std::numeric_limits<double>::infinity();
  st.inf_abs_amp = std::numeric_limits<double>::infinity();
  st.sup_abs_amp = 0;

  std::vector<double> fv(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) fv[i] = f(xs[i]);

  auto refine_extrema = [&](const std::function<double(double)>& fn, double& lo, double& hi) {
    std::vector<double> v(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) v[i] = fn(xs[i]);
    lo = *std::min_element(v.begin(), v.end());
    hi = *std::max_element(v.begin(), v.end());
    for (size_t i = 1; i + 1 < xs.size(); ++i) {
      if (v[i] < v[i - 1] && v[i] < v[i + 1])
        lo = std::min(lo, fn(golden_refine(fn, xs[i - 1], xs[i + 1], false, &st.refine_residual)));
      if (v[i] > v[i - 1] && v[i] > v[i + 1])
        hi = std::max(hi, fn(golden_refine(fn, xs[i - 1], xs[i + 1], true, &st.refine_residual)));
    }
  };

  refine_extrema(f, st.min_phase, st.max_phase);
  st.sup_abs_phase = std::max(std::fabs(st.min_phase), std::fabs(st.max_phase));

  // zeros of the phase by bisection on sampled sign changes
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    if (fv[i] == 0.0) {
      if (st.zeros_of_phase.empty() ||
          std::fabs(st.zeros_of_phase.back() - xs[i]) > 4 * h)
        st.zeros_of_phase.push_back(xs[i]);
    } else if ((fv[i] < 0) != (fv[i + 1] < 0)) {
      double z = bisect_zero(f, xs[i], xs[i + 1]);
      if (std::fabs(f(z)) <= kZeroTol * (1.0 + st.sup_abs_phase))
        st.zeros_of_phase.push_back(z);
    }
  }
  if (!fv.empty() && fv.back() == 0.0) st.zeros_of_phase.push_back(xs.back());

  if (!st.zeros_of_phase.empty()) {
    st.inf_abs_phase = 0.0;
  } else {
    double lo_abs, hi_abs;
    auto fabs_fn = [&](double x) { return std::fabs(f(x)); };
    refine_extrema(fabs_fn, lo_abs, hi_abs);
    st.inf_abs_phase = lo_abs;
    st.sup_abs_phase = std::max(st.sup_abs_phase, hi_abs);
  }

  {
    double lo, hi;
    auto fdabs = [&](double x) { return std::fabs(fd(x)); };
    refine_extrema(fdabs, lo, hi);
    st.inf_abs_phase_deriv = lo;
  }
  {
    double lo, hi;
    auto gabs = [&](double x) { return std::fabs(g(x)); };
    refine_extrema(gabs, lo, hi);
    st.inf_abs_amp = lo;
    st.sup_abs_amp = hi;
  }
  st.amp_L1 = amp_abs_integral(amp, iv);

  // monotonicity from sampled signs (derivative sign for phi, second
  // derivative for phi' when the family has one)
  auto sign_constant = [&](const std::function<double(double)>& fn) {
    int sgn = 0;
    for (double x : xs) {
      double v = fn(x);
      if (v > 1e-14) {
        if (sgn < 0) return false;
        sgn = 1;
      } else if (v < -1e-14) {
        if (sgn > 0) return false;
        sgn = -1;
      }
    }
    return true;
  };
  st.phase_monotonic = sign_constant(fd);
  st.phase_increasing = st.phase_monotonic && fd(0.5 * (iv.a + iv.b)) > 0;
  if (phase.smoothness() >= 2) {
    st.phase_deriv_monotonic = sign_constant([&](double x) { return phase.eval(x, 2); });
  } else {
    st.phase_deriv_monotonic = sign_constant([&](double x) {
      double hh = h * 0.25;
      return (fd(std::min(x + hh, iv.b)) - fd(std::max(x - hh, iv.a))) / (2 * hh);
    });
  }

  for (int k = 1; k <= 4; ++k) {
    if (k > phase.smoothness()) break;
    double lo, hi;
    auto fk = [&](double x) { return std::fabs(phase.eval(x, k)); };
    refine_extrema(fk, lo, hi);
    st.min_abs_kth_deriv[k] = lo;
  }
  return st;
}

namespace {

// integral of |fn| with the integrand split at its sign changes
double abs_integral(const FunctionSpec& fn, int deriv, const Interval& iv) {
  const GaussRule& gr = gauss_legendre(12);
  int cells = 512;
  double h = iv.length() / cells;
  auto value = [&](double x) { return fn.eval(x, deriv); };
  double total = 0.0;
  for (int i = 0; i < cells; ++i) {
    double a = iv.a + i * h, b = a + h;
    std::vector<double> cuts{a};
    double fa = value(a), fb = value(b);
    if ((fa < 0) != (fb < 0))
      cuts.push_back(bisect_zero([&](double x) { return value(x); }, a, b));
    cuts.push_back(b);
    for (size_t s = 0; s + 1 < cuts.size(); ++s) {
      double mid = 0.5 * (cuts[s] + cuts[s + 1]);
      double half = 0.5 * (cuts[s + 1] - cuts[s]);
      double acc = 0.0;
      for (size_t q = 0; q < gr.node.size(); ++q)
        acc += gr.weight[q] * std::fabs(value(mid + half * gr.node[q]));
      total += acc * half;
    }
  }
  return total;
}

}  // namespace

double amp_abs_integral(const FunctionSpec& amp, const Interval& iv) {
  return abs_integral(amp, 0, iv);
}

double amp_deriv_abs_integral(const FunctionSpec& amp, const Interval& iv) {
  return abs_integral(amp, 1, iv);
}

const char* theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::th1: return "th1";
    case TheoremId::th1_2: return "th1.2";
    case TheoremId::th1_3i: return "th1.3i";
    case TheoremId::th1_3ii: return "th1.3ii";
    case TheoremId::th1_3p_i: return "th1.3+i";
    case TheoremId::th1_3p_ii: return "th1.3+ii";
    case TheoremId::th1_3p_iii: return "th1.3+iii";
    case TheoremId::th2: return "th2";
    case TheoremId::th2_1: return "th2.1";
    case TheoremId::cor2_1: return "cor2.1";
    case TheoremId::thm2_3: return "thm2-3";
    case TheoremId::cor2_2: return "cor2.2";
    case TheoremId::nonstat: return "nonstat";
    case TheoremId::th4_1: return "th4.1";
    case TheoremId::th4_2: return "th4.2";
    case TheoremId::rl_lemma: return "rl-lemma";
    case TheoremId::tfpde: return "tfpde";
  }
  return "?";
}

std::vector<TheoremId> all_theorems() {
  using T = TheoremId;
  return {T::th1, T::th1_2, T::th1_3i, T::th1_3ii, T::th1_3p_i, T::th1_3p_ii,
          T::th1_3p_iii, T::th2, T::th2_1, T::cor2_1, T::thm2_3, T::cor2_2,
          T::nonstat, T::th4_1, T::th4_2, T::rl_lemma, T::tfpde};
}

TheoremId theorem_from_name(const std::string& s) {
  for (TheoremId id : all_theorems())
    if (s == theorem_name(id)) return id;
  throw UnknownTheorem("unknown theorem id: " + s);
}

namespace {

void req(HypothesisReport& r, const std::string& label, bool ok, double measured) {
  r.items.push_back({label, ok, measured});
}

}  // namespace

HypothesisReport check_hypotheses(TheoremId id, const FunctionSpec& phase,
                                  const FunctionSpec& amp, const Interval& iv,
                                  const MLOrder& order) {
  DomainStats st = compute_stats(phase, amp, iv);
  HypothesisReport r;
  double a = order.alpha, b = order.beta;
  auto kth = [&](int k) {
    auto it = st.min_abs_kth_deriv.find(k);
    return it == st.min_abs_kth_deriv.end() ? 0.0 : it->second;
  };

  switch (id) {
    case TheoremId::th1:
      req(r, "0 < alpha < 1", a > 0 && a < 1, a);
      req(r, "beta > 0", b > 0, b);
      req(r, "inf |phi| > 0", st.inf_abs_phase > 0, st.inf_abs_phase);
      req(r, "amplitude integrable", std::isfinite(st.amp_L1), st.amp_L1);
      break;
    case TheoremId::th1_2:
      req(r, "0 < alpha < 1", a > 0 && a < 1, a);
      req(r, "beta > 0", b > 0, b);
      req(r, "phi monotonic", st.phase_monotonic, 0);
      req(r, "inf |phi'| > 0", st.inf_abs_phase_deriv > 0, st.inf_abs_phase_deriv);
      req(r, "finitely many zeros", st.zeros_of_phase.size() < 64,
          static_cast<double>(st.zeros_of_phase.size()));
      req(r, "amplitude bounded", std::isfinite(st.sup_abs_amp), st.sup_abs_amp);
      break;
    case TheoremId::th1_3i:
    case TheoremId::th1_3ii:
      req(r, "0 < alpha < 1", a > 0 && a < 1, a);
      req(r, "beta == alpha", std::fabs(b - a) <= 1e-12, b);
      req(r, "phi' monotonic", st.phase_deriv_monotonic, 0);
      req(r, "phi' >= 1", phase.eval(iv.a, 1) >= 1.0 && st.inf_abs_phase_deriv >= 1.0 - 1e-12,
          st.inf_abs_phase_deriv);
      if (id == TheoremId::th1_3ii)
        req(r, "inf |phi| > 0", st.inf_abs_phase > 0, st.inf_abs_phase);
      break;
    case TheoremId::th1_3p_i:
    case TheoremId::th1_3p_ii:
    case TheoremId::th1_3p_iii:
      req(r, "0 < alpha < 1", a > 0 && a < 1, a);
      req(r, "beta == alpha", std::fabs(b - a) <= 1e-12, b);
      req(r, "phi' != 0", st.inf_abs_phase_deriv > 0, st.inf_abs_phase_deriv);
      req(r, "phi C^2", phase.smoothness() >= 2, phase.smoothness());
      req(r, "psi C^1", amp.smoothness() >= 1, amp.smoothness());
      if (id == TheoremId::th1_3p_ii) {
        req(r, "psi(a) == 0", std::fabs(amp(iv.a)) <= 1e-12, amp(iv.a));
        req(r, "psi(b) == 0", std::fabs(amp(iv.b)) <= 1e-12, amp(iv.b));
      }
      if (id == TheoremId::th1_3p_iii)
        req(r, "inf |phi| > 0", st.inf_abs_phase > 0, st.inf_abs_phase);
      break;
    case TheoremId::th2:
      req(r, "alpha == 1", std::fabs(a - 1.0) <= 1e-12, a);
      req(r, "beta > 1", b > 1, b);
      req(r, "inf |phi| > 0", st.inf_abs_phase > 0, st.inf_abs_phase);
      req(r, "amplitude integrable", std::isfinite(st.amp_L1), st.amp_L1);
      break;
    case TheoremId::th2_1:
    case TheoremId::cor2_1: {
      req(r, "0 < alpha < 1", a > 0 && a < 1, a);
      req(r, "beta > 0", b > 0, b);
      int k = 0;
      for (int kk = 2; kk <= 4; ++kk)
        if (kth(kk) >= 1.0 - 1e-12) { k = kk; break; }
      req(r, "|phi^(k)| >= 1 for some k >= 2", k != 0, kth(2));
      req(r, "finitely many zeros", st.zeros_of_phase.size() < 64,
          static_cast<double>(st.zeros_of_phase.size()));
      break;
    }
    case TheoremId::thm2_3:
    case TheoremId::cor2_2: {
      req(r, "0 < alpha < 1", a > 0 && a < 1, a);
      req(r, "beta == alpha", std::fabs(b - a) <= 1e-12, b);
      int k = 0;
      for (int kk = 2; kk <= 4; ++kk)
        if (kth(kk) >= 1.0 - 1e-12) { k = kk; break; }
      req(r, "|phi^(k)| >= 1 for some k >= 2", k != 0, kth(2));
      break;
    }
    case TheoremId::nonstat: {
      constexpr int N = 2;
      req(r, "(N-1)/N < alpha < 1", a > (N - 1.0) / N && a < 1.0, a);
      req(r, "phi increasing", st.phase_increasing, 0);
      req(r, "phi' != 0", st.inf_abs_phase_deriv > 0, st.inf_abs_phase_deriv);
      bool ends_ok = true;
      double worst = 0;
      for (int k = 0; k <= N - 1; ++k) {
        double va = amp.eval(iv.a, k), vb = amp.eval(iv.b, k);
        worst = std::max({worst, std::fabs(va), std::fabs(vb)});
        if (std::fabs(va) > 1e-12 || std::fabs(vb) > 1e-12) ends_ok = false;
      }
      req(r, "psi^(k) vanishes at both endpoints, k < N", ends_ok, worst);
      break;
    }
    case TheoremId::th4_1:
      req(r, "0 < alpha <= 1/2", a > 0 && a <= 0.5, a);
      req(r, "beta > 2 alpha", b > 2 * a, b);
      req(r, "inf |psi| > 0", st.inf_abs_amp > 0, st.inf_abs_amp);
      break;
    case TheoremId::th4_2:
      req(r, "0 < alpha < 1/2", a > 0 && a < 0.5, a);
      req(r, "beta == 2 alpha", std::fabs(b - 2 * a) <= 1e-12, b);
      req(r, "inf |psi| > 0", st.inf_abs_amp > 0, st.inf_abs_amp);
      break;
    case TheoremId::rl_lemma:
      req(r, "regime parameters valid",
          (a > 0 && a < 1 && b > 0) || (std::fabs(a - 1.0) <= 1e-12 && b > 1), a);
      break;
    case TheoremId::tfpde:
      req(r, "0 < alpha < 1", a > 0 && a < 1, a);
      break;
  }
  return r;
}

}  // namespace mlosc

#include "mlosc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "mlosc/csv.hpp"
#include "mlosc/special.hpp"
#include "mlosc/svg.hpp"
#include "mlosc/tfpde.hpp"

namespace mlosc {

namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < points; ++i)
    g[i] = std::pow(10.0, llo + (lhi - llo) * i / (points - 1));
  return g;
}

// sup over the interval of |(psi/phi')'| plus the endpoint quotients
double amp_quotient_norm(const FunctionSpec& phase, const FunctionSpec& amp,
                         const Interval& iv) {
  auto quot_deriv = [&](double x) {
    double p1 = phase.eval(x, 1), p2 = phase.eval(x, 2);
    double a0 = amp(x), a1 = amp.eval(x, 1);
    return (a1 * p1 - a0 * p2) / (p1 * p1);
  };
  double sup = 0;
  int n = 2048;
  for (int i = 0; i <= n; ++i) {
    double x = iv.a + iv.length() * i / n;
    sup = std::max(sup, std::fabs(quot_deriv(x)));
  }
  double qa = std::fabs(amp(iv.a) / phase.eval(iv.a, 1));
  double qb = std::fabs(amp(iv.b) / phase.eval(iv.b, 1));
  return sup + qa + qb;
}

}  // namespace

DecayFit fit_decay(const SweepTable& table, double window_lo, double window_hi,
                   bool log_factor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int n = 0;
  for (const auto& r : table.rows) {
    if (r.lambda < window_lo || r.lambda > window_hi) continue;
    double v = std::abs(r.value);
    if (!(v > 0)) throw NonPositiveValue("fit_decay: |I| must be positive in the window");
    double y = std::log(v);
    if (log_factor) y -= std::log(std::log(2.0 + r.lambda));
    double x = std::log(r.lambda);
    sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    ++n;
  }
  if (n < 5) throw InsufficientData("fit_decay: need at least 5 rows in the window");
  DecayFit f;
  f.window_lo = window_lo;
  f.window_hi = window_hi;
  double den = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_tot = syy - sy * sy / n;
  double ss_res = ss_tot - f.slope * (sxy - sx * sy / n);
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

EnvelopeInput envelope_input(const IntegralSpec& spec) {
  DomainStats st = compute_stats(spec.phase, spec.amp, spec.iv);
  EnvelopeInput in{spec.order};
  in.m = st.inf_abs_phase;
  in.m_deriv = st.inf_abs_phase_deriv;
  in.sup_phase = st.sup_abs_phase;
  in.m2 = st.inf_abs_amp;
  in.sup_amp = st.sup_abs_amp;
  in.amp_l1 = st.amp_L1;
  in.amp_bv = std::fabs(spec.amp(spec.iv.b)) + amp_deriv_abs_integral(spec.amp, spec.iv);
  in.amp_quot = amp_quotient_norm(spec.phase, spec.amp, spec.iv);
  in.k = 2;
  for (int k = 2; k <= 4; ++k) {
    auto it = st.min_abs_kth_deriv.find(k);
    if (it != st.min_abs_kth_deriv.end() && it->second >= 1.0 - 1e-12) {
      in.k = k;
      break;
    }
  }
  return in;
}

double envelope(TheoremId id, const EnvelopeInput& in, double lambda) {
  double a = in.order.alpha, b = in.order.beta, l = lambda;
  switch (id) {
    case TheoremId::th1:
      if (!(in.m > 0)) throw MissingStat("envelope th1: needs inf |phi| > 0");
      return in.amp_l1 / (1.0 + in.m * l);
    case TheoremId::th1_2:
      if (!(in.m_deriv > 0)) throw MissingStat("envelope th1.2: needs inf |phi'| > 0");
      return in.sup_amp * std::log(2.0 + in.sup_phase * l) / (1.0 + in.m_deriv * l);
    case TheoremId::th1_3i:
      return in.amp_bv / (1.0 + l);
    case TheoremId::th1_3ii:
      if (!(in.m > 0)) throw MissingStat("envelope th1.3ii: needs inf |phi| > 0");
      return in.amp_bv / ((1.0 + l) * (1.0 + in.m * l));
    case TheoremId::th1_3p_i:
      return in.amp_quot / (1.0 + l);
    case TheoremId::th1_3p_ii:
      return in.amp_quot * std::log(2.0 + l) / ((1.0 + l) * (1.0 + l));
    case TheoremId::th1_3p_iii:
      return in.amp_quot / ((1.0 + l) * (1.0 + l));
    case TheoremId::th2:
      if (!(in.m > 0)) throw MissingStat("envelope th2: needs inf |phi| > 0");
      return in.amp_l1 * std::pow(1.0 + in.m * l, -(b - 1.0));
    case TheoremId::th2_1:
      return std::log(2.0 + l) * std::pow(1.0 + l, -1.0 / in.k);
    case TheoremId::cor2_1:
      return in.amp_bv * std::log(2.0 + l) * std::pow(1.0 + l, -1.0 / in.k);
    case TheoremId::thm2_3:
      return std::pow(1.0 + l, -1.0 / in.k);
    case TheoremId::cor2_2:
      return in.amp_bv * std::pow(1.0 + l, -1.0 / in.k);
    case TheoremId::nonstat:
      return std::pow(1.0 + l, -2.0);
    case TheoremId::th4_1: {
      double K1 = std::max(1.0 / gamma_pos(b), 1.0 / gamma_pos(a + b));
      double k1 = std::min(gamma_pos(b) / gamma_pos(2 * a + b),
                           gamma_pos(a + b) / gamma_pos(3 * a + b));
      return K1 * in.sup_amp * (1.0 + l * in.sup_phase) / (1.0 + k1 * l * l * in.m * in.m);
    }
    case TheoremId::th4_2: {
      double K = std::max(1.0 / gamma_pos(2 * a), 1.0 / gamma_pos(3 * a));
      double c = std::sqrt(gamma_pos(1 + 2 * a) / gamma_pos(1 + 4 * a));
      double cmin = std::min(gamma_pos(3 * a) / gamma_pos(5 * a), c);
      double den = 1.0 + cmin * l * l * in.m * in.m;
      return K * in.sup_amp *
             (1.0 + l * in.sup_phase * (1.0 + c * l * l * in.sup_phase * in.sup_phase)) /
             (den * den);
    }
    case TheoremId::rl_lemma:
      return std::pow(1.0 + l, -in.rate);
    case TheoremId::tfpde:
      return std::pow(1.0 + l, -a);
  }
  throw UnknownTheorem("envelope: unknown theorem id");
}

double envelope_lower(TheoremId id, const EnvelopeInput& in, double lambda) {
  double a = in.order.alpha, b = in.order.beta, l = lambda;
  if (!(in.m > 0))
    throw MissingStat("envelope_lower: needs inf |phi| > 0");
  switch (id) {
    case TheoremId::th4_1:
      return in.m2 / gamma_pos(a + b) * l * in.m /
             (1.0 + gamma_pos(b - a) / gamma_pos(a + b) * l * l * in.sup_phase * in.sup_phase);
    case TheoremId::th4_2:
      return in.m2 / gamma_pos(3 * a) * l * in.m /
             (1.0 + gamma_pos(a) / gamma_pos(3 * a) * l * l * in.sup_phase * in.sup_phase);
    default:
      throw UnknownTheorem("envelope_lower: defined only for the two-sided theorems");
  }
}

double envelope_lower_vanishing(TheoremId id, const EnvelopeInput& in, double lambda) {
  double a = in.order.alpha, b = in.order.beta, l = lambda;
  switch (id) {
    case TheoremId::th4_1:
      return in.m2 / gamma_pos(b) /
             (1.0 + gamma_pos(b - 2 * a) / gamma_pos(b) * l * l * in.sup_phase * in.sup_phase);
    case TheoremId::th4_2: {
      double den =
          1.0 + std::sqrt(gamma_pos(1 - 2 * a) / gamma_pos(1 + 2 * a)) * l * l *
                    in.sup_phase * in.sup_phase;
      return in.m2 / gamma_pos(2 * a) / (den * den);
    }
    default:
      throw UnknownTheorem("envelope_lower_vanishing: defined only for the two-sided theorems");
  }
}

namespace {

IntegralSpec spec_of(MLOrder order, Interval iv, FunctionSpec phase, FunctionSpec amp,
                     Variant variant = Variant::direct) {
  return IntegralSpec{order, iv, std::move(phase), std::move(amp), variant};
}

QuadPolicy quad_with_tol(double tol) {
  QuadPolicy q;
  q.abs_tol = tol;
  return q;
}

}  // namespace

TheoremCase make_case(TheoremId id) {
  using F = FunctionSpec;
  TheoremCase c;
  c.id = id;
  c.lambda_grid = log_grid(1.0, 1e4, 17);
  c.quad = quad_with_tol(1e-10);
  const F one = F::constant(1.0);

  switch (id) {
    case TheoremId::th1:
      c.problem = spec_of({0.5, 0.7}, {0, 1}, F::affine(2, 1), one);
      c.mode = CheckMode::slope;
      c.expected_slope = -1;
      // the infinite-interval statement exercised on a finite truncation with
      // a decaying amplitude
      c.aux.push_back({"truncated[0,12]", spec_of({0.5, 0.7}, {0, 12}, F::affine(2, 1),
                                                  F::gaussian(0, 2)),
                       CheckMode::slope, -1, false, false, 10, 1000, log_grid(1, 1e3, 13)});
      c.note = "decay of the phase-bounded-below first-lemma case";
      break;
    case TheoremId::th1_2:
      c.problem = spec_of({0.5, 0.7}, {-1, 1}, F::affine(0, 1), one);
      c.mode = CheckMode::slope;
      c.expected_slope = -1;
      c.log_factor = true;
      c.note = "vanishing phase, log-corrected first-lemma rate";
      break;
    case TheoremId::th1_3i:
      c.problem = spec_of({0.5, 0.5}, {-1, 1}, F::affine(0, 1), one);
      c.mode = CheckMode::slope;
      c.expected_slope = -1;
      c.quad = quad_with_tol(1e-11);
      break;
    case TheoremId::th1_3ii:
      c.problem = spec_of({0.5, 0.5}, {0, 1}, F::affine(2, 1), one);
      c.mode = CheckMode::slope;
      c.expected_slope = -2;
      c.quad = quad_with_tol(1e-11);
      break;
    case TheoremId::th1_3p_i:
      c.problem = spec_of({0.5, 0.5}, {-1, 1}, F::affine(0, 1), F::affine(2, 1));
      c.mode = CheckMode::slope;
      c.expected_slope = -1;
      c.quad = quad_with_tol(1e-11);
      break;
    case TheoremId::th1_3p_ii:
      c.problem = spec_of({0.5, 0.5}, {-1, 1}, F::affine(0, 1), F::polynomial({1, 0, -1}));
      c.mode = CheckMode::slope;
      c.expected_slope = -2;
      c.log_factor = true;
      c.quad = quad_with_tol(1e-11);
      break;
    case TheoremId::th1_3p_iii:
      c.problem = spec_of({0.6, 0.6}, {0, 1}, F::affine(1, 1), one);
      c.mode = CheckMode::slope;
      c.expected_slope = -2;
      c.quad = quad_with_tol(1e-11);
      break;
    case TheoremId::th2:
      c.problem = spec_of({1.0, 2.5}, {0, 1}, F::affine(1, 1), one);
      c.mode = CheckMode::slope;
      c.expected_slope = -1.5;  // beta - 1
      c.note = "registered target is the stated rate (beta-1)";
      break;
    case TheoremId::th2_1:
      c.problem = spec_of({0.5, 0.7}, {-1, 1}, F::monomial(1, 2), one);
      c.mode = CheckMode::slope;
      c.expected_slope = -0.5;
      c.log_factor = true;
      c.quad = quad_with_tol(1e-11);
      break;
    case TheoremId::cor2_1:
      c.problem = spec_of({0.5, 0.7}, {-1, 1}, F::monomial(1, 2), F::affine(1, 0.5));
      c.mode = CheckMode::slope;
      c.expected_slope = -0.5;
      c.log_factor = true;
      c.quad = quad_with_tol(1e-11);
      break;
    case TheoremId::thm2_3:
      c.problem = spec_of({0.6, 0.6}, {-1, 1}, F::monomial(1, 2), one);
      c.mode = CheckMode::slope;
      c.expected_slope = -0.5;
      c.quad = quad_with_tol(1e-11);
      break;
    case TheoremId::cor2_2:
      c.problem = spec_of({0.6, 0.6}, {-1, 1}, F::monomial(1, 3), F::affine(1, 0.5));
      c.mode = CheckMode::slope;
      c.expected_slope = -1.0 / 3.0;
      c.quad = quad_with_tol(1e-11);
      break;
    case TheoremId::nonstat:
      c.problem = spec_of({0.95, 1.0}, {0, 1}, F::affine(0, 1), F::bump(0.5, 0.35),
                          Variant::shifted_power);
      c.mode = CheckMode::slope;
      c.expected_slope = -2;
      c.quad = quad_with_tol(1e-11);
      break;
    case TheoremId::th4_1:
      c.problem = spec_of({0.4, 0.9}, {0, 1}, F::affine(1, 1), one);
      c.mode = CheckMode::explicit_bound;
      c.aux.push_back({"vanishing-phase lower", spec_of({0.4, 0.9}, {0, 1}, F::affine(0, 1), one),
                       CheckMode::lower_explicit, 0, false, false, 1, 1e4, {}});
      break;
    case TheoremId::th4_2:
      c.problem = spec_of({0.3, 0.6}, {0, 1}, F::affine(1, 1), one);
      c.mode = CheckMode::explicit_bound;
      c.aux.push_back({"vanishing-phase lower", spec_of({0.3, 0.6}, {0, 1}, F::affine(0, 1), one),
                       CheckMode::lower_explicit, 0, false, false, 1, 1e4, {}});
      break;
    case TheoremId::rl_lemma:
      c.problem = spec_of({0.5, 0.8}, {1, 2}, F::affine(0, 1), F::affine(1, 1));
      c.mode = CheckMode::slope;
      c.expected_slope = -1;
      c.two_sided_slope = true;
      c.quad = quad_with_tol(1e-11);
      c.aux.push_back({"beta=alpha rate", spec_of({0.5, 0.5}, {1, 2}, F::affine(0, 1),
                                                  F::affine(1, 1)),
                       CheckMode::slope, -2, false, true, 100, 1e4, {}});
      c.aux.push_back({"alpha=1 rate", spec_of({1.0, 2.5}, {1, 2}, F::affine(0, 1), one),
                       CheckMode::slope, -1.5, false, true, 100, 1e4, {}});
      break;
    case TheoremId::tfpde:
      // parameters live in the tfpde module; the problem field is unused
      c.problem = spec_of({0.5, 1.0}, {0, 1}, F::affine(1, 1), one);
      c.mode = CheckMode::slope;
      c.expected_slope = -0.5;
      break;
  }
  return c;
}

std::vector<TheoremCase> registry() {
  std::vector<TheoremCase> cases;
  for (TheoremId id : all_theorems()) cases.push_back(make_case(id));
  return cases;
}

namespace {

void add_check(CaseReport& rep, std::string name, bool pass, double measured, double threshold) {
  rep.checks.push_back({std::move(name), pass, measured, threshold});
}

void run_slope_checks(CaseReport& rep, const SweepTable& table, const std::string& tag,
                      double expected, bool log_factor, bool two_sided, double lo, double hi) {
  DecayFit fit = fit_decay(table, lo, hi, log_factor);
  if (tag.empty()) rep.fit = fit;
  if (two_sided) {
    bool ok = std::fabs(fit.slope - expected) <= kSlopeTol;
    add_check(rep, tag.empty() ? "slope" : "slope[" + tag + "]", ok, fit.slope, expected);
  } else {
    double thr = expected + kSlopeTol;
    add_check(rep, tag.empty() ? "slope" : "slope[" + tag + "]", fit.slope <= thr, fit.slope,
              thr);
  }
}

CaseReport run_tfpde_case(const TheoremCase& c) {
  CaseReport rep;
  rep.id = c.id;
  rep.mode = CheckMode::slope;
  rep.note = c.note;
  rep.hypotheses = check_hypotheses(TheoremId::tfpde, c.problem.phase, c.problem.amp,
                                    c.problem.iv, c.problem.order);

  TfpdeParams pa = tfpde_defaults_a();
  TfpdeParams pb = tfpde_defaults_b();

  // initial-datum identity under the corrected transform constant
  {
    TfpdeSolver solver(pa);
    auto u0 = solver.solve(0.0);
    double worst = 0;
    for (size_t i = 0; i < pa.x_grid.size(); ++i)
      worst = std::max(worst, std::abs(u0[i] - Complex(pa.init(pa.x_grid[i]), 0)));
    add_check(rep, "u(0,.) reproduces the datum", worst <= 1e-8, worst, 1e-8);
  }

  DispersiveReport ra = dispersive_check(pa);
  DispersiveReport rb = dispersive_check(pb);
  add_check(rep, "sup-norm slope (alpha=0.5)", ra.pass, ra.slope, ra.threshold);
  add_check(rep, "sup-norm slope (alpha=0.8)", rb.pass, rb.slope, rb.threshold);

  EnvelopeInput in;
  in.order = MLOrder(pa.alpha, 1.0);
  for (auto [t, s] : ra.rows) {
    rep.table.rows.push_back({t, Complex(s, 0), 0, true});
    rep.envelope_vals.push_back(envelope(TheoremId::tfpde, in, t));
  }
  rep.fit = DecayFit{ra.slope, 0, ra.r2, 10, 1000};
  rep.pass = true;
  for (const auto& ch : rep.checks) rep.pass = rep.pass && ch.pass;
  return rep;
}

}  // namespace

CaseReport riemann_lebesgue_check(const MLOrder& order, const FunctionSpec& f,
                                  const Interval& iv, const std::vector<double>& k_grid,
                                  const QuadPolicy& policy) {
  double a = order.alpha, b = order.beta;
  double rate;
  if (std::fabs(a - 1.0) <= 1e-12 && b > 1.0) {
    if (!(iv.a > 0)) throw RegimeError("riemann_lebesgue: this regime needs 0 < a");
    rate = b - 1.0;
  } else if (a < 1.0 && std::fabs(b - a) <= 1e-12) {
    if (!(iv.a > 0)) throw RegimeError("riemann_lebesgue: this regime needs 0 < a");
    rate = 2.0;
  } else if (a < 1.0 && b > 0) {
    rate = 1.0;
  } else {
    throw RegimeError("riemann_lebesgue: parameters outside the stated regimes");
  }

  CaseReport rep;
  rep.id = TheoremId::rl_lemma;
  rep.mode = CheckMode::slope;
  IntegralSpec spec{order, iv, FunctionSpec::affine(0, 1), f, Variant::direct};
  rep.hypotheses = check_hypotheses(TheoremId::rl_lemma, spec.phase, spec.amp, iv, order);
  if (!rep.hypotheses.pass())
    throw HypothesisFailure("riemann_lebesgue: hypotheses fail");
  rep.table = sweep(spec, k_grid, policy);

  EnvelopeInput in = envelope_input(spec);
  in.rate = rate;
  for (const auto& r : rep.table.rows)
    rep.envelope_vals.push_back(envelope(TheoremId::rl_lemma, in, r.lambda));

  run_slope_checks(rep, rep.table, "", -rate, false, true, 100, 1e4);
  // qualitative statement: the integral tends to zero along the grid
  double first = std::abs(rep.table.rows.front().value);
  double last = std::abs(rep.table.rows.back().value);
  add_check(rep, "integral tends to zero", last < 0.1 * first, last, 0.1 * first);

  rep.pass = true;
  for (const auto& ch : rep.checks) rep.pass = rep.pass && ch.pass;
  return rep;
}

CaseReport run_case(const TheoremCase& c) {
  if (c.id == TheoremId::tfpde) return run_tfpde_case(c);
  if (c.id == TheoremId::rl_lemma) {
    // three stated regimes, one report
    CaseReport rep = riemann_lebesgue_check(c.problem.order, c.problem.amp, c.problem.iv,
                                            c.lambda_grid, c.quad);
    for (const auto& ax : c.aux) {
      CaseReport sub = riemann_lebesgue_check(ax.problem.order, ax.problem.amp, ax.problem.iv,
                                              c.lambda_grid, c.quad);
      for (auto& ch : sub.checks)
        if (ch.name == "slope")
          add_check(rep, "slope[" + ax.tag + "]", ch.pass, ch.measured, ch.threshold);
    }
    rep.note = c.note;
    rep.pass = true;
    for (const auto& ch : rep.checks) rep.pass = rep.pass && ch.pass;
    return rep;
  }

  CaseReport rep;
  rep.id = c.id;
  rep.mode = c.mode;
  rep.note = c.note;
  rep.hypotheses = check_hypotheses(c.id, c.problem.phase, c.problem.amp, c.problem.iv,
                                    c.problem.order);
  if (!rep.hypotheses.pass())
    throw HypothesisFailure(std::string("hypotheses fail for ") + theorem_name(c.id));

  rep.table = sweep(c.problem, c.lambda_grid, c.quad);
  EnvelopeInput in = envelope_input(c.problem);
  for (const auto& r : rep.table.rows)
    rep.envelope_vals.push_back(envelope(c.id, in, r.lambda));

  if (c.mode == CheckMode::slope) {
    run_slope_checks(rep, rep.table, "", c.expected_slope, c.log_factor, c.two_sided_slope,
                     c.fit_lo, c.fit_hi);
    double obs = 0;
    for (size_t i = 0; i < rep.table.rows.size(); ++i) {
      double env = rep.envelope_vals[i];
      if (env > 0) obs = std::max(obs, std::abs(rep.table.rows[i].value) / env);
    }
    rep.observed_M = obs;
  } else {
    // explicit two-sided envelopes with the stated gamma-ratio constants
    double max_upper = 0, max_lower = 0;
    bool has_lower = in.m > 0;
    for (size_t i = 0; i < rep.table.rows.size(); ++i) {
      double v = std::abs(rep.table.rows[i].value);
      max_upper = std::max(max_upper, v / rep.envelope_vals[i]);
      if (has_lower) {
        double lo = envelope_lower(c.id, in, rep.table.rows[i].lambda);
        rep.lower_vals.push_back(lo);
        if (lo > 0) max_lower = std::max(max_lower, lo / v);
      }
    }
    add_check(rep, "upper envelope", max_upper <= 1.0 + kEnvelopeTol, max_upper,
              1.0 + kEnvelopeTol);
    if (has_lower)
      add_check(rep, "lower envelope", max_lower <= 1.0 + kEnvelopeTol, max_lower,
                1.0 + kEnvelopeTol);
    rep.fit = fit_decay(rep.table, c.fit_lo, c.fit_hi, false);
    rep.observed_M = max_upper;
  }

  for (const auto& ax : c.aux) {
    const auto& grid = ax.lambda_grid.empty() ? c.lambda_grid : ax.lambda_grid;
    SweepTable sub = sweep(ax.problem, grid, c.quad);
    if (ax.mode == CheckMode::slope) {
      run_slope_checks(rep, sub, ax.tag, ax.expected_slope, ax.log_factor, ax.two_sided_slope,
                       ax.fit_lo, ax.fit_hi);
    } else if (ax.mode == CheckMode::lower_explicit) {
      EnvelopeInput ain = envelope_input(ax.problem);
      double worst = 0;
      for (const auto& r : sub.rows) {
        double lo = envelope_lower_vanishing(c.id, ain, r.lambda);
        double v = std::abs(r.value);
        if (lo > 0 && v > 0) worst = std::max(worst, lo / v);
      }
      add_check(rep, "lower envelope[" + ax.tag + "]", worst <= 1.0 + kEnvelopeTol, worst,
                1.0 + kEnvelopeTol);
    }
  }

  rep.pass = true;
  for (const auto& ch : rep.checks) rep.pass = rep.pass && ch.pass;
  return rep;
}

CaseReport run_case(TheoremId id) { return run_case(make_case(id)); }

std::string case_slug(TheoremId id) {
  std::string s = theorem_name(id);
  for (char& ch : s) {
    if (ch == '.') ch = '_';
    else if (ch == '+') ch = 'p';
    else if (ch == '-') ch = '_';
  }
  return s;
}

std::string case_csv(const CaseReport& r) {
  CsvWriter w({"lambda", "abs_I", "envelope", "ratio"});
  for (size_t i = 0; i < r.table.rows.size(); ++i) {
    double v = std::abs(r.table.rows[i].value);
    double env = i < r.envelope_vals.size() ? r.envelope_vals[i] : 0.0;
    w.row({r.table.rows[i].lambda, v, env, env > 0 ? v / env : 0.0});
  }
  return w.text;
}

std::string case_svg(const CaseReport& r) {
  std::vector<std::pair<double, double>> data, env;
  for (size_t i = 0; i < r.table.rows.size(); ++i) {
    data.emplace_back(r.table.rows[i].lambda, std::abs(r.table.rows[i].value));
    if (i < r.envelope_vals.size())
      env.emplace_back(r.table.rows[i].lambda, r.envelope_vals[i]);
  }
  return svg_loglog(data, env, theorem_name(r.id));
}

std::string summary_line(const CaseReport& r) {
  std::string s = theorem_name(r.id);
  s += r.mode == CheckMode::slope ? " mode=slope" : " mode=explicit";
  if (r.fit) {
    s += " slope=" + fmt_double(r.fit->slope);
    s += " r2=" + fmt_double(r.fit->r2);
  }
  if (r.observed_M > 0) s += " observed_M=" + fmt_double(r.observed_M);
  for (const auto& ch : r.checks)
    if (!ch.pass)
      s += " FAIL(" + ch.name + "=" + fmt_double(ch.measured) + ")";
  s += r.pass ? " PASS" : " FAIL";
  return s;
}

RunAllResult run_and_write(const std::vector<TheoremId>& ids, const std::string& out_dir,
                           bool svg) {
  std::filesystem::create_directories(out_dir);
  RunAllResult out;
  std::string summary;
  for (TheoremId id : ids) {
    CaseReport rep = run_case(id);
    write_text_file(out_dir + "/" + case_slug(id) + ".csv", case_csv(rep));
    if (svg) write_text_file(out_dir + "/" + case_slug(id) + ".svg", case_svg(rep));
    summary += summary_line(rep) + "\n";
    out.all_pass = out.all_pass && rep.pass;
    out.reports.push_back(std::move(rep));
  }
  write_text_file(out_dir + "/summary.txt", summary);
  return out;
}

}  // namespace mlosc

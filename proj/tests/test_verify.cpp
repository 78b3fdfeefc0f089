#include <doctest.h>

#include <cmath>

#include "mlosc/special.hpp"
#include "mlosc/verify.hpp"

using namespace mlosc;

namespace {
SweepTable synthetic(const std::function<double(double)>& f) {
  SweepTable t;
  for (int i = 0; i <= 16; ++i) {
    double l = std::pow(10.0, 4.0 * i / 16.0);
    t.rows.push_back({l, Complex(f(l), 0), 0, true});
  }
  return t;
}
}  // namespace

TEST_CASE("fit_decay recovers synthetic slopes") {
  DecayFit f1 = fit_decay(synthetic([](double l) { return 1.0 / l; }), 1, 1e4, false);
  CHECK(f1.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(f1.r2 == doctest::Approx(1.0).epsilon(1e-12));

  DecayFit f2 = fit_decay(
      synthetic([](double l) { return std::log(2.0 + l) / (l * l); }), 1, 1e4, true);
  CHECK(f2.slope == doctest::Approx(-2.0).epsilon(1e-3));

  SweepTable tiny;
  tiny.rows.push_back({1.0, Complex(1, 0), 0, true});
  CHECK_THROWS_AS(fit_decay(tiny, 0.1, 10, false), InsufficientData);

  SweepTable bad = synthetic([](double) { return 1.0; });
  bad.rows[3].value = Complex(0, 0);
  CHECK_THROWS_AS(fit_decay(bad, 1, 1e4, false), NonPositiveValue);
}

TEST_CASE("envelope values") {
  EnvelopeInput in;
  in.order = MLOrder(0.5, 0.7);
  in.m = 2.0;
  in.amp_l1 = 1.0;
  CHECK(envelope(TheoremId::th1, in, 10.0) == doctest::Approx(1.0 / 21.0).epsilon(1e-14));

  // explicit gamma constants of the two-sided theorem
  EnvelopeInput e4;
  e4.order = MLOrder(0.4, 0.9);
  e4.m = 1.0;
  e4.sup_phase = 2.0;
  e4.sup_amp = 1.0;
  e4.m2 = 1.0;
  double K1 = std::max(1.0 / std::tgamma(0.9), 1.0 / std::tgamma(1.3));
  double k1 = std::min(std::tgamma(0.9) / std::tgamma(1.7),
                       std::tgamma(1.3) / std::tgamma(2.1));
  double l = 7.0;
  CHECK(envelope(TheoremId::th4_1, e4, l) ==
        doctest::Approx(K1 * (1 + 2 * l) / (1 + k1 * l * l)).epsilon(1e-14));
  double low = envelope_lower(TheoremId::th4_1, e4, l);
  double expect_low = 1.0 / std::tgamma(1.3) * l /
                      (1.0 + std::tgamma(0.5) / std::tgamma(1.3) * l * l * 4.0);
  CHECK(low == doctest::Approx(expect_low).epsilon(1e-14));

  // every envelope is finite and positive at lambda = 0
  for (TheoremId id : all_theorems()) {
    EnvelopeInput g;
    g.order = MLOrder(0.4, 0.9);
    g.m = 1.0;
    g.m_deriv = 1.0;
    g.sup_phase = 2.0;
    g.m2 = 0.5;
    g.sup_amp = 1.0;
    g.amp_l1 = 1.0;
    g.amp_bv = 1.0;
    g.amp_quot = 1.0;
    if (id == TheoremId::th2) g.order = MLOrder(1.0, 2.5);
    double v = envelope(id, g, 0.0);
    CHECK_MESSAGE((std::isfinite(v) && v > 0), "id=" << theorem_name(id));
  }

  EnvelopeInput nom;
  nom.order = MLOrder(0.5, 0.7);
  nom.m = 0.0;
  CHECK_THROWS_AS(envelope(TheoremId::th1, nom, 1.0), MissingStat);
  CHECK_THROWS_AS(envelope_lower(TheoremId::th4_1, nom, 1.0), MissingStat);
  CHECK_THROWS_AS(envelope_lower(TheoremId::th1, nom, 1.0), MissingStat);
}

TEST_CASE("registry is complete and hypothesis-clean") {
  auto cases = registry();
  REQUIRE(cases.size() == 17);
  for (const auto& c : cases) {
    if (c.id == TheoremId::tfpde || c.id == TheoremId::rl_lemma) continue;
    HypothesisReport r = check_hypotheses(c.id, c.problem.phase, c.problem.amp, c.problem.iv,
                                          c.problem.order);
    CHECK_MESSAGE(r.pass(), "registry case " << theorem_name(c.id));
  }
}

TEST_CASE("run_case throws on failing hypotheses before sweeping") {
  TheoremCase c = make_case(TheoremId::th1);
  c.problem.phase = FunctionSpec::affine(0, 1);  // inf |phi| = 0 on [0,1]
  c.problem.iv = Interval(-1, 1);
  CHECK_THROWS_AS(run_case(c), HypothesisFailure);
}

TEST_CASE("slope case on a reduced grid") {
  TheoremCase c = make_case(TheoremId::th1);
  c.lambda_grid.clear();
  for (int i = 0; i <= 12; ++i) c.lambda_grid.push_back(std::pow(10.0, 3.0 * i / 12.0));
  c.fit_lo = 10;
  c.fit_hi = 1000;
  c.aux.clear();
  CaseReport rep = run_case(c);
  REQUIRE(rep.fit.has_value());
  CHECK(rep.fit->slope <= -0.85);
  CHECK(rep.fit->r2 >= 0.9);
  CHECK(rep.pass);
  CHECK(rep.observed_M > 0);
}

TEST_CASE("riemann-lebesgue regime validation") {
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(std::pow(10.0, 2.0 * i / 8.0));
  CHECK_THROWS_AS(riemann_lebesgue_check(MLOrder(0.5, 0.5), FunctionSpec::constant(1.0),
                                         Interval(-1, 1), grid),
                  RegimeError);  // beta = alpha regime needs 0 < a
  CHECK_THROWS_AS(riemann_lebesgue_check(MLOrder(1.0, 0.5), FunctionSpec::constant(1.0),
                                         Interval(1, 2), grid),
                  RegimeError);
}

TEST_CASE("case artifacts are deterministic") {
  TheoremCase c = make_case(TheoremId::th1);
  c.lambda_grid.clear();
  for (int i = 0; i <= 8; ++i) c.lambda_grid.push_back(std::pow(10.0, 2.0 * i / 8.0));
  c.fit_lo = 5;
  c.fit_hi = 100;
  c.aux.clear();
  CaseReport a = run_case(c);
  CaseReport b = run_case(c);
  CHECK(case_csv(a) == case_csv(b));
  CHECK(case_svg(a) == case_svg(b));
  CHECK(summary_line(a) == summary_line(b));
  CHECK(case_csv(a).rfind("lambda,abs_I,envelope,ratio\n", 0) == 0);
}

TEST_CASE("case slugs are filesystem-safe") {
  CHECK(case_slug(TheoremId::th1_3p_ii) == "th1_3pii");
  CHECK(case_slug(TheoremId::rl_lemma) == "rl_lemma");
  CHECK(case_slug(TheoremId::thm2_3) == "thm2_3");
}

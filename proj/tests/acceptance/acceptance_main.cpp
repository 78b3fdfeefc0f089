// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances and runtime budgets are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mlosc/frac.hpp"
#include "mlosc/mlf.hpp"
#include "mlosc/special.hpp"
#include "mlosc/tfpde.hpp"
#include "mlosc/verify.hpp"

using namespace mlosc;

namespace {

int g_failures = 0;

struct Criterion {
  std::string name;
  double budget_seconds;
  std::vector<std::string> notes;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

void run(const std::string& name, double budget_seconds,
         const std::function<void(Criterion&)>& body) {
  Criterion c{name, budget_seconds, {}, true};
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.notes.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    c.ok = false;
    c.notes.push_back("runtime " + std::to_string(secs) + "s over budget");
  }
  std::printf("[%s] %s (%.1fs)\n", c.ok ? "PASS" : "FAIL", c.name.c_str(), secs);
  for (const auto& n : c.notes) std::printf("       - %s\n", n.c_str());
  std::fflush(stdout);
  if (!c.ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<MLOrder> closed_form_orders() {
  return {{1, 1}, {0.5, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {2, 4}, {1, -1}, {2, -2}, {2, -1}};
}

const CaseReport& report_for(const std::vector<CaseReport>& reps, TheoremId id) {
  for (const auto& r : reps)
    if (r.id == id) return r;
  throw std::runtime_error("missing report");
}

double slope_of(const CaseReport& r) {
  if (!r.fit) throw std::runtime_error("report carries no fit");
  return r.fit->slope;
}

void check_named(const CaseReport& r, const std::string& needle, Criterion& c) {
  bool found = false;
  for (const auto& ch : r.checks) {
    if (ch.name.find(needle) == std::string::npos) continue;
    found = true;
    c.expect(ch.pass, std::string(theorem_name(r.id)) + " " + ch.name + " measured " +
                          fmt(ch.measured) + " vs " + fmt(ch.threshold));
  }
  c.expect(found, std::string(theorem_name(r.id)) + ": check not found: " + needle);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  EvalPolicy pol;

  run("C1 ML identity suite", 10.0, [&](Criterion& c) {
    std::mt19937 rng(20260809);
    std::uniform_real_distribution<double> mag(0.01, 10.0);
    for (const MLOrder& order : closed_form_orders()) {
      for (int i = 0; i < 50; ++i) {
        double r = mag(rng);
        Complex z = (i % 2 == 0) ? Complex(-r, 0) : Complex(0, (i % 4 == 1 ? r : -r));
        auto cf = ml_closed_form(order, z);
        if (!cf) {
          c.expect(false, "missing closed form");
          continue;
        }
        Complex s = ml_series(order, z, pol);
        double rel = std::abs(*cf - s) / (1.0 + std::abs(s));
        c.expect(rel <= 1e-10, "closed-form gap " + fmt(rel) + " at (" + fmt(order.alpha) +
                                   "," + fmt(order.beta) + ")");
      }
    }
    for (MLOrder order : std::vector<MLOrder>{{0.5, 1.0}, {0.7, 0.9}, {1.0, 1.0}, {0.3, 1.4}}) {
      for (double t = -20.0; t <= 20.0; t += 1.25) {
        try {
          Complex e = euler_decompose(order, t, pol);
          Complex s = ml_series(order, Complex(0, t), pol);
          double rel = std::abs(e - s) / (1.0 + std::abs(s));
          c.expect(rel <= 1e-10, "euler gap " + fmt(rel) + " at t=" + fmt(t));
        } catch (const NoConvergence&) {
          // series out of reach at this argument; the identity is checked
          // wherever it converges
        }
      }
    }
    std::uniform_real_distribution<double> tm(0.01, 15.0);
    for (MLOrder order : std::vector<MLOrder>{{0.5, 0.7}, {0.8, 1.0}, {1.0, 2.5}}) {
      for (int i = 0; i < 20; ++i) {
        double t = tm(rng);
        Complex up = ml_eval(order, Complex(0, t), pol);
        Complex dn = ml_eval(order, Complex(0, -t), pol);
        c.expect(std::abs(up - std::conj(dn)) <= 1e-14 * (1.0 + std::abs(up)),
                 "conjugate symmetry at t=" + fmt(t));
      }
    }
  });

  run("C2 optimal-bound sandwich", 5.0, [&](Criterion& c) {
    std::vector<MLOrder> regimes{{0.5, 1.0}, {0.5, 0.5}, {0.4, 0.9}};
    for (const MLOrder& order : regimes) {
      NegRealEvaluator ev(order, pol);
      for (int i = -1; i <= 24; ++i) {
        double x = i < 0 ? 0.0 : std::pow(10.0, -2.0 + 5.0 * i / 24.0);
        auto [lo, hi] = ml_real_bounds(order, x);
        double v = ev(x);
        c.expect(lo <= v * (1 + 1e-10) && v <= hi * (1 + 1e-10),
                 "sandwich broken at (" + fmt(order.alpha) + "," + fmt(order.beta) +
                     ") x=" + fmt(x));
        if (x == 0.0)
          c.expect(std::fabs(lo - v) <= 1e-12 && std::fabs(hi - v) <= 1e-12,
                   "bounds must collapse at x=0");
      }
    }
  });

  run("C3 derivative identity h^2 scaling", 30.0, [&](Criterion& c) {
    auto aff = [](double x) { return x + 1.0; };
    auto one = [](double) { return 1.0; };
    for (double alpha : {0.4, 0.6, 0.9}) {
      for (double lambda : {1.0, 3.0, 7.0}) {
        for (double x : {0.3, 0.5, 0.7}) {
          if (x != 0.5 && lambda != 3.0) continue;  // 9 combinations total
          double rh = ml_derivative_identity_residual(alpha, aff, one, lambda, x, 2e-3, pol);
          double rh2 = ml_derivative_identity_residual(alpha, aff, one, lambda, x, 1e-3, pol);
          double ratio = rh / rh2;
          c.expect(ratio >= 3.5 && ratio <= 4.5,
                   "ratio " + fmt(ratio) + " at alpha=" + fmt(alpha) + " lambda=" + fmt(lambda) +
                       " x=" + fmt(x));
        }
      }
    }
  });

  run("C4 first-lemma rates", 120.0, [&](Criterion& c) {
    CaseReport th1 = run_case(TheoremId::th1);
    c.expect(slope_of(th1) <= -0.85, "th1 slope " + fmt(slope_of(th1)));
    check_named(th1, "truncated", c);
    CaseReport th12 = run_case(TheoremId::th1_2);
    c.expect(slope_of(th12) <= -0.85, "th1.2 log-normalised slope " + fmt(slope_of(th12)));
    CaseReport thp3 = run_case(TheoremId::th1_3p_iii);
    c.expect(slope_of(thp3) <= -1.85, "th1.3+iii slope " + fmt(slope_of(thp3)));
    CaseReport th2 = run_case(TheoremId::th2);
    c.expect(slope_of(th2) <= -1.35, "th2 slope " + fmt(slope_of(th2)) +
                                         " (stated rate beta-1 = 1.5)");
  });

  run("C5 second-lemma rates", 120.0, [&](Criterion& c) {
    CaseReport aa = run_case(TheoremId::thm2_3);
    c.expect(slope_of(aa) <= -0.35, "thm2-3 slope " + fmt(slope_of(aa)));
    CaseReport gen = run_case(TheoremId::th2_1);
    c.expect(slope_of(gen) <= -0.35, "th2.1 log-normalised slope " + fmt(slope_of(gen)));
    CaseReport k3 = run_case(TheoremId::cor2_2);
    c.expect(slope_of(k3) <= -0.18, "cor2.2 (k=3) slope " + fmt(slope_of(k3)));
  });

  run("C6 non-stationary phase", 60.0, [&](Criterion& c) {
    CaseReport ns = run_case(TheoremId::nonstat);
    c.expect(slope_of(ns) <= -1.85, "nonstat slope " + fmt(slope_of(ns)));
  });

  run("C7 explicit two-sided envelopes", 60.0, [&](Criterion& c) {
    for (TheoremId id : {TheoremId::th4_1, TheoremId::th4_2}) {
      CaseReport rep = run_case(id);
      check_named(rep, "upper envelope", c);
      check_named(rep, "lower envelope", c);
      check_named(rep, "vanishing-phase", c);
    }
  });

  run("C8 fractional-operator suite", 120.0, [&](Criterion& c) {
    FunctionSpec ident = FunctionSpec::affine(0, 1);
    Interval iv(0, 1);
    FracSpec spec(0.6, ident, {0, 2});
    double x = 1.4;
    for (int p : {1, 2, 3}) {
      double expect = std::tgamma(p + 1.0) * recip_gamma(p + 1.0 - 0.6) * std::pow(x, p - 0.6);
      double got = caputo_deriv(spec, FunctionSpec::monomial(1, p), x);
      c.expect(std::fabs(got - expect) <= 1e-6 * (1.0 + std::fabs(expect)),
               "power rule p=" + std::to_string(p) + " err " + fmt(std::fabs(got - expect)));
    }
    FunctionSpec curved = FunctionSpec::polynomial({0, 1, 0.5});
    for (double alpha : {0.5, 0.7, 0.9}) {
      for (double lambda : {0.5, 1.0, 5.0}) {
        double r = eigen_residual(alpha, curved, iv, lambda, 0.6);
        c.expect(r <= 1e-5 * (1.0 + lambda), "eigen residual " + fmt(r) + " at alpha=" +
                                                 fmt(alpha) + " lambda=" + fmt(lambda));
      }
    }
    double sg = semigroup_residual(0.6, 0.6, ident, FunctionSpec::monomial(1, 2), iv, 0.7);
    c.expect(sg <= 1e-5, "semigroup residual " + fmt(sg));
    double ibp = int_by_parts_residual(0.5, ident, FunctionSpec::bump(0.5, 0.45),
                                       FunctionSpec::monomial(1, 2), iv);
    c.expect(ibp <= 1e-4, "integration-by-parts residual " + fmt(ibp));
  });

  run("C9 Riemann-Lebesgue rates", 60.0, [&](Criterion& c) {
    CaseReport rl = run_case(TheoremId::rl_lemma);
    for (const auto& ch : rl.checks) {
      if (ch.name.find("slope") == std::string::npos) continue;
      c.expect(ch.pass,
               ch.name + " measured " + fmt(ch.measured) + " target " + fmt(ch.threshold));
    }
  });

  run("C10 dispersive estimate", 180.0, [&](Criterion& c) {
    TfpdeParams pa = tfpde_defaults_a();
    TfpdeSolver solver(pa);
    auto u0 = solver.solve(0.0);
    double worst = 0;
    for (size_t i = 0; i < pa.x_grid.size(); ++i)
      worst = std::max(worst, std::abs(u0[i] - Complex(pa.init(pa.x_grid[i]), 0)));
    c.expect(worst <= 1e-8, "u(0,.) identity err " + fmt(worst));
    DispersiveReport ra = dispersive_check(pa);
    c.expect(ra.slope <= -0.5 + 0.15, "alpha=0.5 sup-norm slope " + fmt(ra.slope));
    DispersiveReport rb = dispersive_check(tfpde_defaults_b());
    c.expect(rb.slope <= -0.8 + 0.15, "alpha=0.8 sup-norm slope " + fmt(rb.slope));
  });

  run("C11 determinism of the registry artifacts", 0.0, [&](Criterion& c) {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "mlosc_accept";
    fs::remove_all(base);
    RunAllResult a = run_and_write(all_theorems(), (base / "a").string(), false);
    RunAllResult b = run_and_write(all_theorems(), (base / "b").string(), false);
    (void)a;
    (void)b;
    size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(base / "a")) {
      fs::path other = base / "b" / entry.path().filename();
      c.expect(fs::exists(other), "missing " + other.string());
      if (!fs::exists(other)) continue;
      c.expect(slurp(entry.path()) == slurp(other),
               "byte mismatch in " + entry.path().filename().string());
      ++compared;
    }
    c.expect(compared >= 18, "expected 17 case files plus the summary");
  });

  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlosc/quadrature.hpp"

namespace mlosc {

// log factors and preasymptotic transients contaminate small-lambda fits;
// fits run on the top decades and slopes carry this slack
constexpr double kSlopeTol = 0.15;
constexpr double kEnvelopeTol = 0.02;

enum class CheckMode { slope, explicit_bound, lower_explicit };

struct DecayFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  double window_lo = 0;
  double window_hi = 0;
};

DecayFit fit_decay(const SweepTable& table, double window_lo, double window_hi,
                   bool log_factor);

// statistics an envelope formula may consume
struct EnvelopeInput {
  MLOrder order{0.5, 1.0};
  double m = 0;          // inf |phi|
  double m_deriv = 0;    // inf |phi'|
  double sup_phase = 0;  // sup |phi|
  double m2 = 0;         // inf |psi|
  double sup_amp = 0;
  double amp_l1 = 0;     // int |psi|
  double amp_bv = 0;     // |psi(b)| + int |psi'|
  double amp_quot = 0;   // sup |(psi/phi')'| + endpoint quotients
  int k = 2;             // phase-derivative order for the second-lemma family
  double rate = 1;       // generalised Riemann-Lebesgue decay exponent
};

EnvelopeInput envelope_input(const IntegralSpec& spec);

// value of the theorem's upper envelope at lambda (structural factors kept,
// undetermined constants normalised to 1; explicit gamma-ratio constants for
// the two-sided theorems)
double envelope(TheoremId id, const EnvelopeInput& in, double lambda);
// pointwise lower envelopes of the two-sided theorems (require m > 0)
double envelope_lower(TheoremId id, const EnvelopeInput& in, double lambda);
// lower envelopes for phases that vanish somewhere (m == 0 branch)
double envelope_lower_vanishing(TheoremId id, const EnvelopeInput& in, double lambda);

struct TheoremCase {
  TheoremId id = TheoremId::th1;
  IntegralSpec problem;
  std::vector<double> lambda_grid;
  CheckMode mode = CheckMode::slope;
  double expected_slope = 0;
  bool log_factor = false;
  bool two_sided_slope = false;  // rl regimes check the rate, not just a bound
  double fit_lo = 100, fit_hi = 10000;
  QuadPolicy quad;

  struct Aux {
    std::string tag;
    IntegralSpec problem;
    CheckMode mode = CheckMode::slope;
    double expected_slope = 0;
    bool log_factor = false;
    bool two_sided_slope = false;
    double fit_lo = 100, fit_hi = 10000;
    std::vector<double> lambda_grid;  // empty = inherit
  };
  std::vector<Aux> aux;
  std::string note;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0;
  double threshold = 0;
};

struct CaseReport {
  TheoremId id = TheoremId::th1;
  CheckMode mode = CheckMode::slope;
  HypothesisReport hypotheses;
  SweepTable table;                   // primary sweep (lambda or t rows)
  std::vector<double> envelope_vals;  // upper envelope per row
  std::vector<double> lower_vals;     // lower envelope per row (two-sided cases)
  std::optional<DecayFit> fit;
  double observed_M = 0;  // sup_lambda |I| / envelope(constant 1)
  std::vector<CheckResult> checks;
  bool pass = false;
  std::string note;
};

// shipped experiment bound to each estimate
TheoremCase make_case(TheoremId id);
std::vector<TheoremCase> registry();

CaseReport run_case(const TheoremCase& c);
CaseReport run_case(TheoremId id);

// generalised Riemann-Lebesgue rate check for int E_{a,b}(i k x) f(x) dx
CaseReport riemann_lebesgue_check(const MLOrder& order, const FunctionSpec& f,
                                  const Interval& iv, const std::vector<double>& k_grid,
                                  const QuadPolicy& policy = {});

// artifacts
std::string case_slug(TheoremId id);
std::string case_csv(const CaseReport& r);   // lambda,abs_I,envelope,ratio
std::string case_svg(const CaseReport& r);
std::string summary_line(const CaseReport& r);

struct RunAllResult {
  std::vector<CaseReport> reports;
  bool all_pass = true;
};

// runs the listed cases (in registry order), writes one CSV per case plus a
// final summary.txt into out_dir; SVG per case when requested
RunAllResult run_and_write(const std::vector<TheoremId>& ids, const std::string& out_dir,
                           bool svg);

}  // namespace mlosc

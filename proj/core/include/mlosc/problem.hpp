#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlosc/errors.hpp"
#include "mlosc/mlf.hpp"

namespace mlosc {

struct Interval {
  double a = 0.0;
  double b = 1.0;
  Interval() = default;
  Interval(double a_, double b_) : a(a_), b(b_) {
    if (!(a < b)) throw std::invalid_argument("Interval: requires a < b");
  }
  double length() const { return b - a; }
};

enum class Family { affine, monomial, polynomial, shifted_power, bump, gaussian };
enum class Role { phase, amplitude };

const char* family_name(Family f);
Family family_from_name(const std::string& s);

// Closed-form function family with exact derivatives up to its smoothness.
struct FunctionSpec {
  Family family = Family::polynomial;
  std::vector<double> coeff;
  Role role = Role::phase;

  static FunctionSpec affine(double c0, double c1, Role r = Role::phase);
  static FunctionSpec monomial(double c, int k, Role r = Role::phase);
  static FunctionSpec polynomial(std::vector<double> coeffs, Role r = Role::phase);
  static FunctionSpec constant(double c, Role r = Role::amplitude);
  // c * (x - shift)^p for x >= shift
  static FunctionSpec shifted_power(double c, double exponent, double shift,
                                    Role r = Role::phase);
  // smooth compactly supported on [center-width, center+width], peak 1
  static FunctionSpec bump(double center, double width, Role r = Role::amplitude);
  static FunctionSpec gaussian(double center, double width, Role r = Role::amplitude);

  double operator()(double x) const { return eval(x, 0); }
  double eval(double x, int deriv_order) const;
  // highest derivative order with an exact formula (large value = analytic)
  int smoothness() const;
  // scalar multiple within the same family, when representable
  std::optional<FunctionSpec> scaled(double s) const;

  bool operator==(const FunctionSpec&) const = default;
};

struct DomainStats {
  double inf_abs_phase = 0;        // m, m1
  double sup_abs_phase = 0;        // ||phi||_inf
  double min_phase = 0;            // signed extrema (panel scaling)
  double max_phase = 0;
  double inf_abs_phase_deriv = 0;
  double inf_abs_amp = 0;          // m2
  double sup_abs_amp = 0;
  double amp_L1 = 0;
  std::vector<double> zeros_of_phase;
  bool phase_monotonic = false;
  bool phase_deriv_monotonic = false;
  bool phase_increasing = false;
  std::map<int, double> min_abs_kth_deriv;  // k = 1..4 where defined
  double refine_residual = 0;      // largest golden-section bracket at exit
};

DomainStats compute_stats(const FunctionSpec& phase, const FunctionSpec& amp,
                          const Interval& iv, int grid_n = 1024);

// integrals of the amplitude used by envelope constants
double amp_abs_integral(const FunctionSpec& amp, const Interval& iv);        // int |psi|
double amp_deriv_abs_integral(const FunctionSpec& amp, const Interval& iv);  // int |psi'|

// rescale (phi, lambda) -> (phi/c, c*lambda); the integrals are invariant
struct RescaledProblem {
  FunctionSpec phase;
  double lambda_factor;
};
std::optional<RescaledProblem> rescale_phase(const FunctionSpec& phase, double c);

enum class TheoremId {
  th1, th1_2, th1_3i, th1_3ii, th1_3p_i, th1_3p_ii, th1_3p_iii,
  th2, th2_1, cor2_1, thm2_3, cor2_2, nonstat, th4_1, th4_2, rl_lemma, tfpde
};

const char* theorem_name(TheoremId id);
TheoremId theorem_from_name(const std::string& s);  // throws UnknownTheorem
std::vector<TheoremId> all_theorems();

struct HypothesisItem {
  std::string label;
  bool pass;
  double measured;
};

struct HypothesisReport {
  std::vector<HypothesisItem> items;
  bool pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
};

HypothesisReport check_hypotheses(TheoremId id, const FunctionSpec& phase,
                                  const FunctionSpec& amp, const Interval& iv,
                                  const MLOrder& order);

}  // namespace mlosc

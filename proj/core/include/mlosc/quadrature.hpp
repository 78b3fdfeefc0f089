#pragma once

#include <string>
#include <vector>

#include "mlosc/mlf.hpp"
#include "mlosc/problem.hpp"

namespace mlosc {

enum class Variant { direct, shifted_power };

// I(lambda)  = int_a^b E_{a,b}(i lambda phi(x)) psi(x) dx          (direct)
// Ic(lambda) = int_a^b E_{a,b}(i lambda (phi(x)-phi(a))^a) psi dx  (shifted_power)
struct IntegralSpec {
  MLOrder order;
  Interval iv;
  FunctionSpec phase;
  FunctionSpec amp;
  Variant variant = Variant::direct;
};

struct QuadPolicy {
  int nodes_per_panel = 16;
  double panels_per_unit_phase = 4.0;
  double abs_tol = 1e-9;
  int max_panels = 200000;
  bool operator==(const QuadPolicy&) const = default;
};

void validate(const QuadPolicy& p);

struct QuadResult {
  Complex value;
  double err_est = 0;   // absolute, from one panel-doubling refinement
  int panels_used = 0;
  bool converged = true;  // err_est <= abs_tol
};

// Prepared form: phase statistics and the Mittag-Leffler evaluator are built
// once and reused across lambdas.
class OscIntegrator {
 public:
  OscIntegrator(IntegralSpec spec, QuadPolicy policy);
  QuadResult integrate(double lambda) const;
  const DomainStats& stats() const { return stats_; }

 private:
  Complex panel_sum(double lambda, int panels) const;

  IntegralSpec spec_;
  QuadPolicy pol_;
  DomainStats stats_;
  ImagAxisEvaluator ml_;
  double phase_range_;
  double phase_at_a_;
};

QuadResult compute_integral(const IntegralSpec& spec, double lambda,
                            const QuadPolicy& policy = {});

struct SweepRow {
  double lambda;
  Complex value;
  double err_est;
  bool converged;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<std::string> issues;  // per-row failure notes; sweep continues
  // header: lambda,re,im,abs,err_est
  std::string to_csv() const;
};

// rows computed independently (in parallel) and assembled in grid order
SweepTable sweep(const IntegralSpec& spec, const std::vector<double>& lambda_grid,
                 const QuadPolicy& policy = {});

}  // namespace mlosc

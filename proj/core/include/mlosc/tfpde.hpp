#pragma once

#include <utility>
#include <vector>

#include "mlosc/mlf.hpp"
#include "mlosc/problem.hpp"

namespace mlosc {

// Fourier-symbol solution of the time-fractional Schroedinger-type equation:
//   u(t,x) = int e^{i x xi} E_{alpha,1}(i s(xi) t^alpha) psihat(xi) dxi,
// with symbol s(xi) = (xi^2 + mu) / (1 + ell xi^2).
struct TfpdeParams {
  double alpha = 0.5;
  double ell = 0.5;  // equation coefficient multiplying the mixed term
  double mu = 2.0;
  FunctionSpec init = FunctionSpec::gaussian(0.0, 1.0);
  double xi_max = 12.0;
  std::vector<double> x_grid;  // defaults to 257 uniform points on [-10, 10]
  std::vector<double> t_grid;  // defaults to a 13-point log grid on [1, 1e3]
};

TfpdeParams tfpde_defaults_a();  // alpha = 0.5, mu = 2, ell = 0.5
TfpdeParams tfpde_defaults_b();  // alpha = 0.8, mu = 1, ell = 2

void fill_default_grids(TfpdeParams& p);

double symbol(const TfpdeParams& p, double xi);

class TfpdeSolver {
 public:
  explicit TfpdeSolver(TfpdeParams p);

  const TfpdeParams& params() const { return p_; }
  // u(t, .) on the x grid
  std::vector<Complex> solve(double t) const;
  double sup_norm(double t) const;
  // (t, sup_x |u(t,.)|) over the t grid
  std::vector<std::pair<double, double>> sup_norm_series() const;

 private:
  TfpdeParams p_;
  std::vector<double> xi_, wt_;
  std::vector<Complex> psi_hat_;
  ImagAxisEvaluator ml_;
};

struct DispersiveReport {
  std::vector<std::pair<double, double>> rows;  // (t, sup |u|)
  double slope = 0;
  double r2 = 0;
  double threshold = 0;  // -alpha + slope_tol
  bool pass = false;
};

// fits log sup_x |u| against log t on [10, 1e3]; pass iff slope <= -alpha + 0.15
DispersiveReport dispersive_check(const TfpdeParams& p);

}  // namespace mlosc

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mlosc/errors.hpp"

namespace mlosc {

using Complex = std::complex<double>;
using RealFn = std::function<double(double)>;

// Order pair (alpha, beta) of the two-parameter Mittag-Leffler function.
struct MLOrder {
  double alpha = 1.0;
  double beta = 1.0;

  MLOrder() = default;
  MLOrder(double a, double b) : alpha(a), beta(b) {
    if (!(a > 0.0)) throw RegimeError("MLOrder: alpha must be positive");
  }
  // range where the decay lemmas apply
  bool is_corput_regime() const { return alpha > 0.0 && alpha <= 1.0; }
  // range where the two-sided optimal bounds apply after index doubling
  bool is_optimal_bound_regime() const { return alpha > 0.0 && alpha <= 0.5; }
};

struct EvalPolicy {
  double series_tol = 1e-12;   // relative
  int max_terms = 20000;
  double switch_radius = 40.0; // |argument| above which asymptotics may take over
  int asym_terms = 10;         // truncation length of the algebraic tail
  int accum_precision = 60;    // decimal digits of the wide accumulator
};

void validate(const EvalPolicy& p);

enum class MlBackend { closed_form, series, euler, asymptotic };

struct MlResult {
  Complex value;
  MlBackend backend;
  double err_est;  // absolute
};

// Power series sum_{k>=0} z^k / Gamma(alpha k + beta), accumulated in wide
// precision until the term-ratio tail bound meets series_tol.
Complex ml_series(const MLOrder& order, Complex z, const EvalPolicy& policy = {});

// Exact elementary/special-function forms for the classical (alpha, beta)
// pairs; empty when the pair is not on the list (or the value is not
// representable at the requested point).
std::optional<Complex> ml_closed_form(const MLOrder& order, Complex z);

// E_{alpha,beta}(-x) for x >= 0, alpha in (0,2]: wide series below the
// per-order switch point, algebraic tail plus the decaying oscillatory term
// above it.
double ml_neg_real(const MLOrder& order, double x, const EvalPolicy& policy = {});

// E_{alpha,beta}(i t) = E_{2a,b}(-t^2) + i t E_{2a,b+a}(-t^2); the canonical
// path for imaginary-axis arguments, alpha in (0,1].
Complex euler_decompose(const MLOrder& order, double t, const EvalPolicy& policy = {});

// Dispatcher: closed form -> imaginary-axis decomposition -> negative real
// axis -> series; throws UnsupportedRegion off the supported set.
MlResult ml_eval_ex(const MLOrder& order, Complex z, const EvalPolicy& policy = {});
Complex ml_eval(const MLOrder& order, Complex z, const EvalPolicy& policy = {});

// Two-sided envelope for E_{alpha,beta}(-x) in the three optimal-bound
// regimes ((a,1) a<1; (a,a) a<1; (a,b) a<=1, b>a), normalised to bound E
// itself.
std::pair<double, double> ml_real_bounds(const MLOrder& order, double x);

// |E(z)| * (1 + |z|); bounded over sweeps inside the sector
double sector_bound_ratio(const MLOrder& order, Complex z, const EvalPolicy& policy = {});

// Residual of the derivative identity
//   E_{a,a}(i l phi(x)) = (a / (i l phi'(x))) d/dx E_{a,1}(i l phi(x)),
// with the derivative replaced by a central difference of step h; O(h^2).
double ml_derivative_identity_residual(double alpha, const RealFn& phi, const RealFn& dphi,
                                       double lambda, double x, double h,
                                       const EvalPolicy& policy = {});

// Reusable evaluator for E_{alpha,beta}(-x): builds the algebraic-tail
// coefficient table and the per-order switch point once.
class NegRealEvaluator {
 public:
  NegRealEvaluator(MLOrder order, EvalPolicy policy);

  double operator()(double x) const;
  double effective_switch() const { return x_switch_; }
  double asym_err_estimate(double x) const;

  // the two backends, exposed for overlap-band consistency checks
  double series_backend(double x) const;
  double asym_backend(double x) const;

 private:
  MLOrder order_;
  EvalPolicy pol_;
  std::vector<double> alg_coeff_;  // 1/Gamma(beta - alpha k), k=1..N+1
  double x_switch_;
};

// E_{alpha,beta}(i t) for real t via the doubled-index decomposition;
// alpha in (0,1].
class ImagAxisEvaluator {
 public:
  ImagAxisEvaluator(MLOrder order, EvalPolicy policy);
  Complex operator()(double t) const;

 private:
  NegRealEvaluator even_, odd_;
};

}  // namespace mlosc

#pragma once

#include <functional>

#include "mlosc/mlf.hpp"
#include "mlosc/problem.hpp"

namespace mlosc {

enum class Side { left, right };

// Operator parameters: order alpha in (0,1], weight function phi (increasing,
// phi' > 0 on the interval), and the side the operator acts from.
struct FracSpec {
  double alpha;
  FunctionSpec phi;
  Interval iv;
  Side side = Side::left;

  FracSpec(double a, FunctionSpec p, Interval i, Side s = Side::left);
};

struct FracQuadOpts {
  int panels = 64;
  int gauss_n = 10;
  double rel_tol = 1e-8;
  int max_panels = 4096;
};

// weighted kernel integral
//   int_A^B (u-A)^{q-1} (B-u)^{p-1} h(u) du,   p, q in (0,1],
// graded composite Gauss toward each weighted endpoint, with the
// singularity-touching end panels integrated after the exact power
// substitution v = (distance)^p.
double weighted_endpoint_integral(const RealFn& h, double A, double B, double q, double p,
                                  const FracQuadOpts& opts = {});

// fractional integral of f with respect to phi, evaluated at x
double frac_integral(const FracSpec& spec, const RealFn& f, double x,
                     const FracQuadOpts& opts = {});
double frac_integral(const FracSpec& spec, const FunctionSpec& f, double x,
                     const FracQuadOpts& opts = {});

// Caputo-type derivative (kernel applied to f'); the callable form takes f'
double caputo_deriv(const FracSpec& spec, const RealFn& fprime, double x,
                    const FracQuadOpts& opts = {});
double caputo_deriv(const FracSpec& spec, const FunctionSpec& f, double x,
                    const FracQuadOpts& opts = {});

// Riemann-Liouville derivative via the Caputo relation plus boundary term
double rl_deriv(const FracSpec& spec, const FunctionSpec& f, double x,
                const FracQuadOpts& opts = {});

// |D^{alpha,phi} g - i lambda g| at x for g = E_{alpha,1}(i lambda (phi-phi(a))^alpha)
double eigen_residual(double alpha, const FunctionSpec& phi, const Interval& iv,
                      double lambda, double x, const FracQuadOpts& opts = {});

// |D^a (D^b f) - D^{a+b} f| at x, 1 < a+b < 2
double semigroup_residual(double a, double b, const FunctionSpec& phi, const FunctionSpec& f,
                          const Interval& iv, double x, const FracQuadOpts& opts = {});

// residual of the integration-by-parts identity between the left Caputo
// derivative and the weighted right Riemann-Liouville derivative
double int_by_parts_residual(double alpha, const FunctionSpec& phi, const FunctionSpec& f,
                             const FunctionSpec& g, const Interval& iv,
                             const FracQuadOpts& opts = {});

}  // namespace mlosc

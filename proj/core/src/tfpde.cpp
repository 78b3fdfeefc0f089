#include "mlosc/tfpde.hpp"

#include <algorithm>
#include <cmath>

#include "mlosc/special.hpp"

namespace mlosc {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSlopeTol = 0.15;
}  // namespace

TfpdeParams tfpde_defaults_a() {
  TfpdeParams p;
  p.alpha = 0.5;
  p.mu = 2.0;
  p.ell = 0.5;
  fill_default_grids(p);
  return p;
}

TfpdeParams tfpde_defaults_b() {
  TfpdeParams p;
  p.alpha = 0.8;
  p.mu = 1.0;
  p.ell = 2.0;
  fill_default_grids(p);
  return p;
}

void fill_default_grids(TfpdeParams& p) {
  if (p.x_grid.empty()) {
    p.x_grid.resize(257);
    for (int i = 0; i < 257; ++i) p.x_grid[i] = -10.0 + 20.0 * i / 256;
  }
  if (p.t_grid.empty()) {
    p.t_grid.resize(13);
    for (int i = 0; i < 13; ++i) p.t_grid[i] = std::pow(10.0, 3.0 * i / 12);
  }
}

double symbol(const TfpdeParams& p, double xi) {
  return (xi * xi + p.mu) / (1.0 + p.ell * xi * xi);
}

namespace {

// transform with the 1/(2pi) forward constant so that u(0,.) reproduces the
// initial datum exactly under the plain inverse integral
Complex init_transform(const FunctionSpec& init, double xi) {
  if (init.family == Family::gaussian) {
    double c = init.coeff[0], w = init.coeff[1];
    double mag = w / std::sqrt(2.0 * kPi) * std::exp(-0.5 * w * w * xi * xi);
    return mag * Complex(std::cos(c * xi), -std::sin(c * xi));
  }
  // numeric transform over the effective support
  double lo, hi;
  if (init.family == Family::bump) {
    lo = init.coeff[0] - init.coeff[1];
    hi = init.coeff[0] + init.coeff[1];
  } else {
    throw ConfigError("tfpde: initial datum must be gaussian or bump");
  }
  const GaussRule& gr = gauss_legendre(16);
  int panels = 64;
  double h = (hi - lo) / panels;
  Complex acc(0, 0);
  for (int p = 0; p < panels; ++p) {
    double mid = lo + (p + 0.5) * h, half = 0.5 * h;
    for (size_t q = 0; q < gr.node.size(); ++q) {
      double y = mid + half * gr.node[q];
      acc += gr.weight[q] * half * init(y) * Complex(std::cos(y * xi), -std::sin(y * xi));
    }
  }
  return acc / (2.0 * kPi);
}

}  // namespace

TfpdeSolver::TfpdeSolver(TfpdeParams p)
    : p_(std::move(p)), ml_(MLOrder(p_.alpha, 1.0), EvalPolicy{}) {
  if (!(p_.alpha > 0 && p_.alpha < 1))
    throw RegimeError("tfpde: alpha must be in (0, 1)");
  if (!(p_.mu > 0) || !(p_.ell > 0))
    throw std::invalid_argument("tfpde: mu and ell must be positive");
  fill_default_grids(p_);

  double xabs = 0;
  for (double x : p_.x_grid) xabs = std::max(xabs, std::fabs(x));
  int panels = std::max<int>(64, static_cast<int>(std::ceil(p_.xi_max * xabs / kPi)) * 4);
  const GaussRule& gr = gauss_legendre(16);
  xi_.reserve(panels * gr.node.size());
  wt_.reserve(panels * gr.node.size());
  psi_hat_.reserve(panels * gr.node.size());
  double h = 2.0 * p_.xi_max / panels;
  for (int pp = 0; pp < panels; ++pp) {
    double mid = -p_.xi_max + (pp + 0.5) * h, half = 0.5 * h;
    for (size_t q = 0; q < gr.node.size(); ++q) {
      double xi = mid + half * gr.node[q];
      xi_.push_back(xi);
      wt_.push_back(gr.weight[q] * half);
      psi_hat_.push_back(init_transform(p_.init, xi));
    }
  }

  // the symbol must stay inside [min(mu, 1/ell), max(mu, 1/ell)]
  double lo = std::min(p_.mu, 1.0 / p_.ell), hi = std::max(p_.mu, 1.0 / p_.ell);
  for (double xi : xi_) {
    double s = symbol(p_, xi);
    if (s < lo * (1 - 1e-12) || s > hi * (1 + 1e-12))
      throw NumericError("tfpde: symbol left its stated range");
  }
}

std::vector<Complex> TfpdeSolver::solve(double t) const {
  if (!(t >= 0)) throw std::invalid_argument("tfpde: t must be >= 0");
  double ta = std::pow(t, p_.alpha);
  std::vector<Complex> factor(xi_.size());
  for (size_t j = 0; j < xi_.size(); ++j)
    factor[j] = wt_[j] * psi_hat_[j] * ml_(symbol(p_, xi_[j]) * ta);

  std::vector<Complex> u(p_.x_grid.size());
  for (size_t i = 0; i < p_.x_grid.size(); ++i) {
    double x = p_.x_grid[i];
    Complex acc(0, 0);
    for (size_t j = 0; j < xi_.size(); ++j) {
      double ph = x * xi_[j];
      acc += factor[j] * Complex(std::cos(ph), std::sin(ph));
    }
    u[i] = acc;
  }
  return u;
}

double TfpdeSolver::sup_norm(double t) const {
  double s = 0;
  for (const Complex& v : solve(t)) s = std::max(s, std::abs(v));
  return s;
}

std::vector<std::pair<double, double>> TfpdeSolver::sup_norm_series() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(p_.t_grid.size());
  for (double t : p_.t_grid) out.emplace_back(t, sup_norm(t));
  return out;
}

DispersiveReport dispersive_check(const TfpdeParams& p) {
  if (!(std::min(p.mu, 1.0 / p.ell) > 0))
    throw RegimeError("dispersive_check: the symbol infimum must be positive");
  TfpdeSolver solver(p);
  DispersiveReport rep;
  rep.rows = solver.sup_norm_series();

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int n = 0;
  for (auto [t, s] : rep.rows) {
    if (t < 10.0 || t > 1000.0 || !(s > 0)) continue;
    double lx = std::log(t), ly = std::log(s);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly; syy += ly * ly;
    ++n;
  }
  if (n < 3) throw InsufficientData("dispersive_check: not enough t points in [10, 1e3]");
  double den = n * sxx - sx * sx;
  rep.slope = (n * sxy - sx * sy) / den;
  double ss_tot = syy - sy * sy / n;
  double ss_res = ss_tot - rep.slope * (sxy - sx * sy / n);
  rep.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  rep.threshold = -p.alpha + kSlopeTol;
  rep.pass = rep.slope <= rep.threshold;
  return rep;
}

}  // namespace mlosc

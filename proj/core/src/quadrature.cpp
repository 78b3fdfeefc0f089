#include "mlosc/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "mlosc/csv.hpp"
#include "mlosc/special.hpp"

namespace mlosc {

void validate(const QuadPolicy& p) {
  if (p.nodes_per_panel < 8) throw std::invalid_argument("QuadPolicy: nodes_per_panel must be >= 8");
  if (!(p.abs_tol > 0)) throw std::invalid_argument("QuadPolicy: abs_tol must be > 0");
  if (!(p.panels_per_unit_phase > 0))
    throw std::invalid_argument("QuadPolicy: panels_per_unit_phase must be > 0");
  if (p.max_panels < 8) throw std::invalid_argument("QuadPolicy: max_panels must be >= 8");
}

OscIntegrator::OscIntegrator(IntegralSpec spec, QuadPolicy policy)
    : spec_(std::move(spec)),
      pol_(policy),
      stats_(compute_stats(spec_.phase, spec_.amp, spec_.iv)),
      ml_(spec_.order, EvalPolicy{}),
      phase_range_(0),
      phase_at_a_(spec_.phase(spec_.iv.a)) {
  validate(policy);
  if (!std::isfinite(spec_.iv.a) || !std::isfinite(spec_.iv.b))
    throw std::invalid_argument("compute_integral: interval must be finite");
  if (spec_.variant == Variant::shifted_power) {
    if (!stats_.phase_increasing)
      throw std::invalid_argument("shifted_power variant requires an increasing phase");
    phase_range_ = std::pow(stats_.max_phase - phase_at_a_, spec_.order.alpha);
  } else {
    phase_range_ = stats_.max_phase - stats_.min_phase;
  }
}

Complex OscIntegrator::panel_sum(double lambda, int panels) const {
  const GaussRule& gr = gauss_legendre(pol_.nodes_per_panel);
  const double a = spec_.iv.a;
  const double h = spec_.iv.length() / panels;
  const double alpha = spec_.order.alpha;
  const bool shifted = spec_.variant == Variant::shifted_power;

  Complex sum(0, 0), comp(0, 0);
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h;
    double half = 0.5 * h;
    Complex acc(0, 0);
    for (size_t q = 0; q < gr.node.size(); ++q) {
      double x = mid + half * gr.node[q];
      double t;
      if (shifted) {
        double w = spec_.phase(x) - phase_at_a_;
        t = lambda * std::pow(std::max(w, 0.0), alpha);
      } else {
        t = lambda * spec_.phase(x);
      }
      Complex e = ml_(t);
      acc += gr.weight[q] * spec_.amp(x) * e;
    }
    Complex term = acc * half;
    Complex y = term - comp;
    Complex s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

QuadResult OscIntegrator::integrate(double lambda) const {
  if (!(lambda >= 0)) throw std::invalid_argument("compute_integral: lambda must be >= 0");
  double want = pol_.panels_per_unit_phase * lambda * phase_range_;
  int panels = 4;
  if (want > 4) panels = static_cast<int>(std::min<double>(std::ceil(want), pol_.max_panels));
  Complex coarse = panel_sum(lambda, panels);
  int fine_panels = 2 * panels;  // one refinement step
  Complex fine = panel_sum(lambda, fine_panels);
  QuadResult r;
  r.value = fine;
  r.err_est = std::abs(fine - coarse);
  r.panels_used = fine_panels;
  r.converged = r.err_est <= pol_.abs_tol;
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
    throw NumericError("compute_integral: non-finite value");
  return r;
}

QuadResult compute_integral(const IntegralSpec& spec, double lambda, const QuadPolicy& policy) {
  return OscIntegrator(spec, policy).integrate(lambda);
}

std::string SweepTable::to_csv() const {
  CsvWriter w({"lambda", "re", "im", "abs", "err_est"});
  for (const auto& r : rows)
    w.row({r.lambda, r.value.real(), r.value.imag(), std::abs(r.value), r.err_est});
  return w.text;
}

SweepTable sweep(const IntegralSpec& spec, const std::vector<double>& lambda_grid,
                 const QuadPolicy& policy) {
  for (size_t i = 1; i < lambda_grid.size(); ++i)
    if (lambda_grid[i] < lambda_grid[i - 1])
      throw std::invalid_argument("sweep: lambda grid must be sorted ascending");

  SweepTable table;
  if (lambda_grid.empty()) return table;
  OscIntegrator integ(spec, policy);

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, lambda_grid.size());
  std::vector<SweepRow> rows(lambda_grid.size());
  std::vector<std::string> issues(lambda_grid.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= lambda_grid.size()) break;
      SweepRow row{lambda_grid[i], {0, 0}, 0, false};
      try {
        QuadResult q = integ.integrate(lambda_grid[i]);
        row.value = q.value;
        row.err_est = q.err_est;
        row.converged = q.converged;
        if (!q.converged)
          issues[i] = "tolerance not met at lambda=" + fmt_double(lambda_grid[i]);
      } catch (const std::exception& e) {
        issues[i] = std::string("lambda=") + fmt_double(lambda_grid[i]) + ": " + e.what();
      }
      rows[i] = row;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  table.rows = std::move(rows);
  for (auto& s : issues)
    if (!s.empty()) table.issues.push_back(std::move(s));
  return table;
}

}  // namespace mlosc

// Batch front-end: single Mittag-Leffler evaluations, oscillatory-integral
// sweeps, the estimate-verification registry, and the dispersive PDE demo.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage/config error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mlosc/config.hpp"
#include "mlosc/csv.hpp"
#include "mlosc/mlf.hpp"
#include "mlosc/svg.hpp"
#include "mlosc/tfpde.hpp"
#include "mlosc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mlosc::ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("MLF_OUT_DIR"); env && *env) return env;
  return ".";
}

const char* backend_name(mlosc::MlBackend b) {
  switch (b) {
    case mlosc::MlBackend::closed_form: return "closed_form";
    case mlosc::MlBackend::series: return "series";
    case mlosc::MlBackend::euler: return "euler";
    case mlosc::MlBackend::asymptotic: return "asymptotic";
  }
  return "?";
}

int cmd_ml_eval(double alpha, double beta, const std::string& zstr,
                const mlosc::EvalPolicy& policy) {
  mlosc::MLOrder order(alpha, beta);
  mlosc::Complex z = mlosc::parse_complex(zstr);
  mlosc::MlResult r = mlosc::ml_eval_ex(order, z, policy);
  std::cout << "re = " << mlosc::fmt_double(r.value.real()) << "\n"
            << "im = " << mlosc::fmt_double(r.value.imag()) << "\n"
            << "backend = " << backend_name(r.backend) << "\n"
            << "err_est = " << mlosc::fmt_double(r.err_est) << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_flag) {
  mlosc::ExperimentConfig cfg = mlosc::ExperimentConfig::parse(read_file(config_path));
  if (cfg.kind != mlosc::ExperimentConfig::Kind::sweep)
    throw mlosc::ConfigError("sweep: the config describes a pde run");
  mlosc::IntegralSpec spec = cfg.integral_spec();
  std::vector<double> grid = cfg.grid.expand();
  for (double l : grid)
    if (l < 0) throw mlosc::ConfigError("sweep: lambda grid entries must be >= 0");

  mlosc::SweepTable table = mlosc::sweep(spec, grid, cfg.quad);
  std::string out_dir = resolve_out_dir(out_flag);
  std::filesystem::create_directories(out_dir);
  std::string path = out_dir + "/" + cfg.output_name + ".csv";
  mlosc::write_text_file(path, table.to_csv());
  std::cout << "wrote " << path << " (" << table.rows.size() << " rows)\n";

  if (cfg.fit_window) {
    mlosc::DecayFit fit =
        mlosc::fit_decay(table, cfg.fit_window->first, cfg.fit_window->second, cfg.log_factor);
    std::cout << "slope = " << mlosc::fmt_double(fit.slope)
              << " r2 = " << mlosc::fmt_double(fit.r2) << "\n";
  }
  if (!table.issues.empty()) {
    for (const auto& s : table.issues) std::cerr << "quadrature: " << s << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& ids_in, const std::string& out_flag, bool svg) {
  std::vector<mlosc::TheoremId> ids;
  if (ids_in.empty() || (ids_in.size() == 1 && ids_in[0] == "all")) {
    ids = mlosc::all_theorems();
  } else {
    for (const auto& s : ids_in) ids.push_back(mlosc::theorem_from_name(s));
  }
  std::string out_dir = resolve_out_dir(out_flag);
  mlosc::RunAllResult res = mlosc::run_and_write(ids, out_dir, svg);
  for (const auto& rep : res.reports) std::cout << mlosc::summary_line(rep) << "\n";
  std::cout << (res.all_pass ? "all cases passed" : "some cases FAILED") << "\n";
  return res.all_pass ? kExitOk : kExitVerifyFail;
}

int cmd_pde(const std::string& config_path, const std::string& out_flag, bool svg) {
  mlosc::TfpdeParams params;
  std::string name = "pde";
  if (!config_path.empty()) {
    mlosc::ExperimentConfig cfg = mlosc::ExperimentConfig::parse(read_file(config_path));
    if (cfg.kind != mlosc::ExperimentConfig::Kind::pde)
      throw mlosc::ConfigError("pde: the config describes a sweep run");
    params = cfg.tfpde_params();
    name = cfg.output_name == "sweep" ? "pde" : cfg.output_name;
  } else {
    params = mlosc::tfpde_defaults_a();
  }
  mlosc::DispersiveReport rep = mlosc::dispersive_check(params);

  mlosc::CsvWriter w({"t", "sup_abs_u"});
  for (auto [t, s] : rep.rows) w.row({t, s});
  std::string out_dir = resolve_out_dir(out_flag);
  std::filesystem::create_directories(out_dir);
  mlosc::write_text_file(out_dir + "/" + name + ".csv", w.text);
  if (svg) {
    std::vector<std::pair<double, double>> env;
    for (auto [t, s] : rep.rows) env.emplace_back(t, std::pow(1.0 + t, -params.alpha));
    mlosc::write_text_file(out_dir + "/" + name + ".svg",
                           mlosc::svg_loglog(rep.rows, env, "sup-norm decay"));
  }
  std::cout << "slope = " << mlosc::fmt_double(rep.slope)
            << " threshold = " << mlosc::fmt_double(rep.threshold)
            << (rep.pass ? " PASS" : " FAIL") << "\n";
  return rep.pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mittag-Leffler oscillatory-integral toolkit"};
  app.require_subcommand(1);

  // ml eval
  auto* ml = app.add_subcommand("ml", "pointwise Mittag-Leffler evaluation");
  ml->require_subcommand(1);
  auto* eval = ml->add_subcommand("eval", "evaluate E_{alpha,beta}(z)");
  double alpha = 1.0, beta = 1.0;
  std::string zstr = "0";
  mlosc::EvalPolicy policy;
  eval->add_option("--alpha", alpha, "first order parameter")->required();
  eval->add_option("--beta", beta, "second order parameter")->required();
  eval->add_option("--z", zstr, "argument, e.g. 0+1i or -2.5")->required();
  eval->add_option("--series-tol", policy.series_tol, "relative series tolerance");
  eval->add_option("--max-terms", policy.max_terms, "series term cap");
  eval->add_option("--switch-radius", policy.switch_radius, "series/asymptotic switch");
  eval->add_option("--asym-terms", policy.asym_terms, "algebraic tail length");
  eval->add_option("--accum-digits", policy.accum_precision, "wide accumulator digits");

  // sweep
  auto* sw = app.add_subcommand("sweep", "oscillatory-integral lambda sweep from a config");
  std::string sweep_cfg, sweep_out;
  sw->add_option("--config", sweep_cfg, "experiment config file")->required();
  sw->add_option("--out", sweep_out, "output directory (default: MLF_OUT_DIR or .)");

  // verify
  auto* vf = app.add_subcommand("verify", "run the estimate-verification registry");
  std::vector<std::string> ids;
  std::string verify_out;
  bool verify_svg = false;
  vf->add_option("ids", ids, "case ids or 'all'");
  vf->add_option("--out", verify_out, "output directory (default: MLF_OUT_DIR or .)");
  vf->add_flag("--svg", verify_svg, "also write per-case SVG plots");

  // pde
  auto* pd = app.add_subcommand("pde", "time-fractional dispersive-decay demo");
  std::string pde_cfg, pde_out;
  bool pde_svg = false;
  pd->add_option("--config", pde_cfg, "pde config file");
  pd->add_option("--out", pde_out, "output directory (default: MLF_OUT_DIR or .)");
  pd->add_flag("--svg", pde_svg, "also write an SVG plot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_ml_eval(alpha, beta, zstr, policy);
    if (sw->parsed()) return cmd_sweep(sweep_cfg, sweep_out);
    if (vf->parsed()) return cmd_verify(ids, verify_out, verify_svg);
    if (pd->parsed()) return cmd_pde(pde_cfg, pde_out, pde_svg);
  } catch (const mlosc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mlosc::UnknownTheorem& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mlosc::RegimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mlosc::UnsupportedRegion& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mlosc::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

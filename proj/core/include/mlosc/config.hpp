#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlosc/quadrature.hpp"
#include "mlosc/tfpde.hpp"

namespace mlosc {

// grid shorthand: log/uniform (start, stop, points) or an explicit list
struct GridSpec {
  enum class Kind { log_scale, uniform, list };
  Kind kind = Kind::log_scale;
  double start = 1, stop = 1e4;
  int points = 17;
  std::vector<double> values;

  std::vector<double> expand() const;
  bool is_empty_list() const { return kind == Kind::list && values.empty(); }
  bool operator==(const GridSpec&) const = default;
};

// Batch experiment description.  Grammar: '#' comments, [section] headers,
// key = value lines; unknown sections or keys are rejected.
struct ExperimentConfig {
  enum class Kind { sweep, pde };
  Kind kind = Kind::sweep;

  // sweep payload
  double alpha = 0.5, beta = 1.0;
  double a = 0.0, b = 1.0;
  FunctionSpec phase = FunctionSpec::affine(0, 1);
  FunctionSpec amp = FunctionSpec::constant(1.0);
  Variant variant = Variant::direct;
  GridSpec grid;
  QuadPolicy quad;
  std::optional<std::pair<double, double>> fit_window;
  bool log_factor = false;
  std::string output_name = "sweep";

  // pde payload; empty-list grids mean "use the module defaults"
  double pde_alpha = 0.5, pde_ell = 0.5, pde_mu = 2.0, pde_xi_max = 12.0;
  FunctionSpec pde_init = FunctionSpec::gaussian(0, 1);
  GridSpec pde_x{GridSpec::Kind::list, 1, 1e4, 17, {}};
  GridSpec pde_t{GridSpec::Kind::list, 1, 1e4, 17, {}};

  static ExperimentConfig parse(const std::string& text);  // throws ConfigError
  std::string serialize() const;

  IntegralSpec integral_spec() const;  // validates the sweep payload
  TfpdeParams tfpde_params() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// complex literals of the form "a", "bi", "a+bi", "a-bi"
Complex parse_complex(const std::string& s);  // throws ConfigError

}  // namespace mlosc

#include "mlosc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "mlosc/csv.hpp"

namespace mlosc {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("trailing characters in number: " + s);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("not a number: " + s);
  }
}

std::vector<double> parse_numbers(const std::string& s) {
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_number(tok));
  return out;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("not a boolean: " + s);
}

GridSpec parse_grid(const std::string& value) {
  std::istringstream in(value);
  std::string kind;
  in >> kind;
  GridSpec g;
  if (kind == "log" || kind == "uniform") {
    g.kind = kind == "log" ? GridSpec::Kind::log_scale : GridSpec::Kind::uniform;
    std::string a, b, n;
    if (!(in >> a >> b >> n)) throw ConfigError("grid needs: " + kind + " start stop points");
    g.start = parse_number(a);
    g.stop = parse_number(b);
    g.points = static_cast<int>(parse_number(n));
    std::string extra;
    if (in >> extra) throw ConfigError("trailing grid tokens: " + extra);
    if (g.points < 1) throw ConfigError("grid needs at least one point");
  } else if (kind == "list") {
    g.kind = GridSpec::Kind::list;
    std::string rest;
    std::getline(in, rest);
    g.values = parse_numbers(rest);
  } else {
    throw ConfigError("unknown grid kind: " + kind);
  }
  return g;
}

std::string grid_to_string(const GridSpec& g) {
  if (g.kind == GridSpec::Kind::list) {
    std::string s = "list";
    for (double v : g.values) s += " " + fmt_double(v);
    return s;
  }
  std::string s = g.kind == GridSpec::Kind::log_scale ? "log" : "uniform";
  return s + " " + fmt_double(g.start) + " " + fmt_double(g.stop) + " " +
         std::to_string(g.points);
}

FunctionSpec parse_function(const std::vector<std::pair<std::string, std::string>>& kv,
                            Role role) {
  std::string fam;
  std::vector<double> coeffs;
  for (const auto& [k, v] : kv) {
    if (k == "family") fam = v;
    else if (k == "coeffs") coeffs = parse_numbers(v);
    else throw ConfigError("unknown key in function section: " + k);
  }
  if (fam.empty()) throw ConfigError("function section needs a family");
  Family f = family_from_name(fam);
  switch (f) {
    case Family::affine:
      if (coeffs.size() != 2) throw ConfigError("affine needs 2 coefficients");
      return FunctionSpec::affine(coeffs[0], coeffs[1], role);
    case Family::monomial:
      if (coeffs.size() != 2) throw ConfigError("monomial needs: c k");
      return FunctionSpec::monomial(coeffs[0], static_cast<int>(coeffs[1]), role);
    case Family::polynomial:
      if (coeffs.empty()) throw ConfigError("polynomial needs coefficients");
      return FunctionSpec::polynomial(coeffs, role);
    case Family::shifted_power:
      if (coeffs.size() != 3) throw ConfigError("shifted_power needs: c exponent shift");
      return FunctionSpec::shifted_power(coeffs[0], coeffs[1], coeffs[2], role);
    case Family::bump:
      if (coeffs.size() != 2) throw ConfigError("bump needs: center width");
      return FunctionSpec::bump(coeffs[0], coeffs[1], role);
    case Family::gaussian:
      if (coeffs.size() != 2) throw ConfigError("gaussian needs: center width");
      return FunctionSpec::gaussian(coeffs[0], coeffs[1], role);
  }
  throw ConfigError("unknown family");
}

std::string function_to_string(const FunctionSpec& f, const std::string& section) {
  std::string s = "[" + section + "]\n";
  s += std::string("family = ") + family_name(f.family) + "\n";
  s += "coeffs =";
  for (double c : f.coeff) s += " " + fmt_double(c);
  s += "\n";
  return s;
}

}  // namespace

std::vector<double> GridSpec::expand() const {
  if (kind == Kind::list) return values;
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = start;
    return out;
  }
  if (kind == Kind::uniform) {
    for (int i = 0; i < points; ++i)
      out[i] = start + (stop - start) * i / (points - 1);
    return out;
  }
  if (!(start > 0) || !(stop > 0)) throw ConfigError("log grid endpoints must be positive");
  double l0 = std::log10(start), l1 = std::log10(stop);
  for (int i = 0; i < points; ++i) out[i] = std::pow(10.0, l0 + (l1 - l0) * i / (points - 1));
  return out;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  // section -> ordered key/value pairs
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> secs;
  std::istringstream in(text);
  std::string line;
  std::string current;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("malformed section header: " + t);
      current = trim(t.substr(1, t.size() - 2));
      secs.emplace_back(current, std::vector<std::pair<std::string, std::string>>{});
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value: " + t);
    if (current.empty()) throw ConfigError("key outside any section: " + t);
    secs.back().second.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }

  ExperimentConfig cfg;
  bool saw_pde = false, saw_sweep_parts = false;
  for (const auto& [name, kv] : secs) {
    if (name == "order") {
      for (const auto& [k, v] : kv) {
        if (k == "alpha") cfg.alpha = parse_number(v);
        else if (k == "beta") cfg.beta = parse_number(v);
        else throw ConfigError("unknown key in [order]: " + k);
      }
      saw_sweep_parts = true;
    } else if (name == "interval") {
      for (const auto& [k, v] : kv) {
        if (k == "a") cfg.a = parse_number(v);
        else if (k == "b") cfg.b = parse_number(v);
        else throw ConfigError("unknown key in [interval]: " + k);
      }
      saw_sweep_parts = true;
    } else if (name == "phase") {
      cfg.phase = parse_function(kv, Role::phase);
      saw_sweep_parts = true;
    } else if (name == "amp") {
      cfg.amp = parse_function(kv, Role::amplitude);
      saw_sweep_parts = true;
    } else if (name == "sweep") {
      for (const auto& [k, v] : kv) {
        if (k == "variant") {
          if (v == "direct") cfg.variant = Variant::direct;
          else if (v == "shifted_power") cfg.variant = Variant::shifted_power;
          else throw ConfigError("unknown variant: " + v);
        } else if (k == "grid") {
          cfg.grid = parse_grid(v);
        } else throw ConfigError("unknown key in [sweep]: " + k);
      }
      saw_sweep_parts = true;
    } else if (name == "quad") {
      for (const auto& [k, v] : kv) {
        if (k == "nodes_per_panel") cfg.quad.nodes_per_panel = static_cast<int>(parse_number(v));
        else if (k == "panels_per_unit_phase") cfg.quad.panels_per_unit_phase = parse_number(v);
        else if (k == "abs_tol") cfg.quad.abs_tol = parse_number(v);
        else if (k == "max_panels") cfg.quad.max_panels = static_cast<int>(parse_number(v));
        else throw ConfigError("unknown key in [quad]: " + k);
      }
    } else if (name == "fit") {
      double lo = 0, hi = 0;
      bool have = false;
      for (const auto& [k, v] : kv) {
        if (k == "window") {
          auto w = parse_numbers(v);
          if (w.size() != 2) throw ConfigError("fit window needs: lo hi");
          lo = w[0];
          hi = w[1];
          have = true;
        } else if (k == "log_factor") {
          cfg.log_factor = parse_bool(v);
        } else throw ConfigError("unknown key in [fit]: " + k);
      }
      if (have) cfg.fit_window = {lo, hi};
    } else if (name == "output") {
      for (const auto& [k, v] : kv) {
        if (k == "name") cfg.output_name = v;
        else throw ConfigError("unknown key in [output]: " + k);
      }
    } else if (name == "pde") {
      saw_pde = true;
      for (const auto& [k, v] : kv) {
        if (k == "alpha") cfg.pde_alpha = parse_number(v);
        else if (k == "ell") cfg.pde_ell = parse_number(v);
        else if (k == "mu") cfg.pde_mu = parse_number(v);
        else if (k == "xi_max") cfg.pde_xi_max = parse_number(v);
        else if (k == "x") cfg.pde_x = parse_grid(v);
        else if (k == "t") cfg.pde_t = parse_grid(v);
        else throw ConfigError("unknown key in [pde]: " + k);
      }
    } else if (name == "pde.init") {
      saw_pde = true;
      cfg.pde_init = parse_function(kv, Role::amplitude);
    } else {
      throw ConfigError("unknown section: [" + name + "]");
    }
  }
  cfg.kind = saw_pde && !saw_sweep_parts ? Kind::pde : Kind::sweep;
  if (saw_pde) cfg.kind = Kind::pde;
  return cfg;
}

std::string ExperimentConfig::serialize() const {
  std::string s;
  if (kind == Kind::sweep) {
    s += "[order]\nalpha = " + fmt_double(alpha) + "\nbeta = " + fmt_double(beta) + "\n";
    s += "[interval]\na = " + fmt_double(a) + "\nb = " + fmt_double(b) + "\n";
    s += function_to_string(phase, "phase");
    s += function_to_string(amp, "amp");
    s += "[sweep]\nvariant = ";
    s += variant == Variant::direct ? "direct" : "shifted_power";
    s += "\ngrid = " + grid_to_string(grid) + "\n";
    s += "[quad]\nnodes_per_panel = " + std::to_string(quad.nodes_per_panel) +
         "\npanels_per_unit_phase = " + fmt_double(quad.panels_per_unit_phase) +
         "\nabs_tol = " + fmt_double(quad.abs_tol) +
         "\nmax_panels = " + std::to_string(quad.max_panels) + "\n";
    s += "[fit]\n";
    if (fit_window)
      s += "window = " + fmt_double(fit_window->first) + " " + fmt_double(fit_window->second) +
           "\n";
    s += std::string("log_factor = ") + (log_factor ? "true" : "false") + "\n";
    s += "[output]\nname = " + output_name + "\n";
  } else {
    s += "[pde]\nalpha = " + fmt_double(pde_alpha) + "\nell = " + fmt_double(pde_ell) +
         "\nmu = " + fmt_double(pde_mu) + "\nxi_max = " + fmt_double(pde_xi_max) + "\n";
    if (!pde_x.is_empty_list()) s += "x = " + grid_to_string(pde_x) + "\n";
    if (!pde_t.is_empty_list()) s += "t = " + grid_to_string(pde_t) + "\n";
    s += function_to_string(pde_init, "pde.init");
    s += "[output]\nname = " + output_name + "\n";
  }
  return s;
}

IntegralSpec ExperimentConfig::integral_spec() const {
  MLOrder order(alpha, beta);
  Interval iv(a, b);
  return IntegralSpec{order, iv, phase, amp, variant};
}

TfpdeParams ExperimentConfig::tfpde_params() const {
  TfpdeParams p;
  p.alpha = pde_alpha;
  p.ell = pde_ell;
  p.mu = pde_mu;
  p.xi_max = pde_xi_max;
  p.init = pde_init;
  if (!pde_x.is_empty_list()) p.x_grid = pde_x.expand();
  if (!pde_t.is_empty_list()) p.t_grid = pde_t.expand();
  fill_default_grids(p);
  return p;
}

Complex parse_complex(const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) throw ConfigError("empty complex literal");
  // split at the last +/- that is not an exponent sign and not leading
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    char c = s[i];
    if ((c == '+' || c == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto num = [&](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_number(t);
  };
  if (s.back() == 'i' || s.back() == 'I') {
    std::string body = s.substr(0, s.size() - 1);
    if (split == std::string::npos)
      return Complex(0.0, num(body));
    return Complex(parse_number(s.substr(0, split)), num(body.substr(split)));
  }
  if (split != std::string::npos && (s.find('i') != std::string::npos))
    throw ConfigError("malformed complex literal: " + raw);
  return Complex(parse_number(s), 0.0);
}

}  // namespace mlosc

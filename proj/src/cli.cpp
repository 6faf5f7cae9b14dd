#include "modeshape/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "modeshape/dae_model.hpp"
#include "modeshape/deformation.hpp"
#include "modeshape/discretization.hpp"
#include "modeshape/errors.hpp"
#include "modeshape/io.hpp"
#include "modeshape/simulator.hpp"
#include "modeshape/sssa.hpp"

namespace modeshape::cli {

namespace {

using nlohmann::json;

/// Options shared by every subcommand; each subcommand binds the subset it uses.
struct RunConfig {
  std::string model;
  std::string linear;
  std::vector<std::string> params;
  StiffChainParams chain;

  std::string method = "tm";
  std::optional<double> h;
  std::optional<double> hmin;
  std::optional<double> hmax;
  Index hpoints = 20;

  std::optional<double> eps_s;
  std::optional<double> eps_p;
  Index n_modes = 5;
  Index top_pf = 3;
  double pf_floor = kDefaultPfFloor;
  std::string pf_norm = "complex";

  std::string out;
  std::string format;

  double t_end = 1.0;
  std::vector<std::string> perturb;
  double newton_tol = 1e-12;
  int max_newton = 25;
};

/// Usage-level mistakes in an otherwise parseable command line.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct LoadedModel {
  DaeModel model;
  JacobianSet jac;
};

double parse_real(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ConfigError("invalid " + what + " '" + text + "'");
  }
  return value;
}

SmibParams smib_params(const std::vector<std::string>& overrides) {
  SmibParams p;
  const std::map<std::string, double*> fields = {
      {"H", &p.H}, {"D", &p.D},     {"X", &p.X},       {"E", &p.E},
      {"V", &p.V}, {"Pm", &p.P_m}, {"P_m", &p.P_m}, {"omega_b", &p.omega_b},
  };
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    const auto field = eq == std::string::npos ? fields.end() : fields.find(item.substr(0, eq));
    if (field == fields.end()) {
      throw ConfigError("unknown SMIB parameter override '" + item +
                        "' (expected H, D, X, E, V, Pm or omega_b as key=value)");
    }
    *field->second = parse_real(item.substr(eq + 1), "value for " + field->first);
  }
  return p;
}

LoadedModel load_model(const RunConfig& cfg) {
  if (cfg.model.empty() == cfg.linear.empty()) {
    throw ConfigError("give exactly one model source: --model <builtin> or --linear <file>");
  }
  if (!cfg.linear.empty()) {
    if (!cfg.params.empty()) throw ConfigError("--param only applies to built-in models");
    JacobianSet jac = load_linear_model(cfg.linear);
    DaeModel model = linear_model(jac);
    jac.x_o = model.x_guess;
    jac.y_o = model.y_guess;
    return {std::move(model), std::move(jac)};
  }

  auto build = [&]() -> DaeModel {
    if (cfg.model == "smib") return builtin_smib(smib_params(cfg.params));
    if (cfg.model == "stiff-chain") {
      if (!cfg.params.empty()) throw ConfigError("stiff-chain takes --smin/--smax/... flags");
      return builtin_stiff_chain(cfg.chain);
    }
    throw ConfigError("unknown built-in model '" + cfg.model + "' (smib, stiff-chain)");
  };
  DaeModel model = build();
  const StationaryPoint eq = find_equilibrium(model, model.x_guess, model.y_guess);
  JacobianSet jac = jacobians(model, eq.x_o, eq.y_o);
  return {std::move(model), std::move(jac)};
}

std::string resolve_format(const RunConfig& cfg, const std::string& fallback,
                           std::initializer_list<const char*> allowed) {
  const std::string format = cfg.format.empty() ? fallback : cfg.format;
  for (const char* a : allowed) {
    if (format == a) return format;
  }
  throw ConfigError("output format '" + format + "' is not supported by this command");
}

void emit(const RunConfig& cfg, const std::string& contents, std::ostream& out) {
  if (cfg.out.empty()) {
    out << contents;
  } else {
    write_file_atomic(cfg.out, contents);
  }
}

json number_or_null(double value) {
  if (std::isnan(value)) return nullptr;
  if (std::isinf(value)) return value > 0 ? "infinity" : "-infinity";
  return round12(value);
}

std::string csv_number(double value) { return std::isnan(value) ? "" : format_number(value); }

std::string state_label(const DaeModel& model, Index state) {
  return state < 0 ? "" : model.state_names.at(static_cast<std::size_t>(state));
}

std::string render_rows(const std::vector<SweepRow>& rows, const DaeModel& model,
                        const std::string& format) {
  if (format == "json") {
    json doc = json::array();
    for (const auto& row : rows) {
      doc.push_back({
          {"h", round12(row.h)},
          {"mode_re", round12(row.eigenvalue.real())},
          {"mode_im", round12(row.eigenvalue.imag())},
          {"zeta_pct", number_or_null(row.zeta_pct)},
          {"state", row.state < 0 ? json(nullptr) : json(state_label(model, row.state))},
          {"eps_s_pct", number_or_null(row.eps_s_pct)},
          {"eps_p_pct", number_or_null(row.eps_p_pct)},
          {"flags", format_flags(row.flags)},
      });
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "h,mode_re,mode_im,zeta_pct,state,eps_s_pct,eps_p_pct,flags\n";
  for (const auto& row : rows) {
    os << format_number(row.h) << ',' << format_number(row.eigenvalue.real()) << ','
       << format_number(row.eigenvalue.imag()) << ',' << csv_number(row.zeta_pct) << ','
       << state_label(model, row.state) << ',' << csv_number(row.eps_s_pct) << ','
       << csv_number(row.eps_p_pct) << ',' << format_flags(row.flags) << '\n';
  }
  return os.str();
}

PfNormalization normalization(const RunConfig& cfg) {
  if (cfg.pf_norm == "complex") return PfNormalization::complex_sum;
  if (cfg.pf_norm == "magnitude") return PfNormalization::magnitude_sum;
  throw ConfigError("--pf-norm must be 'complex' or 'magnitude'");
}

TrackingOptions tracking(const RunConfig& cfg) {
  if (cfg.n_modes < 0) throw ConfigError("--n-modes must be non-negative");
  if (cfg.top_pf < 1) throw ConfigError("--top-pf must be at least 1");
  return {cfg.n_modes, cfg.top_pf, cfg.pf_floor, normalization(cfg)};
}

std::vector<double> grid(const RunConfig& cfg) {
  if (!cfg.hmin || !cfg.hmax) throw ConfigError("a step-size grid needs --hmin and --hmax");
  if (cfg.hpoints < 2) throw ConfigError("a step-size grid needs --hpoints >= 2");
  if (!(*cfg.hmin > 0.0) || !(*cfg.hmin < *cfg.hmax)) {
    throw ConfigError("a step-size grid needs 0 < --hmin < --hmax");
  }
  return log_grid(*cfg.hmin, *cfg.hmax, cfg.hpoints);
}

double step_size(const RunConfig& cfg) {
  if (!cfg.h) throw ConfigError("this command needs --h");
  if (!(*cfg.h > 0.0)) throw ConfigError("--h must be positive");
  return *cfg.h;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string format = resolve_format(cfg, "json", {"json", "csv"});
  const PfNormalization convention = normalization(cfg);
  const LoadedModel loaded = load_model(cfg);
  const ModalBaseline base = modal_baseline(loaded.jac, convention);
  const Spectrum& spec = base.spectrum;

  std::optional<StiffnessRatio> stiffness;
  try {
    stiffness = stiffness_ratio(spec);
  } catch (const UndefinedError& e) {
    err << "warning: " << e.what() << '\n';
  }
  if (stiffness && stiffness->excluded_zero > 0) {
    err << "warning: " << stiffness->excluded_zero
        << " zero eigenvalue(s) excluded from the stiffness ratio\n";
  }
  if (spec.condition_warning) {
    err << "warning: eigenvector matrix is nearly singular; participation factors are unreliable\n";
  }
  const bool stable = (spec.eigenvalues.real().array() < 0.0).all();
  const Index n = spec.order();

  std::string text;
  if (format == "json") {
    json doc;
    doc["model"] = loaded.model.name();
    doc["nu"] = loaded.jac.nu();
    doc["mu"] = loaded.jac.mu();
    doc["stable"] = stable;
    doc["stiffness_ratio"] = stiffness ? json(round12(stiffness->value)) : json(nullptr);
    doc["zero_eigenvalues_excluded"] = stiffness ? stiffness->excluded_zero : 0;
    doc["eigenvalues"] = json::array();
    for (Index i = 0; i < n; ++i) {
      const Complex s = spec.eigenvalues(i);
      doc["eigenvalues"].push_back({
          {"re", round12(s.real())},
          {"im", round12(s.imag())},
          {"abs", round12(std::abs(s))},
          {"zeta_pct", std::abs(s) == 0.0 ? json(nullptr) : json(round12(damping_ratio(s)))},
          {"degenerate", static_cast<bool>(spec.degenerate[static_cast<std::size_t>(i)])},
      });
    }
    doc["states"] = loaded.model.state_names;
    json pf = json::array();
    for (Index k = 0; k < n; ++k) {
      json row = json::array();
      for (Index i = 0; i < n; ++i) row.push_back(round12(std::abs(base.pf.P(k, i))));
      pf.push_back(std::move(row));
    }
    doc["participation"] = std::move(pf);
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "mode,re,im,abs,zeta_pct,state,pf_abs\n";
    for (Index i = 0; i < n; ++i) {
      const Complex s = spec.eigenvalues(i);
      const double zeta = std::abs(s) == 0.0 ? std::nan("") : damping_ratio(s);
      for (Index k = 0; k < n; ++k) {
        os << i << ',' << format_number(s.real()) << ',' << format_number(s.imag()) << ','
           << format_number(std::abs(s)) << ',' << csv_number(zeta) << ','
           << state_label(loaded.model, k) << ',' << format_number(std::abs(base.pf.P(k, i)))
           << '\n';
      }
    }
    text = os.str();
  }
  emit(cfg, text, out);

  if (!cfg.out.empty()) {
    out << "eigenvalues: " << n << ", stiffness ratio: "
        << (stiffness ? format_number(stiffness->value) : std::string("undefined"))
        << (stable ? "" : ", UNSTABLE") << '\n';
  }
  if (!stable) {
    err << "system is not asymptotically stable (some Re(s) >= 0)\n";
    return exit_code::unstable;
  }
  return exit_code::success;
}

int cmd_deform(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const std::string format = resolve_format(cfg, "csv", {"csv", "json"});
  const Method method = Method::parse(cfg.method);
  const double h = step_size(cfg);
  const TrackingOptions options = tracking(cfg);
  const LoadedModel loaded = load_model(cfg);
  const ModalBaseline base = modal_baseline(loaded.jac, options.normalization);
  const DeformationReport report = deform(base, {method, h}, options.pf_floor);
  emit(cfg, render_rows(deformation_rows(base, report, options), loaded.model, format), out);
  return exit_code::success;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string format = resolve_format(cfg, "csv", {"csv", "json"});
  const Method method = Method::parse(cfg.method);
  const std::vector<double> h_grid = grid(cfg);
  const TrackingOptions options = tracking(cfg);
  const LoadedModel loaded = load_model(cfg);
  const auto rows = sweep(loaded.jac, method, h_grid, options);
  emit(cfg, render_rows(rows, loaded.model, format), out);

  const auto failed = std::count_if(rows.begin(), rows.end(),
                                    [](const SweepRow& r) { return (r.flags & flags::failed) != 0; });
  if (failed > 0) err << "warning: " << failed << " row(s) failed\n";
  if (!rows.empty() && failed == static_cast<std::ptrdiff_t>(rows.size())) {
    return exit_code::numerical;
  }
  return exit_code::success;
}

json hmax_json(const HmaxResult& r) {
  json doc;
  switch (r.kind) {
    case HmaxKind::unbounded:
      doc["hmax"] = "infinity";
      break;
    case HmaxKind::below_grid:
      doc["hmax"] = "below_grid";
      break;
    case HmaxKind::finite:
      doc["hmax"] = round12(r.hmax);
      break;
  }
  doc["limiting_metric"] = r.limiting_metric.empty() ? json(nullptr) : json(r.limiting_metric);
  if (r.limiting_mode) {
    doc["limiting_mode"] = {{"index", *r.limiting_mode},
                            {"re", round12(r.limiting_eigenvalue.real())},
                            {"im", round12(r.limiting_eigenvalue.imag())},
                            {"value_pct", number_or_null(r.limiting_value)}};
  } else {
    doc["limiting_mode"] = nullptr;
  }
  doc["failing_h"] = r.failing_h ? json(round12(*r.failing_h)) : json(nullptr);
  return doc;
}

int cmd_hmax(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  resolve_format(cfg, "json", {"json"});
  if (!cfg.eps_s && !cfg.eps_p) throw ConfigError("hmax needs --eps-s and/or --eps-p");
  const Method method = Method::parse(cfg.method);
  const std::vector<double> h_grid = grid(cfg);
  const TrackingOptions options = tracking(cfg);
  const LoadedModel loaded = load_model(cfg);

  std::vector<std::pair<std::string, Criteria>> scenarios;
  if (cfg.eps_s) scenarios.push_back({"eps_s", {cfg.eps_s, std::nullopt}});
  if (cfg.eps_p) scenarios.push_back({"eps_p", {std::nullopt, cfg.eps_p}});
  if (cfg.eps_s && cfg.eps_p) scenarios.push_back({"both", {cfg.eps_s, cfg.eps_p}});

  json doc;
  doc["method"] = method.name;
  doc["model"] = loaded.model.name();
  doc["grid"] = {{"hmin", round12(h_grid.front())},
                 {"hmax", round12(h_grid.back())},
                 {"points", h_grid.size()}};
  doc["n_modes"] = options.n_modes;
  doc["top_pf"] = options.top_k_pf;
  doc["scenarios"] = json::array();
  for (const auto& [label, criteria] : scenarios) {
    json entry = hmax_json(hmax(loaded.jac, method, criteria, h_grid, options));
    json crit = json::object();
    if (criteria.eps_s_max) crit["eps_s_max"] = *criteria.eps_s_max;
    if (criteria.eps_p_max) crit["eps_p_max"] = *criteria.eps_p_max;
    entry["scenario"] = label;
    entry["criteria"] = std::move(crit);
    doc["scenarios"].push_back(std::move(entry));
  }
  emit(cfg, doc.dump(2) + "\n", out);
  return exit_code::success;
}

Index state_index(const DaeModel& model, const std::string& name) {
  const auto& names = model.state_names;
  const auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return it - names.begin();
  if (name.size() > 1 && name[0] == 'x') {
    const double k = parse_real(name.substr(1), "state index");
    if (k >= 1 && k <= static_cast<double>(model.nu()) && k == std::floor(k)) {
      return static_cast<Index>(k) - 1;
    }
  }
  throw ConfigError("unknown state '" + name + "' in --perturb");
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  resolve_format(cfg, "csv", {"csv"});
  const Method method = Method::parse(cfg.method);
  const double h = step_size(cfg);
  if (!(cfg.t_end >= 0.0)) throw ConfigError("--tend must be non-negative");
  const LoadedModel loaded = load_model(cfg);
  const DaeModel& model = loaded.model;

  Vector x0 = loaded.jac.x_o;
  for (const auto& item : cfg.perturb) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("--perturb expects state:delta");
    x0(state_index(model, item.substr(0, colon))) +=
        parse_real(item.substr(colon + 1), "perturbation");
  }

  std::ostringstream os;
  os << 't';
  for (Index k = 0; k < model.nu(); ++k) os << ",x_" << k + 1;
  for (Index k = 0; k < model.mu(); ++k) os << ",y_" << k + 1;
  os << '\n';

  if (cfg.t_end == 0.0) {
    emit(cfg, os.str(), out);
    return exit_code::success;
  }

  // Linear stability of the discretized system at the operating point.
  try {
    const ModalBaseline base = modal_baseline(loaded.jac);
    const CompanionMatrix G = companion_matrix({method, h}, loaded.jac, base.A);
    const double radius = eig_full(G.G).eigenvalues.cwiseAbs().maxCoeff();
    if (radius > 1.0) {
      err << "warning: discretized system diverges (spectral radius of G = "
          << format_number(radius) << " > 1)\n";
    }
  } catch (const Error& e) {
    err << "warning: cannot assess discrete stability: " << e.what() << '\n';
  }

  SolverConfig solver;
  solver.h = h;
  solver.newton_tol = cfg.newton_tol;
  solver.max_newton = cfg.max_newton;
  const Trajectory traj = simulate(model, method, x0, loaded.jac.y_o, cfg.t_end, solver, true);

  for (std::size_t n = 0; n < traj.times.size(); ++n) {
    const auto row = static_cast<Index>(n);
    os << format_number(traj.times[n]);
    for (Index k = 0; k < model.nu(); ++k) os << ',' << format_number(traj.X(row, k));
    for (Index k = 0; k < model.mu(); ++k) os << ',' << format_number(traj.Y(row, k));
    os << '\n';
  }
  emit(cfg, os.str(), out);

  int total = 0;
  int worst = 0;
  for (const int it : traj.newton_iters) {
    total += it;
    worst = std::max(worst, it);
  }
  (cfg.out.empty() ? err : out) << "steps: " << traj.newton_iters.size()
                                << ", newton iterations: " << total << " (max " << worst
                                << " per step)\n";
  if (!traj.converged) {
    err << "error: " << traj.failure << '\n';
    return exit_code::numerical;
  }
  return exit_code::success;
}

int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  resolve_format(cfg, "json", {"json"});
  const LoadedModel loaded = load_model(cfg);
  emit(cfg, linear_model_json(loaded.jac).dump(2) + "\n", out);
  return exit_code::success;
}

void add_model_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--model", cfg.model, "Built-in model: smib | stiff-chain");
  cmd->add_option("--linear", cfg.linear, "Linear model JSON file");
  cmd->add_option("--param", cfg.params, "SMIB parameter override key=value (H, D, X, E, V, Pm, omega_b)");
  cmd->add_option("--smin", cfg.chain.s_min, "stiff-chain slowest rate (negative)");
  cmd->add_option("--smax", cfg.chain.s_max, "stiff-chain fastest rate (negative)");
  cmd->add_option("--n-slow", cfg.chain.n_slow, "stiff-chain slow state count");
  cmd->add_option("--n-fast", cfg.chain.n_fast, "stiff-chain fast state count");
  cmd->add_option("--coupling", cfg.chain.coupling, "stiff-chain algebraic feedback gain");
  cmd->add_option("--out", cfg.out, "Output file (stdout when omitted)");
  cmd->add_option("--format", cfg.format, "csv | json");
}

void add_tracking_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--method", cfg.method, "theta:<t> | bem | tm | dirk2s | heun:<r> | fem");
  cmd->add_option("--n-modes", cfg.n_modes, "Least-damped eigenvalues to track (0 = all)");
  cmd->add_option("--top-pf", cfg.top_pf, "Highest-participation states per mode");
  cmd->add_option("--pf-floor", cfg.pf_floor, "Participation magnitude below which eps_p is undefined");
  cmd->add_option("--pf-norm", cfg.pf_norm, "Participation column normalization: complex | magnitude");
}

void add_grid_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--hmin", cfg.hmin, "Smallest step size of the log grid");
  cmd->add_option("--hmax", cfg.hmax, "Largest step size of the log grid");
  cmd->add_option("--hpoints", cfg.hpoints, "Number of grid points");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Eigenvalue and mode-shape deformation of time-integration methods for DAEs",
               "modeshape"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Eigenvalues, stiffness ratio, participation matrix");
  add_model_options(analyze, cfg);
  analyze->add_option("--pf-norm", cfg.pf_norm, "Participation column normalization: complex | magnitude");

  auto* deform_cmd = app.add_subcommand("deform", "eps_s and eps_p at a single step size");
  add_model_options(deform_cmd, cfg);
  add_tracking_options(deform_cmd, cfg);
  deform_cmd->add_option("--h", cfg.h, "Step size [s]");

  auto* sweep_cmd = app.add_subcommand("sweep", "Deformation over a log-spaced step-size grid");
  add_model_options(sweep_cmd, cfg);
  add_tracking_options(sweep_cmd, cfg);
  add_grid_options(sweep_cmd, cfg);

  auto* hmax_cmd = app.add_subcommand("hmax", "Maximum admissible step size");
  add_model_options(hmax_cmd, cfg);
  add_tracking_options(hmax_cmd, cfg);
  add_grid_options(hmax_cmd, cfg);
  hmax_cmd->add_option("--eps-s", cfg.eps_s, "Eigenvalue deformation threshold [%]");
  hmax_cmd->add_option("--eps-p", cfg.eps_p, "Mode-shape deformation threshold [%]");

  auto* simulate_cmd = app.add_subcommand("simulate", "Fixed-step time-domain simulation");
  add_model_options(simulate_cmd, cfg);
  simulate_cmd->add_option("--method", cfg.method, "theta:<t> | bem | tm | dirk2s | heun:<r> | fem");
  simulate_cmd->add_option("--h", cfg.h, "Step size [s]");
  simulate_cmd->add_option("--tend", cfg.t_end, "End time [s]");
  simulate_cmd->add_option("--perturb", cfg.perturb, "Initial state offset, e.g. delta:+0.1");
  simulate_cmd->add_option("--newton-tol", cfg.newton_tol, "Newton residual tolerance");
  simulate_cmd->add_option("--max-newton", cfg.max_newton, "Newton iteration limit");

  auto* export_cmd = app.add_subcommand("export", "Write the linearized model as JSON");
  add_model_options(export_cmd, cfg);

  std::vector<const char*> argv{"modeshape"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::success;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::usage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg, out, err);
    if (deform_cmd->parsed()) return cmd_deform(cfg, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, out, err);
    if (hmax_cmd->parsed()) return cmd_hmax(cfg, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(cfg, out, err);
    if (export_cmd->parsed()) return cmd_export(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return exit_code::io;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const ConformanceError& e) {
    err << "input error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_code::numerical;
  }
  err << "usage error: no command given\n";
  return exit_code::usage;
}

}  // namespace modeshape::cli

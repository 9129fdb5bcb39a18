// Command-line surface tying the library together: locate delta-shell
// resonance poles, tabulate the competing energy averages on them, run the
// width-scaling comparison, emit survival-probability time series, and check
// the Hardy boundary-integral evaluation against direct continuation.
//
// Subcommands: poles | average | compare-gamma | survival | titchmarsh
// Shared flags: --config <path> --out <path> --format csv|json --set k=v
//
// Exit codes: 0 success, 2 validation failure, 3 numerical non-convergence,
// 4 empty result (no poles in the window).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gamow/averages.hpp"
#include "gamow/config.hpp"
#include "gamow/delta_shell.hpp"
#include "gamow/hardy.hpp"
#include "gamow/survival.hpp"
#include "gamow/tables.hpp"

namespace {

using gamow::Cell;
using gamow::Complex;
using gamow::Config;
using gamow::Table;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitEmpty = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::vector<std::string> overrides;
};

void write_output(const Table& table, const CommonArgs& args) {
  const std::string text =
      (args.format == "json") ? gamow::to_json(table) : gamow::to_csv(table);
  if (args.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(args.out_path, std::ios::binary);
  if (!out) throw gamow::ConfigError("cannot open output file: " + args.out_path);
  out << text;
}

gamow::QuadratureSpec parse_quadrature(const Config& cfg) {
  gamow::QuadratureSpec spec;
  spec.rel_tol = cfg.get_double_or("quadrature", "rel_tol", spec.rel_tol);
  spec.abs_tol = cfg.get_double_or("quadrature", "abs_tol", spec.abs_tol);
  spec.max_refinements = cfg.get_int_or("quadrature", "max_refinements", spec.max_refinements);
  spec.decay_cutoff = cfg.get_double_or("quadrature", "decay_cutoff", spec.decay_cutoff);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw gamow::ConfigError(std::string("quadrature: ") + e.what());
  }
  return spec;
}

gamow::DeltaShellModel parse_model(const Config& cfg) {
  gamow::DeltaShellModel model;
  model.strength = cfg.get_double("model", "lambda");
  model.radius = cfg.get_positive("model", "a");
  model.mass = cfg.get_positive("model", "mass");
  return model;
}

gamow::KWindow parse_window(const Config& cfg) {
  gamow::KWindow w;
  w.re_min = cfg.get_double_or("poles", "k_re_min", w.re_min);
  w.re_max = cfg.get_double_or("poles", "k_re_max", w.re_max);
  w.im_min = cfg.get_double_or("poles", "k_im_min", w.im_min);
  w.im_max = cfg.get_double_or("poles", "k_im_max", w.im_max);
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    throw gamow::ConfigError(std::string("poles: ") + e.what());
  }
  return w;
}

std::string model_annotation(const Config& cfg) {
  return "lambda=" + cfg.get_string("model", "lambda") + " a=" + cfg.get_string("model", "a") +
         " mass=" + cfg.get_string("model", "mass");
}

/// "name" or "name:k=v:k=v", e.g. lorentzian:c=10:b=2
gamow::ObservableSpec parse_observable(const std::string& token) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(token);
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.empty()) throw gamow::ConfigError("empty observable token");

  std::map<std::string, double> params;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos)
      throw gamow::ConfigError("observable parameter must be k=v, got '" + parts[i] + "'");
    char* end = nullptr;
    const std::string text = parts[i].substr(eq + 1);
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || end == text.c_str())
      throw gamow::ConfigError("observable parameter '" + parts[i] + "' is not a number");
    params[parts[i].substr(0, eq)] = v;
  }

  const std::string& name = parts[0];
  if (name == "hamiltonian") return gamow::observables::hamiltonian();
  if (name == "constant")
    return gamow::observables::constant(params.count("c") ? params.at("c") : 1.0);
  if (name == "lorentzian") {
    if (!params.count("c") || !params.count("b"))
      throw gamow::ConfigError("lorentzian observable needs c=<center>:b=<width>");
    return gamow::observables::lorentzian_kernel(params.at("c"), params.at("b"));
  }
  if (name == "energy_squared") return gamow::observables::energy_squared();
  throw gamow::ConfigError("unknown observable '" + name + "'");
}

/// "5,0.3 2,0.4" -> poles
std::vector<gamow::ResonancePole> parse_pole_pairs(const std::string& text) {
  std::vector<gamow::ResonancePole> poles;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    const auto comma = tok.find(',');
    if (comma == std::string::npos)
      throw gamow::ConfigError("pole entry must be E_R,Gamma; got '" + tok + "'");
    try {
      poles.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    } catch (const gamow::NonPositiveWidth& e) {
      throw gamow::ConfigError(std::string("average.pole_list: ") + e.what());
    } catch (const std::exception&) {
      throw gamow::ConfigError("pole entry '" + tok + "' is not numeric");
    }
  }
  return poles;
}

int cmd_poles(const Config& cfg, const CommonArgs& args) {
  const auto model = parse_model(cfg);
  const auto window = parse_window(cfg);
  const int max_count = cfg.get_int_or("poles", "max_count", 16);
  const int nx = cfg.get_int_or("poles", "grid_nx", 50);
  const int ny = cfg.get_int_or("poles", "grid_ny", 25);

  Table table;
  table.name = "poles";
  table.annotations = {{"model", model_annotation(cfg)}};
  table.columns = {{"n", "index"},
                   {"E_R", "energy"},
                   {"Gamma", "energy"},
                   {"jost_residual", "dimensionless"}};

  int exit_code = kExitOk;
  try {
    const auto found = gamow::find_resonances(model, window, max_count, nx, ny);
    std::int64_t n = 0;
    for (const auto& fp : found) {
      table.rows.push_back({Cell(n++), Cell(fp.pole.resonance_energy()),
                            Cell(fp.pole.width()), Cell(fp.jost_residual)});
    }
  } catch (const gamow::NoPolesInWindow&) {
    exit_code = kExitEmpty;  // empty table is still written
  }
  write_output(table, args);
  if (exit_code == kExitEmpty) std::cerr << "poles: no poles in the requested window\n";
  return exit_code;
}

int cmd_average(const Config& cfg, const CommonArgs& args) {
  const auto spec = parse_quadrature(cfg);

  std::vector<gamow::ResonancePole> poles;
  if (cfg.has("average", "pole_list")) {
    poles = parse_pole_pairs(cfg.get_string("average", "pole_list"));
  } else if (cfg.has("average", "poles_file")) {
    const Table in = gamow::parse_csv([&] {
      std::ifstream f(cfg.get_string("average", "poles_file"));
      if (!f)
        throw gamow::ConfigError("average.poles_file: cannot open " +
                                 cfg.get_string("average", "poles_file"));
      std::ostringstream ss;
      ss << f.rdbuf();
      return ss.str();
    }());
    std::size_t e_col = in.columns.size(), g_col = in.columns.size();
    for (std::size_t i = 0; i < in.columns.size(); ++i) {
      if (in.columns[i].name == "E_R") e_col = i;
      if (in.columns[i].name == "Gamma") g_col = i;
    }
    if (e_col >= in.columns.size() || g_col >= in.columns.size())
      throw gamow::ConfigError("average.poles_file: table lacks E_R/Gamma columns");
    for (const auto& row : in.rows)
      poles.emplace_back(std::get<double>(row[e_col]), std::get<double>(row[g_col]));
  } else {
    throw gamow::ConfigError("average: need pole_list or poles_file");
  }
  if (poles.empty()) throw gamow::ConfigError("average: the pole list is empty");

  std::vector<gamow::ObservableSpec> observables;
  for (const std::string& tok : cfg.get_tokens("average", "observables"))
    observables.push_back(parse_observable(tok));
  if (observables.empty()) throw gamow::ConfigError("average.observables is empty");

  Table table;
  table.name = "average";
  table.annotations = {
      {"nakanishi_note", gamow::average_nakanishi(poles.front()).caveat}};
  table.columns = {{"n", "index"},          {"observable", "text"},
                   {"E_R", "energy"},       {"Gamma", "energy"},
                   {"nakanishi", "value"},  {"complex_re", "value"},
                   {"complex_im", "value"}, {"bohm", "value"},
                   {"berggren", "value"},   {"bohm_minus_berggren", "value"}};

  std::int64_t n = 0;
  for (const auto& pole : poles) {
    for (const auto& obs : observables) {
      const auto row = gamow::make_average_report(pole, obs, spec);
      std::vector<Cell> cells = {Cell(n++),
                                 Cell(row.observable),
                                 Cell(pole.resonance_energy()),
                                 Cell(pole.width()),
                                 Cell(row.nakanishi.value),
                                 Cell(row.complex_avg.real()),
                                 Cell(row.complex_avg.imag())};
      if (row.bohm.has_value()) {
        cells.push_back(Cell(*row.bohm));
        cells.push_back(Cell(row.berggren));
        cells.push_back(Cell(*row.bohm_minus_berggren));
      } else {
        cells.push_back(Cell(row.bohm_error));
        cells.push_back(Cell(row.berggren));
        cells.push_back(Cell(row.bohm_error));
      }
      table.rows.push_back(std::move(cells));
    }
  }
  write_output(table, args);
  return kExitOk;
}

int cmd_compare_gamma(const Config& cfg, const CommonArgs& args) {
  const auto spec = parse_quadrature(cfg);
  const auto obs = parse_observable(cfg.get_string("compare-gamma", "observable"));
  const double e_r = cfg.get_double("compare-gamma", "e_r");
  const double lo = cfg.get_positive("compare-gamma", "gamma_min");
  const double hi = cfg.get_positive("compare-gamma", "gamma_max");
  const int points = cfg.get_int("compare-gamma", "points");
  if (points < 4)
    throw gamow::ConfigError("compare-gamma.points: the fit needs >= 4 points, got " +
                             std::to_string(points));
  if (!(hi > lo)) throw gamow::ConfigError("compare-gamma: need gamma_min < gamma_max");

  const auto report =
      gamow::gamma_scaling_experiment(obs, e_r, gamow::geometric_grid(lo, hi, points), spec);

  Table table;
  table.name = "compare_gamma";
  table.annotations = {{"observable", obs.name},
                       {"e_r", cfg.get_string("compare-gamma", "e_r")}};
  if (report.exact_agreement) {
    table.annotations.emplace_back("fit", "exact agreement");
  } else {
    table.annotations.emplace_back(
        "fit", "slope=" + gamow::format_double(report.fit.slope) +
                   " intercept=" + gamow::format_double(report.fit.intercept) +
                   " rms_residual=" + gamow::format_double(report.fit.rms_residual));
  }
  table.columns = {{"gamma", "energy"},
                   {"bohm", "value"},
                   {"berggren", "value"},
                   {"abs_diff", "value"}};
  for (const auto& p : report.points)
    table.rows.push_back({Cell(p.gamma), Cell(p.bohm), Cell(p.berggren), Cell(p.diff)});
  write_output(table, args);
  return kExitOk;
}

int cmd_survival(const Config& cfg, const CommonArgs& args) {
  const auto spec = parse_quadrature(cfg);
  const std::string kind = cfg.get_string("survival", "density");
  const double e_r = cfg.get_double("survival", "e_r");
  const double width = cfg.get_positive("survival", "width");

  gamow::SpectralDensity density = [&] {
    try {
      if (kind == "bw_full_line")
        return gamow::SpectralDensity::breit_wigner_full_line(e_r, width);
      if (kind == "bw_truncated")
        return gamow::SpectralDensity::breit_wigner_truncated(e_r, width);
      if (kind == "gaussian_truncated")
        return gamow::SpectralDensity::gaussian_truncated(e_r, width);
    } catch (const std::invalid_argument& e) {
      throw gamow::ConfigError(std::string("survival: ") + e.what());
    }
    throw gamow::ConfigError("survival.density: unknown kind '" + kind + "'");
  }();

  const double t_min = cfg.get_double("survival", "t_min");
  const double t_max = cfg.get_double("survival", "t_max");
  const int points = cfg.get_int("survival", "points");
  const std::string spacing = cfg.get_string_or("survival", "spacing", "linear");
  if (t_min < 0.0) throw gamow::ConfigError("survival.t_min must be >= 0");
  if (!(t_max > t_min)) throw gamow::ConfigError("survival: need t_min < t_max");
  if (points < 2) throw gamow::ConfigError("survival.points must be >= 2");
  if (spacing != "linear" && spacing != "geometric")
    throw gamow::ConfigError("survival.spacing must be linear or geometric");
  if (spacing == "geometric" && !(t_min > 0))
    throw gamow::ConfigError("survival: geometric spacing needs t_min > 0");

  Table table;
  table.name = "survival";
  table.annotations = {{"density", kind},
                       {"e_r", cfg.get_string("survival", "e_r")},
                       {"width", cfg.get_string("survival", "width")}};
  table.columns = {{"t", "time"},
                   {"re_a", "amplitude"},
                   {"im_a", "amplitude"},
                   {"p", "probability"},
                   {"exp_reference", "probability"},
                   {"background", "probability"}};

  for (int i = 0; i < points; ++i) {
    const double t =
        (spacing == "linear")
            ? t_min + (t_max - t_min) * i / (points - 1)
            : t_min * std::exp(std::log(t_max / t_min) * i / (points - 1));
    const Complex a = gamow::amplitude(density, t, spec);
    const double p = std::norm(a);
    const double reference = gamow::exponential_reference(density, t);
    table.rows.push_back({Cell(t), Cell(a.real()), Cell(a.imag()), Cell(p), Cell(reference),
                          Cell(p - reference)});
  }
  write_output(table, args);
  return kExitOk;
}

int cmd_titchmarsh(const Config& cfg, const CommonArgs& args) {
  const auto spec = parse_quadrature(cfg);

  std::vector<gamow::HardyFunction> family;
  for (const std::string& tok : cfg.get_tokens("titchmarsh", "family")) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw gamow::ConfigError("titchmarsh family token must be kind:orders, got '" + tok + "'");
    const std::string head = tok.substr(0, colon);
    const std::string orders = tok.substr(colon + 1);
    int lo = 0, hi = 0;
    const auto dash = orders.find('-');
    try {
      if (dash == std::string::npos) {
        lo = hi = std::stoi(orders);
      } else {
        lo = std::stoi(orders.substr(0, dash));
        hi = std::stoi(orders.substr(dash + 1));
      }
    } catch (const std::exception&) {
      throw gamow::ConfigError("titchmarsh family orders must be n or n-m, got '" + tok + "'");
    }
    if (lo < 1 || hi < lo) throw gamow::ConfigError("titchmarsh family orders out of range");
    for (int n = lo; n <= hi; ++n) {
      if (head == "rational") {
        family.push_back(gamow::rational_hardy(gamow::HalfPlane::lower, n));
        family.push_back(gamow::rational_hardy(gamow::HalfPlane::upper, n));
      } else if (head == "phase") {
        family.push_back(gamow::phase_twisted_hardy(gamow::HalfPlane::lower, n));
        family.push_back(gamow::phase_twisted_hardy(gamow::HalfPlane::upper, n));
      } else {
        throw gamow::ConfigError("titchmarsh family kind must be rational or phase");
      }
    }
  }
  if (family.empty()) throw gamow::ConfigError("titchmarsh.family is empty");

  std::vector<Complex> targets;
  const std::string target_spec = cfg.get_string("titchmarsh", "targets");
  if (target_spec == "from-poles") {
    const auto found =
        gamow::find_resonances(parse_model(cfg), parse_window(cfg),
                               cfg.get_int_or("poles", "max_count", 16),
                               cfg.get_int_or("poles", "grid_nx", 50),
                               cfg.get_int_or("poles", "grid_ny", 25));
    for (const auto& fp : found) {
      targets.push_back(fp.pole.z());
      targets.push_back(fp.pole.z_conjugate());
    }
  } else {
    std::istringstream ss(target_spec);
    std::string tok;
    while (ss >> tok) {
      const auto comma = tok.find(',');
      if (comma == std::string::npos)
        throw gamow::ConfigError("titchmarsh target must be re,im; got '" + tok + "'");
      try {
        targets.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
      } catch (const std::exception&) {
        throw gamow::ConfigError("titchmarsh target '" + tok + "' is not numeric");
      }
    }
  }
  if (targets.empty()) throw gamow::ConfigError("titchmarsh.targets is empty");

  Table table;
  table.name = "titchmarsh";
  table.annotations = {{"targets", target_spec}};
  table.columns = {{"function", "text"},
                   {"z_re", "energy"},
                   {"z_im", "energy"},
                   {"kind", "text"},
                   {"residual", "dimensionless"}};

  for (const auto& f : family) {
    for (Complex z : targets) {
      const bool same_side = (f.half_plane == gamow::HalfPlane::lower) == (z.imag() < 0.0);
      double residual;
      std::string kind;
      if (same_side) {
        kind = "reproduce";
        residual = std::abs(gamow::cauchy_eval(f, z, spec) - f.analytic(z));
      } else {
        kind = "annihilate";
        residual = std::abs(gamow::opposite_halfplane_check(f, z, spec));
      }
      table.rows.push_back(
          {Cell(f.label), Cell(z.real()), Cell(z.imag()), Cell(kind), Cell(residual)});
    }
  }
  write_output(table, args);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delta-shell resonance poles, Gamow-state energy averages, survival curves"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "run configuration file")->required();
    cmd->add_option("--out", args.out_path, "output file (stdout when omitted)");
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--set", args.overrides, "override a config value, section.key=value");
  };

  CLI::App* poles =
      app.add_subcommand("poles", "locate resonance poles of the delta-shell model");
  CLI::App* average = app.add_subcommand("average", "tabulate the energy-average definitions");
  CLI::App* compare =
      app.add_subcommand("compare-gamma", "width scaling of |bohm - berggren|");
  CLI::App* survival = app.add_subcommand("survival", "non-decay amplitude and probability");
  CLI::App* titchmarsh =
      app.add_subcommand("titchmarsh", "Hardy boundary-integral reconstruction residuals");
  for (CLI::App* cmd : {poles, average, compare, survival, titchmarsh}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    Config cfg = Config::from_file(args.config_path);
    for (const std::string& o : args.overrides) cfg.set(o);

    if (poles->parsed()) return cmd_poles(cfg, args);
    if (average->parsed()) return cmd_average(cfg, args);
    if (compare->parsed()) return cmd_compare_gamma(cfg, args);
    if (survival->parsed()) return cmd_survival(cfg, args);
    if (titchmarsh->parsed()) return cmd_titchmarsh(cfg, args);
    return kExitValidation;
  } catch (const gamow::ConfigError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const gamow::NoPolesInWindow& e) {
    std::cerr << "empty result: " << e.what() << "\n";
    return kExitEmpty;
  } catch (const gamow::DivergentObservable& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const gamow::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  }
}

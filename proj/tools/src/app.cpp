#include "coulomb/cli/app.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "coulomb/cli/tabulate.hpp"
#include "coulomb/errors.hpp"
#include "json.hpp"

namespace coulomb::cli {

namespace {

enum class Command { none, eval, scan, validate, partial_wave };

struct ContextFlags {
  double mu = 1.0;
  double q1q2 = 0.0;
  int n = 0;
  double gamma = 0.0;
  double kappa = 1.0;
  CLI::Option* mu_opt = nullptr;
  CLI::Option* q1q2_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* kappa_opt = nullptr;

  void add(CLI::App* cmd) {
    mu_opt = cmd->add_option("--mu", mu, "Reduced mass (hbar = 1)");
    q1q2_opt = cmd->add_option("--q1q2", q1q2, "Charge product; sign selects repulsion");
    n_opt = cmd->add_option("--n", n, "Bound-state level fixing the energy E_n");
    gamma_opt = cmd->add_option("--gamma", gamma, "Coulomb parameter (direct mode)");
    kappa_opt = cmd->add_option("--kappa", kappa, "Wave number (direct mode, default 1)");
  }

  ContextOptions options() const {
    ContextOptions o;
    if (mu_opt->count()) o.mu = mu;
    if (q1q2_opt->count()) o.q1q2 = q1q2;
    if (n_opt->count()) o.n = n;
    if (gamma_opt->count()) o.gamma = gamma;
    if (kappa_opt->count()) o.kappa = kappa;
    return o;
  }
};

struct QuadratureFlags {
  QuadratureSpec spec;
  void add(CLI::App* cmd) {
    cmd->add_option("--rel-tol", spec.rel_tol, "Relative tolerance (>= 1e-14)");
    cmd->add_option("--abs-tol", spec.abs_tol, "Absolute tolerance");
    cmd->add_option("--max-subdivisions", spec.max_subdivisions, "Quadrature bisection budget");
  }
};

struct GridFlags {
  std::string name;
  GridSpec grid;
  std::string spacing = "log";
  double single = 0.0;
  CLI::Option* single_opt = nullptr;

  GridFlags(std::string prefix, GridSpec defaults) : name(std::move(prefix)), grid(defaults) {
    spacing = grid.spacing == Spacing::linear ? "linear" : "log";
  }

  void add(CLI::App* cmd) {
    cmd->add_option("--" + name + "-min", grid.min, "Smallest " + name);
    cmd->add_option("--" + name + "-max", grid.max, "Largest " + name);
    cmd->add_option("--" + name + "-count", grid.count, "Number of " + name + " values");
    cmd->add_option("--" + name + "-spacing", spacing, "linear | log")
        ->check(CLI::IsMember({"linear", "log"}));
    single_opt = cmd->add_option("--" + name, single, "Single " + name + " (overrides the grid)");
  }

  GridSpec resolve() const {
    GridSpec g = grid;
    g.spacing = spacing == "linear" ? Spacing::linear : Spacing::log;
    if (single_opt->count()) g = {single, single, 1, Spacing::linear};
    return g;
  }
};

Representation parse_rep(const std::string& name) {
  const auto rep = parse_representation(name);
  if (!rep) {
    throw UsageError("unknown representation '" + name +
                     "'; expected series, integral, separated, closed, generalized-integral "
                     "or generalized-closed");
  }
  return *rep;
}

std::vector<Representation> parse_reps(const std::vector<std::string>& names) {
  std::vector<Representation> reps;
  for (const auto& n : names) reps.push_back(parse_rep(n));
  return reps;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open output file '" + path + "'");
  file << content;
  file.close();
  if (!file) throw Error("failed writing output file '" + path + "'");
}

std::string option_name(const std::string& token) {
  if (token.rfind("--", 0) != 0) return {};
  const auto eq = token.find('=');
  return token.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
}

// Splices `key = value` pairs from --config in front of the command-line
// flags. Keys also given on the command line are skipped, so flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty()) return rest;

  std::vector<std::string> given;
  for (const auto& token : rest) {
    if (auto name = option_name(token); !name.empty()) given.push_back(name);
  }
  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config_file(config_path)) {
    if (std::find(given.begin(), given.end(), key) != given.end()) continue;
    injected.push_back("--" + key);
    injected.push_back(value);
  }
  // Subcommand first, then file values, then explicit flags.
  std::vector<std::string> out;
  auto it = rest.begin();
  if (it != rest.end() && it->rfind("-", 0) != 0) out.push_back(*it++);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), it, rest.end());
  return out;
}

void print_eval_text(std::ostream& os, const BoundStateContext& ctx, const MomentumPair& pair,
                     const TMatrixValue& t) {
  os << "representation: " << to_string(t.representation) << '\n'
     << "gamma: " << format_number(ctx.gamma) << '\n'
     << "kappa: " << format_number(ctx.kappa) << '\n'
     << "energy: " << format_number(ctx.energy) << '\n'
     << "k: " << format_number(pair.k) << '\n'
     << "kprime: " << format_number(pair.kprime) << '\n'
     << "cos_theta: " << format_number(pair.cos_theta) << '\n'
     << "omega: " << format_number(t.fock.omega) << '\n'
     << "eta: " << format_number(t.fock.eta) << '\n'
     << "xi: " << format_number(t.fock.xi) << '\n'
     << "bracket: " << format_number(t.bracket) << '\n'
     << "prefactor: " << format_number(t.prefactor) << '\n'
     << "value: " << format_number(t.value) << '\n'
     << "error_estimate: " << format_number(t.error_estimate) << '\n';
}

void print_eval_json(std::ostream& os, const BoundStateContext& ctx, const MomentumPair& pair,
                     const TMatrixValue& t) {
  nlohmann::ordered_json doc = {
      {"representation", std::string(to_string(t.representation))},
      {"gamma", ctx.gamma},
      {"kappa", ctx.kappa},
      {"energy", ctx.energy},
      {"k", pair.k},
      {"kprime", pair.kprime},
      {"cos_theta", pair.cos_theta},
      {"omega", t.fock.omega},
      {"eta", t.fock.eta},
      {"xi", t.fock.xi},
      {"bracket", t.bracket},
      {"prefactor", t.prefactor},
      {"value", t.value},
      {"error_estimate", t.error_estimate},
  };
  os << doc.dump(2) << '\n';
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read config file '" + path + "'");
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string{};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty()) throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
    entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return entries;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Off-shell Coulomb T-matrix at negative energy", "coulomb-tmatrix"};
  app.require_subcommand(1);
  Command command = Command::none;

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate one matrix element");
  ContextFlags eval_ctx;
  QuadratureFlags eval_quad;
  MomentumPair eval_pair{1.0, 1.0, 0.0};
  std::string eval_rep;
  std::string eval_format = "text";
  eval_ctx.add(eval);
  eval_quad.add(eval);
  eval->add_option("--k", eval_pair.k, "Momentum k")->required();
  eval->add_option("--kp", eval_pair.kprime, "Momentum k'")->required();
  eval->add_option("--cos", eval_pair.cos_theta, "cos of the angle between k and k'")->required();
  eval->add_option("--rep", eval_rep, "Representation (default: first admissible)");
  eval->add_option("--format", eval_format, "text | json")->check(CLI::IsMember({"text", "json"}));
  eval->callback([&] { command = Command::eval; });

  // scan
  auto* scan = app.add_subcommand("scan", "Tabulate matrix elements over a momentum grid");
  ContextFlags scan_ctx;
  QuadratureFlags scan_quad;
  GridFlags scan_k("k", {});
  GridFlags scan_kp("kp", {});
  std::vector<double> scan_cos = {-1.0, 0.0, 0.5};
  std::vector<std::string> scan_reps;
  std::string scan_format = "csv";
  std::string scan_output;
  int scan_threads = 0;
  scan_ctx.add(scan);
  scan_quad.add(scan);
  scan_k.add(scan);
  scan_kp.add(scan);
  scan->add_option("--cos", scan_cos, "cos(theta) values")->delimiter(',');
  scan->add_option("--rep", scan_reps, "Representations (default: all admissible)")->delimiter(',');
  scan->add_option("--format", scan_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--output", scan_output, "Output path (default stdout)");
  scan->add_option("--threads", scan_threads, "Worker threads (0 = hardware)");
  scan->callback([&] { command = Command::scan; });

  // validate
  auto* validate_cmd =
      app.add_subcommand("validate", "Cross-check every admissible representation");
  ContextFlags val_ctx;
  QuadratureFlags val_quad;
  GridFlags val_k("k", {});
  GridFlags val_kp("kp", {});
  std::vector<double> val_cos = {-1.0, -0.5, 0.0, 0.5, 0.9};
  std::vector<std::string> val_reps;
  std::string val_grid = "omega";
  double val_omega_min = 0.05;
  int val_omega_count = 50;
  double val_threshold = 1e-8;
  std::string val_format = "text";
  std::string val_output;
  int val_threads = 0;
  val_ctx.add(validate_cmd);
  val_quad.add(validate_cmd);
  val_k.add(validate_cmd);
  val_kp.add(validate_cmd);
  validate_cmd->add_option("--cos", val_cos, "cos(theta) values (momentum grid)")->delimiter(',');
  validate_cmd->add_option("--rep", val_reps, "Representations (default: all admissible)")
      ->delimiter(',');
  validate_cmd->add_option("--grid", val_grid, "omega | momentum")
      ->check(CLI::IsMember({"omega", "momentum"}));
  validate_cmd->add_option("--omega-min", val_omega_min, "Smallest Fock angle (omega grid)");
  validate_cmd->add_option("--omega-count", val_omega_count, "Points on the omega grid");
  validate_cmd->add_option("--threshold", val_threshold, "Max allowed relative deviation");
  validate_cmd->add_option("--format", val_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  validate_cmd->add_option("--output", val_output, "Write the JSON report here");
  validate_cmd->add_option("--threads", val_threads, "Worker threads (0 = hardware)");
  validate_cmd->callback([&] { command = Command::validate; });

  // partial-wave
  auto* pw = app.add_subcommand("partial-wave", "Project onto Legendre partial waves");
  ContextFlags pw_ctx;
  QuadratureFlags pw_quad;
  GridFlags pw_k("k", {2.0, 2.0, 1, Spacing::linear});
  GridFlags pw_kp("kp", {1.0, 1.0, 1, Spacing::linear});
  int pw_lmin = 0;
  int pw_lmax = 4;
  std::string pw_rep;
  std::string pw_format = "csv";
  std::string pw_output;
  int pw_threads = 0;
  pw_ctx.add(pw);
  pw_quad.add(pw);
  pw_k.add(pw);
  pw_kp.add(pw);
  pw->add_option("--l-min", pw_lmin, "Lowest partial wave");
  pw->add_option("--l-max", pw_lmax, "Highest partial wave (<= 64)");
  pw->add_option("--rep", pw_rep, "Representation (default: first admissible)");
  pw->add_option("--format", pw_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  pw->add_option("--output", pw_output, "Output path (default stdout)");
  pw->add_option("--threads", pw_threads, "Worker threads (0 = hardware)");
  pw->callback([&] { command = Command::partial_wave; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  auto default_rep = [](const std::string& name, double gamma) {
    if (!name.empty()) return parse_rep(name);
    const auto allowed = admissible_representations(gamma);
    if (allowed.empty()) {
      throw UsageError("no representation is defined for gamma = " + format_number(gamma));
    }
    return allowed.front();
  };

  try {
    switch (command) {
      case Command::eval: {
        const auto ctx = eval_ctx.options().resolve();
        const Representation rep = default_rep(eval_rep, ctx.gamma);
        if (!admissible(rep, ctx.gamma)) {
          evaluate_bracket(rep, ctx.gamma, 1.0);  // throws with the admissible list
        }
        try {
          validate(eval_pair);
          validate(eval_quad.spec);
        } catch (const DomainError& e) {
          throw UsageError(e.what());
        }
        const auto t = evaluate(eval_pair, ctx, rep, eval_quad.spec);
        if (eval_format == "json") {
          print_eval_json(out, ctx, eval_pair, t);
        } else {
          print_eval_text(out, ctx, eval_pair, t);
        }
        return kSuccess;
      }
      case Command::scan: {
        ScanConfig config;
        config.context = scan_ctx.options();
        config.k = scan_k.resolve();
        config.kprime = scan_kp.resolve();
        config.cos_theta = scan_cos;
        config.representations = parse_reps(scan_reps);
        config.quadrature = scan_quad.spec;
        config.threads = resolve_threads(scan_threads);
        const auto rows = run_scan(config);
        auto echo = config.echo();
        echo.emplace_back("format", scan_format);
        std::ostringstream buffer;
        if (scan_format == "json") {
          write_scan_json(buffer, echo, rows);
        } else {
          write_scan_csv(buffer, echo, rows);
        }
        write_output(scan_output, buffer.str(), out);
        return kSuccess;
      }
      case Command::validate: {
        ValidateConfig config;
        config.scan.context = val_ctx.options();
        config.scan.k = val_k.resolve();
        config.scan.kprime = val_kp.resolve();
        config.scan.cos_theta = val_cos;
        config.scan.representations = parse_reps(val_reps);
        config.scan.quadrature = val_quad.spec;
        config.scan.threads = resolve_threads(val_threads);
        config.grid = val_grid == "momentum" ? ValidationGrid::momentum : ValidationGrid::omega;
        config.omega_min = val_omega_min;
        config.omega_count = val_omega_count;
        config.threshold = val_threshold;
        const auto report = run_validation(config);
        std::ostringstream json;
        write_validation_json(json, config.echo(), report);
        if (val_format == "json") {
          out << json.str();
        } else {
          write_validation_text(out, report);
        }
        if (!val_output.empty()) write_output(val_output, json.str(), out);
        return report.pass ? kSuccess : kValidationFailed;
      }
      case Command::partial_wave: {
        PartialWaveConfig config;
        config.context = pw_ctx.options();
        config.k = pw_k.resolve();
        config.kprime = pw_kp.resolve();
        config.l_min = pw_lmin;
        config.l_max = pw_lmax;
        config.quadrature = pw_quad.spec;
        config.threads = resolve_threads(pw_threads);
        config.representation = default_rep(pw_rep, config.context.resolve().gamma);
        const auto rows = run_partial_waves(config);
        auto echo = config.echo();
        echo.emplace_back("format", pw_format);
        std::ostringstream buffer;
        if (pw_format == "json") {
          write_partial_wave_json(buffer, echo, rows);
        } else {
          write_partial_wave_csv(buffer, echo, rows);
        }
        write_output(pw_output, buffer.str(), out);
        return kSuccess;
      }
      case Command::none:
        break;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "evaluation failed: " << e.what() << '\n';
    return kEvaluationFailure;
  }
  err << app.help();
  return kUsage;
}

}  // namespace coulomb::cli

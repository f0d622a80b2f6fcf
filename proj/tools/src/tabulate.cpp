#include "coulomb/cli/tabulate.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "coulomb/cli/app.hpp"
#include "coulomb/errors.hpp"
#include "coulomb/partial_waves.hpp"
#include "coulomb/special_functions.hpp"
#include "json.hpp"

namespace coulomb::cli {

namespace {

using Json = nlohmann::ordered_json;

// Runs body(i) for i in [0, count) on `threads` workers. Results are written
// by index, so output order never depends on scheduling. The exception of the
// lowest failing index is rethrown.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, 256));
  if (workers == 1 || count < 2) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(workers, count); ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string join_representations(const std::vector<Representation>& reps) {
  std::string out;
  for (Representation r : reps) {
    if (!out.empty()) out += ',';
    out += to_string(r);
  }
  return out;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (double x : xs) {
    if (!out.empty()) out += ',';
    out += format_number(x);
  }
  return out;
}

void check_quadrature(const QuadratureSpec& spec) {
  try {
    validate(spec);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::vector<Representation> resolve_representations(const std::vector<Representation>& requested,
                                                     double gamma) {
  const auto allowed = admissible_representations(gamma);
  if (requested.empty()) {
    if (allowed.empty()) {
      throw UsageError("no representation is defined for gamma = " + format_number(gamma));
    }
    return allowed;
  }
  for (Representation rep : requested) {
    if (!admissible(rep, gamma)) {
      throw UsageError("representation '" + std::string(to_string(rep)) +
                       "' is not defined for gamma = " + format_number(gamma) +
                       "; admissible: " +
                       (allowed.empty() ? std::string("none") : join_representations(allowed)));
    }
  }
  return requested;
}

void echo_quadrature(const QuadratureSpec& q, ConfigEcho& out) {
  out.emplace_back("rel-tol", format_number(q.rel_tol));
  out.emplace_back("abs-tol", format_number(q.abs_tol));
  out.emplace_back("max-subdivisions", std::to_string(q.max_subdivisions));
}

std::string point_label(double k, double kprime, double cos_theta) {
  return "k=" + format_number(k) + " kprime=" + format_number(kprime) +
         " cos_theta=" + format_number(cos_theta);
}

double relative_deviation(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

void finish_point(ValidationPoint& point) {
  for (std::size_t i = 0; i < point.values.size(); ++i) {
    for (std::size_t j = i + 1; j < point.values.size(); ++j) {
      const double dev = relative_deviation(point.values[i].second, point.values[j].second);
      if (!(dev <= point.max_deviation)) {
        point.max_deviation = dev;
        point.worst_pair = {point.values[i].first, point.values[j].first};
      }
    }
  }
}

std::vector<double> omega_grid(double omega_min, int count) {
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) {
    grid.push_back(count == 1 ? omega_min
                              : omega_min + (std::numbers::pi - omega_min) * i / (count - 1));
  }
  grid.back() = count == 1 ? omega_min : std::numbers::pi;
  return grid;
}

ClosedFormAudit audit_closed_forms(int n, const std::vector<double>& grid,
                                   const QuadratureSpec& spec) {
  ClosedFormAudit audit{n, 0.0, 0.0, 0.0, 0.0};
  for (double w : grid) {
    const double x = x_gamma(n, w, spec).value;
    const double y = y_gamma(n, w, spec).value;
    audit.x_corrected = std::max(audit.x_corrected, std::abs(x_closed(n, w) - x));
    audit.x_as_printed =
        std::max(audit.x_as_printed, std::abs(x_closed(n, w, Transcription::as_printed) - x));
    audit.y_corrected = std::max(audit.y_corrected, std::abs(y_closed(n, w) - y));
    audit.y_as_printed =
        std::max(audit.y_as_printed, std::abs(y_closed(n, w, Transcription::as_printed) - y));
  }
  return audit;
}

}  // namespace

BoundStateContext ContextOptions::resolve() const {
  const bool physical = mu || q1q2 || n;
  const bool direct = gamma || kappa;
  if (physical && direct) {
    throw UsageError("--gamma/--kappa cannot be combined with --mu/--q1q2/--n");
  }
  try {
    if (direct) {
      if (!gamma) throw UsageError("direct mode needs --gamma");
      return make_direct_context(*gamma, kappa.value_or(1.0));
    }
    if (!q1q2 || !n) {
      throw UsageError("specify either --q1q2 and --n (optionally --mu) or --gamma [--kappa]");
    }
    return make_context({mu.value_or(1.0), *q1q2}, *n);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void ContextOptions::echo(ConfigEcho& out) const {
  if (gamma || kappa) {
    out.emplace_back("gamma", format_number(gamma.value_or(0.0)));
    out.emplace_back("kappa", format_number(kappa.value_or(1.0)));
  } else {
    out.emplace_back("mu", format_number(mu.value_or(1.0)));
    out.emplace_back("q1q2", q1q2 ? format_number(*q1q2) : "");
    out.emplace_back("n", n ? std::to_string(*n) : "");
  }
}

std::vector<double> GridSpec::values() const {
  if (count < 1) throw UsageError("grid count must be >= 1");
  if (!(min > 0.0) || !std::isfinite(max)) throw UsageError("grid bounds must be positive");
  if (count == 1) {
    if (min > max) throw UsageError("grid min must not exceed max");
    return {min};
  }
  if (!(min < max)) throw UsageError("grid min must be below max");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out.push_back(spacing == Spacing::linear
                      ? min + (max - min) * t
                      : std::exp(std::log(min) + (std::log(max) - std::log(min)) * t));
  }
  out.front() = min;
  out.back() = max;
  return out;
}

void GridSpec::echo(const std::string& prefix, ConfigEcho& out) const {
  out.emplace_back(prefix + "-min", format_number(min));
  out.emplace_back(prefix + "-max", format_number(max));
  out.emplace_back(prefix + "-count", std::to_string(count));
  out.emplace_back(prefix + "-spacing", spacing == Spacing::linear ? "linear" : "log");
}

ConfigEcho ScanConfig::echo() const {
  ConfigEcho out;
  context.echo(out);
  k.echo("k", out);
  kprime.echo("kp", out);
  out.emplace_back("cos", join_numbers(cos_theta));
  out.emplace_back("rep", representations.empty() ? std::string("admissible")
                                                   : join_representations(representations));
  echo_quadrature(quadrature, out);
  return out;
}

ConfigEcho ValidateConfig::echo() const {
  ConfigEcho out = scan.echo();
  out.emplace_back("grid", grid == ValidationGrid::omega ? "omega" : "momentum");
  out.emplace_back("omega-min", format_number(omega_min));
  out.emplace_back("omega-count", std::to_string(omega_count));
  out.emplace_back("threshold", format_number(threshold));
  return out;
}

ConfigEcho PartialWaveConfig::echo() const {
  ConfigEcho out;
  context.echo(out);
  k.echo("k", out);
  kprime.echo("kp", out);
  out.emplace_back("l-min", std::to_string(l_min));
  out.emplace_back("l-max", std::to_string(l_max));
  out.emplace_back("rep", std::string(to_string(representation)));
  echo_quadrature(quadrature, out);
  return out;
}

std::vector<ScanRow> run_scan(const ScanConfig& config) {
  const BoundStateContext ctx = config.context.resolve();
  const auto reps = resolve_representations(config.representations, ctx.gamma);
  check_quadrature(config.quadrature);
  const auto ks = config.k.values();
  const auto kps = config.kprime.values();
  if (config.cos_theta.empty()) throw UsageError("--cos needs at least one value");
  for (double c : config.cos_theta) {
    if (!(std::abs(c) <= 1.0)) throw UsageError("cos_theta values must lie in [-1, 1]");
  }

  std::vector<ScanRow> rows;
  for (double k : ks) {
    for (double kp : kps) {
      for (double c : config.cos_theta) {
        for (std::size_t r = 0; r < reps.size(); ++r) rows.push_back({k, kp, c, {}});
      }
    }
  }
  parallel_for(rows.size(), config.threads, [&](std::size_t i) {
    ScanRow& row = rows[i];
    const Representation rep = reps[i % reps.size()];
    try {
      row.t = evaluate({row.k, row.kprime, row.cos_theta}, ctx, rep, config.quadrature);
    } catch (const Error& e) {
      throw Error(point_label(row.k, row.kprime, row.cos_theta) + " rep=" +
                  std::string(to_string(rep)) + ": " + e.what());
    }
  });
  return rows;
}

ValidationReport run_validation(const ValidateConfig& config) {
  const BoundStateContext ctx = config.scan.context.resolve();
  ValidationReport report;
  report.representations = resolve_representations(config.scan.representations, ctx.gamma);
  if (report.representations.size() < 2) {
    throw UsageError("validation needs at least two representations for gamma = " +
                     format_number(ctx.gamma));
  }
  check_quadrature(config.scan.quadrature);
  if (!(config.threshold >= 0.0)) throw UsageError("--threshold must be non-negative");
  if (config.omega_count < 1) throw UsageError("--omega-count must be >= 1");
  if (!(config.omega_min > 0.0 && config.omega_min <= std::numbers::pi)) {
    throw UsageError("--omega-min must lie in (0, pi]");
  }
  report.threshold = config.threshold;

  const auto grid = omega_grid(config.omega_min, config.omega_count);
  if (config.grid == ValidationGrid::omega) {
    for (double w : grid) {
      ValidationPoint p;
      p.omega = w;
      report.points.push_back(std::move(p));
    }
  } else {
    const auto ks = config.scan.k.values();
    const auto kps = config.scan.kprime.values();
    for (double k : ks) {
      for (double kp : kps) {
        for (double c : config.scan.cos_theta) {
          ValidationPoint p;
          p.k = k;
          p.kprime = kp;
          p.cos_theta = c;
          report.points.push_back(std::move(p));
        }
      }
    }
  }

  const auto& reps = report.representations;
  parallel_for(report.points.size(), config.scan.threads, [&](std::size_t i) {
    ValidationPoint& point = report.points[i];
    for (Representation rep : reps) {
      try {
        double value = 0.0;
        if (config.grid == ValidationGrid::omega) {
          value = evaluate_bracket(rep, ctx.gamma, point.omega, config.scan.quadrature).value;
        } else {
          const auto t = evaluate({point.k, point.kprime, point.cos_theta}, ctx, rep,
                                  config.scan.quadrature);
          point.omega = t.fock.omega;
          value = t.value;
        }
        point.values.emplace_back(rep, value);
      } catch (const Error& e) {
        point.failure = std::string(to_string(rep)) + ": " + e.what();
      }
    }
    finish_point(point);
  });

  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& p = report.points[i];
    if (p.failure) ++report.failures;
    if (!report.worst_point || p.max_deviation > report.max_deviation) {
      report.max_deviation = p.max_deviation;
      report.worst_point = i;
    }
  }
  report.pass = report.failures == 0 && report.max_deviation <= report.threshold;

  const double rounded = std::round(ctx.gamma);
  if (std::abs(ctx.gamma - rounded) < 1e-9 && rounded >= 1.0 && rounded <= 3.0) {
    report.audit = audit_closed_forms(static_cast<int>(rounded), grid, config.scan.quadrature);
  }
  return report;
}

std::vector<PartialWaveRow> run_partial_waves(const PartialWaveConfig& config) {
  const BoundStateContext ctx = config.context.resolve();
  resolve_representations({config.representation}, ctx.gamma);
  check_quadrature(config.quadrature);
  if (config.l_min < 0 || config.l_max < config.l_min) {
    throw UsageError("need 0 <= --l-min <= --l-max");
  }
  if (config.l_max > kMaxPartialWave) {
    throw UsageError("--l-max must not exceed " + std::to_string(kMaxPartialWave));
  }
  const auto ks = config.k.values();
  const auto kps = config.kprime.values();

  std::vector<PartialWaveRow> rows;
  for (double k : ks) {
    for (double kp : kps) {
      for (int l = config.l_min; l <= config.l_max; ++l) rows.push_back({l, k, kp, 0.0, 0.0});
    }
  }
  parallel_for(rows.size(), config.threads, [&](std::size_t i) {
    PartialWaveRow& row = rows[i];
    try {
      const auto t = project_partial_wave(
          {row.l, row.k, row.kprime, ctx, config.representation, config.quadrature});
      row.t_l = t.value;
      row.error_estimate = t.error;
    } catch (const Error& e) {
      throw Error("l=" + std::to_string(row.l) + " k=" + format_number(row.k) +
                  " kprime=" + format_number(row.kprime) + ": " + e.what());
    }
  });
  return rows;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_scan_csv(std::ostream& os, const ConfigEcho& config, const std::vector<ScanRow>& rows) {
  os << "# coulomb-tmatrix scan\n";
  for (const auto& [key, value] : config) os << "# " << key << " = " << value << '\n';
  os << "k,kprime,cos_theta,omega,eta,xi,representation,bracket,prefactor,value,error_estimate\n";
  for (const auto& r : rows) {
    os << format_number(r.k) << ',' << format_number(r.kprime) << ','
       << format_number(r.cos_theta) << ',' << format_number(r.t.fock.omega) << ','
       << format_number(r.t.fock.eta) << ',' << format_number(r.t.fock.xi) << ','
       << to_string(r.t.representation) << ',' << format_number(r.t.bracket) << ','
       << format_number(r.t.prefactor) << ',' << format_number(r.t.value) << ','
       << format_number(r.t.error_estimate) << '\n';
  }
}

namespace {

Json config_json(const ConfigEcho& config) {
  Json out = Json::object();
  for (const auto& [key, value] : config) out[key] = value;
  return out;
}

}  // namespace

void write_scan_json(std::ostream& os, const ConfigEcho& config, const std::vector<ScanRow>& rows) {
  Json doc;
  doc["config"] = config_json(config);
  Json array = Json::array();
  double max_error = 0.0;
  for (const auto& r : rows) {
    array.push_back({
        {"k", r.k},
        {"kprime", r.kprime},
        {"cos_theta", r.cos_theta},
        {"omega", r.t.fock.omega},
        {"eta", r.t.fock.eta},
        {"xi", r.t.fock.xi},
        {"representation", std::string(to_string(r.t.representation))},
        {"bracket", r.t.bracket},
        {"prefactor", r.t.prefactor},
        {"value", r.t.value},
        {"error_estimate", r.t.error_estimate},
    });
    max_error = std::max(max_error, r.t.error_estimate);
  }
  doc["rows"] = std::move(array);
  doc["summary"] = {{"rows", rows.size()}, {"max_error_estimate", max_error}};
  os << doc.dump(2) << '\n';
}

void write_validation_text(std::ostream& os, const ValidationReport& report) {
  os << "representations: " << join_representations(report.representations) << '\n';
  os << "points: " << report.points.size() << '\n';
  os << "failures: " << report.failures << '\n';
  for (const auto& p : report.points) {
    if (p.failure) os << "  failed at omega=" << format_number(p.omega) << ": " << *p.failure << '\n';
  }
  os << "max relative deviation: " << format_number(report.max_deviation);
  if (report.worst_point) {
    const auto& p = report.points[*report.worst_point];
    os << " (" << to_string(p.worst_pair.first) << " vs " << to_string(p.worst_pair.second)
       << " at omega=" << format_number(p.omega);
    if (p.k > 0.0) os << ", " << point_label(p.k, p.kprime, p.cos_theta);
    os << ')';
  }
  os << '\n';
  os << "threshold: " << format_number(report.threshold) << '\n';
  if (report.audit) {
    const auto& a = *report.audit;
    os << "closed-form audit n=" << a.n << ": max|x_closed - x_quad| corrected "
       << format_number(a.x_corrected) << ", as printed " << format_number(a.x_as_printed)
       << "; max|y_closed - y_quad| corrected " << format_number(a.y_corrected)
       << ", as printed " << format_number(a.y_as_printed) << '\n';
  }
  os << "result: " << (report.pass ? "PASS" : "FAIL") << '\n';
}

void write_validation_json(std::ostream& os, const ConfigEcho& config,
                           const ValidationReport& report) {
  Json doc;
  doc["config"] = config_json(config);
  Json points = Json::array();
  for (const auto& p : report.points) {
    Json values = Json::object();
    for (const auto& [rep, v] : p.values) values[std::string(to_string(rep))] = v;
    Json entry = {{"omega", p.omega}};
    if (p.k > 0.0) {
      entry["k"] = p.k;
      entry["kprime"] = p.kprime;
      entry["cos_theta"] = p.cos_theta;
    }
    entry["values"] = std::move(values);
    entry["max_rel_deviation"] = p.max_deviation;
    entry["worst_pair"] = {std::string(to_string(p.worst_pair.first)),
                           std::string(to_string(p.worst_pair.second))};
    entry["failure"] = p.failure ? Json(*p.failure) : Json(nullptr);
    points.push_back(std::move(entry));
  }
  doc["points"] = std::move(points);
  Json summary = {
      {"representations", join_representations(report.representations)},
      {"max_rel_deviation", report.max_deviation},
      {"threshold", report.threshold},
      {"failures", report.failures},
      {"pass", report.pass},
  };
  summary["worst_point"] = report.worst_point ? Json(*report.worst_point) : Json(nullptr);
  doc["summary"] = std::move(summary);
  if (report.audit) {
    const auto& a = *report.audit;
    doc["closed_form_audit"] = {
        {"n", a.n},
        {"x_max_abs_dev_corrected", a.x_corrected},
        {"x_max_abs_dev_as_printed", a.x_as_printed},
        {"y_max_abs_dev_corrected", a.y_corrected},
        {"y_max_abs_dev_as_printed", a.y_as_printed},
    };
  }
  os << doc.dump(2) << '\n';
}

void write_partial_wave_csv(std::ostream& os, const ConfigEcho& config,
                            const std::vector<PartialWaveRow>& rows) {
  os << "# coulomb-tmatrix partial-wave\n";
  for (const auto& [key, value] : config) os << "# " << key << " = " << value << '\n';
  os << "l,k,kprime,t_l,error_estimate\n";
  for (const auto& r : rows) {
    os << r.l << ',' << format_number(r.k) << ',' << format_number(r.kprime) << ','
       << format_number(r.t_l) << ',' << format_number(r.error_estimate) << '\n';
  }
}

void write_partial_wave_json(std::ostream& os, const ConfigEcho& config,
                             const std::vector<PartialWaveRow>& rows) {
  Json doc;
  doc["config"] = config_json(config);
  Json array = Json::array();
  double max_error = 0.0;
  for (const auto& r : rows) {
    array.push_back({{"l", r.l},
                     {"k", r.k},
                     {"kprime", r.kprime},
                     {"t_l", r.t_l},
                     {"error_estimate", r.error_estimate}});
    max_error = std::max(max_error, r.error_estimate);
  }
  doc["rows"] = std::move(array);
  doc["summary"] = {{"rows", rows.size()}, {"max_error_estimate", max_error}};
  os << doc.dump(2) << '\n';
}

}  // namespace coulomb::cli

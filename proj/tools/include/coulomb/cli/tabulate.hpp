#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "coulomb/kinematics.hpp"
#include "coulomb/quadrature.hpp"
#include "coulomb/representations.hpp"

namespace coulomb::cli {

/// Ordered (key, value) pairs echoed into every output file.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

enum class OutputFormat { text, csv, json };

/// Either a bound-state level of a physical system, or (gamma, kappa) directly.
struct ContextOptions {
  std::optional<double> mu;
  std::optional<double> q1q2;
  std::optional<int> n;
  std::optional<double> gamma;
  std::optional<double> kappa;

  /// Throws UsageError on missing or mixed inputs.
  BoundStateContext resolve() const;
  void echo(ConfigEcho& out) const;
};

enum class Spacing { linear, log };

struct GridSpec {
  double min = 0.5;
  double max = 2.0;
  int count = 3;
  Spacing spacing = Spacing::log;

  /// Throws UsageError unless count >= 1 and min < max (min == max allowed for count 1).
  std::vector<double> values() const;
  void echo(const std::string& prefix, ConfigEcho& out) const;
};

struct ScanConfig {
  ContextOptions context;
  GridSpec k;
  GridSpec kprime;
  std::vector<double> cos_theta = {-1.0, 0.0, 0.5};
  std::vector<Representation> representations;  ///< empty: all admissible
  QuadratureSpec quadrature;
  int threads = 1;

  ConfigEcho echo() const;
};

struct ScanRow {
  double k;
  double kprime;
  double cos_theta;
  TMatrixValue t;
};

/// Rows ordered k outer, k' middle, cos(theta) inner, representation innermost,
/// independent of the thread count.
std::vector<ScanRow> run_scan(const ScanConfig& config);

enum class ValidationGrid { omega, momentum };

struct ValidateConfig {
  ScanConfig scan;
  ValidationGrid grid = ValidationGrid::omega;
  double omega_min = 0.05;
  int omega_count = 50;
  double threshold = 1e-8;

  ConfigEcho echo() const;
};

struct ValidationPoint {
  double k = 0.0;  ///< 0 on the omega grid
  double kprime = 0.0;
  double cos_theta = 0.0;
  double omega = 0.0;
  std::vector<std::pair<Representation, double>> values;
  double max_deviation = 0.0;
  std::pair<Representation, Representation> worst_pair{};
  std::optional<std::string> failure;
};

struct ClosedFormAudit {
  int n;
  double x_corrected;  ///< max |x_closed - x_gamma| over the omega grid
  double x_as_printed;
  double y_corrected;
  double y_as_printed;
};

struct ValidationReport {
  std::vector<Representation> representations;
  std::vector<ValidationPoint> points;
  double threshold = 0.0;
  double max_deviation = 0.0;
  std::optional<std::size_t> worst_point;
  std::size_t failures = 0;
  bool pass = false;
  std::optional<ClosedFormAudit> audit;
};

ValidationReport run_validation(const ValidateConfig& config);

struct PartialWaveConfig {
  ContextOptions context;
  GridSpec k{2.0, 2.0, 1, Spacing::linear};
  GridSpec kprime{1.0, 1.0, 1, Spacing::linear};
  int l_min = 0;
  int l_max = 4;
  Representation representation = Representation::series;
  QuadratureSpec quadrature;
  int threads = 1;

  ConfigEcho echo() const;
};

struct PartialWaveRow {
  int l;
  double k;
  double kprime;
  double t_l;
  double error_estimate;
};

/// Rows ordered k outer, k' middle, l inner.
std::vector<PartialWaveRow> run_partial_waves(const PartialWaveConfig& config);

/// 17 significant digits, C locale.
std::string format_number(double x);

void write_scan_csv(std::ostream& os, const ConfigEcho& config, const std::vector<ScanRow>& rows);
void write_scan_json(std::ostream& os, const ConfigEcho& config, const std::vector<ScanRow>& rows);
void write_validation_text(std::ostream& os, const ValidationReport& report);
void write_validation_json(std::ostream& os, const ConfigEcho& config,
                           const ValidationReport& report);
void write_partial_wave_csv(std::ostream& os, const ConfigEcho& config,
                            const std::vector<PartialWaveRow>& rows);
void write_partial_wave_json(std::ostream& os, const ConfigEcho& config,
                             const std::vector<PartialWaveRow>& rows);

}  // namespace coulomb::cli

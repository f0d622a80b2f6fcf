#include "coulomb/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "coulomb/errors.hpp"

namespace coulomb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

void check_angle(double omega) {
  if (!(omega >= 0.0 && omega <= kPi)) {
    throw DomainError("angle must lie in [0, pi], got " + std::to_string(omega));
  }
}

void check_closed_order(int n) {
  if (n < 1 || n > 3) {
    throw UnsupportedError("closed forms exist for n = 1, 2, 3 only, got " + std::to_string(n));
  }
}

// Zero crossings of sin(gamma phi) inside (lo, hi).
std::vector<double> oscillation_seeds(double gamma, double lo, double hi) {
  std::vector<double> seeds;
  const double g = std::abs(gamma);
  if (g <= 1.0) return seeds;
  const double step = kPi / g;
  for (double p = step; p < hi; p += step) {
    if (p > lo) seeds.push_back(p);
  }
  return seeds;
}

// sin^2 terms vanish as S ln S at S = 0.
double s_log_s(double s) { return s > 0.0 ? s * std::log(s) : 0.0; }

constexpr int kClausenTerms = 40;

std::array<double, kClausenTerms + 1> clausen_coefficients() {
  // zeta(2k) / (k (2k + 1)), zeta by direct summation with an
  // Euler-Maclaurin tail.
  std::array<double, kClausenTerms + 1> coeff{};
  for (int k = 1; k <= kClausenTerms; ++k) {
    const double s = 2.0 * k;
    double zeta = 0.0;
    constexpr int kTerms = 1000;
    for (int j = kTerms; j >= 1; --j) zeta += std::pow(static_cast<double>(j), -s);
    const double big_j = kTerms;
    zeta += std::pow(big_j, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(big_j, -s) +
            s * std::pow(big_j, -s - 1.0) / 12.0;
    coeff[static_cast<std::size_t>(k)] = zeta / (k * (2.0 * k + 1.0));
  }
  return coeff;
}

// Power series valid for 0 <= theta < 2 pi; used for theta <= pi.
double clausen_series(double theta) {
  static const auto coeff = clausen_coefficients();
  if (theta == 0.0) return 0.0;
  const double r = (theta / (2.0 * kPi)) * (theta / (2.0 * kPi));
  double sum = 0.0;
  double power = 1.0;
  for (int k = 1; k <= kClausenTerms; ++k) {
    power *= r;
    const double term = coeff[static_cast<std::size_t>(k)] * power;
    sum += term;
    if (term < 1e-18 * std::abs(sum)) break;
  }
  return theta - theta * std::log(theta) + theta * sum;
}

}  // namespace

void validate(const QuadratureSpec& spec) {
  if (!(spec.rel_tol >= 1e-14)) {
    throw DomainError("quadrature rel_tol must be >= 1e-14");
  }
  if (!(spec.abs_tol >= 0.0)) {
    throw DomainError("quadrature abs_tol must be >= 0");
  }
  if (spec.max_subdivisions < 1) {
    throw DomainError("quadrature max_subdivisions must be >= 1");
  }
}

QuadratureResult x_gamma(double gamma, double omega, const QuadratureSpec& spec) {
  check_angle(omega);
  auto integrand = [gamma](double phi) {
    if (phi < 1e-8) return 2.0 * gamma;
    return std::sin(gamma * phi) / std::tan(0.5 * phi);
  };
  const auto seeds = oscillation_seeds(gamma, 0.0, omega);
  return integrate_adaptive(integrand, 0.0, omega, spec, seeds);
}

QuadratureResult y_gamma(double gamma, double omega, const QuadratureSpec& spec) {
  check_angle(omega);
  auto integrand = [gamma](double phi) {
    return std::sin(gamma * phi) * std::log(std::sin(0.5 * phi));
  };
  const auto seeds = oscillation_seeds(gamma, omega, kPi);
  return integrate_adaptive(integrand, omega, kPi, spec, seeds);
}

QuadratureResult c_gamma(double gamma, const QuadratureSpec& spec) {
  if (!std::isfinite(gamma)) throw DomainError("c(gamma) needs finite gamma");
  const auto x = x_gamma(gamma, kPi, spec);
  return {0.5 * (1.0 - x.value / kPi), x.error / (2.0 * kPi), x.subdivisions};
}

double x_closed(int n, double omega, Transcription form) {
  check_closed_order(n);
  check_angle(omega);
  switch (n) {
    case 1:
      return omega + std::sin(omega);
    case 2:
      return omega + 2.0 * std::sin(omega) + 0.5 * std::sin(2.0 * omega);
    default: {
      const double base = omega + 2.0 * std::sin(omega) + std::sin(3.0 * omega) / 3.0;
      return form == Transcription::as_printed ? base : base + std::sin(2.0 * omega);
    }
  }
}

double y_closed(int n, double omega, Transcription form) {
  check_closed_order(n);
  check_angle(omega);
  const double s = std::sin(0.5 * omega) * std::sin(0.5 * omega);
  const double c = 1.0 - s;
  switch (n) {
    case 1:
      return -c - s_log_s(s);
    case 2: {
      if (form == Transcription::as_printed) return -c * c - 0.5 * s_log_s(s);
      // sin^2(omega) = 4 s (1 - s)
      return -c * c - 2.0 * c * s_log_s(s);
    }
    default: {
      const double s2 = s * s;
      const double s3 = s2 * s;
      return -(16.0 / 3.0 * s2 - 8.0 * s + 3.0) * s_log_s(s) + 16.0 / 9.0 * s3 - 4.0 * s2 +
             3.0 * s - 7.0 / 9.0;
    }
  }
}

double rho_n(int n) {
  if (n < 1) throw DomainError("rho_n requires n >= 1");
  double alternating = 0.0;
  for (int m = 1; m <= n; ++m) alternating += (m % 2 == 0 ? 1.0 : -1.0) / m;
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return sign - 2.0 * n * kLn2 - 2.0 * n * alternating;
}

double clausen_cl2(double theta) {
  if (!std::isfinite(theta)) throw DomainError("Clausen function needs a finite angle");
  theta = std::remainder(theta, 2.0 * kPi);  // now in [-pi, pi]
  if (theta < 0.0) return -clausen_cl2(-theta);
  if (theta <= 0.5 * kPi) return clausen_series(theta);
  // Duplication formula Cl2(2d) = 2 Cl2(d) - 2 Cl2(pi - d) with d = pi - theta.
  const double d = kPi - theta;
  return clausen_series(d) - 0.5 * clausen_series(2.0 * d);
}

std::vector<SpecialValues> special_value_table(int n_max, const QuadratureSpec& spec) {
  if (n_max < 1) throw DomainError("special_value_table requires n_max >= 1");
  std::vector<SpecialValues> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const auto xp = x_gamma(n, kPi, spec);
    const auto xn = x_gamma(-n, kPi, spec);
    rows.push_back({
        .n = n,
        .x_pi_pos = xp.value,
        .x_pi_neg = xn.value,
        .c_pos = 0.5 * (1.0 - xp.value / kPi),
        .c_neg = 0.5 * (1.0 - xn.value / kPi),
        .rho = rho_n(n),
        .error = std::max(xp.error, xn.error),
    });
  }
  return rows;
}

}  // namespace coulomb

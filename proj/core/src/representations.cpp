#include "coulomb/representations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "coulomb/errors.hpp"
#include "coulomb/special_functions.hpp"

namespace coulomb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Integer detection tolerance for contexts built from integer levels.
constexpr double kIntegerTol = 1e-9;
// Below this distance from pi the series and separated forms switch to their
// analytic limits; the neglected terms are O((pi - w)^2).
constexpr double kPiLimitWindow = 1e-6;
constexpr long kMaxSeriesTerms = 50'000'000;

std::optional<long> near_integer(double gamma) {
  const double r = std::round(gamma);
  if (std::abs(gamma - r) < kIntegerTol) return static_cast<long>(r);
  return std::nullopt;
}

bool is_negative_integer(double gamma) {
  const auto n = near_integer(gamma);
  return n && *n < 0;
}

void check_omega(double omega) {
  if (omega == 0.0) {
    throw SingularityError("T-matrix diverges at omega = 0 (zero momentum transfer)");
  }
  if (!(omega > 0.0 && omega <= kPi)) {
    throw DomainError("Fock angle must lie in (0, pi], got " + std::to_string(omega));
  }
}

void check_not_pole(double gamma) {
  if (is_negative_integer(gamma)) {
    throw SingularityError("gamma = " + std::to_string(gamma) +
                           " is a bound-state pole; use generalized-integral or "
                           "generalized-closed for gamma = -1");
  }
}

double born_bracket(double omega) {
  const double s = std::sin(0.5 * omega);
  return 1.0 / (s * s);
}

// (pi - w) / sin w, finite at w = pi. Near pi the difference d = pi - w is
// used for both numerator and sine so the ratio tends to exactly 1.
double pi_minus_over_sin(double omega) {
  if (omega <= 0.5 * kPi) return (kPi - omega) / std::sin(omega);
  const double d = kPi - omega;
  if (d == 0.0) return 1.0;
  return d / std::sin(d);
}

double sin_accurate(double omega) {
  return omega <= 0.5 * kPi ? std::sin(omega) : std::sin(kPi - omega);
}

double roundoff_floor(double value) { return 4.0 * kEps * std::abs(value); }

// Re-run a quadrature-backed evaluation with tighter tolerances when
// cancellation in the bracket leaves the estimate above rel_tol * |bracket|.
template <class Compute>
BracketValue refine(Compute&& compute, const QuadratureSpec& spec) {
  QuadratureSpec current = spec;
  BracketValue result = compute(current);
  for (int pass = 0; pass < 3; ++pass) {
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(result.value));
    if (result.error <= target || current.rel_tol <= 1e-14) break;
    const double factor = std::clamp(target / result.error, 1e-4, 0.5);
    current.rel_tol = std::max(1e-14, current.rel_tol * factor);
    current.abs_tol *= factor;
    result = compute(current);
  }
  return result;
}

class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// lim_{w->pi} sum_{n>=1} sin(n w)/(n + gamma) / sin w
//   = 1/2 - gamma ln 2 - gamma^2 sum_{n>=1} (-1)^n / (n (n + gamma)).
BracketValue series_ratio_at_pi(double gamma, double rel_tol) {
  // sum (-1)^n/(n(n+g)) = -pi^2/12 - g sum (-1)^n/(n^2 (n+g)); the latter is
  // alternating with decreasing magnitude once n + g > 0.
  NeumaierSum alt;
  const long first_monotone = std::max(1L, static_cast<long>(std::ceil(-gamma)) + 1);
  double bound = 0.0;
  for (long n = 1; n <= kMaxSeriesTerms; ++n) {
    const double dn = static_cast<double>(n);
    const double term = (n % 2 == 0 ? 1.0 : -1.0) / (dn * dn * (dn + gamma));
    alt.add(term);
    if (n >= first_monotone) {
      const double next = dn + 1.0;
      bound = 1.0 / (next * next * (next + gamma));
      if (std::abs(gamma) * gamma * gamma * bound <= 1e-3 * rel_tol) break;
    }
    if (n == kMaxSeriesTerms) {
      throw AccuracyError("series limit at omega = pi did not converge", alt.value(), bound);
    }
  }
  const double weighted = -kPi * kPi / 12.0 - gamma * alt.value();
  const double ratio = 0.5 - gamma * kLn2 - gamma * gamma * weighted;
  return {ratio, std::abs(gamma) * gamma * gamma * bound};
}

}  // namespace

std::string_view to_string(Representation rep) {
  switch (rep) {
    case Representation::series:
      return "series";
    case Representation::integral:
      return "integral";
    case Representation::separated:
      return "separated";
    case Representation::closed:
      return "closed";
    case Representation::generalized_integral:
      return "generalized-integral";
    case Representation::generalized_closed:
      return "generalized-closed";
  }
  return "unknown";
}

std::optional<Representation> parse_representation(std::string_view name) {
  for (Representation rep : all_representations()) {
    if (to_string(rep) == name) return rep;
  }
  return std::nullopt;
}

bool is_closed_form(Representation rep) {
  return rep == Representation::closed || rep == Representation::generalized_closed;
}

const std::vector<Representation>& all_representations() {
  static const std::vector<Representation> reps = {
      Representation::series,    Representation::integral,
      Representation::separated, Representation::closed,
      Representation::generalized_integral, Representation::generalized_closed,
  };
  return reps;
}

bool admissible(Representation rep, double gamma) {
  if (!std::isfinite(gamma)) return false;
  const auto n = near_integer(gamma);
  switch (rep) {
    case Representation::series:
    case Representation::separated:
      return !is_negative_integer(gamma);
    case Representation::integral:
      return gamma > -1.0 && !(n && *n == -1);
    case Representation::closed:
      return n && *n >= 1 && *n <= 3;
    case Representation::generalized_integral:
    case Representation::generalized_closed:
      return n && *n == -1;
  }
  return false;
}

std::vector<Representation> admissible_representations(double gamma) {
  std::vector<Representation> out;
  for (Representation rep : all_representations()) {
    if (admissible(rep, gamma)) out.push_back(rep);
  }
  return out;
}

BracketValue bracket_series(double gamma, double omega, double rel_tol) {
  check_omega(omega);
  check_not_pole(gamma);
  if (!(rel_tol > 0.0)) throw DomainError("series rel_tol must be positive");
  const double born = born_bracket(omega);
  if (gamma == 0.0) return {born, 0.0};

  const double d = kPi - omega;
  if (d < kPiLimitWindow) {
    const auto ratio = series_ratio_at_pi(gamma, rel_tol);
    const double value = born - 4.0 * gamma * ratio.value;
    return {value, 4.0 * std::abs(gamma) * ratio.error + roundoff_floor(value)};
  }

  // sum sin(nw)/(n+g) = (pi-w)/2 - g Cl2(w) + g^2 sum sin(nw)/(n^2 (n+g))
  const double sin_w = sin_accurate(omega);
  const double sin_half = std::sin(0.5 * omega);
  const double g3 = std::abs(gamma) * gamma * gamma;
  const double leading =
      0.5 * pi_minus_over_sin(omega) - gamma * clausen_cl2(omega) / sin_w;

  NeumaierSum tail;
  const long first_monotone = std::max(1L, static_cast<long>(std::ceil(-gamma)) + 1);
  double bound = 0.0;
  double value = 0.0;
  long n = 1;
  for (;; ++n) {
    const double dn = static_cast<double>(n);
    tail.add(std::sin(dn * omega) / (dn * dn * (dn + gamma)));
    if (n % 256 != 0 || n < first_monotone) continue;
    const double next = dn + 1.0;
    // Abel summation: |sum_{m>n} a_m sin(m w)| <= a_{n+1} / sin(w/2).
    bound = 4.0 * g3 / (next * next * (next + gamma) * sin_half * sin_w);
    value = born - 4.0 * gamma * (leading + gamma * gamma * tail.value() / sin_w);
    if (bound <= 0.1 * rel_tol * std::abs(value)) break;
    if (n >= kMaxSeriesTerms) {
      throw AccuracyError("Coulomb series did not converge", value, bound);
    }
  }
  return {value, bound + roundoff_floor(born) + roundoff_floor(value)};
}

BracketValue bracket_integral(double gamma, double omega, const QuadratureSpec& spec) {
  check_omega(omega);
  if (!(gamma > -1.0)) {
    throw DomainError("integral representation needs gamma > -1 (integrand rho^gamma)");
  }
  const double born = born_bracket(omega);
  if (gamma == 0.0) return {born, 0.0};

  const double cos_w = std::cos(omega);
  const double sin_w = sin_accurate(omega);
  auto integrand = [gamma, cos_w, sin_w](double rho) {
    const double shifted = rho - cos_w;
    return std::pow(rho, gamma) / (shifted * shifted + sin_w * sin_w);
  };
  const std::array<double, 2> seeds = {cos_w, 1.0 - sin_w};
  return refine(
      [&](const QuadratureSpec& s) {
        const auto q = integrate_adaptive(integrand, 0.0, 1.0, s, seeds);
        const double value = born - 4.0 * gamma * q.value;
        return BracketValue{value, 4.0 * std::abs(gamma) * q.error + roundoff_floor(born)};
      },
      spec);
}

BracketValue bracket_separated(double gamma, double omega, const QuadratureSpec& spec) {
  check_omega(omega);
  check_not_pole(gamma);
  const double born = born_bracket(omega);
  if (gamma == 0.0) return {born, 0.0};

  const auto n = near_integer(gamma);
  const bool positive_integer = n && *n > 0;
  const double g = positive_integer ? static_cast<double>(*n) : gamma;

  return refine(
      [&](const QuadratureSpec& s) {
        // T3 = K sin(g w): K = rho_n at positive integers, else 2 pi g c(g) cot(g pi).
        double k_coeff = 0.0;
        double k_error = 0.0;
        double x_pi = kPi;
        double x_pi_error = 0.0;
        if (positive_integer) {
          k_coeff = rho_n(static_cast<int>(*n));
        } else {
          const auto xp = x_gamma(g, kPi, s);
          x_pi = xp.value;
          x_pi_error = xp.error;
          const double c = 0.5 * (1.0 - x_pi / kPi);
          const double cot = 1.0 / std::tan(g * kPi);
          k_coeff = 2.0 * kPi * g * c * cot;
          k_error = std::abs(g * cot) * x_pi_error;
        }

        const double d = kPi - omega;
        if (d < kPiLimitWindow) {
          // inner(w) vanishes at pi; inner(pi - d)/sin d -> -inner'(pi).
          const double sin_gpi = std::sin(g * kPi);
          const double cos_gpi = std::cos(g * kPi);
          const double slope = -kPi * g * g * sin_gpi - k_coeff * g * cos_gpi +
                               g * g * sin_gpi * x_pi;
          const double value = born + 2.0 * slope;
          const double error = 2.0 * (std::abs(g * cos_gpi) * k_error +
                                      g * g * std::abs(sin_gpi) * x_pi_error);
          return BracketValue{value, error + roundoff_floor(value)};
        }

        const auto x = x_gamma(g, omega, s);
        const auto y = y_gamma(g, omega, s);
        const double sin_gw = std::sin(g * omega);
        const double cos_gw = std::cos(g * omega);
        const double inner = kPi * g * cos_gw +
                             g * std::sin(2.0 * g * omega) * std::log(std::sin(0.5 * omega)) -
                             k_coeff * sin_gw - g * cos_gw * x.value -
                             2.0 * g * g * sin_gw * y.value;
        const double sin_w = sin_accurate(omega);
        const double value = born - 2.0 * inner / sin_w;
        const double error = 2.0 / sin_w *
                             (std::abs(sin_gw) * k_error + std::abs(g * cos_gw) * x.error +
                              2.0 * g * g * std::abs(sin_gw) * y.error);
        return BracketValue{value, error + roundoff_floor(born) + roundoff_floor(value)};
      },
      spec);
}

double bracket_closed(int n, double omega) {
  check_omega(omega);
  if (n < 1 || n > 3) {
    throw UnsupportedError("closed-form T-matrix exists for gamma = 1, 2, 3 only");
  }
  const double born = born_bracket(omega);
  const double pmos = pi_minus_over_sin(omega);
  const double half = std::sin(0.5 * omega);
  const double log_s2 = 2.0 * std::log(half);
  const double c1 = std::cos(omega);
  const double c2 = std::cos(2.0 * omega);
  switch (n) {
    case 1:
      return born - 2.0 * c1 * pmos - 2.0 * log_s2 - 4.0 * kLn2;
    case 2:
      return born - 4.0 * c2 * pmos - 8.0 * c1 * log_s2 - 16.0 * kLn2 * c1 - 8.0;
    default: {
      const double c3 = std::cos(3.0 * omega);
      return born - 6.0 * c3 * pmos - 6.0 * (2.0 * c2 + 1.0) * log_s2 - 24.0 * kLn2 * c2 -
             24.0 * c1 - 12.0 * kLn2 - 6.0;
    }
  }
}

BracketValue bracket_generalized_integral(double gamma, double omega, const QuadratureSpec& spec) {
  check_omega(omega);
  if (!(gamma > -2.0) || (near_integer(gamma) && *near_integer(gamma) <= -2)) {
    throw DomainError(
        "generalized integral is derived for gamma = -1 only; gamma <= -2 would require "
        "removing further bound states");
  }
  const double born = born_bracket(omega);
  if (gamma == 0.0) return {born, 0.0};

  const double cos_w = std::cos(omega);
  const double sin_w = sin_accurate(omega);
  auto integrand = [gamma, cos_w, sin_w](double rho) {
    const double shifted = rho - cos_w;
    return std::pow(rho, gamma + 1.0) * (rho - 2.0 * cos_w) / (shifted * shifted + sin_w * sin_w);
  };
  const std::array<double, 2> seeds = {cos_w, 1.0 - sin_w};
  return refine(
      [&](const QuadratureSpec& s) {
        const auto q = integrate_adaptive(integrand, 0.0, 1.0, s, seeds);
        const double value = born + 4.0 * gamma * q.value;
        return BracketValue{value, 4.0 * std::abs(gamma) * q.error + roundoff_floor(born)};
      },
      spec);
}

double bracket_generalized_closed(double omega) {
  check_omega(omega);
  return born_bracket(omega) + 2.0 * std::cos(omega) * pi_minus_over_sin(omega) -
         4.0 * std::log(2.0 * std::sin(0.5 * omega));
}

double ground_state_subtraction(double gamma) {
  if (gamma == -1.0) {
    throw SingularityError("1/(1 + gamma) is singular at gamma = -1");
  }
  return 1.0 / (1.0 + gamma);
}

QuadratureResult ground_state_inner_integral(double omega, const QuadratureSpec& spec) {
  check_omega(omega);
  const double cos_w = std::cos(omega);
  const double sin_w = sin_accurate(omega);
  auto integrand = [cos_w, sin_w](double rho) {
    const double shifted = rho - cos_w;
    return (rho - 2.0 * cos_w) / (shifted * shifted + sin_w * sin_w);
  };
  const std::array<double, 2> seeds = {cos_w, 1.0 - sin_w};
  return integrate_adaptive(integrand, 0.0, 1.0, spec, seeds);
}

double ground_state_inner_integral_closed(double omega) {
  check_omega(omega);
  return -0.5 * std::cos(omega) * pi_minus_over_sin(omega) +
         std::log(2.0 * std::sin(0.5 * omega));
}

BracketValue evaluate_bracket(Representation rep, double gamma, double omega,
                              const QuadratureSpec& spec) {
  if (!admissible(rep, gamma)) {
    std::ostringstream msg;
    msg << "representation '" << to_string(rep) << "' is not defined for gamma = " << gamma
        << "; admissible:";
    const auto allowed = admissible_representations(gamma);
    if (allowed.empty()) msg << " none";
    for (Representation a : allowed) msg << ' ' << to_string(a);
    throw UnsupportedError(msg.str());
  }
  switch (rep) {
    case Representation::series:
      return bracket_series(gamma, omega, spec.rel_tol);
    case Representation::integral:
      return bracket_integral(gamma, omega, spec);
    case Representation::separated:
      return bracket_separated(gamma, omega, spec);
    case Representation::closed:
      return {bracket_closed(static_cast<int>(*near_integer(gamma)), omega), 0.0};
    case Representation::generalized_integral:
      return bracket_generalized_integral(-1.0, omega, spec);
    case Representation::generalized_closed:
      return {bracket_generalized_closed(omega), 0.0};
  }
  throw UnsupportedError("unknown representation");
}

TMatrixValue evaluate(const MomentumPair& pair, const BoundStateContext& ctx, Representation rep,
                      const QuadratureSpec& spec) {
  validate(pair);
  validate(spec);
  const FockCoordinates fock = fock_coordinates(pair, ctx.kappa);
  if (fock.sin2_half < 1e-300) {
    throw SingularityError("T-matrix diverges in the forward direction (k = k', cos_theta = 1)");
  }
  const BracketValue bracket = evaluate_bracket(rep, ctx.gamma, fock.omega, spec);
  const double pref = prefactor(pair, ctx.kappa, ctx.q1q2);
  double error = bracket.error;
  if (!is_closed_form(rep)) {
    error = std::max(error, kEps * std::abs(bracket.value));
  }
  return {
      .bracket = bracket.value,
      .prefactor = pref,
      .value = pref * bracket.value,
      .representation = rep,
      .error_estimate = error,
      .fock = fock,
  };
}

}  // namespace coulomb

#include "coulomb/partial_waves.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "coulomb/errors.hpp"
#include "coulomb/legendre.hpp"

namespace coulomb {

double legendre_argument(double omega, double xi, double eta) {
  const double s = std::sin(0.5 * omega);
  return std::clamp((xi - s * s) / eta, -1.0, 1.0);
}

PartialWaveValue project_bracket(int l, double k, double kprime, double kappa, double q1q2,
                                 const BracketFunction& bracket, const QuadratureSpec& spec) {
  if (l < 0) throw DomainError("partial wave l must be non-negative");
  if (l > kMaxPartialWave) {
    throw UnsupportedError("partial waves above l = " + std::to_string(kMaxPartialWave) +
                           " are not supported");
  }
  const MomentumPair pair{k, kprime, 0.0};
  validate(pair);
  validate(spec);

  const double eta = fock_eta(pair, kappa);
  const double xi = fock_xi(pair, kappa);
  const OmegaBounds bounds = omega_bounds(pair, kappa);
  if (!(bounds.omega_0 > 0.0)) {
    throw SingularityError(
        "partial-wave projection diverges at k = k': the Born term integrates to "
        "Q_l(1), which is logarithmically infinite");
  }

  // Seed panels at the images of the zeros of P_l, where the integrand changes sign.
  std::vector<double> seeds;
  for (double zero : legendre_zeros_approx(l)) {
    const double s2 = xi - eta * zero;
    if (s2 > 0.0 && s2 < 1.0) seeds.push_back(2.0 * std::asin(std::sqrt(s2)));
  }

  double worst_bracket_error = 0.0;
  auto integrand = [&](double omega) {
    const BracketValue b = bracket(omega);
    const double weight = std::sin(omega) * legendre_p(l, legendre_argument(omega, xi, eta));
    worst_bracket_error = std::max(worst_bracket_error, std::abs(weight) * b.error);
    return weight * b.value;
  };
  const auto q = integrate_adaptive(integrand, bounds.omega_0, bounds.omega_pi, spec, seeds);

  const double scale = prefactor(pair, kappa, q1q2) / (4.0 * eta);
  const double propagated = worst_bracket_error * (bounds.omega_pi - bounds.omega_0);
  return {scale * q.value, std::abs(scale) * (q.error + propagated)};
}

PartialWaveValue project_partial_wave(const PartialWaveRequest& req) {
  if (!admissible(req.kind, req.ctx.gamma)) {
    // evaluate_bracket raises the descriptive error.
    evaluate_bracket(req.kind, req.ctx.gamma, 1.0, req.spec);
  }
  const double gamma = req.ctx.gamma;
  const Representation kind = req.kind;
  const QuadratureSpec spec = req.spec;
  BracketFunction bracket = [gamma, kind, spec](double omega) {
    return evaluate_bracket(kind, gamma, omega, spec);
  };
  return project_bracket(req.l, req.k, req.kprime, req.ctx.kappa, req.ctx.q1q2, bracket,
                         req.spec);
}

double resum_partial_waves(std::span<const double> t_l, double cos_theta) {
  if (t_l.empty()) return 0.0;
  const auto p = legendre_p_all(static_cast<int>(t_l.size()) - 1, cos_theta);
  double sum = 0.0;
  for (std::size_t l = 0; l < t_l.size(); ++l) {
    sum += (2.0 * static_cast<double>(l) + 1.0) * p[l] * t_l[l];
  }
  return sum;
}

}  // namespace coulomb

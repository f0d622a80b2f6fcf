#include "coulomb/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "coulomb/errors.hpp"

namespace coulomb {

namespace {

double denominator(const MomentumPair& pair, double kappa) {
  const double kappa2 = kappa * kappa;
  return (pair.k * pair.k + kappa2) * (pair.kprime * pair.kprime + kappa2);
}

void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("wave number kappa must be positive and finite, got " +
                      std::to_string(kappa));
  }
}

}  // namespace

void validate(const PhysicalSystem& system) {
  if (!(system.mu > 0.0) || !std::isfinite(system.mu)) {
    throw DomainError("reduced mass must be positive and finite");
  }
  if (system.q1q2 == 0.0 || !std::isfinite(system.q1q2)) {
    throw DomainError("charge product must be non-zero and finite");
  }
}

void validate(const MomentumPair& pair) {
  if (!(pair.k > 0.0) || !(pair.kprime > 0.0) || !std::isfinite(pair.k) ||
      !std::isfinite(pair.kprime)) {
    throw DomainError("momenta must be positive and finite");
  }
  if (!(std::abs(pair.cos_theta) <= 1.0)) {
    throw DomainError("cos_theta must lie in [-1, 1]");
  }
}

BoundStateContext make_context(const PhysicalSystem& system, int n) {
  validate(system);
  if (n < 1) {
    throw DomainError("bound-state level n must be >= 1, got " + std::to_string(n));
  }
  const double kappa = system.mu * std::abs(system.q1q2) / n;
  const double gamma = system.q1q2 > 0.0 ? static_cast<double>(n) : -static_cast<double>(n);
  return BoundStateContext{
      .n = n,
      .gamma = gamma,
      .kappa = kappa,
      .energy = -kappa * kappa / (2.0 * system.mu),
      .mu = system.mu,
      .q1q2 = system.q1q2,
  };
}

BoundStateContext make_direct_context(double gamma, double kappa, double mu) {
  check_kappa(kappa);
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("reduced mass must be positive and finite");
  }
  if (!std::isfinite(gamma)) {
    throw DomainError("Coulomb parameter must be finite");
  }
  return BoundStateContext{
      .n = std::nullopt,
      .gamma = gamma,
      .kappa = kappa,
      .energy = -kappa * kappa / (2.0 * mu),
      .mu = mu,
      .q1q2 = gamma * kappa / mu,
  };
}

double momentum_transfer_sq(const MomentumPair& pair) {
  const double diff = pair.k - pair.kprime;
  return diff * diff + 2.0 * pair.k * pair.kprime * (1.0 - pair.cos_theta);
}

double fock_sin2_half(const MomentumPair& pair, double kappa) {
  validate(pair);
  check_kappa(kappa);
  return kappa * kappa * momentum_transfer_sq(pair) / denominator(pair, kappa);
}

// omega/2 = atan2(sin, cos) with both legs written as sums of squares, so the
// angle is well conditioned at both ends of [0, pi].
double fock_angle(const MomentumPair& pair, double kappa) {
  validate(pair);
  check_kappa(kappa);
  const double kappa2 = kappa * kappa;
  const double kk = pair.k * pair.kprime;
  const double sin_leg = kappa * std::sqrt(momentum_transfer_sq(pair));
  const double cos_leg =
      std::sqrt((kk - kappa2) * (kk - kappa2) + 2.0 * kappa2 * kk * (1.0 + pair.cos_theta));
  return 2.0 * std::atan2(sin_leg, cos_leg);
}

double fock_eta(const MomentumPair& pair, double kappa) {
  validate(pair);
  check_kappa(kappa);
  return 2.0 * kappa * kappa * pair.k * pair.kprime / denominator(pair, kappa);
}

double fock_xi(const MomentumPair& pair, double kappa) {
  validate(pair);
  check_kappa(kappa);
  return kappa * kappa * (pair.k * pair.k + pair.kprime * pair.kprime) / denominator(pair, kappa);
}

OmegaBounds omega_bounds(const MomentumPair& pair, double kappa) {
  MomentumPair forward = pair;
  forward.cos_theta = 1.0;
  MomentumPair backward = pair;
  backward.cos_theta = -1.0;
  return {fock_angle(forward, kappa), fock_angle(backward, kappa)};
}

FockCoordinates fock_coordinates(const MomentumPair& pair, double kappa) {
  return {
      .omega = fock_angle(pair, kappa),
      .eta = fock_eta(pair, kappa),
      .xi = fock_xi(pair, kappa),
      .sin2_half = fock_sin2_half(pair, kappa),
  };
}

double born_term(const MomentumPair& pair, double q1q2) {
  validate(pair);
  const double transfer = momentum_transfer_sq(pair);
  if (!(transfer > 0.0)) {
    throw SingularityError("Born term diverges at zero momentum transfer");
  }
  return 4.0 * std::numbers::pi * q1q2 / transfer;
}

double prefactor(const MomentumPair& pair, double kappa, double q1q2) {
  return 2.0 * std::numbers::pi * q1q2 * fock_eta(pair, kappa) / (pair.k * pair.kprime);
}

}  // namespace coulomb

#pragma once

#include <optional>

namespace coulomb {

/// Two-body system in units with hbar = 1.
struct PhysicalSystem {
  double mu;    ///< reduced mass, > 0
  double q1q2;  ///< signed charge product, != 0 (> 0 repulsive, < 0 attractive)
};

/// Fixed negative energy at which the T-matrix is evaluated.
///
/// Built either from a bound-state level of a PhysicalSystem (make_context) or
/// directly from a Coulomb parameter and wave number (make_direct_context).
struct BoundStateContext {
  std::optional<int> n;  ///< level index when built from a PhysicalSystem
  double gamma;          ///< Coulomb parameter mu*q1q2/kappa
  double kappa;          ///< wave number, E = -kappa^2/(2 mu)
  double energy;
  double mu;
  double q1q2;
};

struct MomentumPair {
  double k;
  double kprime;
  double cos_theta;
};

/// Stereographic (Fock) variables of a momentum pair.
struct FockCoordinates {
  double omega;          ///< angle on the unit 4-sphere, in [0, pi]
  double eta;            ///< 2 kappa^2 k k' / D, in (0, 1/2]
  double xi;             ///< kappa^2 (k^2 + k'^2) / D, in (0, 1)
  double sin2_half;      ///< sin^2(omega/2) computed directly from momenta
};

struct OmegaBounds {
  double omega_0;   ///< Fock angle at cos(theta) = +1
  double omega_pi;  ///< Fock angle at cos(theta) = -1
};

/// Throws DomainError unless mu > 0 and q1q2 != 0.
void validate(const PhysicalSystem& system);

/// Throws DomainError for non-positive momenta or |cos_theta| > 1.
void validate(const MomentumPair& pair);

BoundStateContext make_context(const PhysicalSystem& system, int n);

/// Context in dimensionless terms: q1q2 is inferred as gamma*kappa/mu.
BoundStateContext make_direct_context(double gamma, double kappa, double mu = 1.0);

/// |k - k'|^2 evaluated without cancellation near the forward direction.
double momentum_transfer_sq(const MomentumPair& pair);

/// sin^2(omega/2) = kappa^2 |k-k'|^2 / ((k^2+kappa^2)(k'^2+kappa^2)).
double fock_sin2_half(const MomentumPair& pair, double kappa);
double fock_angle(const MomentumPair& pair, double kappa);
double fock_eta(const MomentumPair& pair, double kappa);
double fock_xi(const MomentumPair& pair, double kappa);
OmegaBounds omega_bounds(const MomentumPair& pair, double kappa);
FockCoordinates fock_coordinates(const MomentumPair& pair, double kappa);

/// Coulomb potential matrix element 4 pi q1q2 / |k - k'|^2.
double born_term(const MomentumPair& pair, double q1q2);

/// Common factor 2 pi q1q2 eta / (k k') multiplying every T-matrix bracket.
double prefactor(const MomentumPair& pair, double kappa, double q1q2);

}  // namespace coulomb

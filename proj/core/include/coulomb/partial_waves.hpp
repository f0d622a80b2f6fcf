#pragma once

#include <functional>
#include <span>

#include "coulomb/kinematics.hpp"
#include "coulomb/quadrature.hpp"
#include "coulomb/representations.hpp"

namespace coulomb {

inline constexpr int kMaxPartialWave = 64;

struct PartialWaveRequest {
  int l = 0;
  double k = 1.0;
  double kprime = 1.0;
  BoundStateContext ctx{};
  Representation kind = Representation::series;
  QuadratureSpec spec{};
};

struct PartialWaveValue {
  double value = 0.0;
  double error = 0.0;
};

/// Bracket as a function of the Fock angle.
using BracketFunction = std::function<BracketValue(double omega)>;

/// cos(theta) expressed through the Fock angle: (2 xi - 1 + cos w) / (2 eta),
/// evaluated as (xi - sin^2(w/2)) / eta and clamped to [-1, 1].
double legendre_argument(double omega, double xi, double eta);

/// t_l(k, k') = 1/(4 eta) int_{w0}^{w_pi} dw sin(w) P_l(cos theta(w)) t(w).
///
/// Normalised so that t(k, k', cos theta) = sum_l (2l + 1) P_l(cos theta) t_l.
/// Throws SingularityError for k = k' (the Born part diverges
/// logarithmically at w0 = 0) and UnsupportedError for l > 64.
PartialWaveValue project_partial_wave(const PartialWaveRequest& req);

/// Same projection for an arbitrary bracket; the matrix element is
/// prefactor(k, k', kappa, q1q2) * bracket(w).
PartialWaveValue project_bracket(int l, double k, double kprime, double kappa, double q1q2,
                                 const BracketFunction& bracket, const QuadratureSpec& spec = {});

/// sum_l (2l + 1) P_l(cos_theta) t_l for l = 0 .. t_l.size() - 1.
double resum_partial_waves(std::span<const double> t_l, double cos_theta);

}  // namespace coulomb

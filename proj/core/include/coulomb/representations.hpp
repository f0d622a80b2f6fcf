#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coulomb/kinematics.hpp"
#include "coulomb/quadrature.hpp"

namespace coulomb {

/// Evaluation route for the T-matrix bracket.
///
/// The full matrix element is prefactor(k, k', kappa, q1q2) times a
/// dimensionless bracket that depends only on (gamma, omega):
///
///   series              1/sin^2(w/2) - (4 gamma / sin w) sum_{n>=1} sin(n w)/(n + gamma)
///   integral            1/sin^2(w/2) - 4 gamma int_0^1 rho^gamma / (rho^2 - 2 rho cos w + 1)
///   separated           Born and bound-state singularities split out via x_gamma, y_gamma, c(gamma)
///   closed              elementary forms at gamma = 1, 2, 3
///   generalized_*       ground-state pole removed, gamma = -1
enum class Representation {
  series,
  integral,
  separated,
  closed,
  generalized_integral,
  generalized_closed,
};

std::string_view to_string(Representation rep);
std::optional<Representation> parse_representation(std::string_view name);
bool is_closed_form(Representation rep);

/// Every representation in declaration order.
const std::vector<Representation>& all_representations();

/// Whether `rep` is defined for Coulomb parameter `gamma`.
bool admissible(Representation rep, double gamma);
std::vector<Representation> admissible_representations(double gamma);

struct BracketValue {
  double value = 0.0;
  double error = 0.0;  ///< absolute error estimate
};

/// Accelerated sum: the 1/n part is summed in closed form ((pi - w)/2), the
/// 1/n^2 part through the Clausen function, and the remaining n^-3 tail is
/// truncated once its Abel bound drops below rel_tol.
/// Throws SingularityError at gamma = -n.
BracketValue bracket_series(double gamma, double omega, double rel_tol = 1e-12);

/// Throws DomainError for gamma <= -1 (integral diverges at rho = 0).
BracketValue bracket_integral(double gamma, double omega, const QuadratureSpec& spec = {});

/// For positive integer gamma the indeterminate cot(gamma pi) term takes its
/// limit rho_n. Throws SingularityError at negative integer gamma.
BracketValue bracket_separated(double gamma, double omega, const QuadratureSpec& spec = {});

/// Elementary closed form for gamma = n in {1, 2, 3}.
double bracket_closed(int n, double omega);

/// Ground-state-subtracted bracket as a rho-integral; needs gamma > -2.
/// Intended for gamma = -1; gamma <= -2 is rejected.
BracketValue bracket_generalized_integral(double gamma, double omega,
                                          const QuadratureSpec& spec = {});

/// Closed form of the generalized bracket at gamma = -1.
double bracket_generalized_closed(double omega);

/// 1/(1 + gamma) = int_0^1 rho^gamma, the n = 1 series term removed from
/// the generalized T-matrix. Throws SingularityError at gamma = -1.
double ground_state_subtraction(double gamma);

/// int_0^1 (rho - 2 cos w) / (rho^2 - 2 rho cos w + 1) by quadrature.
QuadratureResult ground_state_inner_integral(double omega, const QuadratureSpec& spec = {});
/// The same integral in closed form: (w/2 - pi/2) cot w + ln|2 sin(w/2)|.
double ground_state_inner_integral_closed(double omega);

/// Dispatches to the bracket_* routine for `rep`; UnsupportedError if
/// `rep` is not admissible for `gamma`.
BracketValue evaluate_bracket(Representation rep, double gamma, double omega,
                              const QuadratureSpec& spec = {});

struct TMatrixValue {
  double bracket = 0.0;
  double prefactor = 0.0;
  double value = 0.0;  ///< prefactor * bracket
  Representation representation = Representation::series;
  double error_estimate = 0.0;  ///< absolute, on the bracket
  FockCoordinates fock{};
};

/// Full off-shell matrix element <k|t(E)|k'> at the context energy.
TMatrixValue evaluate(const MomentumPair& pair, const BoundStateContext& ctx, Representation rep,
                      const QuadratureSpec& spec = {});

}  // namespace coulomb

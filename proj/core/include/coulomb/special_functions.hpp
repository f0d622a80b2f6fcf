#pragma once

#include <vector>

#include "coulomb/quadrature.hpp"

namespace coulomb {

/// x_gamma(omega) = integral_0^omega sin(gamma phi) cot(phi/2) dphi, 0 <= omega <= pi.
/// The integrand is continued by its limit 2*gamma at phi = 0.
QuadratureResult x_gamma(double gamma, double omega, const QuadratureSpec& spec = {});

/// y_gamma(omega) = integral_omega^pi sin(gamma phi) ln(sin(phi/2)) dphi, 0 <= omega <= pi.
QuadratureResult y_gamma(double gamma, double omega, const QuadratureSpec& spec = {});

/// c(gamma) = (1 - x_gamma(pi)/pi) / 2.
QuadratureResult c_gamma(double gamma, const QuadratureSpec& spec = {});

/// Selects which transcription of the integer-gamma closed forms to use.
///
/// The published x_3 omits a sin(2 omega) term and the published y_2 has
/// sin^2(omega/2) where sin^2(omega) belongs; `as_printed` reproduces those
/// formulas verbatim for auditing, `corrected` agrees with the defining
/// integrals.
enum class Transcription { corrected, as_printed };

/// Closed forms of x_n(omega) for n = 1, 2, 3. Throws UnsupportedError otherwise.
double x_closed(int n, double omega, Transcription form = Transcription::corrected);

/// Closed forms of y_n(omega) for n = 1, 2, 3. Throws UnsupportedError otherwise.
double y_closed(int n, double omega, Transcription form = Transcription::corrected);

/// rho_n = (-1)^n - 2n ln 2 - 2n sum_{m=1}^n (-1)^m / m, the limit of
/// 2 pi gamma c(gamma) cot(gamma pi) as gamma -> n.
double rho_n(int n);

/// Clausen function Cl_2(theta) = sum_{n>=1} sin(n theta) / n^2.
double clausen_cl2(double theta);

struct SpecialValues {
  int n;
  double x_pi_pos;  ///< x_n(pi), expected pi
  double x_pi_neg;  ///< x_{-n}(pi), expected -pi
  double c_pos;     ///< c(n), expected 0
  double c_neg;     ///< c(-n), expected 1
  double rho;       ///< rho_n
  double error;     ///< largest quadrature error estimate among the entries
};

/// One row per n = 1..n_max, every entry computed by quadrature.
std::vector<SpecialValues> special_value_table(int n_max, const QuadratureSpec& spec = {});

}  // namespace coulomb

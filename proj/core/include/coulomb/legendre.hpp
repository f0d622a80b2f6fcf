#pragma once

#include <vector>

namespace coulomb {

/// Legendre polynomial P_l(x) by upward three-term recurrence.
/// Arguments within 1e-12 outside [-1, 1] are clamped; beyond that DomainError.
double legendre_p(int l, double x);

/// P_0(x) .. P_lmax(x) in one recurrence sweep.
std::vector<double> legendre_p_all(int lmax, double x);

/// Approximate zeros of P_l in descending order (Tricomi's asymptotic
/// formula); accurate to a few 1e-3, intended for seeding quadrature panels.
std::vector<double> legendre_zeros_approx(int l);

}  // namespace coulomb

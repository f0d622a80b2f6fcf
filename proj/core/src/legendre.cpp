#include "coulomb/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "coulomb/errors.hpp"

namespace coulomb {

namespace {

double clamp_argument(double x) {
  if (!(std::abs(x) <= 1.0 + 1e-12)) {
    throw DomainError("Legendre argument outside [-1, 1]: " + std::to_string(x));
  }
  return std::clamp(x, -1.0, 1.0);
}

void check_degree(int l) {
  if (l < 0) throw DomainError("Legendre degree must be non-negative");
}

}  // namespace

double legendre_p(int l, double x) {
  check_degree(l);
  x = clamp_argument(x);
  if (l == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int j = 1; j < l; ++j) {
    const double next = ((2 * j + 1) * x * cur - j * prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> legendre_p_all(int lmax, double x) {
  check_degree(lmax);
  x = clamp_argument(x);
  std::vector<double> p(static_cast<std::size_t>(lmax) + 1);
  p[0] = 1.0;
  if (lmax >= 1) p[1] = x;
  for (int j = 1; j < lmax; ++j) {
    const auto i = static_cast<std::size_t>(j);
    p[i + 1] = ((2 * j + 1) * x * p[i] - j * p[i - 1]) / (j + 1);
  }
  return p;
}

std::vector<double> legendre_zeros_approx(int l) {
  check_degree(l);
  std::vector<double> zeros;
  zeros.reserve(static_cast<std::size_t>(l));
  const double n = l;
  const double correction = 1.0 - (1.0 - 1.0 / n) / (8.0 * n * n);
  for (int j = 1; j <= l; ++j) {
    const double theta = std::numbers::pi * (j - 0.25) / (n + 0.5);
    zeros.push_back(correction * std::cos(theta));
  }
  return zeros;
}

}  // namespace coulomb

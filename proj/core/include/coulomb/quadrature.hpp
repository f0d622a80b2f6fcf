#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "coulomb/errors.hpp"

namespace coulomb {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
};

/// Throws DomainError if rel_tol < 1e-14, abs_tol < 0 or max_subdivisions < 1.
void validate(const QuadratureSpec& spec);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
// Abscissae in descending order; odd entries are the Gauss nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

inline void require_finite(double y, double x) {
  if (!std::isfinite(y)) {
    throw DomainError("integrand is not finite at x = " + std::to_string(x));
  }
}

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);
  require_finite(f_center, center);

  double gauss = f_center * kWg[3];
  double kronrod = f_center * kWgk[7];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const double lo = f(center - dx);
    const double hi = f(center + dx);
    require_finite(lo, center - dx);
    require_finite(hi, center + dx);
    f1[static_cast<std::size_t>(j)] = lo;
    f2[static_cast<std::size_t>(j)] = hi;
    const double w = kWgk[static_cast<std::size_t>(j)];
    kronrod += w * (lo + hi);
    abs_sum += w * (std::abs(lo) + std::abs(hi));
    if (j % 2 == 1) {
      gauss += kWg[static_cast<std::size_t>(j / 2)] * (lo + hi);
    }
  }

  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(f_center - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  const double abs_half = std::abs(half);
  const double result = kronrod * half;
  const double resabs = abs_sum * abs_half;
  const double resasc = asc * abs_half;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {a, b, result, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// The rule never samples the endpoints, so integrable endpoint singularities
/// (log, inverse power) are resolved by repeated bisection. Interior points in
/// `breakpoints` seed the initial panel split; points outside (a, b) are
/// ignored. Converged when the summed panel error is at most
/// max(abs_tol, rel_tol*|value|); otherwise throws AccuracyError once
/// spec.max_subdivisions bisections have been spent.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec = {},
                                    std::span<const double> breakpoints = {}) {
  validate(spec);
  if (!(a <= b)) {
    throw DomainError("integrate_adaptive requires a <= b");
  }
  if (a == b) {
    return {};
  }

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto by_error = [](const detail::Panel& x, const detail::Panel& y) { return x.error < y.error; };
  std::vector<detail::Panel> heap;
  heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + cuts.size() + 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    heap.push_back(detail::gauss_kronrod_15(f, cuts[i], cuts[i + 1]));
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto totals = [&heap] {
    double value = 0.0;
    double error = 0.0;
    for (const auto& p : heap) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  int subdivisions = 0;
  while (true) {
    const auto [value, error] = totals();
    if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
      return {value, error, subdivisions};
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const detail::Panel worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (subdivisions >= spec.max_subdivisions || !(mid > worst.a && mid < worst.b)) {
      throw AccuracyError("adaptive quadrature did not reach the requested tolerance", value,
                          error);
    }
    heap.back() = detail::gauss_kronrod_15(f, worst.a, mid);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(detail::gauss_kronrod_15(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), by_error);
    ++subdivisions;
  }
}

}  // namespace coulomb

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "coulomb/errors.hpp"
#include "coulomb/partial_waves.hpp"
#include "doctest.h"

using namespace coulomb;
using std::numbers::pi;

namespace {

BracketValue born_bracket(double w) {
  const double s = std::sin(0.5 * w);
  return {1.0 / (s * s), 0.0};
}

}  // namespace

TEST_CASE("Legendre argument maps the omega bounds to +-1") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> log_scale(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const MomentumPair pair{std::pow(10.0, log_scale(rng)), std::pow(10.0, log_scale(rng)), 0.0};
    const double kappa = std::pow(10.0, log_scale(rng));
    const double eta = fock_eta(pair, kappa);
    const double xi = fock_xi(pair, kappa);
    const auto bounds = omega_bounds(pair, kappa);
    const double s0 = std::sin(0.5 * bounds.omega_0);
    const double spi = std::sin(0.5 * bounds.omega_pi);
    CHECK(std::abs((xi - s0 * s0) / eta - 1.0) <= 1e-12);
    CHECK(std::abs((xi - spi * spi) / eta + 1.0) <= 1e-12);
    CHECK(legendre_argument(bounds.omega_0, xi, eta) <= 1.0);
  }
}

TEST_CASE("Born partial waves match Legendre Q_l") {
  // 2 pi q Q_l(z) / (k k'), z = (k^2 + k'^2)/(2 k k'), from mpmath legenq.
  struct Row {
    double k, kp;
    double t[5];
  };
  const Row rows[] = {
      {2.0, 1.0, {3.4513922952232026614, 1.1726477154392100883, 0.4730183188369175849,
                  0.20368968728410490966, 0.0908074518062913012}},
      {1.0, 0.5, {13.805569180892810646, 4.6905908617568403533, 1.8920732753476703396,
                  0.81475874913641963863, 0.3632298072251652048}},
      {1.3, 0.9, {9.1549129620469263924, 4.4106460644265568492, 2.4908865709421727801,
                  1.4949086261055375636, 0.92680312273855282556}},
  };
  for (const auto& row : rows) {
    for (int l = 0; l < 5; ++l) {
      // kappa is arbitrary for the Born term
      const auto t = project_bracket(l, row.k, row.kp, 0.8, 1.0, born_bracket);
      CHECK(t.value == doctest::Approx(row.t[l]).epsilon(1e-9));
    }
  }
}

TEST_CASE("Born resummation recovers the 3D potential") {
  const double k = 2.0;
  const double kp = 1.0;
  std::vector<double> t_l;
  for (int l = 0; l <= 40; ++l) {
    t_l.push_back(project_bracket(l, k, kp, 1.0, 1.0, born_bracket).value);
  }
  const double resummed = resum_partial_waves(t_l, 0.0);
  CHECK(resummed == doctest::Approx(born_term({k, kp, 0.0}, 1.0)).epsilon(1e-5));
  // also away from 90 degrees
  CHECK(resum_partial_waves(t_l, -0.6) == doctest::Approx(born_term({k, kp, -0.6}, 1.0)).epsilon(1e-5));
}

TEST_CASE("full partial waves at gamma = 1") {
  // mpmath: (1/2) int_{-1}^{1} P_l(x) t(x) dx with the closed-form matrix element.
  const double expected[] = {1.2896862560177327808, 0.58730988450421854712, 0.2699286816081561697};
  const auto ctx = make_context({1.0, 1.0}, 1);
  for (int l = 0; l < 3; ++l) {
    for (Representation rep : {Representation::closed, Representation::series}) {
      const auto t = project_partial_wave({l, 2.0, 1.0, ctx, rep, {}});
      CHECK(t.value == doctest::Approx(expected[l]).epsilon(1e-8));
    }
  }
}

TEST_CASE("partial-wave symmetry and errors") {
  const auto ctx = make_context({1.0, 1.0}, 2);
  const auto a = project_partial_wave({2, 1.4, 0.3, ctx, Representation::closed, {}});
  const auto b = project_partial_wave({2, 0.3, 1.4, ctx, Representation::closed, {}});
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));

  CHECK_THROWS_AS(project_partial_wave({0, 1.0, 1.0, ctx, Representation::closed, {}}),
                  SingularityError);
  CHECK_THROWS_AS(project_partial_wave({65, 1.0, 2.0, ctx, Representation::closed, {}}),
                  UnsupportedError);
  CHECK_THROWS_AS(project_partial_wave({1, 1.0, 2.0, ctx, Representation::generalized_closed, {}}),
                  UnsupportedError);
  CHECK_THROWS_AS(project_partial_wave({-1, 1.0, 2.0, ctx, Representation::closed, {}}),
                  DomainError);
}

TEST_CASE("near-diagonal projection stays finite") {
  const auto ctx = make_context({1.0, 1.0}, 1);
  const auto t = project_partial_wave({0, 1.0, 1.0 + 1e-6, ctx, Representation::closed, {}});
  CHECK(std::isfinite(t.value));
  CHECK(t.value > 0.0);
}

#include <cmath>
#include <numbers>

#include "coulomb/errors.hpp"
#include "coulomb/special_functions.hpp"
#include "doctest.h"

using namespace coulomb;
using std::numbers::ln2;
using std::numbers::pi;

// Reference values from tests/oracles/generate_oracles.py (mpmath, 30 digits).

TEST_CASE("x_gamma") {
  for (double w : {0.3, 1.2, 2.9}) {
    CHECK(x_gamma(1.0, w).value == doctest::Approx(w + std::sin(w)).epsilon(1e-12));
  }
  CHECK(x_gamma(2.0, 1.0).value ==
        doctest::Approx(1.0 + 2.0 * std::sin(1.0) + 0.5 * std::sin(2.0)).epsilon(1e-12));
  CHECK(x_gamma(7.3, 0.0).value == 0.0);
  CHECK(x_gamma(0.5, 1.0).value == doctest::Approx(0.95885107720840600055).epsilon(1e-12));
  CHECK(x_gamma(3.0, 1.0).value == doctest::Approx(3.6392793991280971161).epsilon(1e-12));
  CHECK_THROWS_AS(x_gamma(1.0, 3.5), DomainError);
  CHECK_THROWS_AS(x_gamma(1.0, -0.1), DomainError);
}

TEST_CASE("y_gamma") {
  CHECK(y_gamma(2.7, pi).value == 0.0);
  CHECK(y_gamma(1.0, pi / 2).value ==
        doctest::Approx(-0.5 - 0.5 * std::log(0.5)).epsilon(1e-12));
  CHECK(y_gamma(0.5, 1.0).value == doctest::Approx(-0.3152005229890652824).epsilon(1e-12));
  CHECK(y_gamma(2.0, 2.0).value == doctest::Approx(0.057491412859045137408).epsilon(1e-11));
  CHECK(y_gamma(3.0, 0.7).value == doctest::Approx(0.059439902942228213805).epsilon(1e-11));
  // log singularity at the lower endpoint
  CHECK(std::isfinite(y_gamma(1.0, 0.0).value));
  CHECK(y_gamma(1.0, 0.0).value == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("c_gamma") {
  CHECK(std::abs(c_gamma(1.0).value) < 1e-10);
  CHECK(c_gamma(-1.0).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c_gamma(0.5).value == doctest::Approx(0.18169011381620932846).epsilon(1e-11));
}

TEST_CASE("integer special values") {
  const auto table = special_value_table(6);
  REQUIRE(table.size() == 6);
  for (const auto& row : table) {
    CAPTURE(row.n);
    CHECK(std::abs(row.x_pi_pos - pi) < 1e-9);
    CHECK(std::abs(row.x_pi_neg + pi) < 1e-9);
    CHECK(std::abs(row.c_pos) < 1e-9);
    CHECK(std::abs(row.c_neg - 1.0) < 1e-9);
  }
}

TEST_CASE("rho_n constants") {
  CHECK(std::abs(rho_n(1) - (1.0 - 2.0 * ln2)) <= 1e-14);
  CHECK(std::abs(rho_n(2) - (3.0 - 4.0 * ln2)) <= 1e-14);
  CHECK(std::abs(rho_n(3) - (4.0 - 6.0 * ln2)) <= 1e-14);
  CHECK_THROWS_AS(rho_n(0), DomainError);
}

TEST_CASE("rho_n is the limit of 2 pi gamma c(gamma) cot(gamma pi)") {
  // Symmetric difference around the removable singularity.
  for (int n = 1; n <= 3; ++n) {
    const double h = 1e-4;
    auto f = [](double g) { return 2.0 * pi * g * c_gamma(g, {1e-13, 1e-15}).value / std::tan(g * pi); };
    const double limit = 0.5 * (f(n + h) + f(n - h));
    CHECK(limit == doctest::Approx(rho_n(n)).epsilon(1e-6));
  }
}

TEST_CASE("closed forms agree with the defining integrals") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 9; ++k) {
      const double w = 0.1 * k * pi;
      CAPTURE(n);
      CAPTURE(w);
      CHECK(std::abs(x_closed(n, w) - x_gamma(n, w).value) <= 1e-10);
      CHECK(std::abs(y_closed(n, w) - y_gamma(n, w).value) <= 1e-10);
    }
  }
  for (int i = 0; i < 50; ++i) {
    const double w = 0.05 + (pi - 0.05) * i / 49.0;
    CHECK(std::abs(x_closed(3, w) - x_gamma(3.0, w).value) <= 1e-10);
  }
  CHECK(x_closed(1, pi) == doctest::Approx(pi));
  CHECK(std::abs(y_closed(3, pi)) < 1e-15);
  CHECK(y_closed(1, pi / 2) == doctest::Approx(-0.5 - 0.5 * std::log(0.5)));
  CHECK_THROWS_AS(x_closed(4, 1.0), UnsupportedError);
  CHECK_THROWS_AS(y_closed(0, 1.0), UnsupportedError);
}

TEST_CASE("published transcriptions of x_3 and y_2 disagree with the integrals") {
  // x_3 is missing sin(2w); y_2 has sin^2(w/2) in place of sin^2(w).
  const double w = 1.1;
  const double x3 = x_gamma(3.0, w).value;
  CHECK(std::abs(x_closed(3, w, Transcription::as_printed) - x3) > 0.5);
  CHECK(std::abs(x_closed(3, w, Transcription::as_printed) + std::sin(2.0 * w) - x3) < 1e-12);

  const double y2 = y_gamma(2.0, 2.0).value;
  CHECK(std::abs(y_closed(2, 2.0, Transcription::as_printed) - y2) > 0.01);
  CHECK(y_closed(2, 2.0) == doctest::Approx(0.057491412859045137408).epsilon(1e-13));

  // the other orders are transcribed correctly
  CHECK(x_closed(1, w, Transcription::as_printed) == x_closed(1, w));
  CHECK(y_closed(3, w, Transcription::as_printed) == y_closed(3, w));
}

TEST_CASE("Clausen function") {
  CHECK(clausen_cl2(0.0) == 0.0);
  CHECK(std::abs(clausen_cl2(pi)) < 1e-15);
  CHECK(clausen_cl2(0.1) == doctest::Approx(0.33027239888281664842).epsilon(1e-14));
  CHECK(clausen_cl2(1.0) == doctest::Approx(1.0139591323607685043).epsilon(1e-14));
  CHECK(clausen_cl2(2.0) == doctest::Approx(0.72714605086327924743).epsilon(1e-14));
  CHECK(clausen_cl2(3.0) == doctest::Approx(0.098026209391301421161).epsilon(1e-13));
  CHECK(clausen_cl2(-1.0) == doctest::Approx(-clausen_cl2(1.0)));
  CHECK(clausen_cl2(1.0 + 2.0 * pi) == doctest::Approx(clausen_cl2(1.0)).epsilon(1e-13));
  // maximum at pi/3 is Cl2(pi/3) = 1.01494160640965362502
  CHECK(clausen_cl2(pi / 3) == doctest::Approx(1.01494160640965362502).epsilon(1e-14));
}

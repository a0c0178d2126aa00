#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "qrefl/errors.hpp"
#include "qrefl/mathieu.hpp"
#include "qrefl/pipeline.hpp"
#include "qrefl/solver.hpp"

using namespace qrefl;

TEST_CASE("fractional-order Bessel series") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(1.5, 0.0) == 0.0);
  const double x = 0.3;
  const double pre = std::sqrt(2.0 / (std::numbers::pi * x));
  CHECK(std::abs(bessel_j(0.5, x) - pre * std::sin(x)) < 1e-12);
  CHECK(std::abs(bessel_j(-0.5, x) - pre * std::cos(x)) < 1e-12);

  // High-precision reference values.
  CHECK(bessel_j(0.3, 0.7) == doctest::Approx(0.73859182062021894404).epsilon(1e-13));
  CHECK(bessel_j(1.5, 2.0) == doctest::Approx(0.49129377868716234501).epsilon(1e-13));
  CHECK(bessel_j(2.25, 5.0) == doctest::Approx(0.15014285815666981281).epsilon(1e-12));
  CHECK(bessel_j(0.75, 0.01) == doctest::Approx(0.020458615494436246596).epsilon(1e-13));

  for (double nu : {-2.75, -1.25, 0.1, 1.0, 3.5, 7.25})
    for (double xx : {0.05, 0.4, 1.3, 2.8}) {
      CAPTURE(nu);
      CAPTURE(xx);
      CHECK(bessel_j(nu, xx) == doctest::Approx(boost::math::cyl_bessel_j(nu, xx)).epsilon(1e-11));
    }
  CHECK_THROWS_AS(bessel_j(0.5, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(-0.5, 0.0), DomainError);
}

TEST_CASE("characteristic exponent matches a Hill-determinant root") {
  // Roots of the normalized infinite determinant, computed in 40-digit arithmetic.
  const std::pair<double, double> ref[] = {{0.1, 0.5000666665190059462},
                                           {0.3, 0.50539928693445649793},
                                           {0.5, 0.54172822348789284277},
                                           {0.7, 0.66673396066773404039}};
  for (const auto& [kb, tau] : ref) {
    CAPTURE(kb);
    CHECK(std::abs(char_exponent(kb) - tau) < 1e-11);
  }
  CHECK_THROWS_AS(char_exponent(0.0), DomainError);
  CHECK_THROWS_AS(char_exponent(0.8), DomainError);
}

TEST_CASE("Floquet coefficients satisfy the recursion and decay") {
  for (double kb : {0.05, 0.2, 0.45, 0.7}) {
    const auto sol = solve_mathieu(kb);
    CAPTURE(kb);
    CHECK(sol.coefficient(0) == 1.0);
    const double q = kb * kb;
    for (int n = -sol.order + 1; n < sol.order; ++n) {
      const double t = sol.tau + 2.0 * n;
      const double res = (t * t - 0.25) * sol.coefficient(n) + q * (sol.coefficient(n + 1) + sol.coefficient(n - 1));
      CHECK(std::abs(res) < 1e-12);
    }
    CHECK(std::abs(sol.coefficient(sol.order)) < 1e-14);
    CHECK(std::abs(sol.coefficient(-sol.order)) < 1e-14);
  }
}

TEST_CASE("exact V4 amplitudes are pure dephasings and match the ODE solver") {
  const auto model = PotentialModel::homogeneous(4, 1.0);
  for (double x : log_grid(1e-3, 0.4, 9)) {
    CAPTURE(x);
    const auto v = v4_amplitudes(x);
    CHECK(std::abs(std::abs(v.t4 + v.r4) - 1.0) < 1e-10);
    CHECK(std::abs(std::abs(v.t4 - v.r4) - 1.0) < 1e-10);
    CHECK(std::abs(v.r4 - solve_reflection(model, x).r) < 1e-8);
  }
  // Scattering-length limit: r4 -> -1 + 2 k ell4.
  const auto low = v4_amplitudes(1e-4);
  CHECK(std::abs(1.0 + low.r4) == doctest::Approx(2e-4).epsilon(1e-3));
  CHECK_THROWS_AS(v4_amplitudes(0.0), DomainError);
}

TEST_CASE("low-energy constants of the V4 expansion") {
  const auto& a = alpha_coefficients();
  CHECK(a.alpha0 == cplx(1.0, 0.0));
  CHECK(std::abs(a.alpha1 - cplx(0.0, std::numbers::pi / 3.0)) < 1e-15);
  CHECK(std::abs(a.alpha2p - cplx(4.0 / 3.0, 0.0)) < 1e-15);
  CHECK(std::abs(a.alpha2 - cplx(0.27652314345283067562, -2.0943951023931954923)) < 1e-14);
}

TEST_CASE("truncated V4 expansion has a cubic remainder") {
  // |A4_exp/A4 - 1| scales like x^3 once the log-squared term is included.
  const auto err = [](double x) {
    const cplx exact = -cplx(0.0, 1.0) * (1.0 + v4_amplitudes(x).r4) / (1.0 - v4_amplitudes(x).r4);
    return std::abs(a4_expansion(x) / exact - 1.0);
  };
  const double e1 = err(0.005), e2 = err(0.01), e3 = err(0.02);
  CHECK(e1 < 1e-6);
  CHECK(e2 / e1 == doctest::Approx(8.0).epsilon(0.25));
  CHECK(e3 / e2 == doctest::Approx(8.0).epsilon(0.25));
}

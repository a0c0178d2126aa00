#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qrefl/errors.hpp"
#include "qrefl/mathieu.hpp"
#include "qrefl/smatrix.hpp"

using namespace qrefl;

namespace {

constexpr int kTrials = 1000;
constexpr double kTol = 1e-10;

struct Gen {
  std::mt19937_64 rng{12345};
  std::uniform_real_distribution<double> u{0.0, 1.0};

  double angle() { return 2.0 * std::numbers::pi * u(rng); }
  cplx disk(double radius) { return std::polar(radius * std::sqrt(u(rng)), angle()); }

  SMatrix2 unitary() {
    for (;;) {
      const double c = std::sqrt(u(rng));
      if (c < 0.1) continue;
      const cplx a = std::polar(c, angle()), b = std::polar(std::sqrt(1.0 - c * c), angle());
      const cplx ph = std::polar(1.0, angle());
      return {ph * a, ph * b, -ph * std::conj(b), ph * std::conj(a)};
    }
  }
  // Generic complex element with a well-conditioned pivot.
  SMatrix2 general() {
    for (;;) {
      SMatrix2 s{disk(2.0), disk(2.0), disk(2.0), disk(2.0)};
      if (std::abs(s.tbar) > 0.2 && std::abs(s.t) > 0.2) return s;
    }
  }
  // rho is recoverable only through the transmitted part, with conditioning
  // ~ 1/|t4|^2, so nearly opaque elements are excluded.
  SMatrix2 symmetric_unitary() {
    for (;;) {
      const cplx sp = std::polar(1.0, angle()), sm = std::polar(1.0, angle());
      if (std::abs(sp + sm) >= 0.1) return SMatrix2::symmetric(0.5 * (sp - sm), 0.5 * (sp + sm));
    }
  }
};

double dist(const SMatrix2& a, const SMatrix2& b) { return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Pi is an involution") {
  Gen g;
  for (int i = 0; i < kTrials; ++i) {
    const Mat2c m = g.general().matrix();
    CHECK((pi_involution(pi_involution(m)) - m).cwiseAbs().maxCoeff() < kTol * m.cwiseAbs().maxCoeff());
  }
  Mat2c singular;
  singular << 0.0, 2.0, 3.0, 1.0;
  CHECK_THROWS_AS(pi_involution(singular), SingularError);
}

TEST_CASE("star product is associative with identity and inverse") {
  Gen g;
  for (int i = 0; i < kTrials; ++i) {
    const auto a = g.unitary(), b = g.unitary(), c = g.unitary();
    CHECK(dist(star(star(a, b), c), star(a, star(b, c))) < kTol);
    CHECK(dist(star(a, SMatrix2::identity()), a) < kTol);
    CHECK(dist(star(SMatrix2::identity(), a), a) < kTol);
    CHECK(dist(star(a, star_inverse(a)), SMatrix2::identity()) < kTol);
    CHECK(dist(star(star_inverse(a), a), SMatrix2::identity()) < kTol);
    // Composition of lossless elements stays lossless.
    CHECK(symmetry_report(star(a, b), 1e-10).unitary);
  }
}

TEST_CASE("two-step reflection formula") {
  Gen g;
  for (int i = 0; i < kTrials; ++i) {
    const auto s4 = g.symmetric_unitary();
    const cplx rho = g.disk(0.95);
    const cplx r = compose_r(s4.r, s4.t, rho);
    // Surface element on the left of the universal element.
    const auto srho = SMatrix2::symmetric(rho, std::sqrt(1.0 - std::norm(rho)));
    CHECK(std::abs(star(srho, s4).r - r) < kTol);
    // Closed form with det S4 = t4^2 - r4^2.
    const cplx det4 = s4.t * s4.t - s4.r * s4.r;
    CHECK(std::abs(r - (s4.r + rho * det4) / (1.0 - rho * s4.r)) < kTol);
    CHECK(std::abs(extract_rho(r, s4.r) - rho) < kTol);
    CHECK(std::abs(r) <= 1.0 + 1e-12);
  }
  CHECK(compose_r(cplx(-0.5, 0.1), cplx(0.3, 0.8), 0.0) == cplx(-0.5, 0.1));
  // A totally reflecting universal element hides the surface completely.
  const cplx r4 = std::polar(1.0, 2.0);
  CHECK(std::abs(compose_r(r4, 0.0, cplx(0.4, -0.2)) - r4) < 1e-15);
}

TEST_CASE("symmetries of the exact V4 element") {
  for (double x : {1e-3, 1e-2, 0.1, 0.4}) {
    const auto v = v4_amplitudes(x);
    const auto rep = symmetry_report(SMatrix2::symmetric(v.r4, v.t4), 1e-10);
    CHECK(rep.unitary);
    CHECK(rep.reciprocal);
    CHECK(rep.parity);
  }
  const SMatrix2 lossy{0.5, 0.1, 0.2, 0.5};
  const auto rep = symmetry_report(lossy, 1e-10);
  CHECK_FALSE(rep.unitary);
  CHECK_FALSE(rep.parity);
  CHECK(rep.unitarity_defect > 0.1);
}

TEST_CASE("degenerate inputs raise SingularError") {
  CHECK_THROWS_AS(extract_rho(cplx(0.3, 0.0), cplx(0.0, 0.0)), SingularError);
  const SMatrix2 no_transfer{0.0, 1.0, 1.0, 0.0};
  CHECK_THROWS_AS(star(no_transfer, SMatrix2::identity()), SingularError);
  CHECK_THROWS_AS(star_inverse(no_transfer), SingularError);
}

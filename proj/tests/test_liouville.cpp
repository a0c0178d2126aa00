#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "qrefl/ere.hpp"
#include "qrefl/errors.hpp"
#include "qrefl/liouville.hpp"
#include "qrefl/pipeline.hpp"

using namespace qrefl;

namespace {

// zb(u) = int_0^u sqrt(2 cosh 2u') du' and 5/(8 cosh^3 2u), 40-digit quadrature.
struct V4Point {
  double u, zb, v;
};
constexpr V4Point kV4[] = {{-1.0, -1.8627870884362371502, 0.011736966696835816295},
                           {0.5, 0.76483718546562097471, 0.17010385432009134037},
                           {1.0, 1.8627870884362371502, 0.011736966696835816295},
                           {2.0, 6.5414299036210358597, 3.0690165193913010205e-5}};

// zb(x) = 3x [2F1(1/2, -1/3; 2/3; -1/x^3) - (2/3) sqrt(1 + 1/x^3)] and V3(x).
struct V3Point {
  double x, zb, v;
};
constexpr V3Point kV3[] = {{0.05, -6.3570505489585455009, 0.0093902282242306252152},
                           {0.5, -0.20644522038510473252, 0.1975308641975308642},
                           {1.0, 0.76951598632463896518, 0.3984375},
                           {2.0, 1.9382523556633513511, 0.066358024691358024691},
                           {10.0, 9.9975002499219104918, 2.9912049086680648925e-5}};

}  // namespace

TEST_CASE("symmetric offset zstar") {
  const double g = boost::math::tgamma(0.75);
  CHECK(std::abs(zstar() - g * g / std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(std::abs(zstar() - 0.847213) < 1e-6);
  // 2 [2F1(1/2, -1/4; 3/4; -1) - 1/sqrt 2] in 40-digit arithmetic.
  CHECK(std::abs(zstar() - 0.84721308479397908661) < 1e-10);
}

TEST_CASE("V4 landscape closed form") {
  for (const auto& p : kV4) {
    CAPTURE(p.u);
    CHECK(std::abs(v4_zb_of_u(p.u) - p.zb) < 1e-12);
    CHECK(std::abs(v4_u_of_zb(p.zb) - p.u) < 1e-12);
    CHECK(v4_closed_form(p.zb) == doctest::Approx(p.v).epsilon(1e-12));
  }
  CHECK(v4_closed_form(0.0) == doctest::Approx(0.625).epsilon(1e-15));
  for (double zb : {0.3, 1.7, 4.0, 12.0}) CHECK(v4_closed_form(zb) == v4_closed_form(-zb));
  // 5/zb^6 tail; zb(u) = e^u - zstar + O(e^-3u) so the shifted form converges fast.
  CHECK(v4_closed_form(10.0) * std::pow(10.0 + zstar(), 6) / 5.0 == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(v4_closed_form(1e3) * 1e18 / 5.0 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("V3 landscape closed form") {
  for (const auto& p : kV3) {
    CAPTURE(p.x);
    CHECK(std::abs(v3_zb_of_x(p.x) - p.zb) < 1e-9);
    CHECK(v3_closed_form(p.zb) == doctest::Approx(p.v).epsilon(1e-8));
  }
  // 3/(4 zb^2) as zb -> -inf; the approach is slow (zb = -2/sqrt(x) + O(1)).
  const auto ratio = [](double zb) { return v3_closed_form(zb) * 4.0 * zb * zb / 3.0; };
  CHECK(ratio(-2000.0) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(ratio(-2000.0) - 1.0) < std::abs(ratio(-200.0) - 1.0));
}

TEST_CASE("quadrature maps reproduce the homogeneous closed forms") {
  // With ell = k = 1 the reduced equations coincide with the universal shapes.
  const auto v4 = PotentialModel::homogeneous(4, 1.0);
  const LiouvilleMap map(v4, 1.0);
  CHECK(std::abs(map.z_map(map.zeta())) < 1e-12);
  for (const auto& p : kV4) {
    const double z = std::exp(p.u);
    CHECK(std::abs(map.z_map(z) - p.zb) < 1e-8);
    CHECK(map.vbold(z) == doctest::Approx(p.v).epsilon(1e-10));
    CHECK(map.inverse_map(p.zb) == doctest::Approx(z).epsilon(1e-10));
  }
  const auto v3 = PotentialModel::homogeneous(3, 1.0);
  for (const auto& p : kV3) {
    CAPTURE(p.x);
    CHECK(std::abs(p.x - tail_phase(v3, 1.0, p.x) - p.zb) < 1e-8);
    CHECK(badlands_Q(v3, 1.0, p.x) == doctest::Approx(p.v).epsilon(1e-12));
  }
}

TEST_CASE("map scaling for a general wavenumber") {
  const auto he = PotentialModel::helium();
  const double k = 0.01 / 75.51;
  const LiouvilleMap map(he, k);
  CHECK(map.energy() == doctest::Approx(0.01));
  CHECK(map.kbold() == doctest::Approx(0.1));
  CHECK(map.translation() == -zstar());
  // jacobian = d zb / dz.
  for (double z : {30.0, 400.0, 5000.0}) {
    const double h = 1e-4 * z;
    const double d = (map.z_map(z + h) - map.z_map(z - h)) / (2.0 * h);
    CHECK(map.jacobian(z) == doctest::Approx(d).epsilon(1e-7));
    CHECK(map.wkb_phase(z) == doctest::Approx(wkb_phase(he, k, z)).epsilon(1e-11));
  }
  // Phase increments are additive with the tail phase.
  const double a = 50.0, b = 900.0;
  CHECK(phase_increment(he, k, a, b) ==
        doctest::Approx(k * (b - a) - tail_phase(he, k, b) + tail_phase(he, k, a)).epsilon(1e-11));
  CHECK_THROWS_AS(map.z_map(0.0), DomainError);
}

TEST_CASE("transformed profiles") {
  const std::vector<double> grid{-4.0, -1.0, 0.0, 1.0, 4.0};
  const auto v4 = transformed_profile(PotentialModel::homogeneous(4, 75.51), 0.02 / 75.51, grid);
  for (const auto& s : v4.samples) CHECK(s.vb == doctest::Approx(v4_closed_form(s.zb)).epsilon(1e-9));
  CHECK(v4.samples[2].vb == doctest::Approx(0.625).epsilon(1e-10));

  // Helium at 1 neV: the left flank follows the V3 tail, the right flank the V4 tail.
  const double k = std::sqrt(2.0 * 1837.15 * 1e-9 / 27.211386245988);
  const auto he = transformed_profile(PotentialModel::helium(), k, std::vector<double>{-400.0, -40.0, 8.0});
  const auto off = [&](std::size_t i) { return std::abs(he.samples[i].vb * 4.0 * std::pow(he.samples[i].zb, 2) / 3.0 - 1.0); };
  CHECK(off(0) < 0.02);
  CHECK(off(0) < off(1));
  CHECK(he.samples[2].vb == doctest::Approx(v4_closed_form(8.0)).epsilon(0.05));
}

TEST_CASE("reflection is invariant under the Liouville transformation") {
  const SolverOptions opts;
  for (const auto& model : {PotentialModel::homogeneous(4, 75.51), PotentialModel::helium()}) {
    for (double x : {2e-3, 2e-2, 0.1}) {
      CAPTURE(model.name());
      CAPTURE(x);
      const double k = x / model.reference_length();
      const auto phys = solve_reflection(model, k, opts);
      const auto tr = solve_transformed_reflection(model, k, opts);
      const cplx a = a_from_r(phys.r), ab = a_from_r(tr.amplitudes.r);
      CHECK(std::abs(a - ab) < 1e-7 * std::abs(a));
      CHECK(tr.amplitudes.flux_defect() < 1e-8);
      CHECK(std::abs(tr.r_symmetric - tr.amplitudes.r * std::polar(1.0, 2.0 * std::sqrt(x) * zstar())) < 1e-14);
    }
  }
}

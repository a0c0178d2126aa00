#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qrefl/ere.hpp"
#include "qrefl/errors.hpp"
#include "qrefl/pipeline.hpp"
#include "qrefl/smatrix.hpp"

using namespace qrefl;

namespace {

const std::array<cplx, 5> kHeliumRho{cplx(0.158, 0.336), cplx(-0.009, 0.011), cplx(0.098, -0.117),
                                     cplx(-0.513, 0.611), cplx(-0.083, -0.487)};

std::vector<RhoSample> sample_poly(const std::array<cplx, 5>& c, std::size_t n) {
  RhoExpansion e;
  e.coefficients = c;
  std::vector<RhoSample> out;
  for (double x : uniform_grid(2e-3, 0.1, n)) out.push_back({std::sqrt(x), e.eval(std::sqrt(x))});
  return out;
}

void check_close(cplx a, cplx b, double tol) {
  CAPTURE(a);
  CAPTURE(b);
  CHECK(std::abs(a - b) < tol);
}

}  // namespace

TEST_CASE("parity names") {
  CHECK(parse_parity("full") == Parity::Full);
  CHECK(parse_parity("even") == Parity::Even);
  CHECK(std::string(to_string(Parity::Even)) == "even");
  CHECK_THROWS_AS(parse_parity("odd"), ConfigError);
}

TEST_CASE("rho fit recovers an exact quartic") {
  const std::array<cplx, 5> c{cplx(0.2, 0.3), cplx(-0.01, 0.02), cplx(0.1, -0.1), cplx(-0.5, 0.6), cplx(0.2, -0.7)};
  const auto s = sample_poly(c, 400);
  const auto fit = fit_rho(s, Parity::Full);
  for (int j = 0; j < 5; ++j) check_close(fit.coefficients[j], c[j], 1e-9);
  CHECK(fit.sigma_re < 1e-13);
  CHECK(fit.sigma_im < 1e-13);
  CHECK(fit.grid_size == 400);
  CHECK(fit.window_min == doctest::Approx(2e-3));
  CHECK(fit.window_max == doctest::Approx(0.1));
  CHECK(fit.warnings.empty());

  const auto even = fit_rho(s, Parity::Even);
  CHECK(even.coefficients[1] == cplx{});
  CHECK(even.coefficients[3] == cplx{});
  CHECK(even.sigma_re > 100.0 * fit.sigma_re);

  const std::array<cplx, 5> ce{cplx(0.2, 0.3), 0.0, cplx(0.1, -0.1), 0.0, cplx(0.2, -0.7)};
  const auto even_exact = fit_rho(sample_poly(ce, 200), Parity::Even);
  for (int j = 0; j < 5; ++j) check_close(even_exact.coefficients[j], ce[j], 1e-9);
}

TEST_CASE("rho fit residual scatter estimates the noise level") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 1e-6);
  auto s = sample_poly(kHeliumRho, 1000);
  for (auto& p : s) p.rho += cplx(noise(rng), noise(rng));
  const auto fit = fit_rho(s, Parity::Full);
  CHECK(fit.sigma_re == doctest::Approx(1e-6).epsilon(0.08));
  CHECK(fit.sigma_im == doctest::Approx(1e-6).epsilon(0.08));
  check_close(fit.coefficients[0], kHeliumRho[0], 1e-5);
  CHECK_THROWS_AS(fit_rho(std::span(s).first(6), Parity::Full), ConfigError);
}

TEST_CASE("beta coefficients at the helium rho values") {
  // Fitted from the exact two-step composition in 110-digit arithmetic.
  const auto b = beta_from_rho(alpha_coefficients(), kHeliumRho, 75.51);
  check_close(b.ell, cplx(44.777482976352608, -34.902067599356201), 1e-11);
  check_close(b.beta0, 1.0, 1e-14);
  check_close(b.beta12, cplx(0.026915930894419125, -0.013226243964182298), 1e-12);
  check_close(b.beta1, cplx(-2.1653017064870317, 0.49416040469456183), 1e-12);
  check_close(b.beta32, cplx(2.180136110214392, 0.49257488323795654), 1e-12);
  check_close(b.beta2, cplx(0.46199498595568981, 1.8332394987944486), 1e-12);
  check_close(b.beta2p, cplx(0.57581308815131372, 2.2872841098500994), 1e-12);
}

TEST_CASE("beta reduces to alpha without a surface correction") {
  const auto& a = alpha_coefficients();
  const auto b = beta_from_rho(a, std::array<cplx, 5>{}, 2.0);
  check_close(b.ell, 2.0, 1e-15);
  check_close(b.beta0, a.alpha0, 1e-15);
  check_close(b.beta12, 0.0, 1e-15);
  check_close(b.beta1, a.alpha1, 1e-15);
  check_close(b.beta32, 0.0, 1e-15);
  check_close(b.beta2, a.alpha2, 1e-15);
  check_close(b.beta2p, a.alpha2p, 1e-15);
}

TEST_CASE("closed-form beta agrees with the series composition") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    std::array<cplx, 5> rho;
    for (auto& c : rho) c = cplx(u(rng), u(rng));
    rho[0] *= 0.6;
    const auto a = beta_from_rho(alpha_coefficients(), rho, 1.0);
    const auto b = beta_from_series(alpha_coefficients(), rho, 1.0);
    for (const auto& [x, y] : {std::pair{a.beta0, b.beta0}, {a.beta12, b.beta12}, {a.beta1, b.beta1},
                               {a.beta32, b.beta32}, {a.beta2, b.beta2}, {a.beta2p, b.beta2p}})
      CHECK(std::abs(x - y) < 1e-10 * std::max(1.0, std::abs(x)));
  }
  CHECK_THROWS_AS(beta_from_rho(alpha_coefficients(), std::array<cplx, 5>{cplx(-1.0, 0.0)}, 1.0), SingularError);
}

TEST_CASE("improved expansion approximates the two-step amplitude to O(k^5/2)") {
  const auto b = beta_from_rho(alpha_coefficients(), kHeliumRho, 75.51);
  RhoExpansion rho;
  rho.coefficients = kHeliumRho;
  const auto err = [&](double x) {
    const cplx two = combine_equA(a4_expansion(x), rho.eval(std::sqrt(x)));
    return std::abs(improved_ere_eval(x / 75.51, b) / two - 1.0);
  };
  const double e1 = err(1e-6), e2 = err(1e-5);
  CHECK(e1 < 1e-12);
  // Slope between 2.5 (h^5 terms) and 2.5 with a log factor.
  const double slope = std::log10(e2 / e1);
  CHECK(slope > 2.2);
  CHECK(slope < 2.8);
}

TEST_CASE("amplitude conversions") {
  for (const cplx r : {cplx(-0.9, 0.1), cplx(0.3, -0.4), cplx(-0.999, 1e-3)}) {
    check_close(r_from_a(a_from_r(r)), r, 1e-13);
    const cplx rho(0.2, 0.35);
    const cplx r4(-0.95, 0.2);
    check_close(combine_equA(a_from_r(r4), rho), a_from_r(compose_r(r4, 0.0, rho)), 1e-12);
  }
  CHECK_THROWS_AS(a_from_r(1.0), SingularError);
}

TEST_CASE("modified effective-range fit on synthetic data") {
  ModifiedErtParams truth;
  truth.ell4 = 75.51;
  truth.ell = cplx(44.78, -34.90);
  const auto& a = alpha_coefficients();
  truth.alpha_tilde0 = a.alpha0;
  truth.alpha_tilde1 = a.alpha1 * truth.ell4 / truth.ell;
  truth.alpha_tilde2 = cplx(2.54, -2.51);
  truth.alpha_tilde2p = a.alpha2p;
  std::vector<AmplitudeSample> s;
  for (double x : uniform_grid(2e-3, 0.1, 300)) s.push_back({x / 75.51, truth.eval(x / 75.51)});

  const auto known = fit_modified_ert(s, 75.51, truth.ell);
  check_close(known.alpha_tilde2, truth.alpha_tilde2, 1e-9);
  const auto joint = fit_modified_ert(s, 75.51);
  check_close(joint.ell, truth.ell, 1e-8);
  check_close(joint.alpha_tilde2, truth.alpha_tilde2, 1e-8);
  // Effective range relation.
  const cplx d = joint.ell - 75.51;
  const cplx back = a.alpha2 + std::numbers::pi * d * d / (joint.ell * 75.51) -
                    cplx(0.0, 1.0) * joint.r0 * joint.ell / (2.0 * 75.51 * 75.51);
  check_close(back, joint.alpha_tilde2, 1e-12);

  const auto cmp = compare_theories(s, beta_from_rho(a, std::array<cplx, 5>{}, 75.51), known);
  CHECK(cmp.max_rel_error_modified < 1e-10);
  CHECK(cmp.ratios.size() == s.size());
  CHECK(cmp.max_rel_error_two_step == 0.0);
}

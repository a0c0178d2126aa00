#include "qrefl/mathieu.hpp"

#include <cmath>
#include <numbers>

#include "qrefl/errors.hpp"

namespace qrefl {

namespace {

constexpr double kMaxKbold = 0.7;

bool is_integer(double v) { return v == std::nearbyint(v); }

// D_n(tau) = (tau + 2n)^2 - 1/4.
double diag(double tau, int n) {
  const double v = tau + 2.0 * n;
  return v * v - 0.25;
}

// D_0 + q (A_1/A_0 + A_{-1}/A_0), with both ratios from continued fractions
// truncated at |n| = order.
double secular(double tau, double q, int order) {
  double right = 0.0, left = 0.0;
  for (int n = order; n >= 1; --n) right = -q / (diag(tau, n) + q * right);
  for (int n = -order; n <= -1; ++n) left = -q / (diag(tau, n) + q * left);
  return diag(tau, 0) + q * (right + left);
}

double solve_tau(double q, int order) {
  double t0 = 0.5 + (2.0 / 3.0) * q * q;
  double t1 = t0 + 1e-6;
  double f0 = secular(t0, q, order), f1 = secular(t1, q, order);
  for (int it = 0; it < 200; ++it) {
    if (f1 == f0) break;
    const double t2 = t1 - f1 * (t1 - t0) / (f1 - f0);
    t0 = t1;
    f0 = f1;
    t1 = t2;
    f1 = secular(t1, q, order);
    if (!(t1 > 0.0 && t1 < 1.0)) throw NumericalError("characteristic exponent left (0, 1)");
    if (std::abs(t1 - t0) < 1e-16) break;
  }
  if (std::abs(f1) > 1e-10) throw ConvergenceError("characteristic exponent did not converge");
  return t1;
}

}  // namespace

double bessel_j(double nu, double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j needs finite x >= 0");
  if (!std::isfinite(nu)) throw DomainError("bessel_j needs a finite order");
  if (nu < 0.0 && is_integer(nu)) {
    const double n = -nu;
    return (std::fmod(n, 2.0) == 0.0 ? 1.0 : -1.0) * bessel_j(n, x);
  }
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw DomainError("bessel_j of negative non-integer order diverges at 0");
  }
  const double h = 0.5 * x;
  const double h2 = h * h;
  double term = std::pow(h, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  // Terms can grow while m + nu < 0, so only test for convergence past that.
  const double m_min = std::max(0.0, -nu);
  for (int m = 1; m < 500; ++m) {
    term *= -h2 / (m * (m + nu));
    sum += term;
    if (m > m_min && std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double char_exponent(double kbold) { return solve_mathieu(kbold).tau; }

MathieuSolution solve_mathieu(double kbold) {
  if (!(kbold > 0.0) || !std::isfinite(kbold)) throw DomainError("kbold must be positive");
  if (kbold > kMaxKbold) throw DomainError("kbold beyond the real-exponent range (0.7)");
  const double q = kbold * kbold;

  int order = 8;
  double tau = solve_tau(q, order);
  for (;;) {
    const double next = solve_tau(q, order + 4);
    const bool done = std::abs(next - tau) < 1e-12;
    tau = next;
    order += 4;
    if (done) break;
    if (order > 200) throw ConvergenceError("Mathieu truncation did not converge");
  }

  MathieuSolution s;
  s.kbold = kbold;
  s.tau = tau;
  s.order = order;
  s.coefficients.assign(2 * order + 1, 0.0);
  std::vector<double> right(order + 2, 0.0), left(order + 2, 0.0);
  for (int n = order; n >= 1; --n) right[n] = -q / (diag(tau, n) + q * right[n + 1]);
  for (int n = order; n >= 1; --n) left[n] = -q / (diag(tau, -n) + q * left[n + 1]);
  s.coefficients[order] = 1.0;
  for (int n = 1; n <= order; ++n) {
    s.coefficients[order + n] = right[n] * s.coefficients[order + n - 1];
    s.coefficients[order - n] = left[n] * s.coefficients[order - n + 1];
  }

  double plus = 0.0, minus = 0.0;
  for (int n = -order; n <= order; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double a = s.coefficient(n);
    plus += sign * a * bessel_j(n + tau, kbold) * bessel_j(n, kbold);
    minus += sign * a * bessel_j(-(n + tau), kbold) * bessel_j(-n, kbold);
  }
  s.sigma_plus = plus;
  s.sigma_minus = minus;
  return s;
}

V4Amplitudes v4_amplitudes(double k_ell4) {
  if (!(k_ell4 > 0.0)) throw DomainError("k ell4 must be positive");
  const auto s = solve_mathieu(std::sqrt(k_ell4));
  const cplx sigma = std::log(cplx(s.sigma_minus / s.sigma_plus));
  const cplx i(0.0, 1.0);
  const cplx den = std::sinh(sigma + i * std::numbers::pi * s.tau);
  if (std::abs(den) == 0.0) throw SingularError("degenerate Mathieu denominator");
  return {-i * std::sinh(sigma) / den, std::sin(std::numbers::pi * s.tau) / den, s.tau, sigma};
}

const AlphaCoefficients& alpha_coefficients() {
  static const AlphaCoefficients a{
      1.0,
      cplx(0.0, std::numbers::pi / 3.0),
      cplx(8.0 / 3.0 * (std::numbers::egamma + std::numbers::ln2) - 28.0 / 9.0,
           -2.0 * std::numbers::pi / 3.0),
      4.0 / 3.0,
  };
  return a;
}

cplx a4_expansion(double k_ell4) {
  if (!(k_ell4 > 0.0)) throw DomainError("k ell4 must be positive");
  const auto& a = alpha_coefficients();
  const double x = k_ell4;
  return cplx(0.0, -x) * (a.alpha0 + a.alpha1 * x + a.alpha2 * x * x + a.alpha2p * x * x * std::log(x));
}

}  // namespace qrefl

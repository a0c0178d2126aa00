#pragma once

// Exact scattering on U = -ell4^2/z^4.
//
// With z = zeta e^u (zeta = sqrt(ell4/k)) and psi = e^{u/2} w, the Schrodinger
// equation becomes the modified Mathieu equation
//   w'' + (2 kb^2 cosh 2u - 1/4) w = 0,   kb^2 = k ell4,
// solved by Floquet sums of Bessel-function products.

#include <complex>
#include <vector>

namespace qrefl {

using cplx = std::complex<double>;

// J_nu(x) for real order and x >= 0 by its power series (x small to moderate).
double bessel_j(double nu, double x);

// Characteristic exponent tau of the recursion
//   ((tau + 2n)^2 - 1/4) A_n + kb^2 (A_{n+1} + A_{n-1}) = 0
// on the branch tau -> 1/2 as kb -> 0. Real for kb up to about 0.7.
double char_exponent(double kbold);

struct MathieuSolution {
  double kbold = 0.0;
  double tau = 0.0;
  int order = 0;                    // coefficients run over n = -order..order
  std::vector<double> coefficients; // A_n at index n + order, A_0 = 1
  double sigma_plus = 0.0;          // psi~+(0)
  double sigma_minus = 0.0;         // psi~-(0)

  double coefficient(int n) const { return coefficients.at(static_cast<std::size_t>(n + order)); }
};

MathieuSolution solve_mathieu(double kbold);

struct V4Amplitudes {
  cplx r4;
  cplx t4;
  double tau;
  cplx sigma;
};

// Reflection and transmission amplitudes of the pure 1/z^4 well at k ell4,
// referenced at the plane-wave origin. Valid for 0 < k ell4 <= 0.49.
V4Amplitudes v4_amplitudes(double k_ell4);

// Low-energy expansion A4 = -i k ell4 (alpha0 + alpha1 x + alpha2 x^2 + alpha2' x^2 ln x),
// x = k ell4.
struct AlphaCoefficients {
  cplx alpha0;
  cplx alpha1;
  cplx alpha2;
  cplx alpha2p;
};

const AlphaCoefficients& alpha_coefficients();

cplx a4_expansion(double k_ell4);

}  // namespace qrefl

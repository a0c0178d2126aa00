#pragma once

// Effective-range machinery.
//
// Atilde = -i (1 + r)/(1 - r) tends to -i k ell at low energy. The reflection
// rho of the surface element left once the exact V4 element is peeled off is
// fitted as a polynomial in kb = sqrt(k ell4); the improved expansion of
// Atilde follows from it, and is compared with the modified effective-range
// theory in which only ell and alpha~2 are adjusted.

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrefl/mathieu.hpp"

namespace qrefl {

using cplx = std::complex<double>;

enum class Parity { Full, Even };

const char* to_string(Parity p);
Parity parse_parity(const std::string& s);

struct RhoSample {
  double kbold;
  cplx rho;
};

struct RhoExpansion {
  std::array<cplx, 5> coefficients{};  // rho_0..rho_4; rho_1 = rho_3 = 0 for Even
  Parity parity = Parity::Full;
  double window_min = 0.0;  // in k ell4
  double window_max = 0.0;
  double sigma_re = 0.0;  // sample standard deviations (n - 1) of the residuals
  double sigma_im = 0.0;
  std::size_t grid_size = 0;
  double condition_number = 0.0;
  std::vector<std::string> warnings;

  cplx eval(double kbold) const;
};

// Least squares on monomials kb^j (j = 0..degree, even j only for Parity::Even).
RhoExpansion fit_rho(std::span<const RhoSample> samples, Parity parity, int degree = 4);

// Atilde = -i k ell [b0 + b12 (k ell)^1/2 + b1 k ell + b32 (k ell)^3/2 + b2 (k ell)^2
//                    + b2' (k ell)^2 ln(k ell)],
// with the complex scattering length ell = ell4 (1 - rho0)/(1 + rho0) and the
// principal branches of the root and logarithm.
struct BetaExpansion {
  cplx beta0, beta12, beta1, beta32, beta2, beta2p;
  cplx ell;
  double ell4 = 0.0;
};

BetaExpansion beta_from_rho(const AlphaCoefficients& alpha, const std::array<cplx, 5>& rho,
                            double ell4);
inline BetaExpansion beta_from_rho(const AlphaCoefficients& alpha, const RhoExpansion& rho,
                                   double ell4) {
  return beta_from_rho(alpha, rho.coefficients, ell4);
}

// The same coefficients read off a truncated series composition of
// combine_equA(Atilde4(kb), rho(kb)); independent of the closed formulas.
BetaExpansion beta_from_series(const AlphaCoefficients& alpha, const std::array<cplx, 5>& rho,
                               double ell4);

cplx improved_ere_eval(double k, const BetaExpansion& beta);

cplx a_from_r(cplx r);
cplx r_from_a(cplx a);
cplx combine_equA(cplx a4, cplx rho);

struct AmplitudeSample {
  double k;
  cplx a;  // numerical Atilde
};

// Atilde = -i k ell (1 + at1 k ell4 + at2 (k ell4)^2 + at2' (k ell4)^2 ln k ell4),
// at1 = alpha1 ell4/ell, at2' = alpha2'.
struct ModifiedErtParams {
  cplx ell;
  double ell4 = 0.0;
  cplx alpha_tilde0, alpha_tilde1, alpha_tilde2, alpha_tilde2p;
  cplx r0;  // effective range from alpha~2 = alpha2 + pi (ell - ell4)^2/(ell ell4) - i R0 ell/(2 ell4^2)

  cplx eval(double k) const;
};

// With ell given, alpha~2 is the only unknown; otherwise ell and alpha~2 are
// fitted jointly (the model is linear in ell and ell alpha~2).
ModifiedErtParams fit_modified_ert(std::span<const AmplitudeSample> samples, double ell4,
                                   std::optional<cplx> ell = std::nullopt);

struct RatioPoint {
  double k_ell4;
  cplx improved;  // Atilde_improved / Atilde_num
  cplx modified;  // Atilde_modified / Atilde_num
};

struct ComparisonReport {
  double max_rel_error_improved = 0.0;
  double max_rel_error_modified = 0.0;
  // Diagnostic: combine_equA(exact Atilde4, fitted rho), i.e. the two-step
  // description without expanding Atilde4. Zero when no rho fit was given.
  double max_rel_error_two_step = 0.0;
  std::vector<RatioPoint> ratios;
};

ComparisonReport compare_theories(std::span<const AmplitudeSample> samples,
                                  const BetaExpansion& beta, const ModifiedErtParams& modified,
                                  const RhoExpansion* rho = nullptr);

}  // namespace qrefl

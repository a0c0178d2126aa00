#include "qrefl/ere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "qrefl/errors.hpp"
#include "qrefl/series.hpp"

namespace qrefl {

namespace {

constexpr double kConditionWarning = 1e10;

void check_rho0(cplx rho0) {
  if (std::abs(1.0 + rho0) < 1e-12 || std::abs(1.0 - rho0) < 1e-12)
    throw SingularError("beta coefficients have a pole at rho0 = +-1");
}

double sample_sd(const Eigen::VectorXd& e) {
  const auto n = e.size();
  if (n < 2) return 0.0;
  const double mean = e.mean();
  return std::sqrt((e.array() - mean).square().sum() / static_cast<double>(n - 1));
}

}  // namespace

const char* to_string(Parity p) { return p == Parity::Full ? "full" : "even"; }

Parity parse_parity(const std::string& s) {
  if (s == "full") return Parity::Full;
  if (s == "even") return Parity::Even;
  throw ConfigError("parity must be 'full' or 'even', got '" + s + "'");
}

cplx RhoExpansion::eval(double kbold) const {
  cplx v = 0.0;
  for (int j = 4; j >= 0; --j) v = v * kbold + coefficients[j];
  return v;
}

RhoExpansion fit_rho(std::span<const RhoSample> samples, Parity parity, int degree) {
  if (degree < 0 || degree > 4) throw ConfigError("rho expansion degree must be in [0, 4]");
  std::vector<int> powers;
  for (int j = 0; j <= degree; ++j)
    if (parity == Parity::Full || j % 2 == 0) powers.push_back(j);
  const auto n = static_cast<Eigen::Index>(samples.size());
  const auto p = static_cast<Eigen::Index>(powers.size());
  if (n < 2 * p) throw ConfigError("fit_rho needs at least twice as many samples as coefficients");

  Eigen::MatrixXd design(n, p);
  Eigen::MatrixXd rhs(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    for (Eigen::Index c = 0; c < p; ++c) design(i, c) = std::pow(s.kbold, powers[c]);
    rhs(i, 0) = s.rho.real();
    rhs(i, 1) = s.rho.imag();
  }
  // Column scaling keeps the conditioning report meaningful.
  const Eigen::VectorXd scale = design.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < p; ++c) {
    if (!(scale(c) > 0.0)) throw NumericalError("fit_rho: empty design column");
    design.col(c) /= scale(c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(p - 1);
  if (!(sv(p - 1) > 1e-14 * sv(0))) throw NumericalError("fit_rho: rank-deficient design matrix");
  const Eigen::MatrixXd sol = svd.solve(rhs);

  RhoExpansion out;
  out.parity = parity;
  out.grid_size = samples.size();
  out.condition_number = cond;
  if (cond > kConditionWarning) out.warnings.push_back("ill-conditioned rho fit");
  for (Eigen::Index c = 0; c < p; ++c)
    out.coefficients[static_cast<std::size_t>(powers[c])] =
        cplx(sol(c, 0), sol(c, 1)) / scale(c);
  const Eigen::MatrixXd res = design * sol - rhs;
  out.sigma_re = sample_sd(res.col(0));
  out.sigma_im = sample_sd(res.col(1));
  double kmin = samples.front().kbold, kmax = kmin;
  for (const auto& s : samples) {
    kmin = std::min(kmin, s.kbold);
    kmax = std::max(kmax, s.kbold);
  }
  out.window_min = kmin * kmin;
  out.window_max = kmax * kmax;
  return out;
}

BetaExpansion beta_from_rho(const AlphaCoefficients& a, const std::array<cplx, 5>& rho,
                            double ell4) {
  const auto [r0, r1, r2, r3, r4] = rho;
  check_rho0(r0);
  const cplx p = 1.0 + r0, m = 1.0 - r0;
  const cplx s = std::sqrt(m / p);  // (ell/ell4)^1/2
  const cplx p2 = p * p, m3 = m * m * m;
  const cplx re2(a.alpha2.real(), 0.0), im2(0.0, a.alpha2.imag());

  BetaExpansion b;
  b.ell4 = ell4;
  b.ell = ell4 * m / p;
  b.beta0 = a.alpha0;
  b.beta12 = -2.0 * a.alpha0 * r1 / (p2 * s * s * s);
  b.beta1 = (2.0 * a.alpha0 * (r1 * r1 - p * r2) + a.alpha1 * p * p2) / (p * m * m);
  b.beta32 = -2.0 * a.alpha0 * (r1 * r1 * r1 - 2.0 * p * r1 * r2 + p2 * r3) / (p2 * p2 * std::pow(s, 5));
  b.beta2 = 2.0 * a.alpha0 * r1 * r1 * (r1 * r1 - 3.0 * p * r2) / (p2 * m3) +
            2.0 * a.alpha0 * (2.0 * r1 * r3 + r2 * r2) / m3 +
            p / m3 * (a.alpha2 + 4.0 * a.alpha0 * a.alpha1 * r0 - 2.0 * a.alpha0 * r4) +
            r0 * p / m3 * ((2.0 + r0) * im2 - r0 * re2) - p2 / (m * m) * a.alpha2p * std::log(m / p);
  b.beta2p = a.alpha2p * (p / m) * (p / m);
  return b;
}

BetaExpansion beta_from_series(const AlphaCoefficients& a, const std::array<cplx, 5>& rho,
                               double ell4) {
  check_rho0(rho[0]);
  using S = LogSeries;
  const cplx i(0.0, 1.0);
  // Atilde4(kb) = -i kb^2 [a0 + a1 kb^2 + a2 kb^4 + 2 a2' kb^4 ln kb].
  const S a4 = S::monomial(2, 0, -i * a.alpha0) + S::monomial(4, 0, -i * a.alpha1) +
               S::monomial(6, 0, -i * a.alpha2) + S::monomial(6, 1, -2.0 * i * a.alpha2p);
  S r;
  for (std::size_t j = 0; j < 5; ++j) r = r + S::monomial(j, 0, rho[j]);
  const S one(1.0);
  const S lhs = one - a4 * i;
  const S num = r * lhs * (a4.conj() - a4);
  const S den = one + a4.conj() * i + r * lhs;
  const S at = a4 + num / den;

  // at / (-i) = kb^2 lam [b0 + b12 s kb + b1 lam kb^2 + b32 s^3 kb^3 + b2 lam^2 kb^4
  //                       + b2' lam^2 kb^4 (2 ln kb + ln lam)],  lam = ell/ell4.
  const auto c = [&](std::size_t j, std::size_t m) { return at.coeff(j, m) / (-i); };
  const cplx lam = (1.0 - rho[0]) / (1.0 + rho[0]);
  const cplx s = std::sqrt(lam);
  BetaExpansion b;
  b.ell4 = ell4;
  b.ell = ell4 * lam;
  b.beta0 = c(2, 0) / lam;
  b.beta12 = c(3, 0) / (lam * s);
  b.beta1 = c(4, 0) / (lam * lam);
  b.beta32 = c(5, 0) / (lam * s * s * s);
  b.beta2p = c(6, 1) / (2.0 * lam * lam * lam);
  b.beta2 = c(6, 0) / (lam * lam * lam) - b.beta2p * std::log(lam);
  return b;
}

cplx improved_ere_eval(double k, const BetaExpansion& b) {
  if (!(k > 0.0)) throw DomainError("improved_ere_eval needs k > 0");
  const double kl4 = k * b.ell4;
  const cplx lam = b.ell / b.ell4;
  const cplx x = k * b.ell;
  const cplx h = std::sqrt(kl4) * std::sqrt(lam);
  const cplx lnx = std::log(kl4) + std::log(lam);
  const cplx bracket =
      b.beta0 + b.beta12 * h + b.beta1 * x + b.beta32 * h * h * h + b.beta2 * x * x + b.beta2p * x * x * lnx;
  return cplx(0.0, -1.0) * x * bracket;
}

cplx a_from_r(cplx r) {
  if (std::abs(1.0 - r) < 1e-300) throw SingularError("a_from_r: pole at r = 1");
  return cplx(0.0, -1.0) * (1.0 + r) / (1.0 - r);
}

cplx r_from_a(cplx a) {
  const cplx ia = cplx(0.0, 1.0) * a;
  if (std::abs(ia + 1.0) < 1e-300) throw SingularError("r_from_a: pole at 1 + i A = 0");
  return (ia - 1.0) / (ia + 1.0);
}

cplx combine_equA(cplx a4, cplx rho) {
  const cplx i(0.0, 1.0);
  const cplx lhs = 1.0 - i * a4;
  const cplx den = 1.0 + i * std::conj(a4) + rho * lhs;
  if (std::abs(den) < 1e-300) throw SingularError("combine_equA: vanishing denominator");
  return a4 + rho * lhs * (std::conj(a4) - a4) / den;
}

cplx ModifiedErtParams::eval(double k) const {
  const double x = k * ell4;
  return cplx(0.0, -1.0) * k * ell *
         (alpha_tilde0 + alpha_tilde1 * x + alpha_tilde2 * x * x + alpha_tilde2p * x * x * std::log(x));
}

ModifiedErtParams fit_modified_ert(std::span<const AmplitudeSample> samples, double ell4,
                                   std::optional<cplx> ell) {
  if (!(ell4 > 0.0)) throw ConfigError("fit_modified_ert needs ell4 > 0");
  const auto& a = alpha_coefficients();
  const auto n = static_cast<Eigen::Index>(samples.size());
  if (n < 4) throw ConfigError("fit_modified_ert needs at least 4 samples");
  const cplx mi(0.0, -1.0);

  ModifiedErtParams out;
  out.ell4 = ell4;
  out.alpha_tilde0 = a.alpha0;
  out.alpha_tilde2p = a.alpha2p;
  if (ell) {
    // y = Atilde/(-i k ell) - 1 - at1 x - a2' x^2 ln x = at2 x^2.
    const cplx at1 = a.alpha1 * ell4 / *ell;
    cplx num = 0.0;
    double den = 0.0;
    for (const auto& s : samples) {
      const double x = s.k * ell4;
      const cplx y = s.a / (mi * s.k * *ell) - a.alpha0 - at1 * x - a.alpha2p * x * x * std::log(x);
      num += x * x * y;
      den += x * x * x * x;
    }
    if (!(den > 0.0)) throw NumericalError("fit_modified_ert: degenerate samples");
    out.ell = *ell;
    out.alpha_tilde2 = num / den;
  } else {
    // Atilde/(-i k) - a1 ell4 x = ell (a0 + a2' x^2 ln x) + (ell at2) x^2: linear in (ell, ell at2).
    Eigen::MatrixXcd cdesign(n, 2);
    Eigen::VectorXcd crhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& s = samples[static_cast<std::size_t>(i)];
      const double x = s.k * ell4;
      cdesign(i, 0) = a.alpha0 + a.alpha2p * x * x * std::log(x);
      cdesign(i, 1) = x * x;
      crhs(i) = s.a / (mi * s.k) - a.alpha1 * ell4 * x;
    }
    const Eigen::VectorXcd sol = cdesign.colPivHouseholderQr().solve(crhs);
    if (!std::isfinite(std::abs(sol(0))) || std::abs(sol(0)) == 0.0)
      throw NumericalError("fit_modified_ert: degenerate joint fit");
    out.ell = sol(0);
    out.alpha_tilde2 = sol(1) / sol(0);
  }
  out.alpha_tilde1 = a.alpha1 * ell4 / out.ell;
  const cplx d = out.ell - ell4;
  const cplx shift = std::numbers::pi * d * d / (out.ell * ell4);
  out.r0 = (a.alpha2 + shift - out.alpha_tilde2) * 2.0 * ell4 * ell4 / (cplx(0.0, 1.0) * out.ell);
  return out;
}

ComparisonReport compare_theories(std::span<const AmplitudeSample> samples,
                                  const BetaExpansion& beta, const ModifiedErtParams& modified,
                                  const RhoExpansion* rho) {
  ComparisonReport rep;
  rep.ratios.reserve(samples.size());
  for (const auto& s : samples) {
    if (std::abs(s.a) == 0.0) throw SingularError("compare_theories: vanishing numerical Atilde");
    const cplx imp = improved_ere_eval(s.k, beta) / s.a;
    const cplx mod = modified.eval(s.k) / s.a;
    rep.ratios.push_back({s.k * beta.ell4, imp, mod});
    rep.max_rel_error_improved = std::max(rep.max_rel_error_improved, std::abs(imp - 1.0));
    rep.max_rel_error_modified = std::max(rep.max_rel_error_modified, std::abs(mod - 1.0));
    if (rho) {
      const double x = s.k * beta.ell4;
      const cplx a4 = a_from_r(v4_amplitudes(x).r4);
      const cplx two = combine_equA(a4, rho->eval(std::sqrt(x))) / s.a;
      rep.max_rel_error_two_step = std::max(rep.max_rel_error_two_step, std::abs(two - 1.0));
    }
  }
  return rep;
}

}  // namespace qrefl

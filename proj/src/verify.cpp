#include "qrefl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

#include "qrefl/ere.hpp"
#include "qrefl/errors.hpp"
#include "qrefl/liouville.hpp"
#include "qrefl/mathieu.hpp"
#include "qrefl/pipeline.hpp"
#include "qrefl/smatrix.hpp"

namespace qrefl {

namespace {

using Rng = std::mt19937_64;

cplx random_disk(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

// Unitary, parity-symmetric [[t, r], [r, t]] with eigenphases d+-, |t| >= 0.05
// (rho hides behind a nearly opaque element: conditioning ~ 1/|t|^2).
SMatrix2 random_symmetric_unitary(Rng& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  for (;;) {
    const cplx sp = std::polar(1.0, u(rng)), sm = std::polar(1.0, u(rng));
    if (std::abs(sp + sm) >= 0.1) return SMatrix2::symmetric(0.5 * (sp - sm), 0.5 * (sp + sm));
  }
}

// Generic U(2) element with a usable pivot.
SMatrix2 random_unitary(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const double c = std::sqrt(u(rng));
    const cplx a = std::polar(c, 2.0 * std::numbers::pi * u(rng));
    const cplx b = std::polar(std::sqrt(1.0 - c * c), 2.0 * std::numbers::pi * u(rng));
    const cplx ph = std::polar(1.0, 2.0 * std::numbers::pi * u(rng));
    if (std::abs(a) < 0.1) continue;
    return {ph * a, ph * b, -ph * std::conj(b), ph * std::conj(a)};
  }
}

double sdist(const SMatrix2& a, const SMatrix2& b) {
  return std::max({std::abs(a.tbar - b.tbar), std::abs(a.r - b.r), std::abs(a.rbar - b.rbar),
                   std::abs(a.t - b.t)});
}

class Suite {
 public:
  Suite(const VerifyOptions& o) : opts_(o), rng_(o.seed) {}  // NOLINT

  bool wants(const std::string& g) const { return opts_.only.empty() || opts_.only.count(g) > 0; }

  void check(const std::string& group, const std::string& name, double defect, double tol,
             std::string detail = {}) {
    const double t = tol * opts_.tolerance_scale;
    out_.push_back({group, name, std::isfinite(defect) && defect < t, defect, t, std::move(detail)});
  }

  // Runs body and records it as a failure if it throws.
  void guarded(const std::string& group, const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      out_.push_back({group, name, false, std::numeric_limits<double>::infinity(), 0.0, e.what()});
    }
  }

  const VerifyOptions& opts_;
  Rng rng_;
  std::vector<CheckResult> out_;
};

void mathieu_checks(Suite& s) {
  s.guarded("mathieu", "v4_exact_vs_ode", [&] {
    const auto model = PotentialModel::homogeneous(4, 1.0);
    double worst = 0.0;
    for (double x : log_grid(2e-3, 1e-1, 12))
      worst = std::max(worst, std::abs(v4_amplitudes(x).r4 - solve_reflection(model, x, s.opts_.solver).r));
    s.check("mathieu", "v4_exact_vs_ode", worst, 1e-6);
  });
  s.guarded("mathieu", "low_k_limit", [&] {
    // r4 -> -1 + 2 k ell4 as k -> 0.
    const double x = 1e-5;
    const auto v = v4_amplitudes(x);
    s.check("mathieu", "low_k_limit", std::abs(1.0 + v.r4 - 2.0 * x) / (2.0 * x), 1e-3);
  });
}

void liouville_checks(Suite& s) {
  for (const auto& model : {PotentialModel::homogeneous(4, 1.0), PotentialModel::helium()}) {
    const std::string name = "invariance_" + model.name();
    s.guarded("liouville", name, [&] {
      double worst = 0.0;
      for (double x : log_grid(2e-3, 1e-1, 4)) {
        const double k = x / model.reference_length();
        const cplx a = a_from_r(solve_reflection(model, k, s.opts_.solver).r);
        const cplx ab = a_from_r(solve_transformed_reflection(model, k, s.opts_.solver).amplitudes.r);
        worst = std::max(worst, std::abs(a - ab) / std::abs(a));
      }
      s.check("liouville", name, worst, 1e-5);
    });
  }
  s.guarded("liouville", "v4_profile_even", [&] {
    const auto p = transformed_profile(PotentialModel::homogeneous(4, 1.0), 0.01,
                                       std::vector<double>{-3.0, -1.0, -0.25, 0.25, 1.0, 3.0});
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      worst = std::max(worst, std::abs(p.samples[i].vb - p.samples[5 - i].vb));
    s.check("liouville", "v4_profile_even", worst, 1e-8);
  });
  s.guarded("liouville", "zstar_hypergeometric", [&] {
    // 2 [2F1(1/2, -1/4; 3/4; -1) - 1/sqrt 2], Pfaff-transformed to argument 1/2.
    const double f = std::pow(2.0, 0.25) * boost::math::hypergeometric_pFq({0.25, -0.25}, {0.75}, 0.5);
    s.check("liouville", "zstar_hypergeometric", std::abs(zstar() - 2.0 * (f - std::sqrt(0.5))), 1e-10);
  });
}

void unitarity_checks(Suite& s) {
  for (const auto& model : {PotentialModel::helium(), PotentialModel::silica()}) {
    const std::string name = "flux_" + model.name();
    s.guarded("unitarity", name, [&] {
      std::vector<double> ks;
      for (double x : log_grid(2e-3, 1e-1, 5)) ks.push_back(x / model.reference_length());
      double worst = 0.0;
      for (const auto& a : reflectivity_sweep(model, ks, s.opts_.solver))
        worst = std::max(worst, a.ok() ? a.flux_defect() : std::numeric_limits<double>::infinity());
      s.check("unitarity", name, worst, 1e-6);
    });
  }
  s.guarded("unitarity", "s4_symmetries", [&] {
    double worst = 0.0;
    for (double x : log_grid(2e-3, 1e-1, 10)) {
      const auto v = v4_amplitudes(x);
      const auto rep = symmetry_report(SMatrix2::symmetric(v.r4, v.t4), 1e-8);
      worst = std::max({worst, rep.unitarity_defect, rep.reciprocity_defect, rep.parity_defect});
    }
    s.check("unitarity", "s4_symmetries", worst, 1e-8);
  });
}

void smatrix_checks(Suite& s) {
  constexpr int n = 200;
  double inv = 0.0, assoc = 0.0, star_inv = 0.0, compose = 0.0;
  s.guarded("smatrix", "algebra", [&] {
    for (int i = 0; i < n; ++i) {
      const auto a = random_unitary(s.rng_), b = random_unitary(s.rng_), c = random_unitary(s.rng_);
      const Mat2c m = a.matrix();
      inv = std::max(inv, (pi_involution(pi_involution(m)) - m).cwiseAbs().maxCoeff());
      assoc = std::max(assoc, sdist(star(star(a, b), c), star(a, star(b, c))));
      star_inv = std::max(star_inv, sdist(star(a, star_inverse(a)), SMatrix2::identity()));
      const auto s4 = random_symmetric_unitary(s.rng_);
      const cplx rho = random_disk(s.rng_, 0.9);
      const auto srho = SMatrix2::symmetric(rho, std::sqrt(1.0 - std::norm(rho)));
      compose = std::max(compose, std::abs(star(srho, s4).r - compose_r(s4.r, s4.t, rho)));
    }
    s.check("smatrix", "pi_involution", inv, 1e-10);
    s.check("smatrix", "star_associativity", assoc, 1e-10);
    s.check("smatrix", "star_inverse", star_inv, 1e-10);
    s.check("smatrix", "compose_r_vs_star", compose, 1e-10);
  });
}

void rho_checks(Suite& s) {
  s.guarded("rho", "round_trip", [&] {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto s4 = random_symmetric_unitary(s.rng_);
      const cplx rho = random_disk(s.rng_, 0.9);
      worst = std::max(worst, std::abs(extract_rho(compose_r(s4.r, s4.t, rho), s4.r) - rho));
    }
    s.check("rho", "round_trip", worst, 1e-10);
  });
  s.guarded("rho", "v4_rho_vanishes", [&] {
    const auto model = PotentialModel::homogeneous(4, 75.51);
    double worst = 0.0;
    for (double x : log_grid(2e-3, 1e-1, 6)) {
      const auto a = solve_reflection(model, x / 75.51, s.opts_.solver);
      worst = std::max(worst, std::abs(extract_rho(a.r, v4_amplitudes(x).r4)));
    }
    s.check("rho", "v4_rho_vanishes", worst, 1e-5);
  });
}

void beta_checks(Suite& s) {
  s.guarded("beta", "formulas_vs_series", [&] {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      std::array<cplx, 5> rho{};
      rho[0] = random_disk(s.rng_, 0.6);
      for (int j = 1; j < 5; ++j) rho[j] = random_disk(s.rng_, 1.0);
      const auto a = beta_from_rho(alpha_coefficients(), rho, 1.0);
      const auto b = beta_from_series(alpha_coefficients(), rho, 1.0);
      for (const auto& [x, y] : {std::pair{a.beta0, b.beta0}, {a.beta12, b.beta12}, {a.beta1, b.beta1},
                                 {a.beta32, b.beta32}, {a.beta2, b.beta2}, {a.beta2p, b.beta2p}})
        worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(x)));
    }
    s.check("beta", "formulas_vs_series", worst, 1e-10);
  });
}

}  // namespace

const std::vector<std::string>& verification_groups() {
  static const std::vector<std::string> g{"mathieu", "liouville", "unitarity", "smatrix", "rho", "beta"};
  return g;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  for (const auto& g : opts.only)
    if (std::find(verification_groups().begin(), verification_groups().end(), g) == verification_groups().end())
      throw ConfigError("unknown verification group '" + g + "'");
  if (!(opts.tolerance_scale >= 0.0)) throw ConfigError("tolerance scale must be non-negative");
  Suite s(opts);
  if (s.wants("mathieu")) mathieu_checks(s);
  if (s.wants("liouville")) liouville_checks(s);
  if (s.wants("unitarity")) unitarity_checks(s);
  if (s.wants("smatrix")) smatrix_checks(s);
  if (s.wants("rho")) rho_checks(s);
  if (s.wants("beta")) beta_checks(s);
  return s.out_;
}

}  // namespace qrefl

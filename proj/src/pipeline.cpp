#include "qrefl/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "qrefl/errors.hpp"
#include "qrefl/mathieu.hpp"
#include "qrefl/smatrix.hpp"

namespace qrefl {

void PipelineOptions::validate() const {
  if (!(k_ell4_min > 0.0) || !(k_ell4_max > k_ell4_min))
    throw ConfigError("window needs 0 < k_ell4_min < k_ell4_max");
  if (k_ell4_max > 0.49) throw ConfigError("k_ell4_max beyond the range of the exact V4 solution (0.49)");
  if (points < 10) throw ConfigError("at least 10 grid points are required");
  solver.validate();
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / double(n - 1);
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  auto g = uniform_grid(std::log(lo), std::log(hi), n);
  for (auto& v : g) v = std::exp(v);
  if (n > 1) g.front() = lo, g.back() = hi;
  return g;
}

PipelineResult run_pipeline(const PotentialModel& model, const PipelineOptions& opts) {
  opts.validate();
  PipelineResult res;
  res.model_name = model.name();
  res.ell4 = model.reference_length();

  const auto grid = uniform_grid(opts.k_ell4_min, opts.k_ell4_max, opts.points);
  std::vector<double> ks(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) ks[i] = grid[i] / res.ell4;
  const auto sweep = reflectivity_sweep(model, ks, opts.solver, opts.threads);

  std::vector<RhoSample> rho_samples;
  std::vector<AmplitudeSample> amp_samples;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!sweep[i].ok()) {
      ++res.failed;
      continue;
    }
    PipelineSample s;
    s.k = ks[i];
    s.k_ell4 = grid[i];
    s.kbold = std::sqrt(grid[i]);
    s.numeric = sweep[i];
    const auto v4 = v4_amplitudes(grid[i]);
    s.r4 = v4.r4;
    s.t4 = v4.t4;
    s.rho = extract_rho(s.numeric.r, s.r4);
    s.a_num = a_from_r(s.numeric.r);
    const double dr = std::max(s.numeric.error_estimate, opts.solver.rel_tol);
    s.rho_noise = dr * std::norm(s.t4) / std::norm(1.0 - std::conj(s.r4) * s.numeric.r);
    res.rho_noise_max = std::max(res.rho_noise_max, s.rho_noise);
    rho_samples.push_back({s.kbold, s.rho});
    amp_samples.push_back({s.k, s.a_num});
    res.samples.push_back(s);
  }
  if (res.failed > 0)
    res.warnings.push_back(std::to_string(res.failed) + " grid points failed and were excluded");
  if (rho_samples.size() < 10) throw NumericalError("too few successful solves to fit rho");

  res.full = fit_rho(rho_samples, Parity::Full);
  res.even = fit_rho(rho_samples, Parity::Even);
  for (auto* fit_ptr : {&res.full, &res.even}) {
    auto& fit = *fit_ptr;
    fit.window_min = opts.k_ell4_min;
    fit.window_max = opts.k_ell4_max;
    for (const auto& w : fit.warnings) res.warnings.push_back(std::string(to_string(fit.parity)) + " fit: " + w);
  }
  res.beta = beta_from_rho(alpha_coefficients(), res.full, res.ell4);
  res.modified = fit_modified_ert(amp_samples, res.ell4, res.beta.ell);
  res.comparison = compare_theories(amp_samples, res.beta, res.modified, &res.full);

  const double scatter = std::max(res.full.sigma_re, res.full.sigma_im);
  if (scatter > 0.0)
    for (const auto& s : res.samples)
      res.noise_floor_k_ell4 = std::max(res.noise_floor_k_ell4, s.k_ell4 * s.rho_noise / scatter);

  if (std::holds_alternative<Homogeneous>(model.kind()) && model.inner_exponent() == 4)
    res.warnings.push_back("pure 1/z^4 potential: rho vanishes identically, fitted coefficients are noise");
  return res;
}

}  // namespace qrefl

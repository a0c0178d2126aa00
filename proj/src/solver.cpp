#include "qrefl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "qrefl/errors.hpp"
#include "qrefl/liouville.hpp"
#include "qrefl/ode.hpp"
#include "refine.hpp"

namespace qrefl {

void SolverOptions::validate() const {
  if (!(rel_tol > 0.0) || rel_tol > 1e-4) throw ConfigError("rel_tol must lie in (0, 1e-4]");
  if (!(badlands_threshold > 0.0)) throw ConfigError("badlands threshold must be positive");
  if (!(potential_threshold > 0.0)) throw ConfigError("potential threshold must be positive");
  if (max_steps == 0) throw ConfigError("max_steps must be positive");
  if (max_refinements < 1) throw ConfigError("max_refinements must be at least 1");
}

double crossover_length(const PotentialModel& model, double k) {
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
  const double k2 = k * k;
  const auto excess = [&](double s) { return -model.eval(std::exp(s)) - k2; };
  double lo = std::log(model.reference_length());
  double hi = lo;
  for (int i = 0; excess(lo) < 0.0; ++i) {
    if (i > 200) throw NumericalError("cannot bracket |U| = k^2 from below");
    lo -= 1.0;
  }
  for (int i = 0; excess(hi) > 0.0; ++i) {
    if (i > 200) throw NumericalError("cannot bracket |U| = k^2 from above");
    hi += 1.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

Bracket bracket_domain(const PotentialModel& model, double k, const SolverOptions& opts) {
  const double zeta = crossover_length(model, k);
  const double k2 = k * k;
  const auto quiet_inside = [&](double z) {
    return std::abs(badlands_Q(model, k, z)) < opts.badlands_threshold;
  };
  const auto quiet_outside = [&](double z) {
    return quiet_inside(z) && std::abs(model.eval(z)) / k2 < opts.potential_threshold;
  };
  double z_min = zeta;
  for (int i = 0; !quiet_inside(z_min); ++i) {
    if (i > 400) throw ConvergenceError("no WKB-exact region found near the surface");
    z_min *= 0.5;
  }
  double z_max = std::max(zeta, model.reference_length());
  for (int i = 0; !(quiet_outside(z_max) && quiet_outside(2.0 * z_max)); ++i) {
    if (i > 400) throw ConvergenceError("no asymptotic region found far from the surface");
    z_max *= 2.0;
  }
  return {z_min, z_max};
}

ScatteringAmplitudes solve_reflection(const PotentialModel& model, double k,
                                      const SolverOptions& opts) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber must be positive and finite");
  opts.validate();
  const double k2 = k * k;
  const auto w = [&](double z) { return k2 - model.eval(z); };
  const ode::Control ctl{opts.rel_tol * 1e-2, opts.max_steps};
  const auto seg = [&](double a, double b) { return ode::propagate(w, a, b, ctl); };

  const auto dec = [&](const ode::Mat2& m, double z_min, double z_max) {
    // Incoming WKB wave at z_min, including the leading correction from Q.
    const LocalF in = local_F(model, k, z_min);
    const double q_in = badlands_Q(model, k, z_min);
    const double kappa_in = std::sqrt(in.f * (1.0 - q_in));
    const cplx psi0 = std::pow(in.f, -0.25);
    const cplx dpsi0 = psi0 * cplx(-in.df / (4.0 * in.f), -kappa_in);
    const auto [psi, dpsi] = m.apply(psi0, dpsi0);

    // WKB plane waves w+- = F^{-1/4} exp(+-i(kz - T(z))) at z_max.
    const LocalF out = local_F(model, k, z_max);
    const double phase = k * z_max - tail_phase(model, k, z_max);
    const double amp = std::pow(out.f, -0.25);
    const double sf = std::sqrt(out.f);
    const double lg = -out.df / (4.0 * out.f);
    const cplx wp = amp * std::polar(1.0, phase);
    const cplx wm = std::conj(wp);
    const cplx dwp = wp * cplx(lg, sf);
    const cplx dwm = wm * cplx(lg, -sf);
    const cplx two_i(0.0, 2.0);
    const cplx a = (psi * dwp - dpsi * wp) / two_i;
    const cplx b = (wm * dpsi - dwm * psi) / two_i;
    if (std::abs(a) == 0.0) throw SingularError("vanishing incoming amplitude");
    return detail::Decomposition{b / a, std::sqrt(std::sqrt(1.0 - q_in)) / std::abs(a)};
  };

  auto res = detail::refine_bracket(k, bracket_domain(model, k, opts), opts, seg, dec);
  res.phase_convention = PhaseConvention::PlaneWaveOrigin;
  return res;
}

std::vector<ScatteringAmplitudes> reflectivity_sweep(const PotentialModel& model,
                                                     std::span<const double> k_grid,
                                                     const SolverOptions& opts,
                                                     unsigned threads) {
  opts.validate();
  for (std::size_t i = 0; i < k_grid.size(); ++i)
    if (!(k_grid[i] > 0.0) || (i > 0 && !(k_grid[i] > k_grid[i - 1])))
      throw DomainError("sweep grid must be positive and strictly increasing");
  std::vector<ScatteringAmplitudes> out(k_grid.size());
  const auto solve_one = [&](std::size_t i) {
    try {
      out[i] = solve_reflection(model, k_grid[i], opts);
    } catch (const NumericalError& e) {
      out[i] = {};
      out[i].k = k_grid[i];
      out[i].status = SolveStatus::Failed;
      out[i].message = e.what();
    } catch (const DomainError& e) {
      out[i] = {};
      out[i].k = k_grid[i];
      out[i].status = SolveStatus::Failed;
      out[i].message = e.what();
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, k_grid.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < k_grid.size(); ++i) solve_one(i);
    return out;
  }
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < k_grid.size(); i += threads) solve_one(i);
    }));
  for (auto& j : jobs) j.get();
  return out;
}

}  // namespace qrefl

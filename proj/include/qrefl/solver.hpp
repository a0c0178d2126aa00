#pragma once

// Stationary scattering on an absorbing attractive potential.
//
// psi'' + (k^2 - U(z)) psi = 0 is integrated outward from a purely incoming
// WKB wave deep in the region where WKB is exact, and the solution is
// decomposed at large z into e^{-ikz} + r e^{ikz}.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qrefl/potentials.hpp"

namespace qrefl {

using cplx = std::complex<double>;

struct SolverOptions {
  double rel_tol = 1e-10;
  // z_min / z_max are placed where |Q| (and |U|/k^2 on the outside) fall
  // below these thresholds, then refined by halving / doubling.
  double badlands_threshold = 1e-8;
  double potential_threshold = 1e-6;
  std::size_t max_steps = 20'000'000;
  int max_refinements = 40;

  void validate() const;
};

enum class PhaseConvention {
  // Plane waves e^{+-ikz} with phase origin at z = 0.
  PlaneWaveOrigin,
  // Plane waves e^{+-i kb zb} referenced at the symmetric Liouville origin.
  LiouvilleSymmetric,
};

enum class SolveStatus { Ok, PrecisionWarning, Failed };

struct ScatteringAmplitudes {
  double k = 0.0;
  cplx r{};
  double t_abs = 0.0;
  PhaseConvention phase_convention = PhaseConvention::PlaneWaveOrigin;

  // Diagnostics.
  SolveStatus status = SolveStatus::Ok;
  std::string message;
  double error_estimate = 0.0;  // last |delta r| of the bracket refinements
  double z_min = 0.0;
  double z_max = 0.0;
  std::size_t steps = 0;

  double flux_defect() const { return std::abs(std::norm(r) + t_abs * t_abs - 1.0); }
  bool ok() const { return status != SolveStatus::Failed; }
};

struct Bracket {
  double z_min;
  double z_max;
};

// Length zeta at which |U(zeta)| = k^2 (sqrt(ell4/k) for a pure 1/z^4 potential).
double crossover_length(const PotentialModel& model, double k);

// Initial integration interval from the badlands thresholds.
Bracket bracket_domain(const PotentialModel& model, double k, const SolverOptions& opts);

ScatteringAmplitudes solve_reflection(const PotentialModel& model, double k,
                                      const SolverOptions& opts = {});

// Element-wise solve_reflection. Failed points are flagged (status Failed)
// rather than aborting the sweep. threads == 0 picks the hardware concurrency.
std::vector<ScatteringAmplitudes> reflectivity_sweep(const PotentialModel& model,
                                                     std::span<const double> k_grid,
                                                     const SolverOptions& opts = {},
                                                     unsigned threads = 1);

}  // namespace qrefl

#pragma once

// End-to-end low-energy analysis of one potential: sweep r(k) on a grid in
// k ell4, peel off the exact V4 element to get rho, fit it, build both
// effective-range descriptions and compare them with the numerical Atilde.

#include <string>
#include <vector>

#include "qrefl/ere.hpp"
#include "qrefl/potentials.hpp"
#include "qrefl/solver.hpp"

namespace qrefl {

struct PipelineOptions {
  double k_ell4_min = 2e-3;
  double k_ell4_max = 1e-1;
  std::size_t points = 1000;
  SolverOptions solver;
  unsigned threads = 1;

  void validate() const;
};

struct PipelineSample {
  double k = 0.0;
  double k_ell4 = 0.0;
  double kbold = 0.0;
  ScatteringAmplitudes numeric;
  cplx r4, t4;
  cplx rho;
  cplx a_num;
  double rho_noise = 0.0;  // solver error propagated to rho
};

struct PipelineResult {
  std::string model_name;
  double ell4 = 0.0;
  std::vector<PipelineSample> samples;  // successful solves only
  std::size_t failed = 0;
  RhoExpansion full;
  RhoExpansion even;
  BetaExpansion beta;
  ModifiedErtParams modified;
  ComparisonReport comparison;
  double rho_noise_max = 0.0;
  // k ell4 below which the propagated solver noise in rho would exceed the
  // full-fit residual scatter (noise grows like 1/(k ell4)).
  double noise_floor_k_ell4 = 0.0;
  std::vector<std::string> warnings;

  const RhoExpansion& fit(Parity p) const { return p == Parity::Full ? full : even; }
};

// n points, uniformly spaced, end points included.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);
std::vector<double> log_grid(double lo, double hi, std::size_t n);

PipelineResult run_pipeline(const PotentialModel& model, const PipelineOptions& opts);

}  // namespace qrefl

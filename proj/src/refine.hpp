#pragma once

// Bracket refinement shared by the physical and transformed solvers: halve
// z_min until r stops moving, then double z_max likewise. Segments are
// chained as fundamental matrices so each refinement only integrates the
// newly added piece.

#include <cmath>
#include <sstream>

#include "qrefl/errors.hpp"
#include "qrefl/ode.hpp"
#include "qrefl/solver.hpp"

namespace qrefl::detail {

struct Decomposition {
  cplx r;
  double t_abs;
};

inline std::string format_r(cplx r) {
  std::ostringstream os;
  os.precision(14);
  os << "(" << r.real() << (r.imag() < 0 ? " - " : " + ") << std::abs(r.imag()) << "i)";
  return os.str();
}

// seg(a, b) -> ode::SegmentResult on [a, b]; dec(M, z_min, z_max) -> Decomposition.
template <class Seg, class Dec>
ScatteringAmplitudes refine_bracket(double k, Bracket b, const SolverOptions& opts, Seg&& seg,
                                    Dec&& dec) {
  ScatteringAmplitudes out;
  out.k = k;
  auto first = seg(b.z_min, b.z_max);
  ode::Mat2 m = first.m;
  out.steps = first.steps;
  Decomposition cur = dec(m, b.z_min, b.z_max);
  const double target = 10.0 * opts.rel_tol;
  double last_delta = 0.0;
  bool warned = false;

  const auto refine = [&](bool inner) {
    Decomposition prev = cur;
    double delta = 0.0;
    for (int it = 0; it < opts.max_refinements; ++it) {
      if (inner) {
        const double z_new = 0.5 * b.z_min;
        auto piece = seg(z_new, b.z_min);
        m = m * piece.m;
        out.steps += piece.steps;
        b.z_min = z_new;
      } else {
        const double z_new = 2.0 * b.z_max;
        auto piece = seg(b.z_max, z_new);
        m = piece.m * m;
        out.steps += piece.steps;
        b.z_max = z_new;
      }
      cur = dec(m, b.z_min, b.z_max);
      delta = std::abs(cur.r - prev.r);
      if (delta < target) {
        last_delta = std::max(last_delta, delta);
        return;
      }
      prev = cur;
    }
    // Near the floor set by the integrator tolerance: accept with a warning.
    if (delta < 1e3 * opts.rel_tol) {
      warned = true;
      last_delta = std::max(last_delta, delta);
      return;
    }
    throw ConvergenceError(std::string("reflection amplitude did not converge while ") +
                           (inner ? "lowering z_min" : "raising z_max") +
                           ": last estimates " + format_r(prev.r) + " and " + format_r(cur.r));
  };
  refine(true);
  refine(false);

  out.r = cur.r;
  out.t_abs = cur.t_abs;
  out.z_min = b.z_min;
  out.z_max = b.z_max;
  out.error_estimate = last_delta;
  if (warned) {
    out.status = SolveStatus::PrecisionWarning;
    out.message = "bracket refinement stalled above the requested tolerance";
  }
  return out;
}

}  // namespace qrefl::detail

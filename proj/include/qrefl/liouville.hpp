#pragma once

// Liouville transformation of the reduced Schrodinger problem.
//
// With F = k^2 - U, the map zb = phi_dB(z) / sqrt(k ell4) and the rescaling
// Psi = sqrt(zb') psi turn psi'' + F psi = 0 into Psi'' + (E - V(zb)) Psi = 0
// where E = k ell4 and V = k ell4 Q(z), Q being the badlands function
// {zb, z} / (2F). Reflection amplitudes are unchanged by the map.
//
// Coordinates are "symmetric": the origin is translated so that the pure 1/z^4
// landscape V4 is even, i.e. zb(zeta) = 0 with zeta = sqrt(ell4/k). The
// translation is the universal constant zstar() and is applied for every model.

#include <span>
#include <vector>

#include "qrefl/potentials.hpp"
#include "qrefl/solver.hpp"

namespace qrefl {

struct LocalF {
  double f;    // F = k^2 - U
  double df;   // F'
  double d2f;  // F''
};

LocalF local_F(const PotentialModel& model, double k, double z);

// Q = F''/(4F^2) - 5F'^2/(16F^3), from analytic derivatives of U.
double badlands_Q(const PotentialModel& model, double k, double z);

// Integral of (sqrt(F) - k) from z to infinity.
double tail_phase(const PotentialModel& model, double k, double z);

// Integral of sqrt(F) from z1 to z2 (z1 < z2).
double phase_increment(const PotentialModel& model, double k, double z1, double z2);

// WKB phase phi_dB(z) measured from the symmetric reference point, so that
// phi_dB(z) - kz -> -sqrt(k ell4) zstar() as z -> infinity.
double wkb_phase(const PotentialModel& model, double k, double z);

// Gamma(3/4)^2 / sqrt(pi): zb(zeta) for the pure 1/z^4 map when the phase
// origin is the plane-wave origin.
double zstar();

// Transformed V4 landscape 5/(8 cosh^3 2u) with zb(u) = int_0^u sqrt(2 cosh 2u') du'.
double v4_closed_form(double zb);
// Inverse of the zb(u) relation above, u >= 0 for zb >= 0.
double v4_u_of_zb(double zb);
double v4_zb_of_u(double u);

// Transformed V3 landscape 3x(1+16x^3)/(16(1+x^3)^3), with zb(x) - x -> 0 as x -> infinity.
double v3_closed_form(double zb);
double v3_zb_of_x(double x);

class LiouvilleMap {
 public:
  // Precomputes the phase table on [z_lo, z_hi]; defaults to the solver bracket
  // widened by a decade on each side.
  LiouvilleMap(PotentialModel model, double k, double z_lo = 0.0, double z_hi = 0.0);

  const PotentialModel& model() const noexcept { return model_; }
  double k() const noexcept { return k_; }
  double ell4() const noexcept { return ell4_; }
  double zeta() const noexcept { return zeta_; }
  double energy() const noexcept { return k_ * ell4_; }     // E
  double kbold() const noexcept { return kbold_; }          // sqrt(k ell4)
  double translation() const noexcept { return -zstar(); }  // zb_phi

  double wkb_phase(double z) const;
  double z_map(double z) const;
  double inverse_map(double zb) const;
  // d zb / dz = sqrt(F / (k ell4)).
  double jacobian(double z) const;
  double badlands(double z) const;
  double vbold(double z) const { return energy() * badlands(z); }

 private:
  double tail(double z) const;

  PotentialModel model_;
  double k_, ell4_, zeta_, kbold_;
  std::vector<double> nodes_;  // ascending z
  std::vector<double> tail_;   // tail_phase at the nodes
};

struct BadlandsSample {
  double z;
  double zb;
  double q;
  double vb;
};

struct BadlandsProfile {
  std::vector<BadlandsSample> samples;
  double energy = 0.0;  // E = k ell4
  double kbold = 0.0;   // sqrt(k ell4)
};

BadlandsProfile transformed_profile(const PotentialModel& model, double k,
                                    std::span<const double> zb_grid);

// Solves Psi'' + (E - V(zb)) Psi = 0 on the zb-line with an outgoing-only wave
// at the far left and e^{-i kb zb} + r e^{i kb zb} on the right. The returned r
// uses the plane-wave-origin convention (so that it can be compared with
// solve_reflection); r_symmetric carries the phase referenced at zb = 0.
struct TransformedAmplitudes {
  ScatteringAmplitudes amplitudes;
  cplx r_symmetric{};
};

TransformedAmplitudes solve_transformed_reflection(const PotentialModel& model, double k,
                                                   const SolverOptions& opts = {});

}  // namespace qrefl

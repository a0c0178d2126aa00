#pragma once

// One-channel 2x2 scattering-matrix algebra.
//
// S = [[tbar, r], [rbar, t]] maps incoming to outgoing amplitudes; the
// involution Pi turns it into the transfer matrix T mapping right amplitudes
// to left ones, so a left element A followed by a right element B composes as
// A * B = Pi(Pi(A) Pi(B)).

#include <complex>

#include <Eigen/Core>

namespace qrefl {

using cplx = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;

struct SMatrix2 {
  cplx tbar{1.0, 0.0};
  cplx r{};
  cplx rbar{};
  cplx t{1.0, 0.0};

  static SMatrix2 identity() { return {}; }
  static SMatrix2 from_matrix(const Mat2c& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }
  // Parity-symmetric element [[t, r], [r, t]].
  static SMatrix2 symmetric(cplx r, cplx t) { return {t, r, r, t}; }

  Mat2c matrix() const {
    Mat2c m;
    m << tbar, r, rbar, t;
    return m;
  }
};

// (1/m11) [[1, -m12], [m21, det M]]. Throws SingularError when m11 is below
// 1e-12 times the max-norm of M.
Mat2c pi_involution(const Mat2c& m);

SMatrix2 star(const SMatrix2& a, const SMatrix2& b);
SMatrix2 star_inverse(const SMatrix2& s);

// r = r4 (1 - rho/r4*) / (1 - rho r4): reflection of the surface element rho
// seen through the V4 element (r4, t4), using r4^2 - t4^2 = r4/r4*.
cplx compose_r(cplx r4, cplx t4, cplx rho);
// Algebraic inverse of compose_r.
cplx extract_rho(cplx r, cplx r4);

struct SymmetryReport {
  bool unitary = false;
  bool reciprocal = false;
  bool parity = false;
  double unitarity_defect = 0.0;    // max |S^dagger S - 1|
  double reciprocity_defect = 0.0;  // max |S* - M S^-1 M|, M the swap matrix
  double det_defect = 0.0;          // ||det S| - 1|
  double parity_defect = 0.0;       // max(|rbar - r|, |tbar - t|)
};

SymmetryReport symmetry_report(const SMatrix2& s, double tol);

}  // namespace qrefl

#include "qrefl/smatrix.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "qrefl/errors.hpp"

namespace qrefl {

namespace {

constexpr double kDegenerate = 1e-12;

double max_norm(const Mat2c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

Mat2c pi_involution(const Mat2c& m) {
  const cplx p = m(0, 0);
  if (!(std::abs(p) > kDegenerate * max_norm(m)))
    throw SingularError("Pi involution: vanishing (1,1) pivot");
  Mat2c out;
  out << 1.0, -m(0, 1), m(1, 0), m.determinant();
  return out / p;
}

SMatrix2 star(const SMatrix2& a, const SMatrix2& b) {
  Mat2c ta, tb;
  try {
    ta = pi_involution(a.matrix());
  } catch (const SingularError&) {
    throw SingularError("star: left element has no transfer matrix");
  }
  try {
    tb = pi_involution(b.matrix());
  } catch (const SingularError&) {
    throw SingularError("star: right element has no transfer matrix");
  }
  try {
    return SMatrix2::from_matrix(pi_involution(ta * tb));
  } catch (const SingularError&) {
    throw SingularError("star: composed transfer matrix has a vanishing pivot");
  }
}

SMatrix2 star_inverse(const SMatrix2& s) {
  const Mat2c t = pi_involution(s.matrix());
  const cplx det = t.determinant();
  if (!(std::abs(det) > kDegenerate * std::max(1.0, max_norm(t) * max_norm(t))))
    throw SingularError("star_inverse: singular transfer matrix");
  return SMatrix2::from_matrix(pi_involution(t.inverse()));
}

cplx compose_r(cplx r4, cplx /*t4*/, cplx rho) {
  const cplx den = 1.0 - rho * r4;
  if (!(std::abs(den) > kDegenerate)) throw SingularError("compose_r: pole 1 - rho r4 = 0");
  if (!(std::abs(r4) > kDegenerate)) throw SingularError("compose_r: r4 = 0");
  return r4 * (1.0 - rho / std::conj(r4)) / den;
}

cplx extract_rho(cplx r, cplx r4) {
  if (!(std::abs(r4) > kDegenerate)) throw SingularError("extract_rho: r4 = 0");
  const cplx den = 1.0 - std::conj(r4) * r;
  if (!(std::abs(den) > kDegenerate)) throw SingularError("extract_rho: pole 1 - r4* r = 0");
  return std::conj(r4) / r4 * (r4 - r) / den;
}

SymmetryReport symmetry_report(const SMatrix2& s, double tol) {
  SymmetryReport rep;
  const Mat2c m = s.matrix();
  rep.unitarity_defect = max_norm(m.adjoint() * m - Mat2c::Identity());
  rep.det_defect = std::abs(std::abs(m.determinant()) - 1.0);
  if (std::abs(m.determinant()) > kDegenerate * std::max(1.0, max_norm(m) * max_norm(m))) {
    Mat2c swap;
    swap << 0.0, 1.0, 1.0, 0.0;
    rep.reciprocity_defect = max_norm(m.conjugate() - swap * m.inverse() * swap);
  } else {
    rep.reciprocity_defect = std::numeric_limits<double>::infinity();
  }
  rep.parity_defect = std::max(std::abs(s.rbar - s.r), std::abs(s.tbar - s.t));
  rep.unitary = rep.unitarity_defect <= tol;
  rep.reciprocal = rep.reciprocity_defect <= tol;
  rep.parity = rep.parity_defect <= tol;
  return rep;
}

}  // namespace qrefl

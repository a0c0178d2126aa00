#include "qrefl/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "qrefl/errors.hpp"
#include "qrefl/ode.hpp"
#include "refine.hpp"

namespace qrefl {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-13;
constexpr unsigned kQuadDepth = 10;
// Chunk width in ln z for the log-space quadrature.
constexpr double kChunk = 0.5 * std::numbers::ln10;

// Integral of g(z) over [z1, z2], done in s = ln z piecewise.
template <class G>
double integrate_log(const G& g, double z1, double z2) {
  if (!(z2 > z1)) return 0.0;
  const double s1 = std::log(z1), s2 = std::log(z2);
  const int n = std::max(1, static_cast<int>(std::ceil((s2 - s1) / kChunk)));
  const double h = (s2 - s1) / n;
  const auto f = [&g](double s) {
    const double z = std::exp(s);
    return g(z) * z;
  };
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = s1 + i * h;
    const double b = i + 1 == n ? s2 : a + h;
    sum += gauss_kronrod<double, 31>::integrate(f, a, b, kQuadDepth, kQuadTol);
  }
  return sum;
}

// Integral of g over [z0, infinity) via z = z0 / t; g must decay faster than 1/z.
template <class G>
double integrate_to_infinity(const G& g, double z0) {
  const auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    return g(z0 / t) * z0 / (t * t);
  };
  return gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, kQuadDepth, kQuadTol);
}

// sqrt(F) - k without cancellation.
double excess_wavenumber(const PotentialModel& model, double k, double z) {
  const double u = model.eval(z);
  return -u / (std::sqrt(k * k - u) + k);
}

double far_point(const PotentialModel& model, double k) {
  const double ell = model.reference_length();
  return 1e3 * std::max(ell, std::sqrt(ell / k));
}

double check_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber must be positive and finite");
  return k;
}

}  // namespace

LocalF local_F(const PotentialModel& model, double k, double z) {
  const auto v = model.eval_with_derivatives(z);
  return {k * k - v.u, -v.du, -v.d2u};
}

double badlands_Q(const PotentialModel& model, double k, double z) {
  const auto [f, df, d2f] = local_F(model, k, z);
  return d2f / (4.0 * f * f) - 5.0 * df * df / (16.0 * f * f * f);
}

double tail_phase(const PotentialModel& model, double k, double z) {
  check_k(k);
  if (!(z > 0.0)) throw DomainError("tail phase needs z > 0");
  const auto g = [&](double x) { return excess_wavenumber(model, k, x); };
  const double zf = std::max(z, far_point(model, k));
  return integrate_log(g, z, zf) + integrate_to_infinity(g, zf);
}

double phase_increment(const PotentialModel& model, double k, double z1, double z2) {
  check_k(k);
  if (!(z1 > 0.0) || z2 < z1) throw DomainError("phase increment needs 0 < z1 <= z2");
  const auto g = [&](double x) { return std::sqrt(k * k - model.eval(x)); };
  return integrate_log(g, z1, z2);
}

double zstar() {
  static const double v = std::pow(std::tgamma(0.75), 2) / std::sqrt(std::numbers::pi);
  return v;
}

double wkb_phase(const PotentialModel& model, double k, double z) {
  const double kb = std::sqrt(k * model.reference_length());
  return k * z - tail_phase(model, k, z) - kb * zstar();
}

double v4_zb_of_u(double u) {
  const double a = std::abs(u);
  const auto f = [](double x) { return std::sqrt(2.0 * std::cosh(2.0 * x)); };
  double s = 0.0;
  const int n = std::max(1, static_cast<int>(std::ceil(a / 2.0)));
  for (int i = 0; i < n; ++i)
    s += gauss_kronrod<double, 31>::integrate(f, a * i / n, a * (i + 1) / n, kQuadDepth, kQuadTol);
  return std::copysign(s, u);
}

double v4_u_of_zb(double zb) {
  const double a = std::abs(zb);
  if (a == 0.0) return 0.0;
  double u = a < 1.0 ? a / std::sqrt(2.0) : std::log(a + zstar());
  for (int it = 0; it < 100; ++it) {
    const double step = (v4_zb_of_u(u) - a) / std::sqrt(2.0 * std::cosh(2.0 * u));
    u = std::max(0.5 * u, u - step);
    if (std::abs(step) <= 1e-15 * std::max(1.0, u)) break;
  }
  return std::copysign(u, zb);
}

double v4_closed_form(double zb) {
  const double c = std::cosh(2.0 * v4_u_of_zb(std::abs(zb)));
  return 5.0 / (8.0 * c * c * c);
}

double v3_zb_of_x(double x) {
  if (!(x > 0.0)) throw DomainError("v3 map needs x > 0");
  const auto g = [](double t) {
    const double w = 1.0 / (t * t * t);
    return w / (std::sqrt(1.0 + w) + 1.0);
  };
  const double xf = std::max(x, 1e3);
  return x - integrate_log(g, x, xf) - integrate_to_infinity(g, xf);
}

double v3_closed_form(double zb) {
  if (!std::isfinite(zb)) throw DomainError("v3 landscape needs a finite coordinate");
  // zb(x) is increasing; solve in s = ln x.
  const auto f = [zb](double s) {
    const double x = std::exp(s);
    return std::make_pair(v3_zb_of_x(x) - zb, x * std::sqrt(1.0 + 1.0 / (x * x * x)));
  };
  double lo = zb > 1.0 ? std::log(zb) - 1.0 : -1.0;
  double hi = lo;
  while (f(lo).first > 0.0) lo -= 2.0;
  while (f(hi).first < 0.0) hi += 2.0;
  std::uintmax_t iters = 200;
  const double s = boost::math::tools::newton_raphson_iterate(f, 0.5 * (lo + hi), lo, hi, 50, iters);
  const double x = std::exp(s);
  const double x3 = x * x * x;
  return 3.0 * x * (1.0 + 16.0 * x3) / (16.0 * std::pow(1.0 + x3, 3));
}

LiouvilleMap::LiouvilleMap(PotentialModel model, double k, double z_lo, double z_hi)
    : model_(std::move(model)), k_(check_k(k)) {
  ell4_ = model_.reference_length();
  zeta_ = std::sqrt(ell4_ / k_);
  kbold_ = std::sqrt(k_ * ell4_);
  if (!(z_lo > 0.0) || !(z_hi > z_lo)) {
    const auto b = bracket_domain(model_, k_, SolverOptions{});
    z_lo = 0.1 * b.z_min;
    z_hi = 10.0 * b.z_max;
  }
  const double decades = std::log10(z_hi / z_lo);
  const int n = std::max(2, static_cast<int>(std::ceil(16.0 * decades)) + 1);
  nodes_.resize(n);
  tail_.resize(n);
  for (int i = 0; i < n; ++i) nodes_[i] = z_lo * std::pow(z_hi / z_lo, double(i) / (n - 1));
  nodes_.back() = z_hi;
  tail_.back() = tail_phase(model_, k_, z_hi);
  const auto g = [this](double x) { return excess_wavenumber(model_, k_, x); };
  for (int i = n - 2; i >= 0; --i) tail_[i] = tail_[i + 1] + integrate_log(g, nodes_[i], nodes_[i + 1]);
}

double LiouvilleMap::tail(double z) const {
  if (!(z > 0.0)) throw DomainError("Liouville map needs z > 0");
  if (z < nodes_.front() || z > nodes_.back()) return tail_phase(model_, k_, z);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), z);
  if (it == nodes_.end()) return tail_.back();
  const std::size_t j = static_cast<std::size_t>(it - nodes_.begin());
  const auto g = [this](double x) { return excess_wavenumber(model_, k_, x); };
  return tail_[j] + gauss_kronrod<double, 31>::integrate(g, z, nodes_[j], kQuadDepth, kQuadTol);
}

double LiouvilleMap::wkb_phase(double z) const { return k_ * z - tail(z) - kbold_ * zstar(); }

double LiouvilleMap::z_map(double z) const { return wkb_phase(z) / kbold_; }

double LiouvilleMap::jacobian(double z) const {
  return std::sqrt((k_ * k_ - model_.eval(z)) / (k_ * ell4_));
}

double LiouvilleMap::badlands(double z) const { return badlands_Q(model_, k_, z); }

double LiouvilleMap::inverse_map(double zb) const {
  if (!std::isfinite(zb)) throw DomainError("inverse Liouville map needs a finite coordinate");
  const auto f = [&](double s) {
    const double z = std::exp(s);
    return std::make_pair(z_map(z) - zb, jacobian(z) * z);
  };
  double lo = std::log(zeta_), hi = lo;
  for (int i = 0; f(lo).first > 0.0; ++i) {
    if (i > 200) throw NumericalError("inverse Liouville map: cannot bracket from below");
    lo -= 1.0;
  }
  for (int i = 0; f(hi).first < 0.0; ++i) {
    if (i > 200) throw NumericalError("inverse Liouville map: cannot bracket from above");
    hi += 1.0;
  }
  std::uintmax_t iters = 200;
  return std::exp(boost::math::tools::newton_raphson_iterate(f, 0.5 * (lo + hi), lo, hi, 50, iters));
}

BadlandsProfile transformed_profile(const PotentialModel& model, double k,
                                    std::span<const double> zb_grid) {
  const LiouvilleMap map(model, k);
  BadlandsProfile p;
  p.energy = map.energy();
  p.kbold = map.kbold();
  p.samples.reserve(zb_grid.size());
  for (const double zb : zb_grid) {
    const double z = map.inverse_map(zb);
    const double q = map.badlands(z);
    p.samples.push_back({z, zb, q, p.energy * q});
  }
  return p;
}

TransformedAmplitudes solve_transformed_reflection(const PotentialModel& model, double k,
                                                   const SolverOptions& opts) {
  check_k(k);
  opts.validate();
  const Bracket b0 = bracket_domain(model, k, opts);
  const LiouvilleMap map(model, k, 1e-3 * b0.z_min, 1e3 * b0.z_max);
  const double kb = map.kbold();
  const double kb2 = kb * kb;
  const ode::Control ctl{opts.rel_tol * 1e-2, opts.max_steps};

  // Independent variable zb; the physical z rides along with dz/dzb = kb/sqrt(F).
  const auto w = [&](double, double z) { return kb2 * (1.0 - badlands_Q(model, k, z)); };
  const auto g = [&](double, double z) { return kb / std::sqrt(k * k - model.eval(z)); };
  const auto seg = [&](double a, double c) {
    return ode::propagate_with_aux(w, g, a, map.z_map(a), map.z_map(c), ctl);
  };

  const auto dec = [&](const ode::Mat2& m, double z_min, double z_max) {
    const double kappa = kb * std::sqrt(1.0 - badlands_Q(model, k, z_min));
    const auto [psi, dpsi] = m.apply(1.0, cplx(0.0, -kappa));
    // Plane waves referenced at the plane-wave origin: kb*zb + kb*zstar -> kz.
    const double phase = kb * (map.z_map(z_max) + zstar());
    const cplx e = std::polar(1.0, phase);
    const cplx ratio = dpsi / cplx(0.0, kb);
    const cplx a = 0.5 * (psi - ratio) * e;
    const cplx bb = 0.5 * (psi + ratio) * std::conj(e);
    if (std::abs(a) == 0.0) throw SingularError("vanishing incoming amplitude");
    return detail::Decomposition{bb / a, std::sqrt(kappa / kb) / std::abs(a)};
  };

  TransformedAmplitudes out;
  out.amplitudes = detail::refine_bracket(k, b0, opts, seg, dec);
  out.amplitudes.phase_convention = PhaseConvention::PlaneWaveOrigin;
  out.r_symmetric = out.amplitudes.r * std::polar(1.0, 2.0 * kb * zstar());
  return out;
}

}  // namespace qrefl

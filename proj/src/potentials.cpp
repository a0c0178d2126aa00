#include "qrefl/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "qrefl/errors.hpp"

namespace qrefl {

namespace {

// Derivative at xs[i] of the Lagrange polynomial through xs[lo..hi].
double lagrange_derivative(const std::vector<double>& xs, const std::vector<double>& ys,
                           std::size_t i, std::size_t lo, std::size_t hi) {
  double d = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) {
    double w;
    if (j == i) {
      w = 0.0;
      for (std::size_t m = lo; m <= hi; ++m)
        if (m != i) w += 1.0 / (xs[i] - xs[m]);
    } else {
      double num = 1.0, den = 1.0;
      for (std::size_t m = lo; m <= hi; ++m) {
        if (m == j) continue;
        den *= xs[j] - xs[m];
        if (m != i) num *= xs[i] - xs[m];
      }
      w = num / den;
    }
    d += w * ys[j];
  }
  return d;
}

constexpr int kInnerTail = 3;
constexpr int kOuterTail = 4;

}  // namespace

Tabulated::Tabulated(std::vector<TableSample> samples, std::optional<double> ell3,
                     std::optional<double> ell4) {
  if (samples.empty()) throw ConfigError("tabulated potential has no samples");
  auto d = std::make_shared<Data>();
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(samples[i].z > 0.0)) throw ConfigError("tabulated potential: z must be positive");
    if (!(samples[i].u < 0.0)) throw ConfigError("tabulated potential: U must be negative");
    if (i > 0 && !(samples[i].z > samples[i - 1].z))
      throw ConfigError("tabulated potential: z must be strictly increasing");
    d->s.push_back(std::log(samples[i].z));
    d->p.push_back(std::log(-samples[i].u));
  }
  d->slope.assign(n, 0.0);
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t lo = i >= 2 ? i - 2 : 0;
      std::size_t hi = std::min(n - 1, lo + 4);
      lo = hi >= 4 ? std::min(lo, hi - 4) : 0;
      d->slope[i] = lagrange_derivative(d->s, d->p, i, lo, hi);
    }
    // Hyman filter: keep the interpolant monotone wherever the data is.
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double left = (d->p[i] - d->p[i - 1]) / (d->s[i] - d->s[i - 1]);
      const double right = (d->p[i + 1] - d->p[i]) / (d->s[i + 1] - d->s[i]);
      if (left * right > 0.0) {
        const double bound = 3.0 * std::min(std::abs(left), std::abs(right));
        if (d->slope[i] * right <= 0.0)
          d->slope[i] = 0.0;
        else if (std::abs(d->slope[i]) > bound)
          d->slope[i] = std::copysign(bound, right);
      }
    }
  }
  // Tails are power laws; pin the end slopes to them so the model stays C1.
  d->slope.front() = -kInnerTail;
  d->slope.back() = -kOuterTail;
  d->samples = std::move(samples);
  d->ell3 = ell3;
  d->ell4 = ell4;
  data_ = std::move(d);
}

void Tabulated::eval(double z, double& u, double& du, double& d2u) const {
  const auto& d = *data_;
  const auto& zs = d.samples;
  if (z <= zs.front().z || z >= zs.back().z) {
    const bool inner = z <= zs.front().z;
    const auto& end = inner ? zs.front() : zs.back();
    const int m = inner ? kInnerTail : kOuterTail;
    u = z == end.z ? end.u : end.u * std::pow(end.z / z, m);
    du = -m * u / z;
    d2u = m * (m + 1) * u / (z * z);
    return;
  }
  auto it = std::upper_bound(zs.begin(), zs.end(), z,
                             [](double v, const TableSample& s) { return v < s.z; });
  const std::size_t i = static_cast<std::size_t>(it - zs.begin()) - 1;
  const double s = std::log(z);
  const double h = d.s[i + 1] - d.s[i];
  const double t = (s - d.s[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double p0 = d.p[i], p1 = d.p[i + 1];
  const double m0 = d.slope[i] * h, m1 = d.slope[i + 1] * h;
  const double p = (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 +
                   (t3 - t2) * m1;
  const double dp = ((6 * t2 - 6 * t) * p0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * p1 +
                     (3 * t2 - 2 * t) * m1) /
                    h;
  const double d2p =
      ((12 * t - 6) * p0 + (6 * t - 4) * m0 + (-12 * t + 6) * p1 + (6 * t - 2) * m1) / (h * h);
  u = zs[i].z == z ? zs[i].u : -std::exp(p);
  du = u * dp / z;
  d2u = u * (d2p + dp * dp - dp) / (z * z);
}

PotentialModel::PotentialModel(Kind kind, std::string name)
    : kind_(std::move(kind)), name_(std::move(name)) {
  if (const auto* h = std::get_if<Homogeneous>(&kind_)) {
    if (h->n < 3) throw ConfigError("homogeneous potential needs n >= 3");
    if (!(h->ell > 0.0)) throw ConfigError("homogeneous potential needs ell > 0");
  } else if (const auto* m = std::get_if<Interpolated>(&kind_)) {
    if (!(m->ell3 > 0.0) || !(m->ell4 > 0.0))
      throw ConfigError("interpolated potential needs ell3 > 0 and ell4 > 0");
  }
  if (name_.empty()) name_ = describe();
}

PotentialModel PotentialModel::homogeneous(int n, double ell) {
  return PotentialModel(Homogeneous{n, ell});
}

PotentialModel PotentialModel::interpolated(double ell3, double ell4, std::string name) {
  return PotentialModel(Interpolated{ell3, ell4}, std::move(name));
}

PotentialModel PotentialModel::helium() {
  return interpolated(kHeliumEll3, kHeliumEll4, "he");
}

PotentialModel PotentialModel::silica() {
  return interpolated(kSilicaEll3, kSilicaEll4, "sio2");
}

PotentialValue PotentialModel::eval_with_derivatives(double z) const {
  if (!(z > 0.0)) throw DomainError("potential evaluated at z <= 0");
  PotentialValue v{};
  if (const auto* h = std::get_if<Homogeneous>(&kind_)) {
    const int n = h->n;
    v.u = -std::pow(h->ell, n - 2) * std::pow(z, -n);
    v.du = -n * v.u / z;
    v.d2u = n * (n + 1) * v.u / (z * z);
  } else if (const auto* m = std::get_if<Interpolated>(&kind_)) {
    const double c = m->ell4 * m->ell4 / m->ell3;
    v.u = -m->ell4 * m->ell4 / (z * z * z * (z + c));
    const double logd = 3.0 / z + 1.0 / (z + c);
    const double logd_prime = -3.0 / (z * z) - 1.0 / ((z + c) * (z + c));
    v.du = -v.u * logd;
    v.d2u = v.u * (logd * logd - logd_prime);
  } else {
    std::get<Tabulated>(kind_).eval(z, v.u, v.du, v.d2u);
  }
  return v;
}

double PotentialModel::eval(double z) const { return eval_with_derivatives(z).u; }

LengthScales PotentialModel::length_scales() const {
  if (const auto* h = std::get_if<Homogeneous>(&kind_)) {
    if (h->n == 3) return {h->ell, std::nullopt};
    if (h->n == 4) return {std::nullopt, h->ell};
    return {};
  }
  if (const auto* m = std::get_if<Interpolated>(&kind_)) return {m->ell3, m->ell4};
  const auto& t = std::get<Tabulated>(kind_);
  LengthScales ls{t.ell3(), t.ell4()};
  const auto& s = t.samples();
  if (!ls.ell3) ls.ell3 = -s.front().u * std::pow(s.front().z, 3);
  if (!ls.ell4) ls.ell4 = std::sqrt(-s.back().u) * s.back().z * s.back().z;
  return ls;
}

double PotentialModel::reference_length() const {
  const auto ls = length_scales();
  if (ls.ell4) return *ls.ell4;
  if (ls.ell3) return *ls.ell3;
  return std::get<Homogeneous>(kind_).ell;
}

int PotentialModel::inner_exponent() const {
  if (const auto* h = std::get_if<Homogeneous>(&kind_)) return h->n;
  return kInnerTail;
}

int PotentialModel::outer_exponent() const {
  if (const auto* h = std::get_if<Homogeneous>(&kind_)) return h->n;
  return kOuterTail;
}

std::string PotentialModel::describe() const {
  std::ostringstream os;
  os.precision(10);
  if (const auto* h = std::get_if<Homogeneous>(&kind_)) {
    os << "homogeneous(n=" << h->n << ", ell=" << h->ell << ")";
  } else if (const auto* m = std::get_if<Interpolated>(&kind_)) {
    os << "interpolated(ell3=" << m->ell3 << ", ell4=" << m->ell4 << ")";
  } else {
    const auto& t = std::get<Tabulated>(kind_);
    os << "tabulated(" << t.samples().size() << " samples, z=[" << t.samples().front().z << ", "
       << t.samples().back().z << "])";
  }
  return os.str();
}

PotentialModel load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open potential table '" + path + "'");
  static const std::regex meta(R"(^#\s*(ell3|ell4)\s*=\s*(\S+)\s*$)");
  std::vector<TableSample> samples;
  std::optional<double> ell3, ell4;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::smatch m;
      const std::string body = line.substr(first);
      if (std::regex_match(body, m, meta)) {
        double v = 0.0;
        try {
          std::size_t used = 0;
          v = std::stod(m[2].str(), &used);
          if (used != m[2].str().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw IngestionError(path, lineno, "malformed " + m[1].str() + " value");
        }
        if (!(v > 0.0)) throw IngestionError(path, lineno, m[1].str() + " must be positive");
        (m[1] == "ell3" ? ell3 : ell4) = v;
      }
      continue;
    }
    std::istringstream row(line);
    double z = 0.0, u = 0.0;
    std::string extra;
    if (!(row >> z >> u) || (row >> extra))
      throw IngestionError(path, lineno, "expected two numeric columns");
    if (!std::isfinite(z) || !std::isfinite(u))
      throw IngestionError(path, lineno, "non-finite value");
    if (!(z > 0.0)) throw IngestionError(path, lineno, "z must be positive");
    if (!samples.empty() && !(z > samples.back().z))
      throw IngestionError(path, lineno, "z not strictly increasing");
    if (!(u < 0.0)) throw IngestionError(path, lineno, "U must be negative (attractive)");
    samples.push_back({z, u});
  }
  if (samples.empty()) throw ConfigError("potential table '" + path + "' has no samples");
  return PotentialModel(Tabulated(std::move(samples), ell3, ell4), "table:" + path);
}

}  // namespace qrefl

#pragma once

// Reduced Casimir-Polder potential models.
//
// Units: lengths in Bohr radii and hbar^2/2m = 1, so the Schrodinger problem
// reads psi'' + (k^2 - U(z)) psi = 0 with U = 2mV/hbar^2. In these units the
// coefficients of the asymptotic power laws are C3 = ell3 and C4 = ell4^2.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qrefl {

// U = -ell_n^(n-2) / z^n.
struct Homogeneous {
  int n = 4;
  double ell = 1.0;
};

// U = -ell4^2 / (z^3 (z + ell4^2/ell3)): -ell3/z^3 near the surface, -ell4^2/z^4 far away.
struct Interpolated {
  double ell3 = 1.0;
  double ell4 = 1.0;
};

struct TableSample {
  double z;
  double u;
};

// Monotone cubic Hermite interpolant of ln|U| against ln z, with z^-3 / z^-4
// tails matched in value and slope at the table ends.
class Tabulated {
 public:
  Tabulated(std::vector<TableSample> samples, std::optional<double> ell3,
            std::optional<double> ell4);

  const std::vector<TableSample>& samples() const noexcept { return data_->samples; }
  std::optional<double> ell3() const noexcept { return data_->ell3; }
  std::optional<double> ell4() const noexcept { return data_->ell4; }

  // Returns (U, dU/dz, d2U/dz2).
  void eval(double z, double& u, double& du, double& d2u) const;

 private:
  struct Data {
    std::vector<TableSample> samples;
    std::vector<double> s;      // ln z
    std::vector<double> p;      // ln|U|
    std::vector<double> slope;  // dp/ds at the nodes
    std::optional<double> ell3, ell4;
  };
  std::shared_ptr<const Data> data_;
};

struct LengthScales {
  std::optional<double> ell3;
  std::optional<double> ell4;
};

struct PotentialValue {
  double u;    // U(z)
  double du;   // U'(z)
  double d2u;  // U''(z)
};

class PotentialModel {
 public:
  using Kind = std::variant<Homogeneous, Interpolated, Tabulated>;

  explicit PotentialModel(Kind kind, std::string name = {});

  static PotentialModel homogeneous(int n, double ell);
  static PotentialModel interpolated(double ell3, double ell4, std::string name = {});
  // Built-in aliases binding the tabulated (ell3, ell4) pairs for antihydrogen
  // on helium and silica to the interpolated model. These are model potentials,
  // not ab-initio Casimir-Polder curves.
  static PotentialModel helium();
  static PotentialModel silica();

  const Kind& kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  double eval(double z) const;
  PotentialValue eval_with_derivatives(double z) const;

  LengthScales length_scales() const;
  // Length used to build dimensionless groups: ell4 when known, else ell3/ell_n.
  double reference_length() const;
  // Exponent governing the z -> 0 divergence (3 or 4 for the built-in kinds).
  int inner_exponent() const;
  int outer_exponent() const;

  std::string describe() const;

 private:
  Kind kind_;
  std::string name_;
};

// Reads the potential-table format: '#' comments, two whitespace-separated
// numeric columns (z, U), z strictly increasing, U < 0, optional
// "# ell3 = <v>" / "# ell4 = <v>" metadata lines.
PotentialModel load_tabulated(const std::string& path);

inline constexpr double kHeliumEll3 = 16.54;
inline constexpr double kHeliumEll4 = 75.51;
inline constexpr double kSilicaEll3 = 321.3;
inline constexpr double kSilicaEll4 = 194.7;

}  // namespace qrefl

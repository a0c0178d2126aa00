#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "qrefl/errors.hpp"
#include "qrefl/potentials.hpp"

using namespace qrefl;
namespace fs = std::filesystem;

namespace {

fs::path write_table(const std::string& name, const std::string& body) {
  const auto p = fs::temp_directory_path() / ("qrefl_test_" + name + ".dat");
  std::ofstream(p) << body;
  return p;
}

double numeric_du(const PotentialModel& m, double z) {
  const double h = 1e-5 * z;
  return (m.eval(z + h) - m.eval(z - h)) / (2.0 * h);
}

double numeric_d2u(const PotentialModel& m, double z) {
  const double h = 1e-4 * z;
  return (m.eval(z + h) - 2.0 * m.eval(z) + m.eval(z - h)) / (h * h);
}

}  // namespace

TEST_CASE("homogeneous power laws") {
  const auto v4 = PotentialModel::homogeneous(4, 75.51);
  CHECK(v4.eval(75.51) == doctest::Approx(-1.0 / 75.51 / 75.51).epsilon(1e-14));
  CHECK(v4.eval(2.0) == doctest::Approx(-75.51 * 75.51 / 16.0).epsilon(1e-14));
  const auto v3 = PotentialModel::homogeneous(3, 16.54);
  CHECK(v3.eval(2.0) == doctest::Approx(-16.54 / 8.0).epsilon(1e-14));
  CHECK(v4.reference_length() == 75.51);
  CHECK(v3.reference_length() == 16.54);
}

TEST_CASE("interpolated model reproduces both power-law limits") {
  const auto he = PotentialModel::helium();
  const auto ls = he.length_scales();
  REQUIRE(ls.ell3);
  REQUIRE(ls.ell4);
  CHECK(*ls.ell3 == 16.54);
  CHECK(*ls.ell4 == 75.51);
  const double z_small = 1e-3;
  CHECK(-he.eval(z_small) * std::pow(z_small, 3) == doctest::Approx(16.54).epsilon(1e-4));
  const double z_large = 1e7;
  CHECK(-he.eval(z_large) * std::pow(z_large, 4) == doctest::Approx(75.51 * 75.51).epsilon(1e-4));

  const auto si = PotentialModel::silica();
  CHECK(*si.length_scales().ell3 == 321.3);
  CHECK(*si.length_scales().ell4 == 194.7);
}

TEST_CASE("analytic derivatives agree with finite differences") {
  for (const auto& m : {PotentialModel::homogeneous(4, 3.0), PotentialModel::homogeneous(3, 2.0),
                        PotentialModel::helium()}) {
    for (double z : {0.5, 7.0, 120.0, 3000.0}) {
      const auto v = m.eval_with_derivatives(z);
      CHECK(v.u == doctest::Approx(m.eval(z)).epsilon(1e-14));
      CHECK(v.du == doctest::Approx(numeric_du(m, z)).epsilon(1e-7));
      CHECK(v.d2u == doctest::Approx(numeric_d2u(m, z)).epsilon(1e-5));
    }
  }
}

TEST_CASE("potential rejects z <= 0") {
  const auto he = PotentialModel::helium();
  CHECK_THROWS_AS(he.eval(0.0), DomainError);
  CHECK_THROWS_AS(he.eval(-1.0), DomainError);
  CHECK_THROWS_AS(PotentialModel::homogeneous(2, 1.0), ConfigError);
  CHECK_THROWS_AS(PotentialModel::interpolated(-1.0, 2.0), ConfigError);
}

TEST_CASE("tabulated model interpolates a smooth table and extends it with power tails") {
  const auto he = PotentialModel::helium();
  std::string body = "# sampled interpolated He\n# ell3 = 16.54\n# ell4 = 75.51\n";
  const int n = 161;
  for (int i = 0; i < n; ++i) {
    const double z = std::pow(10.0, -1.0 + 5.0 * i / (n - 1));
    char line[96];
    std::snprintf(line, sizeof line, "%.17g %.17g\n", z, he.eval(z));
    body += line;
  }
  const auto p = write_table("smooth", body);
  const auto t = load_tabulated(p.string());
  CHECK(t.reference_length() == 75.51);
  CHECK(*t.length_scales().ell3 == 16.54);
  // Off-node points inside the table.
  for (double z : {0.137, 2.9, 55.5, 840.0, 61000.0}) CHECK(t.eval(z) == doctest::Approx(he.eval(z)).epsilon(1e-5));
  // Tails: continuous value and slope across both table ends.
  for (double edge : {0.1, 1e4}) {
    const double below = t.eval(edge * (1.0 - 1e-9)), above = t.eval(edge * (1.0 + 1e-9));
    CHECK(below == doctest::Approx(above).epsilon(1e-7));
    const auto a = t.eval_with_derivatives(edge * (1.0 - 1e-7));
    const auto b = t.eval_with_derivatives(edge * (1.0 + 1e-7));
    CHECK(a.du == doctest::Approx(b.du).epsilon(1e-5));
  }
  // Far tails follow the asymptotic powers.
  const double ratio_in = t.eval(1e-3) / t.eval(2e-3);
  CHECK(ratio_in == doctest::Approx(8.0).epsilon(1e-10));
  const double ratio_out = t.eval(1e6) / t.eval(2e6);
  CHECK(ratio_out == doctest::Approx(16.0).epsilon(1e-10));
  fs::remove(p);
}

TEST_CASE("table ingestion errors name the file and line") {
  SUBCASE("missing file") {
    try {
      load_tabulated("/nonexistent/dir/table.dat");
      FAIL("expected an exception");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("/nonexistent/dir/table.dat") != std::string::npos);
    }
  }
  struct Bad {
    const char* name;
    const char* body;
    int line;
  };
  for (const Bad& b : {Bad{"nonmono", "1 -1\n2 -0.5\n2 -0.4\n", 3}, Bad{"positive", "1 -1\n2 0.5\n", 2},
                       Bad{"columns", "# x\n1 -1 7\n", 2}, Bad{"text", "1 -1\nabc -2\n", 2},
                       Bad{"nonpositive_z", "0 -1\n", 1}, Bad{"meta", "# ell4 = banana\n1 -1\n", 1}}) {
    CAPTURE(b.name);
    const auto p = write_table(b.name, b.body);
    try {
      load_tabulated(p.string());
      FAIL("expected an ingestion error");
    } catch (const IngestionError& e) {
      CHECK(e.line() == b.line);
      CHECK(std::string(e.what()).find(p.string()) != std::string::npos);
    }
    fs::remove(p);
  }
  const auto empty = write_table("empty", "# only comments\n\n");
  CHECK_THROWS_AS(load_tabulated(empty.string()), ConfigError);
  fs::remove(empty);
}

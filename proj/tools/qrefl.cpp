// qrefl: command-line front end.
//
// Exit codes: 0 success, 1 numerical failure, 2 configuration or I/O error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qrefl/ere.hpp"
#include "qrefl/errors.hpp"
#include "qrefl/io.hpp"
#include "qrefl/liouville.hpp"
#include "qrefl/mathieu.hpp"
#include "qrefl/pipeline.hpp"
#include "qrefl/solver.hpp"
#include "qrefl/verify.hpp"

namespace fs = std::filesystem;
using namespace qrefl;

namespace {

// Antihydrogen mass in electron masses and the Hartree in eV.
constexpr double kAtomMass = 1837.15;
constexpr double kHartreeEv = 27.211386245988;

constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string model = "he";
  std::optional<double> ell3;
  std::optional<double> ell4;
  double k_ell4_min = 2e-3;
  double k_ell4_max = 1e-1;
  std::size_t points = 1000;
  std::string parity = "full";
  double rel_tol = 1e-10;
  std::string out = ".";
  std::string format = "csv";
  unsigned threads = 1;
};

struct ReflectArgs {
  std::optional<double> k_ell4;
};

struct LiouvilleArgs {
  std::optional<double> energy_nev;
  double k_ell4 = 1e-2;
  double zb_min = -10.0;
  double zb_max = 10.0;
  std::size_t zb_points = 401;
  bool check_even = false;
};

struct VerifyArgs {
  std::vector<std::string> only;
  double tolerance_scale = 1.0;
};

Json complex_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

PotentialModel build_model(const Common& c) {
  if (c.ell3 && !(*c.ell3 > 0.0)) throw ConfigError("--ell3 must be positive");
  if (c.ell4 && !(*c.ell4 > 0.0)) throw ConfigError("--ell4 must be positive");
  if (c.model == "v4") return PotentialModel::homogeneous(4, c.ell4.value_or(1.0));
  if (c.model == "v3") return PotentialModel::homogeneous(3, c.ell3.value_or(1.0));
  if (c.model == "he")
    return PotentialModel::interpolated(c.ell3.value_or(kHeliumEll3), c.ell4.value_or(kHeliumEll4), "he");
  if (c.model == "sio2")
    return PotentialModel::interpolated(c.ell3.value_or(kSilicaEll3), c.ell4.value_or(kSilicaEll4), "sio2");
  if (c.model.rfind("table:", 0) == 0) {
    const std::string path = c.model.substr(6);
    if (path.empty()) throw ConfigError("--model table: needs a file path");
    if (c.ell3 || c.ell4) throw ConfigError("--ell3/--ell4 cannot override a table; use its metadata lines");
    return load_tabulated(path);
  }
  throw ConfigError("unknown model '" + c.model + "' (expected v4, v3, he, sio2 or table:<path>)");
}

SolverOptions solver_options(const Common& c) {
  SolverOptions o;
  o.rel_tol = c.rel_tol;
  o.validate();
  return o;
}

PipelineOptions pipeline_options(const Common& c) {
  PipelineOptions o;
  o.k_ell4_min = c.k_ell4_min;
  o.k_ell4_max = c.k_ell4_max;
  o.points = c.points;
  o.solver = solver_options(c);
  o.threads = c.threads;
  o.validate();
  return o;
}

void check_window(const Common& c) {
  if (!(c.k_ell4_min > 0.0) || !(c.k_ell4_max > c.k_ell4_min))
    throw ConfigError("need 0 < --k-ell4-min < --k-ell4-max");
  if (c.points < 2) throw ConfigError("--points must be at least 2");
}

Json common_config(const std::string& command, const Common& c) {
  Json j;
  j["command"] = command;
  j["model"] = c.model;
  j["ell3"] = c.ell3 ? Json(*c.ell3) : Json(nullptr);
  j["ell4"] = c.ell4 ? Json(*c.ell4) : Json(nullptr);
  j["k_ell4_min"] = c.k_ell4_min;
  j["k_ell4_max"] = c.k_ell4_max;
  j["points"] = c.points;
  j["parity"] = c.parity;
  j["rel_tol"] = c.rel_tol;
  j["out"] = c.out;
  j["format"] = c.format;
  j["threads"] = c.threads;
  return j;
}

fs::path out_path(const Common& c, const std::string& stem, const std::string& ext) {
  return fs::path(c.out) / (stem + "." + ext);
}

// Writes a table in the selected format; returns the path written.
fs::path emit_table(const Common& c, const std::string& stem, const CsvTable& table, const Json& cfg,
                    const std::vector<std::string>& notes = {}) {
  if (c.format == "json") {
    Json doc = table.to_json(cfg);
    if (!notes.empty()) doc["notes"] = notes;
    const auto p = out_path(c, stem, "json");
    write_atomic(p, doc.dump(2) + "\n");
    return p;
  }
  const auto p = out_path(c, stem, "csv");
  write_atomic(p, table.render(cfg, notes));
  return p;
}

fs::path emit_json(const Common& c, const std::string& stem, Json body, const Json& cfg) {
  Json doc;
  doc["meta"] = meta_block(cfg);
  for (auto& [key, value] : body.items()) doc[key] = value;
  const auto p = out_path(c, stem, "json");
  write_atomic(p, doc.dump(2) + "\n");
  return p;
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Ok: return "ok";
    case SolveStatus::PrecisionWarning: return "precision_warning";
    case SolveStatus::Failed: return "failed";
  }
  return "?";
}

std::vector<std::string> reflect_columns() {
  return {"k", "k_ell4", "re_r", "im_r", "abs_t", "flux_defect", "status"};
}

void add_reflect_row(CsvTable& t, const ScatteringAmplitudes& a, double ell4) {
  const bool ok = a.ok();
  t.add_row({fmt(a.k), fmt(a.k * ell4), ok ? fmt(a.r.real()) : "nan", ok ? fmt(a.r.imag()) : "nan",
             ok ? fmt(a.t_abs) : "nan", ok ? fmt(a.flux_defect()) : "nan", status_name(a.status)});
}

int cmd_reflect(const Common& c, const ReflectArgs& ra) {
  const auto model = build_model(c);
  const auto opts = solver_options(c);
  const double ell4 = model.reference_length();
  Json cfg = common_config("reflect", c);
  cfg["k_ell4"] = ra.k_ell4 ? Json(*ra.k_ell4) : Json(nullptr);
  CsvTable table(reflect_columns());

  if (ra.k_ell4) {
    if (!(*ra.k_ell4 > 0.0)) throw ConfigError("--k-ell4 must be positive");
    const auto a = solve_reflection(model, *ra.k_ell4 / ell4, opts);
    add_reflect_row(table, a, ell4);
    const auto path = emit_table(c, "reflect", table, cfg);
    std::printf("model %s  k ell4 = %.6g  k = %.6g\n", model.name().c_str(), *ra.k_ell4, a.k);
    std::printf("r = %.12g %+.12gi  |r| = %.12g  |t| = %.6g\n", a.r.real(), a.r.imag(), std::abs(a.r), a.t_abs);
    std::printf("|1+r| = %.6g  (2 k ell4 = %.6g)  flux defect = %.3g\n", std::abs(1.0 + a.r),
                2.0 * *ra.k_ell4, a.flux_defect());
    if (a.status == SolveStatus::PrecisionWarning) std::fprintf(stderr, "warning: %s\n", a.message.c_str());
    std::printf("wrote %s\n", path.c_str());
    return 0;
  }

  check_window(c);
  std::vector<double> ks = uniform_grid(c.k_ell4_min, c.k_ell4_max, c.points);
  for (double& k : ks) k /= ell4;
  const auto sweep = reflectivity_sweep(model, ks, opts, c.threads);
  std::size_t failed = 0, warned = 0;
  double worst = 0.0;
  const ScatteringAmplitudes* first_failure = nullptr;
  for (const auto& a : sweep) {
    add_reflect_row(table, a, ell4);
    if (!a.ok()) {
      ++failed;
      if (!first_failure) first_failure = &a;
      continue;
    }
    warned += a.status == SolveStatus::PrecisionWarning;
    worst = std::max(worst, a.flux_defect());
  }
  const auto path = emit_table(c, "reflect", table, cfg);
  std::printf("model %s  %zu points  k ell4 in [%g, %g]\n", model.name().c_str(), sweep.size(), c.k_ell4_min,
              c.k_ell4_max);
  std::printf("max flux defect %.3g  precision warnings %zu  failures %zu\n", worst, warned, failed);
  std::printf("wrote %s\n", path.c_str());
  if (failed) {
    std::fprintf(stderr, "error: %zu solves failed; first at k = %g: %s\n", failed, first_failure->k,
                 first_failure->message.c_str());
    return kExitNumerical;
  }
  return 0;
}

int cmd_liouville(const Common& c, const LiouvilleArgs& la) {
  const auto model = build_model(c);
  const double ell4 = model.reference_length();
  double k = 0.0;
  if (la.energy_nev) {
    if (!(*la.energy_nev > 0.0)) throw ConfigError("--energy-nev must be positive");
    k = std::sqrt(2.0 * kAtomMass * *la.energy_nev * 1e-9 / kHartreeEv);
  } else {
    if (!(la.k_ell4 > 0.0)) throw ConfigError("--k-ell4 must be positive");
    k = la.k_ell4 / ell4;
  }
  if (!(la.zb_max > la.zb_min) || la.zb_points < 2) throw ConfigError("need --zb-min < --zb-max and --zb-points >= 2");

  const auto grid = uniform_grid(la.zb_min, la.zb_max, la.zb_points);
  const auto prof = transformed_profile(model, k, grid);

  Json cfg = common_config("liouville", c);
  cfg["energy_nev"] = la.energy_nev ? Json(*la.energy_nev) : Json(nullptr);
  cfg["k_ell4"] = k * ell4;
  cfg["zb_min"] = la.zb_min;
  cfg["zb_max"] = la.zb_max;
  cfg["zb_points"] = la.zb_points;
  cfg["check_even"] = la.check_even;

  CsvTable table({"z", "zbold", "Q", "Vbold", "V4bold", "V3_asymptote"});
  double vmax = -1.0, zb_at_max = 0.0;
  for (const auto& s : prof.samples) {
    table.add_row({fmt(s.z), fmt(s.zb), fmt(s.q), fmt(s.vb), fmt(v4_closed_form(s.zb)),
                   s.zb < 0.0 ? fmt(3.0 / (4.0 * s.zb * s.zb)) : std::string()});
    if (s.vb > vmax) vmax = s.vb, zb_at_max = s.zb;
  }
  const std::vector<std::string> notes{"k = " + fmt(k) + ", E = k ell4 = " + fmt(prof.energy) +
                                       ", kbold = " + fmt(prof.kbold)};
  const auto path = emit_table(c, "profile", table, cfg, notes);
  std::printf("model %s  k = %.6g  k ell4 = %.6g  kbold = %.6g\n", model.name().c_str(), k, prof.energy, prof.kbold);
  std::printf("max Vbold = %.10g at zbold = %.6g\n", vmax, zb_at_max);
  std::printf("wrote %s\n", path.c_str());

  if (la.check_even) {
    std::vector<double> mirrored(grid.rbegin(), grid.rend());
    for (double& z : mirrored) z = -z;
    const auto mirror = transformed_profile(model, k, mirrored);
    double defect = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      defect = std::max(defect, std::abs(prof.samples[i].vb - mirror.samples[grid.size() - 1 - i].vb));
    std::printf("evenness defect %.3g (tolerance 1e-08)\n", defect);
    if (!(defect < 1e-8)) {
      std::fprintf(stderr, "error: transformed potential is not even\n");
      return kExitNumerical;
    }
  }
  return 0;
}

Json rho_json(const RhoExpansion& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coefficients) coeffs.push_back(complex_json(c));
  Json j;
  j["rho"] = coeffs;
  j["parity"] = to_string(f.parity);
  j["sigma_hat_re"] = f.sigma_re;
  j["sigma_hat_im"] = f.sigma_im;
  j["condition_number"] = f.condition_number;
  j["warnings"] = f.warnings;
  return j;
}

Json beta_json(const BetaExpansion& b) {
  Json j;
  j["beta0"] = complex_json(b.beta0);
  j["beta1_2"] = complex_json(b.beta12);
  j["beta1"] = complex_json(b.beta1);
  j["beta3_2"] = complex_json(b.beta32);
  j["beta2"] = complex_json(b.beta2);
  j["beta2_log"] = complex_json(b.beta2p);
  return j;
}

std::vector<AmplitudeSample> amplitude_samples(const PipelineResult& r) {
  std::vector<AmplitudeSample> out;
  out.reserve(r.samples.size());
  for (const auto& s : r.samples) out.push_back({s.k, s.a_num});
  return out;
}

void print_warnings(const std::vector<std::string>& w) {
  for (const auto& s : w) std::fprintf(stderr, "warning: %s\n", s.c_str());
}

int cmd_fit(const Common& c) {
  const auto model = build_model(c);
  const auto popts = pipeline_options(c);
  const Parity parity = parse_parity(c.parity);
  const auto res = run_pipeline(model, popts);
  const auto& fit = res.fit(parity);
  const auto beta = parity == Parity::Full ? res.beta : beta_from_rho(alpha_coefficients(), fit, res.ell4);
  const auto amps = amplitude_samples(res);
  const auto cmp = compare_theories(amps, beta, res.modified, &fit);
  const Json cfg = common_config("fit", c);

  Json body;
  body["model"] = model.describe();
  body["window"] = Json::array({fit.window_min, fit.window_max});
  body["grid_size"] = fit.grid_size;
  body["failed_points"] = res.failed;
  body["rho"] = rho_json(fit)["rho"];
  body["rho_parity"] = to_string(parity);
  body["sigma_hat_re"] = fit.sigma_re;
  body["sigma_hat_im"] = fit.sigma_im;
  body["fits"] = Json{{"full", rho_json(res.full)}, {"even", rho_json(res.even)}};
  body["beta"] = beta_json(beta);
  body["ell"] = complex_json(beta.ell);
  body["ell4"] = res.ell4;
  body["alpha_tilde_2"] = complex_json(res.modified.alpha_tilde2);
  body["R0"] = complex_json(res.modified.r0);
  body["max_rel_error_modified"] = cmp.max_rel_error_modified;
  body["max_rel_error_improved"] = cmp.max_rel_error_improved;
  body["max_rel_error_two_step"] = cmp.max_rel_error_two_step;
  body["rho_noise_max"] = res.rho_noise_max;
  body["noise_floor_k_ell4"] = res.noise_floor_k_ell4;
  std::vector<std::string> warnings = res.warnings;
  warnings.insert(warnings.end(), fit.warnings.begin(), fit.warnings.end());
  body["warnings"] = warnings;
  const auto report = emit_json(c, "fit_report", body, cfg);

  CsvTable grid({"k", "k_ell4", "kbold", "re_rho", "im_rho", "re_rho_fit", "im_rho_fit", "rho_noise"});
  for (const auto& s : res.samples) {
    const cplx f = fit.eval(s.kbold);
    grid.add_row({fmt(s.k), fmt(s.k_ell4), fmt(s.kbold), fmt(s.rho.real()), fmt(s.rho.imag()), fmt(f.real()),
                  fmt(f.imag()), fmt(s.rho_noise)});
  }
  const auto grid_path = emit_table(c, "rho_grid", grid, cfg);

  std::printf("model %s  parity %s  %zu points (%zu failed)\n", model.name().c_str(), to_string(parity),
              fit.grid_size, res.failed);
  for (int i = 0; i < 5; ++i)
    std::printf("rho%d = %.8g %+.8gi\n", i, fit.coefficients[i].real(), fit.coefficients[i].imag());
  std::printf("sigma_hat re %.3g im %.3g   ell = %.6g %+.6gi\n", fit.sigma_re, fit.sigma_im, beta.ell.real(),
              beta.ell.imag());
  std::printf("max rel error improved %.3g  modified %.3g\n", cmp.max_rel_error_improved, cmp.max_rel_error_modified);
  print_warnings(warnings);
  std::printf("wrote %s\nwrote %s\n", report.c_str(), grid_path.c_str());
  return res.failed ? kExitNumerical : 0;
}

int cmd_compare(const Common& c) {
  const auto model = build_model(c);
  const auto res = run_pipeline(model, pipeline_options(c));
  const auto& cmp = res.comparison;
  const Json cfg = common_config("compare", c);

  Json body;
  body["model"] = model.describe();
  body["window"] = Json::array({res.full.window_min, res.full.window_max});
  body["grid_size"] = res.samples.size();
  body["failed_points"] = res.failed;
  body["max_rel_error_improved"] = cmp.max_rel_error_improved;
  body["max_rel_error_modified"] = cmp.max_rel_error_modified;
  body["max_rel_error_two_step"] = cmp.max_rel_error_two_step;
  body["modified_over_improved"] = cmp.max_rel_error_modified / cmp.max_rel_error_improved;
  body["ell"] = complex_json(res.beta.ell);
  body["ell4"] = res.ell4;
  body["alpha_tilde_2"] = complex_json(res.modified.alpha_tilde2);
  body["R0"] = complex_json(res.modified.r0);
  body["warnings"] = res.warnings;
  const auto report = emit_json(c, "comparison", body, cfg);

  CsvTable ratios({"k_ell4", "re_ratio_improved", "im_ratio_improved", "re_ratio_modified", "im_ratio_modified"});
  for (const auto& p : cmp.ratios)
    ratios.add_row({fmt(p.k_ell4), fmt(p.improved.real()), fmt(p.improved.imag()), fmt(p.modified.real()),
                    fmt(p.modified.imag())});
  const auto ratio_path = emit_table(c, "ratios", ratios, cfg);

  std::printf("model %s  %zu points (%zu failed)\n", model.name().c_str(), res.samples.size(), res.failed);
  std::printf("max rel error improved %.3g  modified %.3g  (modified/improved %.3g)\n", cmp.max_rel_error_improved,
              cmp.max_rel_error_modified, cmp.max_rel_error_modified / cmp.max_rel_error_improved);
  std::printf("two-step (exact V4 element + fitted rho) %.3g\n", cmp.max_rel_error_two_step);
  print_warnings(res.warnings);
  std::printf("wrote %s\nwrote %s\n", report.c_str(), ratio_path.c_str());
  return res.failed ? kExitNumerical : 0;
}

int cmd_verify(const Common& c, const VerifyArgs& va) {
  VerifyOptions vo;
  vo.tolerance_scale = va.tolerance_scale;
  vo.only.insert(va.only.begin(), va.only.end());
  vo.solver = solver_options(c);
  const auto results = run_verification(vo);

  Json cfg = common_config("verify", c);
  cfg["only"] = va.only;
  cfg["tolerance_scale"] = va.tolerance_scale;
  Json checks = Json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::printf("%s %s.%s  defect %.3g  tolerance %.3g%s%s\n", r.passed ? "PASS" : "FAIL", r.group.c_str(),
                r.name.c_str(), r.defect, r.tolerance, r.detail.empty() ? "" : "  ", r.detail.c_str());
    passed += r.passed;
    checks.push_back({{"group", r.group},
                      {"name", r.name},
                      {"passed", r.passed},
                      {"defect", std::isfinite(r.defect) ? Json(r.defect) : Json(nullptr)},
                      {"tolerance", r.tolerance},
                      {"detail", r.detail}});
  }
  const auto path = emit_json(c, "verify_report", Json{{"passed", passed}, {"total", results.size()}, {"checks", checks}}, cfg);
  std::printf("%zu/%zu checks passed\nwrote %s\n", passed, results.size(), path.c_str());
  if (passed != results.size()) {
    for (const auto& r : results)
      if (!r.passed) std::fprintf(stderr, "failed: %s.%s\n", r.group.c_str(), r.name.c_str());
    return kExitNumerical;
  }
  return 0;
}

int cmd_v4_exact(const Common& c) {
  check_window(c);
  if (c.k_ell4_max > 0.49) throw ConfigError("the exact V4 solution needs k ell4 <= 0.49");
  const Json cfg = common_config("v4-exact", c);
  CsvTable table({"k_ell4", "kbold", "tau", "re_r4", "im_r4", "re_t4", "im_t4", "re_A4", "im_A4"});
  for (double x : uniform_grid(c.k_ell4_min, c.k_ell4_max, c.points)) {
    const auto v = v4_amplitudes(x);
    const cplx a = a_from_r(v.r4);
    table.add_row({fmt(x), fmt(std::sqrt(x)), fmt(v.tau), fmt(v.r4.real()), fmt(v.r4.imag()), fmt(v.t4.real()),
                   fmt(v.t4.imag()), fmt(a.real()), fmt(a.imag())});
  }
  const auto path = emit_table(c, "v4_exact", table, cfg);
  std::printf("%zu points  k ell4 in [%g, %g]\nwrote %s\n", table.rows(), c.k_ell4_min, c.k_ell4_max, path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum reflection of atoms on Casimir-Polder potentials", "qrefl"};
  app.set_version_flag("--version", version_string());
  app.set_config("--config", "", "Key-value config file mirroring the long flags");
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--model", c.model, "v4 | v3 | he | sio2 | table:<path>")->capture_default_str();
  app.add_option("--ell3", c.ell3, "Override ell3 (bohr)");
  app.add_option("--ell4", c.ell4, "Override ell4 (bohr)");
  app.add_option("--k-ell4-min", c.k_ell4_min, "Window start in k ell4")->capture_default_str();
  app.add_option("--k-ell4-max", c.k_ell4_max, "Window end in k ell4")->capture_default_str();
  app.add_option("--points", c.points, "Grid size")->capture_default_str();
  app.add_option("--parity", c.parity, "rho fit parity")->check(CLI::IsMember({"full", "even"}))->capture_default_str();
  app.add_option("--rel-tol", c.rel_tol, "Solver relative tolerance")->capture_default_str();
  app.add_option("--out", c.out, "Output directory")->capture_default_str();
  app.add_option("--format", c.format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--threads", c.threads, "Sweep threads (0 = all cores)")->capture_default_str();

  ReflectArgs ra;
  auto* reflect = app.add_subcommand("reflect", "Reflection sweep, or a single point with --k-ell4");
  reflect->add_option("--k-ell4", ra.k_ell4, "Single wavenumber in units of 1/ell4");

  LiouvilleArgs la;
  auto* liouville = app.add_subcommand("liouville", "Transformed potential profile in Liouville coordinates");
  liouville->add_option("--energy-nev", la.energy_nev, "Atom energy in neV (overrides --k-ell4)");
  liouville->add_option("--k-ell4", la.k_ell4, "Wavenumber in units of 1/ell4")->capture_default_str();
  liouville->add_option("--zb-min", la.zb_min, "Profile start in zbold")->capture_default_str();
  liouville->add_option("--zb-max", la.zb_max, "Profile end in zbold")->capture_default_str();
  liouville->add_option("--zb-points", la.zb_points, "Profile samples")->capture_default_str();
  liouville->add_flag("--check-even", la.check_even, "Fail unless the profile is even in zbold");

  auto* fit = app.add_subcommand("fit", "Fit rho and the effective-range coefficients");
  auto* compare = app.add_subcommand("compare", "Compare improved and modified effective-range descriptions");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run the invariant self-check suite");
  verify->add_option("--only", va.only, "Restrict to groups (comma separated)")->delimiter(',')
      ->check(CLI::IsMember(verification_groups()));
  verify->add_option("--tolerance-scale", va.tolerance_scale, "Multiply every tolerance")->capture_default_str();

  auto* v4 = app.add_subcommand("v4-exact", "Exact r4, t4 of the pure 1/z^4 potential");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*reflect) return cmd_reflect(c, ra);
    if (*liouville) return cmd_liouville(c, la);
    if (*fit) return cmd_fit(c);
    if (*compare) return cmd_compare(c);
    if (*verify) return cmd_verify(c, va);
    if (*v4) return cmd_v4_exact(c);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitConfig;
}

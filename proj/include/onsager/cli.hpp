// Copyright 2026 The Onsager Algebra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONSAGER_CLI_HPP
#define ONSAGER_CLI_HPP

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "onsager/config.hpp"
#include "onsager/errors.hpp"
#include "onsager/integrability.hpp"
#include "onsager/intertwiner.hpp"
#include "onsager/report.hpp"
#include "onsager/spectral.hpp"
#include "onsager/verifier.hpp"

namespace onsager::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUnknownKind = 2, kBadConfig = 3, kCapExceeded = 4 };

struct Options {
  std::string model_path;
  std::string out_path;
  std::string report_path;
  std::uint64_t seed = 7;
  std::optional<double> tol;
  int samples = 5;
  int depth = 3;
  double u = 0.3;
  double v = -0.2;
  std::string theta_grid;
  bool degeneracies = false;
  bool free_check = false;
  bool timing = false;
  std::size_t cap = kDefaultDenseCap;
  std::string target;
};

/// "a:b:n" -> n evenly spaced points from a to b inclusive.
inline std::vector<double> parse_grid(const std::string &spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("theta grid must look like a:b:n");
  double a = 0.0, b = 0.0;
  int n = 0;
  try {
    a = std::stod(parts[0]);
    b = std::stod(parts[1]);
    n = std::stoi(parts[2]);
  } catch (const std::exception &) {
    throw ConfigError("theta grid must look like a:b:n");
  }
  if (n < 1) throw ConfigError("theta grid needs n >= 1");
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
  return out;
}

/// Stamp the seed, apply --tol, and zero timings unless requested.
inline void finish_reports(std::vector<VerificationReport> &reports, const Options &o) {
  for (auto &r : reports) {
    r.seed = o.seed;
    if (!o.timing) r.wall_ms = 0.0;
    if (o.tol && !r.params.contains("expect")) {
      r.tolerance = *o.tol;
      r.finalize();
    }
  }
}

inline void write_reports(std::ostream &os, const std::vector<VerificationReport> &reports) {
  for (const auto &r : reports) os << to_json(r).dump() << '\n';
}

/// Writes to `path`, or to `fallback` when the path is empty.
class Sink {
 public:
  Sink(const std::string &path, std::ostream &fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot open output file " + path);
    os_ = file_.get();
  }
  std::ostream &stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream *os_;
};

inline std::vector<VerificationReport> run_verify(const ModelSpec &m, const Options &o) {
  const std::string &t = o.target;
  if (t == "gca") return verify_gca(m);
  if (t == "gtl") return verify_gtl(m);
  if (t == "onsager") return verify_onsager(m, o.depth);
  if (t == "charges") return verify_commuting_charges(m);
  if (t == "duality") return verify_duality(m);
  if (t == "all") return verify_all(m, o.depth);
  throw ConfigError("unknown verify suite " + t);
}

inline std::vector<VerificationReport> run_integrability(const ModelSpec &m, const Options &o) {
  const std::string &t = o.target;
  std::vector<VerificationReport> out;
  if (t == "ff-condition") {
    out.push_back(check_free_fermion(FreeFermionSource::kTrigonometric, o.samples, o.seed));
    out.push_back(check_free_fermion(FreeFermionSource::kFullTheta, o.samples, o.seed));
    return out;
  }
  if (t == "r-limits") return check_r_limits(m.theta, o.samples, o.seed);
  LaxOperator lax = lax_for_model(m);
  if (t == "ybe") {
    if (m.kind == ModelKind::kFf8v && m.theta == 0.0) {
      out.push_back(check_ybe(r_8v_spec(), lax, o.samples, o.seed));
      out.push_back(check_ybe(r_8v_spec(), o.samples, o.seed, false));
    } else if (m.kind == ModelKind::kFf8v) {
      RMatrixSpec r = r_8v_full_spec(m.theta);
      out.push_back(check_ybe(r, lax, o.samples, o.seed));
      out.push_back(check_ybe(r, o.samples, o.seed, true));
    } else if (m.kind == ModelKind::kFendley) {
      out.push_back(check_ybe(r_fendley_spec(), lax, o.samples, o.seed));
      out.push_back(check_ybe(r_fendley_spec(), o.samples, o.seed, false));
    } else {
      for (const ScanPoint &p : theta_scan({lax.name == "lax_fendley" ? 0.0 : m.theta}, o.samples, o.seed)) {
        nlohmann::json params = to_json(p);
        out.push_back(make_report("integrability", "ybe_solver:kernel_dim", "yang-baxter-rll", params,
                                  p.kernel_dim == 1 ? 0.0 : 1.0, 0.0, o.seed));
        out.push_back(make_report("integrability", "ybe_solver:rll", "yang-baxter-rll", params, p.ybe_residual < 0 ? 1.0 : p.ybe_residual,
                                  1e-8, o.seed));
        out.push_back(make_report("integrability", "ybe_solver:rrr", "yang-baxter-rrr", params, p.rrr_residual < 0 ? 1.0 : p.rrr_residual,
                                  1e-8, o.seed));
      }
    }
    return out;
  }
  if (t == "transfer") {
    const double tol = m.theta == 0.0 ? 1e-10 : 1e-8;
    out.push_back(check_transfer_commutation(lax, m.L, o.samples, o.seed, tol, o.cap));
    ModelSpec homogeneous = m;
    homogeneous.boundary = Boundary::kPeriodic;
    homogeneous.couplings.clear();
    homogeneous.lambda = 1.0;
    out.push_back(check_transfer_hamiltonian(lax, m.L, to_dense(hamiltonian(homogeneous), o.cap), o.samples, o.seed,
                                             1e-9, o.cap));
    return out;
  }
  if (t == "charges") {
    out = check_charges(m);
    out.push_back(check_derivative_fd(lax, m.L, o.samples, o.seed));
    return out;
  }
  throw ConfigError("unknown integrability check " + t);
}

inline std::vector<VerificationReport> run_rsolve(const ModelSpec &m, const Options &o) {
  std::vector<VerificationReport> out;
  if (!o.theta_grid.empty()) {
    for (const ScanPoint &p : theta_scan(parse_grid(o.theta_grid), o.samples, o.seed)) {
      nlohmann::json params = to_json(p);
      out.push_back(make_report("rsolve", "scan:kernel_dim", "intertwiner-solver", params, p.kernel_dim == 1 ? 0.0 : 1.0,
                                0.0, o.seed));
    }
    return out;
  }
  LaxOperator lax = lax_for_model(m);
  const Complex u(o.u, 0.0), v(o.v, 0.0);
  IntertwinerSolution s = solve_intertwiner(lax, u, v);
  nlohmann::json params = {{"lax", lax.name}, {"u", complex_json(u)}, {"v", complex_json(v)},
                           {"kernel_dim", s.kernel_dim}, {"singular_tail", s.singular_values}};
  out.push_back(
      make_report("rsolve", "kernel_dim", "intertwiner-solver", params, s.kernel_dim == 1 ? 0.0 : 1.0, 0.0, o.seed));
  if (s.kernel_dim != 1) return out;
  const ComplexMatrix &cand = s.candidates[0];
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < cand.rows(); ++i)
    for (Eigen::Index j = 0; j < cand.cols(); ++j)
      if (std::abs(cand(i, j)) > 1e-12) entries.push_back({i, j, complex_json(cand(i, j))});
  params["nonzero_entries"] = entries;
  std::optional<ComplexMatrix> reference;
  if (lax.name == "lax_fendley") reference = r_fendley(u, v);
  if (lax.name == "lax_8v") reference = r_8v(u - v);
  if (reference) {
    ScalarMatch match = match_to_reference(cand, *reference);
    params["scalar"] = complex_json(match.scalar);
    out.push_back(make_report("rsolve", "match_closed_form", "intertwiner-solver", params, match.residual, 1e-8, o.seed));
  }
  out.push_back(make_report("rsolve", "ybe_rll", "yang-baxter-rll", params,
                            ybe_rll_residual(cand, lax.evaluate(u), lax.evaluate(v), lax.aux_dim, lax.phys_dim), 1e-8,
                            o.seed));
  return out;
}

inline std::vector<VerificationReport> run_spectrum(const ModelSpec &m, const Options &o, std::ostream &csv,
                                                    std::ostream &err = std::cerr) {
  SpectrumResult res = spectrum(m, o.cap);
  std::vector<VerificationReport> out;
  nlohmann::json params = to_json(m);
  if (!res.hermitian) {
    err << "warning: " << res.warning << '\n';
    csv << "index,re,im\n" << std::setprecision(15);
    for (std::size_t k = 0; k < res.complex_values.size(); ++k)
      csv << k << ',' << res.complex_values[k].real() << ',' << res.complex_values[k].imag() << '\n';
    return out;
  }
  const double tol = o.tol.value_or(default_degeneracy_tolerance(res.energies));
  auto clusters = degeneracies(res.energies, tol);
  if (o.degeneracies)
    write_degeneracy_csv(csv, clusters);
  else
    write_spectrum_csv(csv, res.energies, tol);
  std::size_t total = 0;
  for (const auto &c : clusters) total += static_cast<std::size_t>(c.multiplicity);
  out.push_back(make_report("spectrum", "multiplicity_sum", "degeneracy-table", params,
                            static_cast<double>(total > res.energies.size() ? total - res.energies.size()
                                                                            : res.energies.size() - total),
                            0.0));
  if (o.free_check) {
    nlohmann::json attempts = nlohmann::json::array();
    bool found = false;
    for (const auto &a : free_spectrum_search(res.energies, tol)) {
      attempts.push_back({{"trivial_multiplicity", a.trivial_multiplicity},
                          {"modes", a.modes},
                          {"found", a.found},
                          {"epsilons", a.epsilons}});
      found = found || a.found;
    }
    auto p = params;
    p["attempts"] = attempts;
    out.push_back(make_report("spectrum", "free_spectrum", "free-spectrum", p, found ? 0.0 : 1.0, 0.0));
  }
  return out;
}

/// Entry point; returns the process exit code.
inline int run(int argc, const char *const *argv, std::ostream &stdout_stream = std::cout,
               std::ostream &stderr_stream = std::cerr) {
  CLI::App app{"Onsager algebra and integrability verification"};
  app.require_subcommand(1);
  Options o;
  double tol_value = 0.0;

  auto common = [&](CLI::App *sub, bool seeded) {
    sub->add_option("--model", o.model_path, "model config (TOML or JSON)")->required();
    sub->add_option("--out", o.out_path, "output file (default stdout)");
    sub->add_option("--tol", tol_value, "override every report tolerance");
    sub->add_flag("--timing", o.timing, "record wall-clock milliseconds");
    sub->add_option("--cap", o.cap, "largest dense dimension");
    if (seeded) sub->add_option("--seed", o.seed, "random seed");
  };
  CLI::App *verify = app.add_subcommand("verify", "algebraic relation suites");
  verify->add_option("suite", o.target, "gca|gtl|onsager|charges|duality|all")
      ->required()
      ->check(CLI::IsMember({"gca", "gtl", "onsager", "charges", "duality", "all"}));
  verify->add_option("--depth", o.depth, "Onsager tower depth");
  common(verify, true);

  CLI::App *integ = app.add_subcommand("integrability", "Yang-Baxter, transfer matrix and charge checks");
  integ->add_option("check", o.target, "ybe|transfer|charges|ff-condition|r-limits")
      ->required()
      ->check(CLI::IsMember({"ybe", "transfer", "charges", "ff-condition", "r-limits"}));
  integ->add_option("--samples", o.samples, "random parameter samples");
  common(integ, true);

  CLI::App *rsolve = app.add_subcommand("rsolve", "solve for the intertwiner");
  rsolve->add_option("--u", o.u, "first spectral parameter");
  rsolve->add_option("--v", o.v, "second spectral parameter");
  rsolve->add_option("--theta-grid", o.theta_grid, "a:b:n scan of the mixing angle");
  rsolve->add_option("--samples", o.samples, "parameter pairs per grid point");
  common(rsolve, true);

  CLI::App *spec = app.add_subcommand("spectrum", "exact diagonalization");
  spec->add_flag("--degeneracies", o.degeneracies, "emit the degeneracy table");
  spec->add_flag("--free-check", o.free_check, "search for a free-fermion decomposition");
  spec->add_option("--report", o.report_path, "JSON-lines report file");
  common(spec, true);

  CLI::App *tower = app.add_subcommand("tower", "Onsager tower relations");
  tower->add_option("--depth", o.depth, "tower depth");
  common(tower, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    stdout_stream << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    stderr_stream << "error: " << e.what() << '\n';
    return kBadConfig;
  }
  auto given = [&](CLI::App *sub) { return sub->parsed() && sub->count("--tol") > 0; };
  if (given(verify) || given(integ) || given(rsolve) || given(spec) || given(tower)) o.tol = tol_value;

  try {
    ModelSpec m = load_model_config(o.model_path);
    std::vector<VerificationReport> reports;
    if (spec->parsed()) {
      Sink csv(o.out_path, stdout_stream);
      reports = run_spectrum(m, o, csv.stream(), stderr_stream);
      finish_reports(reports, o);
      if (!o.report_path.empty()) {
        Sink rep(o.report_path, stdout_stream);
        write_reports(rep.stream(), reports);
      }
    } else {
      if (verify->parsed()) {
        reports = run_verify(m, o);
      } else if (integ->parsed()) {
        reports = run_integrability(m, o);
      } else if (rsolve->parsed()) {
        reports = run_rsolve(m, o);
      } else {
        reports = verify_onsager(m, o.depth);
      }
      finish_reports(reports, o);
      Sink out(o.out_path, stdout_stream);
      write_reports(out.stream(), reports);
    }
    return all_passed(reports) ? kOk : kFailed;
  } catch (const ModelKindError &e) {
    stderr_stream << "error: " << e.what() << '\n';
    return kUnknownKind;
  } catch (const ConfigError &e) {
    stderr_stream << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const CapExceeded &e) {
    stderr_stream << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::exception &e) {
    stderr_stream << "error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace onsager::cli

#endif  // ONSAGER_CLI_HPP

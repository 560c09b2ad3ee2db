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

#ifndef ONSAGER_REPORT_HPP
#define ONSAGER_REPORT_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace onsager {

/**
 * One verified relation instance. `anchor` is a short tag naming the relation
 * family (for example "dolan-grady"); `passed` is residual <= tolerance.
 */
struct VerificationReport {
  std::string suite;
  std::string name;
  std::string anchor;
  nlohmann::json params = nlohmann::json::object();
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;

  void finalize() { passed = std::isfinite(residual) && residual <= tolerance; }
};

inline VerificationReport make_report(std::string suite, std::string name, std::string anchor, nlohmann::json params,
                                      double residual, double tolerance, std::uint64_t seed = 0) {
  VerificationReport r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.params = std::move(params);
  r.residual = residual;
  r.tolerance = tolerance;
  r.seed = seed;
  r.finalize();
  return r;
}

/// Reports that pass when the residual exceeds a floor (used for asserted non-relations).
inline VerificationReport make_lower_bound_report(std::string suite, std::string name, std::string anchor,
                                                  nlohmann::json params, double residual, double floor) {
  VerificationReport r = make_report(std::move(suite), std::move(name), std::move(anchor), std::move(params), residual,
                                     floor);
  r.passed = std::isfinite(residual) && residual > floor;
  r.params["expect"] = "residual > tol";
  return r;
}

inline nlohmann::json to_json(const VerificationReport &r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["name"] = r.name;
  j["paper_anchor"] = r.anchor;
  j["params"] = r.params;
  j["residual"] = r.residual;
  j["tol"] = r.tolerance;
  j["passed"] = r.passed;
  j["seed"] = r.seed;
  j["wall_ms"] = r.wall_ms;
  return j;
}

inline bool all_passed(const std::vector<VerificationReport> &reports) {
  return std::all_of(reports.begin(), reports.end(), [](const VerificationReport &r) { return r.passed; });
}

inline double max_residual(const std::vector<VerificationReport> &reports) {
  double m = 0.0;
  for (const auto &r : reports) m = std::max(m, r.residual);
  return m;
}

/// Milliseconds elapsed since construction.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace onsager

#endif  // ONSAGER_REPORT_HPP

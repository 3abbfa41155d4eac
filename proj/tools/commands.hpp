// Copyright 2026 The qdho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Subcommand bodies of the qdho tool. Each takes its parsed inputs plus
// output and diagnostic streams and returns the process exit code.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdho/qdho.hpp"

namespace qdho::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInvalidConfig = 2, kTruncation = 3 };

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Fills `c` from a JSON object whose keys mirror ScenarioConfig fields.
inline void apply_json(ScenarioConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    if (j.contains("omega")) c.omega = j.at("omega").get<double>();
    if (j.contains("mu")) c.mu = j.at("mu").get<double>();
    if (j.contains("nu")) c.nu = j.at("nu").get<double>();
    if (j.contains("dim")) c.dim = j.at("dim").get<Eigen::Index>();
    if (j.contains("initial")) c.initial = parse_initial(j.at("initial").get<std::string>());
    if (j.contains("t_max")) c.t_max = j.at("t_max").get<double>();
    if (j.contains("steps")) c.steps = j.at("steps").get<int>();
    if (j.contains("rk4_dt") && !j.at("rk4_dt").is_null()) c.rk4_dt = j.at("rk4_dt").get<double>();
    if (j.contains("methods")) {
      c.methods.clear();
      const auto& m = j.at("methods");
      if (m.is_string()) {
        std::stringstream ss(m.get<std::string>());
        for (std::string item; std::getline(ss, item, ',');) c.methods.push_back(parse_method(item));
      } else {
        for (const auto& item : m) c.methods.push_back(parse_method(item.get<std::string>()));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

inline void load_json_file(ScenarioConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse config file " + path + ": " + e.what());
  }
  apply_json(c, j);
}

/// Runs `body`, translating library errors into exit codes and messages.
template <typename F>
int guarded(std::ostream& err, F body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const TruncationError& e) {
    err << "error: truncation inadequate: " << e.what() << '\n';
    return kTruncation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

inline int cmd_simulate(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    const DensityMatrix rho0 = initial_density(config);
    const std::vector<double> times = time_grid(config);
    out << "t,method,trace_drift,purity,mean_n,re_mean_a,im_mean_a,min_eig\n";
    for (Method m : config.methods) {
      const std::vector<DensityMatrix> states = evolve(config, m, rho0, times);
      for (std::size_t i = 0; i < times.size(); ++i) {
        const ObservableRecord r = observe(states[i], times[i]);
        out << fmt(r.t) << ',' << method_name(m) << ',' << fmt(r.trace_drift) << ',' << fmt(r.purity) << ','
            << fmt(r.mean_n) << ',' << fmt(r.mean_a.real()) << ',' << fmt(r.mean_a.imag()) << ','
            << fmt(r.min_eig) << '\n';
      }
    }
    return kOk;
  });
}

inline nlohmann::json scenario_json(const ScenarioConfig& c) {
  nlohmann::json j;
  j["omega"] = c.omega;
  j["mu"] = c.mu;
  j["nu"] = c.nu;
  j["dim"] = c.dim;
  j["initial"] = format_initial(c.initial);
  j["t_max"] = c.t_max;
  j["steps"] = c.steps;
  j["methods"] = nlohmann::json::array();
  for (Method m : c.methods) j["methods"].push_back(std::string(method_name(m)));
  j["rk4_dt"] = c.rk4_dt ? nlohmann::json(*c.rk4_dt) : nlohmann::json(nullptr);
  return j;
}

/// Pairwise Frobenius distances between methods at every time point.
inline int cmd_compare(const ScenarioConfig& config, double tol, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    if (config.methods.size() < 2) throw ConfigError("compare needs at least two methods");
    if (!(tol >= 0.0)) throw ConfigError("tolerance must be >= 0");
    const DensityMatrix rho0 = initial_density(config);
    const std::vector<double> times = time_grid(config);
    std::vector<std::vector<DensityMatrix>> runs;
    for (Method m : config.methods) runs.push_back(evolve(config, m, rho0, times));

    std::vector<std::string> pair_names;
    for (std::size_t i = 0; i < runs.size(); ++i)
      for (std::size_t j = i + 1; j < runs.size(); ++j)
        pair_names.push_back(std::string(method_name(config.methods[i])) + ":" +
                             std::string(method_name(config.methods[j])));

    double max_distance = 0.0;
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t k = 0; k < times.size(); ++k) {
      nlohmann::json distances = nlohmann::json::array();
      for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t j = i + 1; j < runs.size(); ++j) {
          const double d = (runs[i][k].matrix() - runs[j][k].matrix()).norm();
          max_distance = std::max(max_distance, std::isfinite(d) ? d : INFINITY);
          distances.push_back(d);
        }
      }
      points.push_back({{"t", times[k]}, {"distances", distances}});
    }
    const bool pass = max_distance <= tol;
    nlohmann::json report;
    report["scenario"] = scenario_json(config);
    report["pairs"] = pair_names;
    report["points"] = points;
    report["max_distance"] = max_distance;
    report["tol"] = tol;
    report["pass"] = pass;
    out << report.dump(2) << '\n';
    if (!pass) err << "max_distance " << fmt(max_distance) << " exceeds tol " << fmt(tol) << '\n';
    return pass ? kOk : kFailure;
  });
}

inline int cmd_check(std::uint64_t seed, bool list_only, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (list_only) {
      for (const Invariant& inv : invariant_suite()) out << inv.name << '\n';
      return kOk;
    }
    bool all = true;
    for (const InvariantResult& r : run_invariants(seed)) {
      all = all && r.passed();
      out << (r.passed() ? "PASS " : "FAIL ") << std::left << std::setw(36) << r.name << " measured=" << fmt(r.measured)
          << " tol=" << fmt(r.tolerance) << '\n';
    }
    out << (all ? "all invariants pass" : "invariant failures") << " (seed " << seed << ")\n";
    return all ? kOk : kFailure;
  });
}

inline int cmd_classical(double omega, double gamma, cplx alpha, double t_max, int steps, std::ostream& out,
                         std::ostream& err) {
  return guarded(err, [&] {
    const ClassicalParams cp(omega, gamma, alpha);
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ConfigError("invariant t_max >= 0 violated");
    if (steps < 1) throw ConfigError("invariant steps >= 1 violated");
    out << "t,x_exact,x_approx,abs_diff\n";
    for (int k = 0; k < steps; ++k) {
      const double t = steps == 1 ? t_max : (k == steps - 1 ? t_max : t_max * k / (steps - 1));
      const double exact = classical_trajectory(cp, t);
      const double approx = classical_approximation(cp, t);
      out << fmt(t) << ',' << fmt(exact) << ',' << fmt(approx) << ',' << fmt(std::abs(exact - approx)) << '\n';
    }
    return kOk;
  });
}

}  // namespace qdho::cli

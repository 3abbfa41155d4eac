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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

struct ScenarioFlags {
  std::optional<double> omega, mu, nu, t_max, dt;
  std::optional<long> dim;
  std::optional<int> steps;
  std::optional<std::string> initial, methods, config;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f) {
  cmd->add_option("--omega", f.omega, "oscillator angular frequency");
  cmd->add_option("--mu", f.mu, "damping-in rate (mu > nu)");
  cmd->add_option("--nu", f.nu, "damping-out rate (nu >= 0)");
  cmd->add_option("--dim", f.dim, "Fock space truncation D");
  cmd->add_option("--initial", f.initial, "vacuum | fock:n | coherent:re,im | squeezed:re,im");
  cmd->add_option("--tmax", f.t_max, "final time");
  cmd->add_option("--steps", f.steps, "number of time points");
  cmd->add_option("--methods", f.methods, "comma-separated subset of analytic,expm,rk4");
  cmd->add_option("--dt", f.dt, "RK4 step (default tmax/2048)");
  cmd->add_option("--config", f.config, "JSON scenario file; flags override its values");
}

// JSON file first, then explicit flags on top.
qdho::ScenarioConfig resolve(const ScenarioFlags& f) {
  qdho::ScenarioConfig c;
  if (f.config) qdho::cli::load_json_file(c, *f.config);
  if (f.omega) c.omega = *f.omega;
  if (f.mu) c.mu = *f.mu;
  if (f.nu) c.nu = *f.nu;
  if (f.dim) c.dim = *f.dim;
  if (f.initial) c.initial = qdho::parse_initial(*f.initial);
  if (f.t_max) c.t_max = *f.t_max;
  if (f.steps) c.steps = *f.steps;
  if (f.dt) c.rk4_dt = *f.dt;
  if (f.methods) {
    c.methods.clear();
    std::stringstream ss(*f.methods);
    for (std::string item; std::getline(ss, item, ',');) c.methods.push_back(qdho::parse_method(item));
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum damped harmonic oscillator: closed-form and numerical evolution"};
  app.require_subcommand(1);
  std::string out_path = "stdout";
  app.add_option("--out", out_path, "output file, or stdout");

  ScenarioFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "time series of observables as CSV");
  add_scenario_flags(simulate, sim_flags);
  simulate->add_option("--out", out_path, "output file, or stdout");

  ScenarioFlags cmp_flags;
  double tol = 1e-6;
  auto* compare = app.add_subcommand("compare", "pairwise distances between methods as JSON");
  add_scenario_flags(compare, cmp_flags);
  compare->add_option("--tol", tol, "largest accepted Frobenius distance");
  compare->add_option("--out", out_path, "output file, or stdout");

  std::uint64_t seed = 0;
  bool list_only = false;
  auto* check = app.add_subcommand("check", "run the algebraic invariant suite");
  check->add_option("--seed", seed, "seed for random inputs");
  check->add_flag("--list", list_only, "print invariant names only");
  check->add_option("--out", out_path, "output file, or stdout");

  double c_omega = 1.0, c_gamma = 0.1, c_tmax = 10.0;
  int c_steps = 101;
  std::string c_alpha = "0.5,0";
  auto* classical = app.add_subcommand("classical", "classical damped oscillator, exact vs approximate");
  classical->add_option("--omega", c_omega, "angular frequency");
  classical->add_option("--gamma", c_gamma, "damping rate");
  classical->add_option("--alpha", c_alpha, "complex amplitude re,im");
  classical->add_option("--tmax", c_tmax, "final time");
  classical->add_option("--steps", c_steps, "number of time points");
  classical->add_option("--out", out_path, "output file, or stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qdho::cli::kInvalidConfig;
  }

  std::unique_ptr<std::ofstream> file;
  if (out_path != "stdout") {
    file = std::make_unique<std::ofstream>(out_path);
    if (!*file) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      return qdho::cli::kInvalidConfig;
    }
  }
  std::ostream& out = file ? *file : std::cout;
  std::ostream& err = std::cerr;

  if (*simulate) {
    return qdho::cli::guarded(err, [&] { return qdho::cli::cmd_simulate(resolve(sim_flags), out, err); });
  }
  if (*compare) {
    return qdho::cli::guarded(err, [&] { return qdho::cli::cmd_compare(resolve(cmp_flags), tol, out, err); });
  }
  if (*check) return qdho::cli::cmd_check(seed, list_only, out, err);
  return qdho::cli::guarded(err, [&] {
    const qdho::cplx alpha = qdho::detail::parse_complex(c_alpha, "--alpha");
    return qdho::cli::cmd_classical(c_omega, c_gamma, alpha, c_tmax, c_steps, out, err);
  });
}

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

// Scenario description shared by the command-line tool: model, initial
// state, time grid and the evolution methods to run.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>
#include <future>

#include "qdho/analytic.hpp"
#include "qdho/error.hpp"
#include "qdho/fock.hpp"
#include "qdho/lindblad.hpp"

namespace qdho {

enum class Method { kAnalytic, kExpm, kRk4 };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::kAnalytic: return "analytic";
    case Method::kExpm: return "expm";
    case Method::kRk4: return "rk4";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "analytic") return Method::kAnalytic;
  if (s == "expm") return Method::kExpm;
  if (s == "rk4") return Method::kRk4;
  throw ConfigError("unknown method '" + std::string(s) + "' (expected analytic, expm or rk4)");
}

struct InitialState {
  enum class Kind { kVacuum, kFock, kCoherent, kSqueezed };
  Kind kind = Kind::kVacuum;
  Eigen::Index level = 0;  // kFock
  cplx amplitude{};        // kCoherent (alpha) or kSqueezed (beta)
};

namespace detail {

inline double parse_number(std::string_view text, const std::string& context) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ConfigError("cannot parse number '" + s + "' in " + context);
  }
  return v;
}

inline cplx parse_complex(std::string_view text, const std::string& context) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return {parse_number(text, context), 0.0};
  return {parse_number(text.substr(0, comma), context), parse_number(text.substr(comma + 1), context)};
}

}  // namespace detail

/// vacuum | fock:n | coherent:re,im | squeezed:re,im
inline InitialState parse_initial(std::string_view text) {
  const std::string context = "initial state '" + std::string(text) + "'";
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  InitialState s;
  if (kind == "vacuum" && arg.empty()) {
    s.kind = InitialState::Kind::kVacuum;
  } else if (kind == "fock" && !arg.empty()) {
    const double n = detail::parse_number(arg, context);
    if (n < 0 || n != std::floor(n)) throw ConfigError("fock level must be a non-negative integer in " + context);
    s.kind = InitialState::Kind::kFock;
    s.level = static_cast<Eigen::Index>(n);
  } else if (kind == "coherent" && !arg.empty()) {
    s.kind = InitialState::Kind::kCoherent;
    s.amplitude = detail::parse_complex(arg, context);
  } else if (kind == "squeezed" && !arg.empty()) {
    s.kind = InitialState::Kind::kSqueezed;
    s.amplitude = detail::parse_complex(arg, context);
  } else {
    throw ConfigError("cannot parse " + context + " (expected vacuum, fock:n, coherent:re,im or squeezed:re,im)");
  }
  return s;
}

inline std::string format_initial(const InitialState& s) {
  std::ostringstream os;
  os.precision(17);
  switch (s.kind) {
    case InitialState::Kind::kVacuum: os << "vacuum"; break;
    case InitialState::Kind::kFock: os << "fock:" << s.level; break;
    case InitialState::Kind::kCoherent: os << "coherent:" << s.amplitude.real() << ',' << s.amplitude.imag(); break;
    case InitialState::Kind::kSqueezed: os << "squeezed:" << s.amplitude.real() << ',' << s.amplitude.imag(); break;
  }
  return os.str();
}

/// Defaults keep the boundary population below 1e-10 up to t = 5.
struct ScenarioConfig {
  double omega = 1.0;
  double mu = 0.4;
  double nu = 0.1;
  Eigen::Index dim = 20;
  InitialState initial{InitialState::Kind::kCoherent, 0, cplx(1.0, 0.0)};
  double t_max = 5.0;
  int steps = 10;
  std::vector<Method> methods{Method::kAnalytic};
  std::optional<double> rk4_dt;
};

/// Throws ConfigError naming the violated invariant.
inline void validate(const ScenarioConfig& c) {
  if (!std::isfinite(c.omega) || !std::isfinite(c.mu) || !std::isfinite(c.nu)) {
    throw ConfigError("omega, mu and nu must be finite");
  }
  if (!(c.nu >= 0.0)) throw ConfigError("invariant nu >= 0 violated (nu=" + std::to_string(c.nu) + ")");
  if (!(c.mu > c.nu)) {
    throw ConfigError("invariant mu > nu violated (mu=" + std::to_string(c.mu) + ", nu=" + std::to_string(c.nu) + ")");
  }
  if (c.dim < 2) throw ConfigError("invariant dim >= 2 violated (dim=" + std::to_string(c.dim) + ")");
  if (!(c.t_max >= 0.0) || !std::isfinite(c.t_max)) {
    throw ConfigError("invariant t_max >= 0 violated (t_max=" + std::to_string(c.t_max) + ")");
  }
  if (c.steps < 1) throw ConfigError("invariant steps >= 1 violated (steps=" + std::to_string(c.steps) + ")");
  if (c.methods.empty()) throw ConfigError("at least one method is required");
  if (c.rk4_dt && (!(*c.rk4_dt > 0.0) || !std::isfinite(*c.rk4_dt))) {
    throw ConfigError("invariant dt > 0 violated (dt=" + std::to_string(*c.rk4_dt) + ")");
  }
  if (c.initial.kind == InitialState::Kind::kFock && c.initial.level >= c.dim) {
    throw ConfigError("fock level " + std::to_string(c.initial.level) + " must be below dim " + std::to_string(c.dim));
  }
}

inline ModelParams model_params(const ScenarioConfig& c) {
  return ModelParams(c.omega, c.mu, c.nu, FockSpace(c.dim));
}

/// Throws TruncationError when the state does not fit in `dim` levels.
inline DensityMatrix initial_density(const ScenarioConfig& c) {
  const FockSpace space(c.dim);
  switch (c.initial.kind) {
    case InitialState::Kind::kVacuum: return density_from_pure(fock_state(space, 0));
    case InitialState::Kind::kFock: return density_from_pure(fock_state(space, c.initial.level));
    case InitialState::Kind::kCoherent: return density_from_pure(coherent_state(space, c.initial.amplitude));
    case InitialState::Kind::kSqueezed: return density_from_pure(squeezed_state(space, c.initial.amplitude));
  }
  throw ConfigError("unknown initial state");
}

/// `steps` evenly spaced times from 0 to t_max inclusive; a single step is t_max alone.
inline std::vector<double> time_grid(const ScenarioConfig& c) {
  if (c.steps == 1) return {c.t_max};
  std::vector<double> times(static_cast<std::size_t>(c.steps));
  for (int k = 0; k < c.steps; ++k) times[static_cast<std::size_t>(k)] = c.t_max * k / (c.steps - 1);
  times.back() = c.t_max;
  return times;
}

namespace detail {

// Evaluates f at every time, spreading the work over the available cores.
template <typename F>
std::vector<DensityMatrix> map_times(const std::vector<double>& times, F f) {
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::optional<DensityMatrix>> slots(times.size());
  if (workers == 1 || times.size() < 2) {
    for (std::size_t i = 0; i < times.size(); ++i) slots[i].emplace(f(times[i]));
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < std::min(workers, times.size()); ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < times.size(); i += workers) slots[i].emplace(f(times[i]));
      }));
    }
    for (auto& j : jobs) j.get();
  }
  std::vector<DensityMatrix> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace detail

/// Density matrices of one method at each time of `times`.
inline std::vector<DensityMatrix> evolve(const ScenarioConfig& c, Method m, const DensityMatrix& rho0,
                                         const std::vector<double>& times) {
  const ModelParams params = model_params(c);
  switch (m) {
    case Method::kAnalytic:
      return detail::map_times(times, [&](double t) { return general_solution(params, rho0, t); });
    case Method::kExpm: {
      const Liouvillian l = build_liouvillian(params);
      return detail::map_times(times, [&](double t) { return propagate_expm(l, rho0, t); });
    }
    case Method::kRk4: {
      const double horizon = times.empty() ? 0.0 : *std::max_element(times.begin(), times.end());
      const double dt = c.rk4_dt.value_or(horizon > 0.0 ? horizon / kDefaultRk4Steps : 1.0);
      return propagate_rk4_series(params, rho0, times, dt);
    }
  }
  throw ConfigError("unknown method");
}

}  // namespace qdho

// Copyright 2026 The aqcsim authors
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

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aqc/evolution.hpp"
#include "aqc/problems.hpp"

namespace aqc {

struct SAConfig {
  enum class TemperatureSchedule { LinearInT, GemanLog };
  enum class SpinSelection { Random, Sequential };

  TemperatureSchedule schedule = TemperatureSchedule::LinearInT;
  double t_init = 2.0;
  double t_final = 0.05;
  double geman_p = 0.0;      // 0: max term magnitude of the instance
  double geman_alpha = 0.0;  // 0: e^{-n}
  long sweeps = 1000;
  SpinSelection selection = SpinSelection::Random;
  int repetitions = 1;
  std::uint64_t seed = 0;
  bool record_trace = false;

  void validate() const;
};

struct SAResult {
  double best_energy = 0.0;
  int success_count = 0;  // repetitions that reached the known optimum
  int repetitions = 0;
  std::vector<double> energy_trace;  // best-so-far per sweep of the first repetition
};

// Metropolis single-spin dynamics on the classical cost of a diagonal final
// Hamiltonian. Deterministic in config.seed.
SAResult simulated_annealing(const ProblemInstance& instance, const SAConfig& config);

// time-to-solution at target probability p_d; p_S = 0 maps to +infinity and
// p_S = 1 to t_f
double tts(double t_f, double p_s, double p_d = 0.99);

// exact ground-space population of the evolved state (no sampling noise)
double quantum_success_probability(const ProblemInstance& instance, const Schedule& schedule,
                                   double t_f, bool use_symmetric_sector,
                                   const StepperOptions& stepper = {});

struct BenchmarkRow {
  std::string family;
  int n = 0;
  std::string solver;
  double knob = 0.0;  // t_f or sweeps
  double success = 0.0;
  double tts_value = 0.0;
};

struct PowerFit {
  double exponent = 0.0;
  double prefactor_log = 0.0;
  double r_squared = 0.0;
};

// least squares on (log x, log y)
PowerFit power_fit(const std::vector<double>& xs, const std::vector<double>& ys);
// least squares on (x, log y): exponential rate fits
PowerFit exp_fit(const std::vector<double>& xs, const std::vector<double>& ys);

struct QuantumSolverSpec {
  std::string name = "aqc-linear";
  std::function<Schedule(const ProblemInstance&)> schedule;
  std::vector<double> t_f_grid;
  bool use_symmetric_sector = false;
  StepperOptions stepper;
};

struct SASolverSpec {
  std::string name = "sa";
  SAConfig base;
  std::vector<long> sweep_grid;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;
  // per (solver, n): the TTS optimum over the swept grid
  std::vector<BenchmarkRow> optima;
  std::string csv() const;
};

BenchmarkReport benchmark(const std::function<ProblemInstance(int)>& factory,
                          const std::vector<int>& sizes,
                          const std::vector<QuantumSolverSpec>& quantum_solvers,
                          const std::vector<SASolverSpec>& sa_solvers, double p_d = 0.99);

}  // namespace aqc

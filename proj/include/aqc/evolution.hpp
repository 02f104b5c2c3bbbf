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

#include <optional>
#include <utility>
#include <vector>

#include "aqc/schedules.hpp"
#include "aqc/spectra.hpp"

namespace aqc {

struct StepperOptions {
  int steps = 0;        // 0: max(1000, ceil(20 * t_f * ||H||))
  double dt = 0.0;      // alternative to steps (in s units)
  int k_track = 0;      // instantaneous-eigenstate overlaps to record
  int track_samples = 101;
  double max_dA = 5e-4;  // cap on schedule movement per step
  int krylov_max = 48;
};

struct EvolutionResult {
  CVec final_state;
  double t_f = 0.0;
  // per sampled s: |<eps_j(s)|psi(s)>|^2 for j < k_track (sorted order)
  std::vector<std::pair<double, Vec>> overlap_trace;
  long step_count = 0;
  double norm_drift = 0.0;
};

// Integrates (1/t_f) d|psi>/ds = -i H(A(s)) |psi> from s=0 to 1 with
// unitarity-preserving steps (midpoint Hamiltonian, Krylov exponential).
EvolutionResult evolve(const HamiltonianPath& path, const Schedule& schedule, double t_f,
                       const CVec& psi0, const StepperOptions& options = {});

// 1 - (weight of `result.final_state` on the ground space of H(1))
double adiabatic_error(const EvolutionResult& result, const HamiltonianPath& path,
                       double degeneracy_tol = -1.0);
double ground_space_weight(const CVec& state, const HamiltonianPath& path, double s,
                           double degeneracy_tol = -1.0);

// --- Trotterized circuit emulation -------------------------------------------

struct TrotterStep {
  CMat first;   // exp(-i dt f0(s_m) H0)
  CMat second;  // exp(-i dt f1(s_m) H1)
};

struct Trotterization {
  std::vector<TrotterStep> steps;  // m = 1..M, applied in order
  double t_f = 0.0;
};

// Splits the interpolation into 2M factor unitaries.
// Requires a two-component path and dense-size operators.
Trotterization trotterize(const HamiltonianPath& path, double t_f, int M,
                          int dense_limit = 8);

// ||U_exact - prod U''_m|| with U_exact from a fine reference propagation
double trotter_deviation(const HamiltonianPath& path, const Trotterization& trotter);

// --- measurement helpers ------------------------------------------------------

// probability of outcome 1 when measuring `qubit` of a (possibly unnormalized)
// state in the X basis returns P(-); Z basis returns P(1).
double probability_qubit_one(const CVec& state, int qubit);
double probability_qubit_minus(const CVec& state, int qubit);
// exact renormalized post-measurement state
CVec project_qubit_z(const CVec& state, int qubit, int outcome);
CVec project_qubit_x(const CVec& state, int qubit, int outcome_minus);

std::string trace_csv(const EvolutionResult& result);

}  // namespace aqc

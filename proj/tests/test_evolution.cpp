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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aqc/evolution.hpp"
#include "aqc/problems.hpp"
#include "aqc/rng.hpp"

using namespace aqc;

namespace {

HamiltonianPath constant_path(OperatorSum op) {
  HamiltonianPath p;
  p.add(Coeff::constant(1.0), std::move(op));
  return p;
}

}  // namespace

TEST_CASE("stationary state picks up only a phase") {
  OperatorSum z(1);
  z.add_pauli(1.0, {{0, Axis::Z}});
  HamiltonianPath path = constant_path(std::move(z));
  EvolutionResult result = evolve(path, linear(), kPi, basis_state(1, 0));
  CHECK(std::abs(result.final_state[0] - Complex(-1, 0)) < 1e-8);
  CHECK(std::abs(result.final_state[1]) < 1e-12);
  CHECK(result.norm_drift <= 1e-9);
}

TEST_CASE("Grover n=2 with the Roland-Cerf schedule reaches the marked state") {
  ProblemInstance inst = make_grover(2, 3);
  double N = 4.0;
  double t_f = 10.0 * (kPi / 2.0) * std::sqrt(N);
  EvolutionResult result = evolve(inst.path, roland_cerf(N), t_f, uniform_state(2));
  double overlap = std::norm(result.final_state[3]);
  CHECK(overlap >= 0.99);
  CHECK(result.norm_drift <= 1e-9);
}

TEST_CASE("Bernstein-Vazirani: one B-register measurement reveals the string") {
  int n = 3;
  std::uint64_t a = 0b101;
  ProblemInstance inst = make_bernstein_vazirani(n, a);
  CVec psi0 = uniform_state(n + 1);
  EvolutionResult result = evolve(inst.path, linear(), 300.0, psi0);
  // x-basis statistics on the B qubit are 50/50
  double p_minus = probability_qubit_minus(result.final_state, n);
  CHECK(p_minus == doctest::Approx(0.5).epsilon(5e-3));
  // conditioned on '-', the A register encodes a bitwise
  CVec conditioned = project_qubit_x(result.final_state, n, 1);
  std::string expect;
  for (int k = 0; k < n; ++k) expect += ((a >> k) & 1) ? '-' : '+';
  expect += '-';
  CVec target = product_state(expect);
  CHECK(std::abs(target.dot(conditioned)) >= 0.999);
}

TEST_CASE("adiabatic_error trivial cases") {
  ProblemInstance inst = make_grover(3, 2);
  EvolutionResult fake;
  fake.final_state = basis_state(3, 2);
  CHECK(adiabatic_error(fake, inst.path) == doctest::Approx(0.0).epsilon(1e-10));
  fake.final_state = basis_state(3, 4);
  CHECK(adiabatic_error(fake, inst.path) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("final-time adiabatic distance scales as 1/t_f") {
  // plain Hamming weight, n=4, linear schedule. The projector distance
  // sqrt(error) carries the O(1/t_f) scaling; samples are spread slightly to
  // step over oscillation nulls.
  ProblemInstance inst = make_plain_hw(4);
  CVec psi0 = uniform_state(4);
  std::vector<double> log_t, log_d;
  for (double t_f = 18.0; t_f <= 190.0; t_f *= 1.45) {
    double worst = 0.0;
    for (double stretch : {1.0, 1.06, 1.13}) {
      EvolutionResult run = evolve(inst.path, linear(), t_f * stretch, psi0);
      worst = std::max(worst, std::sqrt(adiabatic_error(run, inst.path)));
    }
    log_t.push_back(std::log(t_f));
    log_d.push_back(std::log(worst));
  }
  double n = double(log_t.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_t.size(); ++i) {
    sx += log_t[i];
    sy += log_d[i];
    sxx += log_t[i] * log_t[i];
    sxy += log_t[i] * log_d[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.2));
}

TEST_CASE("schedule equivalence: evolving H with A equals H o A with linear") {
  ProblemInstance inst = make_plain_hw(3);
  Schedule sched = reg_beta(2);
  StepperOptions options;
  options.steps = 20000;
  CVec psi0 = uniform_state(3);
  EvolutionResult direct = evolve(inst.path, sched, 7.0, psi0, options);
  HamiltonianPath composed = reparametrize(inst.path, sched);
  StepperOptions options2;
  options2.steps = 30000;
  EvolutionResult re = evolve(composed, linear(), 7.0, psi0, options2);
  CHECK((direct.final_state - re.final_state).norm() < 1e-8);
}

TEST_CASE("tracker records normalized overlap rows") {
  ProblemInstance inst = make_plain_hw(3);
  StepperOptions options;
  options.k_track = 3;
  options.track_samples = 21;
  EvolutionResult result = evolve(inst.path, linear(), 15.0, uniform_state(3), options);
  REQUIRE(result.overlap_trace.size() == 21);
  for (const auto& [s, overlaps] : result.overlap_trace) {
    CHECK(overlaps.sum() <= 1.0 + 1e-8);
    CHECK(overlaps.minCoeff() >= -1e-12);
  }
  // adiabatic run stays near the instantaneous ground state
  CHECK(result.overlap_trace.back().second[0] > 0.95);
  std::string csv = trace_csv(result);
  CHECK(csv.rfind("s,p0,p1,p2\n", 0) == 0);
}

TEST_CASE("trotterize: doubling M improves the split in the expected ratio") {
  ProblemInstance inst = make_plain_hw(2);
  Trotterization t50 = trotterize(inst.path, 1.0, 50);
  Trotterization t100 = trotterize(inst.path, 1.0, 100);
  double d50 = trotter_deviation(inst.path, t50);
  double d100 = trotter_deviation(inst.path, t100);
  CHECK(d100 / d50 <= 0.6);
}

TEST_CASE("trotterize: commuting diagonal components split exactly") {
  OperatorSum h0(2), h1(2);
  h0.add_pauli(0.7, {{0, Axis::Z}});
  h1.add_pauli(-0.4, {{0, Axis::Z}, {1, Axis::Z}});
  HamiltonianPath path = HamiltonianPath::interpolation(std::move(h0), std::move(h1));
  for (int M : {1, 4}) {
    Trotterization t = trotterize(path, 2.0, M);
    CHECK(trotter_deviation(path, t) <= 1e-10);
  }
}

TEST_CASE("trotterize: Grover n=2 first-order slope") {
  ProblemInstance inst = make_grover(2, 1);
  double d50 = trotter_deviation(inst.path, trotterize(inst.path, 5.0, 50));
  double d100 = trotter_deviation(inst.path, trotterize(inst.path, 5.0, 100));
  double ratio = d100 / d50;
  CHECK(ratio >= 0.4);
  CHECK(ratio <= 0.6);
}

TEST_CASE("trotterize rejects unsupported shapes") {
  ProblemInstance inst = make_catalyst_3local(4);  // three components
  CHECK_THROWS_AS(trotterize(inst.path, 1.0, 10), Error);
}

TEST_CASE("glued trees: diabatic leave-and-return at moderate size") {
  // calibration shared with the acceptance suite: alpha = 0.135,
  // t_f = 0.0235 n^6, steps = max(4000, 2.5 t_f)
  int n = 4;
  ProblemInstance inst = make_glued_trees(n, 0.135);
  double t_f = 0.0235 * std::pow(double(n), 6);
  CVec start = CVec::Zero(inst.path.dim());
  start[0] = 1.0;
  StepperOptions options;
  options.k_track = 2;
  options.track_samples = 81;
  options.steps = int(std::max(4000.0, 2.5 * t_f));
  EvolutionResult result = evolve(inst.path, linear(), t_f, start, options);
  double p_target = std::norm(result.final_state[inst.path.dim() - 1]);
  CHECK(p_target >= 0.5);
  // the run leaves the instantaneous ground state in the middle
  double min_ground = 1.0;
  for (const auto& [s, overlaps] : result.overlap_trace)
    if (s > 0.05 && s < 0.95) min_ground = std::min(min_ground, overlaps[0]);
  CHECK(min_ground < 0.1);
}

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

#include "aqc/bounds.hpp"
#include "aqc/problems.hpp"

using namespace aqc;

TEST_CASE("linear interpolation has no second-derivative contribution") {
  ProblemInstance inst = make_plain_hw(3);
  BoundReport report = jrs(inst.path, 21);
  for (Index i = 0; i < report.h2_norm.size(); ++i) CHECK(report.h2_norm[i] == 0.0);
  CHECK(report.boundary_term_0 > 0.0);
  CHECK(report.integral_term > 0.0);
  // monotone decreasing in t_f
  CHECK(report.error_bound(10.0) > report.error_bound(20.0));
}

TEST_CASE("Grover n=4: derivative norm and cubic gap integral") {
  ProblemInstance inst = make_grover(4, 3);
  BoundReport report = jrs(inst.path, 101);
  double expected_h1 = std::sqrt(15.0) / 4.0;
  for (Index i = 0; i < report.h1_norm.size(); ++i)
    CHECK(report.h1_norm[i] == doctest::Approx(expected_h1).epsilon(1e-9));
  // with ||H''|| = 0 the integral term is 7 ||H'||^2 int ds / Delta^3, and
  // the closed antiderivative gives int ds/Delta^3 = N exactly
  double cubic_integral = report.integral_term / (7.0 * expected_h1 * expected_h1);
  CHECK(std::abs(cubic_integral - 16.0) / 16.0 < 0.02);
}

TEST_CASE("norm identity: ||H^(1)|| matches ||H1 - H0|| for interpolations") {
  for (auto inst : {make_grover(4, 9), make_plain_hw(4)}) {
    CMat h0 = assemble(inst.path, 0.0);
    CMat h1 = assemble(inst.path, 1.0);
    double diff_norm = spectral_norm(CMat(h1 - h0));
    BoundReport report = jrs(inst.path, 21);
    for (Index i = 0; i < report.h1_norm.size(); ++i)
      CHECK(report.h1_norm[i] <= diff_norm + 1e-9);
  }
}

TEST_CASE("quadrature convergence under grid doubling") {
  ProblemInstance inst = make_grover(4, 0);
  BoundReport coarse = jrs(inst.path, 51);
  BoundReport fine = jrs(inst.path, 101);
  CHECK(std::abs(fine.integral_term - coarse.integral_term) /
            std::abs(fine.integral_term) <=
        0.005);
}

TEST_CASE("sufficiency check: plain Hamming weight") {
  ProblemInstance inst = make_plain_hw(3);
  StepperOptions stepper;
  stepper.steps = 200000;
  SufficiencyResult result = sufficiency_check(inst.path, linear(), 0.1, 100.0, stepper);
  CHECK(result.t_f_sufficient > 0.0);
  CHECK(result.measured_error <= 0.1);
}

TEST_CASE("sufficiency anchor: Grover n=4 at one hundred times 3/Delta^2") {
  ProblemInstance inst = make_grover(4, 5);
  double t_f = 100.0 * 3.0 * 16.0;  // 3/Delta_min^2 with Delta_min^2 = 1/N
  EigPairs start = eig_low(inst.path, 0.0, 1);
  EvolutionResult run = evolve(inst.path, linear(), t_f, start.vectors.col(0));
  CHECK(adiabatic_error(run, inst.path) <= 0.1);
}

TEST_CASE("vanishing interior gap is reported, not silently bounded") {
  OperatorSum h0(1), h1(1);
  h0.add_pauli(1.0, {{0, Axis::Z}});
  h1.add_pauli(-1.0, {{0, Axis::Z}});
  HamiltonianPath path = HamiltonianPath::interpolation(std::move(h0), std::move(h1));
  CHECK_THROWS_AS(jrs(path, 21), Error);  // gap closes at s = 1/2
}

TEST_CASE("bound report JSON carries the sufficient-time table") {
  ProblemInstance inst = make_plain_hw(2);
  BoundReport report = jrs(inst.path, 21);
  std::string json = bound_report_json(report);
  CHECK(json.find("boundary_term_0") != std::string::npos);
  CHECK(json.find("\"0.1\"") != std::string::npos);
  CHECK(json.find("\"0.01\"") != std::string::npos);
}

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

#include "aqc/evolution.hpp"

namespace aqc {

// Rigorous sufficient-condition evaluator:
//   ||P_tf(1) - P(1)|| <= [ m(0)||H'(0)||/D(0)^2 + m(1)||H'(1)||/D(1)^2
//     + int_0^1 ( m||H''||/D^2 + 7 m^{3/2} ||H'||^2/D^3 ) ds ] / t_f
// with D(s) the gap separating the tracked band of m(s) levels.
struct BoundReport {
  double boundary_term_0 = 0.0;
  double boundary_term_1 = 0.0;
  double integral_term = 0.0;

  Vec grid;
  Vec gap;
  Vec h1_norm;
  Vec h2_norm;

  double total() const { return boundary_term_0 + boundary_term_1 + integral_term; }
  double error_bound(double t_f) const { return total() / t_f; }
  double t_f_sufficient(double target_error) const { return total() / target_error; }
};

struct JrsOptions {
  std::function<int(double)> multiplicity;  // default m(s) = 1
  double refine_tol = 1e-3;                 // relative tolerance near the gap minimum
};

BoundReport jrs(const HamiltonianPath& path, int grid_size, const JrsOptions& options = {});

struct SufficiencyResult {
  double t_f_sufficient = 0.0;
  double measured_error = 0.0;
  BoundReport report;
};

// Evaluates the bound along H(A(s)), then runs the evolution at
// t_f = safety_factor * t_f_sufficient(target_error).
SufficiencyResult sufficiency_check(const HamiltonianPath& path, const Schedule& schedule,
                                    double target_error, double safety_factor,
                                    const StepperOptions& stepper = {});

std::string bound_report_json(const BoundReport& report);

}  // namespace aqc

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

#include "aqc/common.hpp"

namespace aqc {

// Monotone reparametrization A : [0,1] -> [0,1] with queryable derivative.
// A(0)=0 and A(1)=1 exactly for every constructor in this header.
struct Schedule {
  std::function<double(double)> A;
  std::function<double(double)> dA;
  std::string kind;
};

// Throws if boundaries are inexact, A decreases anywhere on a 1001-point
// grid, or A' disagrees with finite differences beyond 1e-5.
void check_schedule(const Schedule& s);

Schedule linear();

// dA/ds = c * gap(A)^p with c fixed by A(1)=1. `gap` is the gap as a function
// of the interpolation coordinate u = A in [0,1] and must stay positive.
Schedule local_power(const std::function<double(double)>& gap, double p,
                     int quadrature_cells = 4096);

// A(s) = 1/2 + tan[(2s-1) arctan(sqrt(N-1))] / (2 sqrt(N-1))
Schedule roland_cerf(double N);

// A(s) = int_0^s x^V(1-x)^V dx / int_0^1 x^V(1-x)^V dx. First V derivatives
// vanish at both boundaries.
Schedule reg_beta(int V);

// d^v A / ds^v at s=0 or s=1 from the exact polynomial expansion
double reg_beta_boundary_derivative(int V, int order, bool at_one);

// --- quantum adiabatic brachistochrone ---------------------------------------

// Linear control family H(x) = sum_i x_i H_i with an analytic gap. Dense
// matrices are enough here; QAB runs at desk scale.
struct ControlFamily {
  std::vector<CMat> generators;                  // H_i
  std::function<double(const Vec&)> gap;         // Delta(x) > 0
  Vec x_start, x_end;                            // boundary controls
};

// Grover-type family H = x1 (1 - |a><a|) + x2 (1 - |b><b|) with overlap
// alpha0 = <a|b>; gap is analytic.
ControlFamily grover_control_family(int n_qubits, bool two_controls);

struct QabOptions {
  double p = 2.0;       // metric exponent; p=4 reproduces the analytic Grover case
  int grid = 2000;      // integration grid for the geodesic
  int max_newton = 60;  // shooting iterations
  double residual_tol = 1e-6;
};

struct QabResult {
  Schedule schedule;      // valid when the family has one control
  Mat trajectory;         // (grid+1) x m control samples
  Vec s_grid;
  double residual = 0.0;  // sup-norm Euler-Lagrange residual (normalized)
  bool is_schedule = false;
};

QabResult qab(const ControlFamily& family, const QabOptions& options = {});

// CSV payload `s,A,Aprime` on a 1001-point grid
std::string schedule_csv(const Schedule& s, int grid = 1001);

}  // namespace aqc

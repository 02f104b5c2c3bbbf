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
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "aqc/operators.hpp"

namespace aqc {

// Coefficient function with analytic first and second derivatives.
struct Coeff {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> ddf;
  std::string label;

  static Coeff constant(double c);
  static Coeff linear_up();          // s
  static Coeff linear_down();        // 1 - s
  static Coeff bump();               // s(1-s)
  static Coeff scaled(const Coeff& base, double factor);
};

// One term of H(s) = sum_k f_k(s) H_k. H_k is either a qubit OperatorSum or a
// plain Hermitian matrix (used for reduced sectors such as the Hamming-weight
// basis or the glued-trees column space).
struct PathComponent {
  Coeff coeff;
  std::variant<OperatorSum, CMat> op;
  int band = -1;  // matrix bandwidth when small, -1 for dense application
};

class HamiltonianPath {
 public:
  HamiltonianPath() = default;

  static HamiltonianPath interpolation(OperatorSum h0, OperatorSum h1);

  HamiltonianPath& add(Coeff c, OperatorSum op);
  HamiltonianPath& add(Coeff c, CMat m);

  const std::vector<PathComponent>& components() const { return components_; }
  Index dim() const { return dim_; }
  // -1 when backed by reduced matrices
  int n_qubits() const { return n_qubits_; }
  bool matrix_backed() const { return n_qubits_ < 0; }

  double norm_bound() const;  // max_s sum_k |f_k(s)| * ||H_k|| upper bound on a grid

 private:
  std::vector<PathComponent> components_;
  Index dim_ = 0;
  int n_qubits_ = 0;
};

CMat assemble(const HamiltonianPath& path, double s, int dense_limit = kDenseQubitLimit);
CVec apply(const HamiltonianPath& path, double s, const CVec& psi);
void apply_accumulate(const HamiltonianPath& path, double s, const CVec& psi, CVec& out);

// Derivative paths sum_k f_k'(s) H_k and sum_k f_k''(s) H_k evaluated densely.
CMat assemble_derivative(const HamiltonianPath& path, double s, int order,
                         int dense_limit = kDenseQubitLimit);

// H compose A: coefficients become f_k(A(s)) with chain-rule derivatives.
struct Schedule;  // schedules.hpp
HamiltonianPath reparametrize(const HamiltonianPath& path, const Schedule& schedule);

// |f'(s) - centered difference| <= tol*(1+|f'|) on a uniform grid.
void check_coefficient_derivatives(const HamiltonianPath& path, int grid = 101,
                                   double tol = 1e-6);

// --- symmetric (Hamming-weight) sector --------------------------------------

// Permutation-invariant paths restricted to the (n+1)-dimensional Dicke basis
// |W>, W = Hamming weight. Spectrum is a sub-multiset of the full spectrum.
struct SymmetricPath {
  HamiltonianPath reduced;  // matrix-backed, dimension n+1
  int n = 0;
};

// Throws if a component is not structurally invariant under qubit
// permutations (orbit-complete Pauli sums, weight-shell projectors, the
// uniform projector).
SymmetricPath reduce_symmetric(const HamiltonianPath& path);

// sqrt(C(n,w)/2^n), computed through lgamma so it survives large n.
double dicke_uniform_amplitude(int n, int w);

// Reduced matrices of symmetric one-body sums, for building large-n paths.
CMat reduced_sum_x(int n);
CMat reduced_sum_y(int n);
CMat reduced_sum_z(int n);
CMat reduced_weight_diagonal(int n, const std::function<double(int)>& h);
CMat reduced_uniform_projector(int n);

}  // namespace aqc

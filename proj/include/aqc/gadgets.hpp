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

#include <string>
#include <vector>

#include "aqc/operators.hpp"

namespace aqc {

// k-local Pauli product c_s * prod_j (n_hat_{s,j} . sigma) on distinct qubits
struct TargetTerm {
  double coefficient = 0.0;
  std::vector<int> qubits;
  std::vector<Eigen::Vector3d> axes;  // unit vectors, parallel to `qubits`

  static TargetTerm pauli(double c, const std::vector<std::pair<int, Axis>>& factors);
};

struct GadgetSpec {
  int n_qubits = 0;
  std::vector<TargetTerm> terms;  // all of locality k
  double lambda = 0.0;

  int k() const;
  int r() const { return int(terms.size()); }
  // ||V|| <= sum_s sum_j |c_{s,j}|; expansion converges for
  // lambda < (k-1) / (4 ||V||)
  double norm_v_bound() const;
  double convergence_radius() const { return (k() - 1) / (4.0 * norm_v_bound()); }
  void validate() const;
};

OperatorSum target_operator(const GadgetSpec& spec);

struct GadgetBuild {
  OperatorSum gadget;   // on n + r*k qubits; ancilla (s,j) = n + s*k + j
  OperatorSum penalty;  // sum_s H^A_s
  OperatorSum coupling; // sum_s V_s (lambda NOT folded in)
  bool within_radius = true;
  double radius = 0.0;
};

GadgetBuild build_gadget(const GadgetSpec& spec);

struct EffectiveSpectrum {
  Vec levels;        // lowest 2^n levels of the X_s=+1 sector
  double rescale;    // -k(-lambda)^k / (k-1)!
  double shift;      // estimated mean offset f(lambda)
  double sector_commutator;  // max ||[H, X_s]|| entry, should be ~0
};

// exact: diagonalize the gadget in the X_s = +1 (all s) sector and keep the
// lowest 2^n levels
EffectiveSpectrum effective_hamiltonian(const GadgetSpec& spec, const GadgetBuild& build);

struct GadgetFitReport {
  std::vector<double> lambdas;   // those inside the convergence radius
  std::vector<double> errors;    // sup-norm mismatch of centered spectra
  std::vector<double> excluded;  // lambdas outside the radius
  double slope = 0.0;            // log err vs log lambda
};

GadgetFitReport verify_gadget(GadgetSpec spec, const std::vector<double>& lambda_sweep);

std::string fit_report_csv(const GadgetFitReport& report);

// --- degenerate perturbation series -------------------------------------------

// A = lambda P0 V U with U = P0 + sum_m U_m built from the S_l recursion.
// H0 must be dense-sized; its ground energy is shifted to zero internally.
struct SeriesResult {
  CMat a_matrix;      // restricted to the ground space of H0 (d0 x d0)
  Vec eigenvalues;    // right-eigenvalues, sorted by real part
  double ground_dim;
};

SeriesResult series_A(const OperatorSum& h0, const OperatorSum& v, double lambda, int order);
SeriesResult series_A_dense(const CMat& h0, const CMat& v, double lambda, int order);

}  // namespace aqc

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

// Frustration-free input: weighted projectors with a shared zero eigenvector.
struct FrustrationFreeSpec {
  int n_qubits = 0;
  std::vector<CMat> projectors;  // 2^n x 2^n, each with P^2 = P to 1e-10
  std::vector<double> weights;   // a_k >= 0 (the reference normalization is [0,1])

  void validate() const;
  CMat hamiltonian() const;  // sum a_k P_k
  Vec spectrum() const;
};

enum class AmplifyVariant { Bar, Primed };

struct AmplifiedGap {
  OperatorSum op;    // on n + L + 1 qubits, unary ancilla register
  double delta;      // smallest positive eigenvalue of sum a_k P_k
  int n = 0, L = 0;

  // basis indices of the single-particle ancilla sector (particle at k)
  std::vector<std::uint64_t> ancilla_masks() const;
};

// Bar variant: sum_k sqrt(a_k) P_k (x) (hop between ancilla 0 and k); its
// single-particle sector carries the +-sqrt(lambda_j) spectrum.
// Primed variant adds the sqrt(Delta)/4 (1 + Z_0) penalty inside the
// 1/L^{1/d} prefactor and the Hamming-weight penalty term outside it,
// leaving |psi_0>|10...0> as the unique zero mode.
AmplifiedGap amplify_gap(const FrustrationFreeSpec& spec, AmplifyVariant variant,
                         double d_exponent = 2.0);

// eigenvalues of the amplified operator restricted to single-particle
// ancilla states (dimension n_target * (L+1))
Vec single_particle_spectrum(const AmplifiedGap& amplified);

// --- stoquasticity ---------------------------------------------------------------

struct StoquasticReport {
  bool stoquastic = false;
  double max_positive_offdiagonal = 0.0;  // includes imaginary magnitude
};

StoquasticReport check_stoquastic(const OperatorSum& h, double tol = 1e-12);
StoquasticReport check_stoquastic(const CMat& h, double tol = 1e-12);

// Z2 regular-representation embedding of an XXZZ Hamiltonian (real
// coefficients, terms from {I, X_i, Z_i, X_i X_j, Z_i Z_j}) into a stoquastic
// Hamiltonian on n+1 qubits. The |-> ancilla sector carries spec(H).
OperatorSum destoquasticize(const OperatorSum& h);

// spectrum of the embedded operator restricted to the |-> (or |+>) sector
Vec ancilla_sector_spectrum(const OperatorSum& embedded, bool minus_sector);

std::string transform_report_json(const Vec& before, const Vec& after);

}  // namespace aqc

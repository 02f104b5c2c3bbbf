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

#include "aqc/common.hpp"

namespace aqc {

// Basis convention: basis index i encodes qubit k in bit k (qubit 0 = LSB),
// sigma^z |0> = +|0>. All stoquasticity statements use this basis.

enum class Axis : char { X = 'X', Y = 'Y', Z = 'Z' };

struct PauliFactor {
  int qubit;
  Axis axis;
};

// coefficient * product of Pauli factors on distinct qubits.
// Empty factor list is a scaled identity.
struct PauliString {
  double coefficient = 0.0;
  std::vector<PauliFactor> factors;  // kept sorted by qubit
};

// coefficient * |chi><chi| where |chi> is the product state described by one
// symbol per qubit: '0','1' (computational) or '+','-' (Hadamard). A string of
// only {0,1} is a Z-basis projector, only {+,-} an X-basis projector; mixed
// strings cover e.g. "uniform over even index states".
struct ProductProjector {
  double coefficient = 0.0;
  std::string symbols;  // length n, symbols[k] is qubit k
};

// coefficient * |phi><phi| with |phi> the uniform superposition over all
// 2^n computational states.
struct UniformProjector {
  double coefficient = 0.0;
};

// coefficient * (Hermitian matrix on an ordered qubit subset). Subsets up to
// 5 qubits; the clock compiler needs gate qubits plus three clock qubits.
struct DenseBlock {
  double coefficient = 0.0;
  std::vector<int> qubits;
  CMat matrix;
};

inline constexpr int kMaxDenseBlockQubits = 5;

enum class TermKind { Pauli, Projector, Uniform, Dense };

struct Term {
  TermKind kind;
  PauliString pauli;
  ProductProjector projector;
  UniformProjector uniform;
  DenseBlock dense;

  static Term make_pauli(double c, std::vector<PauliFactor> factors);
  static Term make_projector(double c, std::string symbols);
  static Term make_uniform(double c);
  static Term make_dense(double c, std::vector<int> qubits, CMat m);
};

// Hermitian operator on n qubits as a list of typed terms.
class OperatorSum {
 public:
  OperatorSum() = default;
  explicit OperatorSum(int n_qubits) : n_(n_qubits) {
    if (n_qubits <= 0) throw DimensionError("OperatorSum needs at least one qubit");
  }

  int n_qubits() const { return n_; }
  Index dim() const { return dim_for_qubits(n_); }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // All adders validate (finite real coefficient, distinct in-range qubits,
  // Hermitian block to 1e-12) and throw on violation.
  OperatorSum& add_pauli(double c, std::vector<PauliFactor> factors);
  OperatorSum& add_identity(double c) { return add_pauli(c, {}); }
  OperatorSum& add_projector(double c, std::string symbols);
  OperatorSum& add_uniform_projector(double c);
  OperatorSum& add_dense(double c, std::vector<int> qubits, CMat m);
  OperatorSum& add_term(const Term& t);
  OperatorSum& operator+=(const OperatorSum& other);

  // Sum of |coefficient| * (term spectral norm); cheap upper bound on the
  // operator norm used for step sizing.
  double norm_bound() const;

  bool is_diagonal() const;

 private:
  int n_ = 0;
  std::vector<Term> terms_;
};

// y = H * x without materializing H for Pauli/projector terms.
void apply_accumulate(const OperatorSum& op, const CVec& x, CVec& y);
CVec apply(const OperatorSum& op, const CVec& x);

// Dense 2^n x 2^n matrix. Guarded by the dense qubit limit.
CMat materialize(const OperatorSum& op, int dense_limit = kDenseQubitLimit);

// Diagonal of a diagonal operator; throws if any off-diagonal term present.
Vec diagonal(const OperatorSum& op);

// <bra| op |ket> via one matrix-free apply.
Complex expectation(const OperatorSum& op, const CVec& bra, const CVec& ket);

// Expectation in the product spin-coherent state with all qubit angles equal,
// |Omega> = prod_k [cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>].
double coherent_expectation(const OperatorSum& op, double theta, double phi);

// --- states -----------------------------------------------------------------

CVec basis_state(int n_qubits, std::uint64_t index);
CVec uniform_state(int n_qubits);
// |chi> for a product symbol string over {0,1,+,-}
CVec product_state(const std::string& symbols);

// --- serialization ----------------------------------------------------------

// Structured-text document, one term per line, coefficients printed with 17
// significant digits so round-trips are bit-faithful.
std::string serialize(const OperatorSum& op);
OperatorSum deserialize_operator(const std::string& text);

}  // namespace aqc

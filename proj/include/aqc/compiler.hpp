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

#include "aqc/evolution.hpp"

namespace aqc {

// One- or two-qubit unitary gate. For two-qubit gates the matrix acts on the
// basis index bit(qubits[0]) + 2*bit(qubits[1]).
struct Gate {
  std::string name;
  std::vector<int> qubits;
  CMat matrix;
};

struct GateCircuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  int depth() const { return int(gates.size()); }
  void validate() const;  // unitarity to 1e-10, qubit ranges
  // state after the first l gates applied to |0...0>
  CVec state_after(int l) const;
};

Gate gate_identity(int q);
Gate gate_x(int q);
Gate gate_hadamard(int q);
Gate gate_phase(int q, double angle);
Gate gate_cnot(int control, int target);
Gate random_unitary_gate(int q, std::uint64_t seed);

// Feynman-clock compilation: qubits 0..n-1 carry the computation, qubits
// n..n+L-1 the unary clock 1^l 0^{L-l}.
struct ClockCompilation {
  GateCircuit circuit;  // after identity padding
  int n = 0;
  int L = 0;           // padded depth
  int L_original = 0;  // depth before identity padding
  HamiltonianPath path;  // H_input + H_c + (1-s) H_c-init + (s/2) H_circuit
  OperatorSum h_clock;
  OperatorSum h_clock_init;
  OperatorSum h_input;
  std::vector<OperatorSum> h_gates;

  Index clock_index(int l) const;  // basis index bits of 1^l 0^{L-l}
};

ClockCompilation compile(const GateCircuit& circuit, int pad_identities = 0,
                         int dense_validation_limit = 12);

// (1/sqrt(L+1)) sum_l |alpha(l)> (x) |1^l 0^{L-l}>
CVec history_state(const GateCircuit& circuit);

struct CompilationReport {
  double ground_energy_s0 = 0.0;
  double ground_energy_s1 = 0.0;
  double history_overlap = 0.0;     // weight of |eta> on the H(1) ground space
  double s0_gap_measured = 0.0;     // min over sampled s in the S0 sector
  double s0_gap_bound = 0.0;        // (1/4)(1/(6L))^2
  double global_gap_min = 0.0;      // min over 11 sampled s, full space
  double readout_probability = 0.0;  // clock all-ones weight after the run
  double output_probability = 0.0;   // clock at or past the unpadded depth
  double readout_t_f = 0.0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

struct ValidateOptions {
  double readout_time_factor = 12.0;  // t_f = factor / (measured S0 gap)^2
  int gap_samples = 11;
  StepperOptions stepper;
};

CompilationReport validate(const ClockCompilation& compilation,
                           const ValidateOptions& options = {});

std::string report_json(const CompilationReport& report);

// structured-text circuit exchange format
std::string serialize(const GateCircuit& circuit);
GateCircuit deserialize_circuit(const std::string& text);

}  // namespace aqc

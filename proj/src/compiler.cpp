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

#include "aqc/compiler.hpp"

#include <cmath>
#include <sstream>

#include "aqc/io.hpp"
#include "aqc/rng.hpp"

namespace aqc {

void GateCircuit::validate() const {
  if (n_qubits < 1) throw DimensionError("circuit needs at least one qubit");
  for (const auto& g : gates) {
    if (g.qubits.empty() || g.qubits.size() > 2) throw Error("gates act on 1 or 2 qubits");
    for (int q : g.qubits)
      if (q < 0 || q >= n_qubits) throw DimensionError("gate qubit out of range");
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1])
      throw Error("two-qubit gate with repeated qubit");
    Index d = Index(1) << g.qubits.size();
    if (g.matrix.rows() != d || g.matrix.cols() != d) throw DimensionError("gate matrix shape");
    CMat should_be_identity = g.matrix.adjoint() * g.matrix;
    if ((should_be_identity - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
      throw Error("non-unitary gate " + g.name);
  }
}

CVec GateCircuit::state_after(int l) const {
  CVec psi = basis_state(n_qubits, 0);
  for (int g = 0; g < l; ++g) {
    const Gate& gate = gates[g];
    OperatorSum op(n_qubits);
    // gate matrices are unitary, not Hermitian; apply through the dense-block
    // machinery by splitting into Hermitian and anti-Hermitian parts
    CMat u = gate.matrix;
    CMat herm = 0.5 * (u + u.adjoint());
    CMat anti = Complex(0, -0.5) * (u - u.adjoint());  // Hermitian
    OperatorSum oph(n_qubits), opa(n_qubits);
    bool has_h = herm.cwiseAbs().maxCoeff() > 1e-15;
    bool has_a = anti.cwiseAbs().maxCoeff() > 1e-15;
    CVec next = CVec::Zero(psi.size());
    if (has_h) {
      oph.add_dense(1.0, gate.qubits, herm);
      next += aqc::apply(oph, psi);
    }
    if (has_a) {
      opa.add_dense(1.0, gate.qubits, anti);
      next += Complex(0, 1) * aqc::apply(opa, psi);
    }
    psi = next;
  }
  return psi;
}

Gate gate_identity(int q) { return {"I", {q}, CMat::Identity(2, 2)}; }

Gate gate_x(int q) {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return {"X", {q}, m};
}

Gate gate_hadamard(int q) {
  CMat m(2, 2);
  double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return {"H", {q}, m};
}

Gate gate_phase(int q, double angle) {
  CMat m = CMat::Identity(2, 2);
  m(1, 1) = std::polar(1.0, angle);
  return {"P", {q}, m};
}

Gate gate_cnot(int control, int target) {
  // basis index bit(control) + 2*bit(target)
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = 1;
  m(2, 2) = 1;
  m(3, 1) = 1;
  m(1, 3) = 1;
  return {"CNOT", {control, target}, m};
}

Gate random_unitary_gate(int q, std::uint64_t seed) {
  Rng rng(seed);
  CMat a(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) a(r, c) = Complex(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<CMat> qr(a);
  CMat qmat = qr.householderQ();
  CMat rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 2; ++i) qmat.col(i) *= rmat(i, i) / std::abs(rmat(i, i));
  return {"U(seed=" + std::to_string(seed) + ")", {q}, qmat};
}

Index ClockCompilation::clock_index(int l) const {
  Index idx = 0;
  for (int j = 0; j < l; ++j) idx |= Index(1) << (n + j);
  return idx;
}

namespace {

// dense block realizing  a * I (x) |from><from| + b * U (x) |to><from|
//                      + conj-transpose terms, on gate qubits + clock subset
void add_gate_block(OperatorSum& op, const Gate& gate, const std::vector<int>& clock_qubits,
                    std::uint64_t from_pattern, std::uint64_t to_pattern) {
  int g = int(gate.qubits.size());
  int c = int(clock_qubits.size());
  Index gd = Index(1) << g;
  Index bd = Index(1) << (g + c);
  CMat block = CMat::Zero(bd, bd);
  auto put = [&](std::uint64_t crow, std::uint64_t ccol, const CMat& m) {
    for (Index r = 0; r < gd; ++r)
      for (Index cc = 0; cc < gd; ++cc)
        block(Index(crow << g) + r, Index(ccol << g) + cc) += m(r, cc);
  };
  CMat eye = CMat::Identity(gd, gd);
  put(from_pattern, from_pattern, eye);
  put(to_pattern, to_pattern, eye);
  put(to_pattern, from_pattern, -gate.matrix);
  put(from_pattern, to_pattern, CMat(-gate.matrix.adjoint()));
  std::vector<int> qubits = gate.qubits;
  qubits.insert(qubits.end(), clock_qubits.begin(), clock_qubits.end());
  op.add_dense(1.0, qubits, block);
}

}  // namespace

ClockCompilation compile(const GateCircuit& circuit, int pad_identities,
                         int dense_validation_limit) {
  circuit.validate();
  if (pad_identities < 0) throw Error("pad_identities must be >= 0");
  ClockCompilation comp;
  comp.circuit = circuit;
  for (int p = 0; p < pad_identities; ++p) comp.circuit.gates.push_back(gate_identity(0));
  comp.n = circuit.n_qubits;
  comp.L = comp.circuit.depth();
  comp.L_original = circuit.depth();
  if (comp.L < 1) throw Error("compile needs at least one gate");
  int total = comp.n + comp.L;
  if (total > dense_validation_limit)
    throw DimensionError("compiled size " + std::to_string(total) +
                         " beyond the validation limit");
  int n = comp.n, L = comp.L;
  auto clock = [n](int l) { return n + l - 1; };  // clock qubit for step l in 1..L

  // H_c: penalize 01 patterns on adjacent clock qubits
  comp.h_clock = OperatorSum(total);
  for (int l = 1; l <= L - 1; ++l) {
    int a = clock(l), b = clock(l + 1);
    comp.h_clock.add_pauli(0.25, {});
    comp.h_clock.add_pauli(0.25, {{a, Axis::Z}});
    comp.h_clock.add_pauli(-0.25, {{b, Axis::Z}});
    comp.h_clock.add_pauli(-0.25, {{a, Axis::Z}, {b, Axis::Z}});
  }
  if (L == 1) comp.h_clock = OperatorSum(total);  // no adjacent pairs

  // H_c-init = |1_1><1_1|
  comp.h_clock_init = OperatorSum(total);
  comp.h_clock_init.add_identity(0.5);
  comp.h_clock_init.add_pauli(-0.5, {{clock(1), Axis::Z}});

  // H_input = sum_i |1_i><1_i| (x) |0_1><0_1|
  comp.h_input = OperatorSum(total);
  for (int i = 0; i < n; ++i) {
    comp.h_input.add_identity(0.25);
    comp.h_input.add_pauli(-0.25, {{i, Axis::Z}});
    comp.h_input.add_pauli(0.25, {{clock(1), Axis::Z}});
    comp.h_input.add_pauli(-0.25, {{i, Axis::Z}, {clock(1), Axis::Z}});
  }

  // gate propagation terms
  comp.h_gates.clear();
  for (int l = 1; l <= L; ++l) {
    OperatorSum hl(total);
    const Gate& gate = comp.circuit.gates[l - 1];
    if (L == 1) {
      add_gate_block(hl, gate, {clock(1)}, 0b0, 0b1);
    } else if (l == 1) {
      // clock qubits (c1, c2): patterns 00 -> 10 (bit order: c1 is bit 0)
      add_gate_block(hl, gate, {clock(1), clock(2)}, 0b00, 0b01);
    } else if (l == L) {
      // clock qubits (c_{L-1}, c_L): patterns 10 -> 11
      add_gate_block(hl, gate, {clock(L - 1), clock(L)}, 0b01, 0b11);
    } else {
      // clock qubits (c_{l-1}, c_l, c_{l+1}): patterns 100 -> 110
      add_gate_block(hl, gate, {clock(l - 1), clock(l), clock(l + 1)}, 0b001, 0b011);
    }
    comp.h_gates.push_back(std::move(hl));
  }

  OperatorSum static_part = comp.h_input;
  static_part += comp.h_clock;
  OperatorSum circuit_sum(total);
  for (const auto& hl : comp.h_gates) circuit_sum += hl;

  comp.path.add(Coeff::constant(1.0), std::move(static_part));
  comp.path.add(Coeff::linear_down(), comp.h_clock_init);
  comp.path.add(Coeff::scaled(Coeff::linear_up(), 0.5), std::move(circuit_sum));
  return comp;
}

CVec history_state(const GateCircuit& circuit) {
  circuit.validate();
  int n = circuit.n_qubits, L = circuit.depth();
  Index dim = Index(1) << (n + L);
  CVec eta = CVec::Zero(dim);
  double amp = 1.0 / std::sqrt(double(L + 1));
  for (int l = 0; l <= L; ++l) {
    CVec alpha = circuit.state_after(l);
    Index clock_bits = 0;
    for (int j = 0; j < l; ++j) clock_bits |= Index(1) << (n + j);
    for (Index x = 0; x < alpha.size(); ++x) eta[x + (clock_bits)] += amp * alpha[x];
  }
  return eta;
}

CompilationReport validate(const ClockCompilation& comp, const ValidateOptions& options) {
  CompilationReport report;
  int n = comp.n, L = comp.L;
  auto complain = [&report](const std::string& what) { report.violations.push_back(what); };

  // component positive semidefiniteness at toy size
  auto check_psd = [&](const OperatorSum& op, const std::string& name) {
    Eigen::SelfAdjointEigenSolver<CMat> es(materialize(op), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()[0] < -1e-10)
      complain(name + " not positive semidefinite: " + std::to_string(es.eigenvalues()[0]));
  };
  check_psd(comp.h_clock, "H_c");
  check_psd(comp.h_clock_init, "H_c-init");
  check_psd(comp.h_input, "H_input");
  for (std::size_t l = 0; l < comp.h_gates.size(); ++l)
    check_psd(comp.h_gates[l], "H_" + std::to_string(l + 1));

  // ground energies at the endpoints
  EigPairs at0 = eig_low(comp.path, 0.0, 1, EigMethod::Dense);
  EigPairs at1 = eig_low(comp.path, 1.0, 2, EigMethod::Dense);
  report.ground_energy_s0 = at0.values[0];
  report.ground_energy_s1 = at1.values[0];
  if (std::abs(report.ground_energy_s0) > 1e-10) complain("H(0) ground energy not zero");
  if (std::abs(report.ground_energy_s1) > 1e-10) complain("H(1) ground energy not zero");

  // history-state overlap with the H(1) ground space
  CVec eta = history_state(comp.circuit);
  report.history_overlap = ground_space_weight(eta, comp.path, 1.0);
  if (report.history_overlap < 1.0 - 1e-8)
    complain("history state is not the H(1) ground state");

  // S0-sector gap on a sample grid
  std::vector<CVec> gammas;
  for (int l = 0; l <= L; ++l) {
    CVec alpha = comp.circuit.state_after(l);
    CVec g = CVec::Zero(comp.path.dim());
    Index clock_bits = comp.clock_index(l);
    for (Index x = 0; x < alpha.size(); ++x) g[x + clock_bits] = alpha[x];
    gammas.push_back(g);
  }
  report.s0_gap_bound = 0.25 / ((6.0 * L) * (6.0 * L));
  report.s0_gap_measured = 1e300;
  report.global_gap_min = 1e300;
  double closure_worst = 0.0;
  for (int i = 0; i < options.gap_samples; ++i) {
    double s = double(i) / double(options.gap_samples - 1);
    CMat hs0 = CMat::Zero(L + 1, L + 1);
    for (int a = 0; a <= L; ++a) {
      CVec ha = aqc::apply(comp.path, s, gammas[a]);
      // sector closure: H gamma stays in span{gamma}
      CVec resid = ha;
      for (int b = 0; b <= L; ++b) resid -= gammas[b].dot(ha) * gammas[b];
      closure_worst = std::max(closure_worst, resid.norm());
      for (int b = 0; b <= L; ++b) hs0(b, a) = gammas[b].dot(ha);
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(hs0);
    report.s0_gap_measured = std::min(report.s0_gap_measured,
                                      es.eigenvalues()[1] - es.eigenvalues()[0]);
    EigPairs full = eig_low(comp.path, s, 2, EigMethod::Dense);
    report.global_gap_min = std::min(report.global_gap_min, full.values[1] - full.values[0]);
  }
  if (closure_worst > 1e-10) complain("S0 sector not closed under H(s)");
  if (report.s0_gap_measured < report.s0_gap_bound)
    complain("measured S0 gap below the 1/(4(6L)^2) bound");
  if (report.global_gap_min <= 0.0) complain("global gap non-positive at a sample");

  // illegal clock states carry at least unit H_c energy
  if (L >= 2) {
    Vec hc_diag = diagonal(comp.h_clock);
    Index dim = comp.path.dim();
    for (Index idx = 0; idx < dim; ++idx) {
      std::uint64_t clock_bits = std::uint64_t(idx) >> n;
      bool legal = true;
      bool seen_zero = false;
      for (int j = 0; j < L; ++j) {
        bool one = (clock_bits >> j) & 1;
        if (one && seen_zero) legal = false;
        if (!one) seen_zero = true;
      }
      if (!legal && hc_diag[idx] < 1.0 - 1e-12) {
        complain("illegal clock state below unit penalty");
        break;
      }
    }
  }

  // adiabatic readout of the clock-all-ones outcome
  double t_f = options.readout_time_factor / (report.s0_gap_measured * report.s0_gap_measured);
  report.readout_t_f = t_f;
  CVec start = basis_state(n + L, 0);
  StepperOptions stepper = options.stepper;
  if (stepper.steps == 0 && stepper.dt == 0.0)
    stepper.steps = int(std::max(3000.0, std::ceil(4.0 * t_f)));
  EvolutionResult run = evolve(comp.path, linear(), t_f, start, stepper);
  Index ones = comp.clock_index(L);
  double p = 0.0;
  for (Index x = 0; x < (Index(1) << n); ++x) p += std::norm(run.final_state[x + ones]);
  report.readout_probability = p;
  if (p < 0.9 / double(L + 1)) complain("readout probability below 0.9/(L+1)");
  double p_out = 0.0;
  for (int l = comp.L_original; l <= L; ++l) {
    Index bits = comp.clock_index(l);
    for (Index x = 0; x < (Index(1) << n); ++x) p_out += std::norm(run.final_state[x + bits]);
  }
  report.output_probability = p_out;
  return report;
}

std::string report_json(const CompilationReport& report) {
  std::string out = "{\n";
  out += "  \"ground_energy_s0\": " + format_double(report.ground_energy_s0) + ",\n";
  out += "  \"ground_energy_s1\": " + format_double(report.ground_energy_s1) + ",\n";
  out += "  \"history_overlap\": " + format_double(report.history_overlap) + ",\n";
  out += "  \"s0_gap_measured\": " + format_double(report.s0_gap_measured) + ",\n";
  out += "  \"s0_gap_bound\": " + format_double(report.s0_gap_bound) + ",\n";
  out += "  \"global_gap_min\": " + format_double(report.global_gap_min) + ",\n";
  out += "  \"readout_probability\": " + format_double(report.readout_probability) + ",\n";
  out += "  \"output_probability\": " + format_double(report.output_probability) + ",\n";
  out += "  \"readout_t_f\": " + format_double(report.readout_t_f) + ",\n";
  out += "  \"violations\": [";
  for (std::size_t i = 0; i < report.violations.size(); ++i)
    out += (i ? ", " : "") + ("\"" + report.violations[i] + "\"");
  out += "]\n}\n";
  return out;
}

std::string serialize(const GateCircuit& circuit) {
  std::ostringstream out;
  out << "circuit v1\n";
  out << "nqubits " << circuit.n_qubits << "\n";
  for (const auto& g : circuit.gates) {
    std::string name = g.name;
    for (char& c : name)
      if (c == ' ') c = '_';
    out << "gate " << name << " ";
    for (std::size_t i = 0; i < g.qubits.size(); ++i) out << (i ? "," : "") << g.qubits[i];
    out << " matrix";
    for (Index r = 0; r < g.matrix.rows(); ++r)
      for (Index c = 0; c < g.matrix.cols(); ++c)
        out << " " << format_double(g.matrix(r, c).real()) << " "
            << format_double(g.matrix(r, c).imag());
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

GateCircuit deserialize_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "circuit v1") throw Error("bad circuit header");
  if (!std::getline(in, line)) throw Error("missing nqubits");
  std::istringstream hdr(line);
  std::string word;
  GateCircuit circuit;
  hdr >> word >> circuit.n_qubits;
  if (word != "nqubits") throw Error("missing nqubits");
  while (std::getline(in, line)) {
    if (line == "end") {
      circuit.validate();
      return circuit;
    }
    std::istringstream ls(line);
    std::string tag, name, qubits_csv, matrix_word;
    ls >> tag >> name >> qubits_csv >> matrix_word;
    if (tag != "gate" || matrix_word != "matrix") throw Error("bad gate line");
    Gate g;
    g.name = name;
    std::istringstream qs(qubits_csv);
    std::string q;
    while (std::getline(qs, q, ',')) g.qubits.push_back(std::stoi(q));
    Index d = Index(1) << g.qubits.size();
    g.matrix.resize(d, d);
    for (Index r = 0; r < d; ++r)
      for (Index c = 0; c < d; ++c) {
        double re, im;
        if (!(ls >> re >> im)) throw Error("short gate matrix");
        g.matrix(r, c) = Complex(re, im);
      }
    circuit.gates.push_back(std::move(g));
  }
  throw Error("circuit document missing end marker");
}

}  // namespace aqc

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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aqc/path.hpp"

namespace aqc {

// Classical cost of a diagonal final Hamiltonian, in a form simulated
// annealing can update incrementally. Spin convention s_i = +1 for bit 0.
struct IsingCost {
  double constant = 0.0;
  std::vector<double> field;                             // h_i s_i
  std::vector<std::tuple<int, int, double>> pairs;       // J_ij s_i s_j
  std::vector<std::tuple<int, int, int, double>> triples;

  double value(const std::vector<std::uint8_t>& bits) const;
  // energy change of flipping `site`
  double flip_delta(const std::vector<std::uint8_t>& bits, int site) const;
};

// Cost that depends on the bit-string only through its Hamming weight.
struct WeightCost {
  std::function<double(int)> f;
};

struct KnownSolution {
  std::vector<std::vector<std::uint8_t>> configurations;  // any representative members
  double energy = 0.0;
};

struct ProblemInstance {
  std::string family;
  std::string params;
  int n = 0;  // problem qubits (ancilla registers included in `path` where noted)
  std::uint64_t seed = 0;

  HamiltonianPath path;  // empty when n is beyond the full-path limit
  bool has_full_path = false;

  SymmetricPath symmetric;
  bool has_symmetric = false;

  // path used for spin-coherent evaluation (gauged for Grover-type families)
  HamiltonianPath coherent_path;
  bool has_coherent_path = false;

  bool diagonal_final = false;
  std::optional<IsingCost> ising;
  std::optional<WeightCost> weight_cost;
  std::optional<KnownSolution> known_solution;
  bool analytic_gap_available = false;

  double cost(const std::vector<std::uint8_t>& bits) const;
};

// Full qubit paths are only materialized up to this size; larger instances
// carry the reduced sector and/or the classical cost.
inline constexpr int kFullPathLimit = 20;

// --- families -----------------------------------------------------------------

ProblemInstance make_grover(int n, std::uint64_t marked);
ProblemInstance make_multi_marked(int n, std::vector<std::uint64_t> marked);
ProblemInstance make_deutsch_jozsa(int n, bool balanced);
// A register qubits 0..n-1, B register qubit n
ProblemInstance make_bernstein_vazirani(int n, std::uint64_t a);
// reduced (2n+2)-dimensional column-subspace dynamics
ProblemInstance make_glued_trees(int n, double alpha);
ProblemInstance make_plain_hw(int n);
ProblemInstance make_spike(int n);  // n divisible by 4
// barrier of width ~ n^beta and height ~ n^alpha around |x| = n/4;
// requires alpha+beta >= 1/2, alpha < 1/2, 2 alpha + beta <= 1
ProblemInstance make_barrier_hw(int n, double alpha, double beta);
ProblemInstance make_plateau(int n, int l, int u);
ProblemInstance make_vandam_phw(int n);
// even number of disagree clauses; positions within [0, n)
ProblemInstance make_twosat_ring(int n, const std::vector<int>& disagree_positions = {});
ProblemInstance make_weighted_chain(int period, int b_sectors, double w);
// frustrated Ising ladder; `rungs` must be even, periodic in the leg direction
ProblemInstance make_dimer_ladder(int rungs, double K, double U);
ProblemInstance make_pspin(int n, int p);
ProblemInstance make_sk(int n, std::uint64_t seed, bool gaussian = true);
ProblemInstance make_hopfield(int n, int p, int r, std::uint64_t seed);
enum class ExactCoverEncoding { ThreeLocal, TwoLocal };
ProblemInstance make_exact_cover(int n, int clauses, ExactCoverEncoding encoding,
                                 std::uint64_t seed);
ProblemInstance make_exact_cover_clauses(int n, std::vector<std::array<int, 3>> clause_list,
                                         ExactCoverEncoding encoding);
// planted-satisfiable 3-regular 3-XORSAT
ProblemInstance make_xorsat_3reg(int n, std::uint64_t seed);
ProblemInstance make_number_partition(const std::vector<double>& numbers);
ProblemInstance make_catalyst_3local(int n);
// replaces H_0 by (1/2) sum_i c_i (1 - sigma_i^x), c_i in {1/2, 3/2}
ProblemInstance with_random_init(ProblemInstance base, std::uint64_t seed);

// closed-form gap for {grover, multi-marked, plain_hw, twosat_ring}
double analytic_gap(const ProblemInstance& instance, double s);

// exact optimum from the family algorithm (ring walk, Gaussian elimination,
// Hopfield angle sort) or brute force up to 24 bits
KnownSolution classical_solve(const ProblemInstance& instance);

// 2-SAT ring closed forms (G = +1 sector)
double twosat_ring_ep(int n, int p, double s, bool plus);
std::vector<double> twosat_ring_sector_spectrum(int n, double s);
double twosat_ring_min_gap(int n);
double twosat_ring_s_star(int n);

// --- degeneracy lifting --------------------------------------------------------

// Input must be an Ising OperatorSum (h_i Z_i, J_ij Z_i Z_j, optional constant)
// with h_i, J_ij in {0, +-1}. Adds `ancillas_per_term` ancillas per non-zero
// term; the all-ancillas-down block reproduces the input spectrum exactly.
OperatorSum lift_degeneracy(const OperatorSum& ising, int ancillas_per_term, double b);

// V_SC = <Omega(theta,phi)| H(s) |Omega(theta,phi)> with uniform angles.
// Requires a permutation-symmetric instance (Grover is gauged internally).
double semiclassical_potential(const ProblemInstance& instance, double s, double theta,
                               double phi);

// --- graphs & PageRank -----------------------------------------------------------

struct GraphSpec {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // directed
  std::vector<double> weights;             // optional, parallel to edges

  void validate(bool allow_self_loops = false) const;
};

GraphSpec parse_edge_list(const std::string& text);
std::string graph_to_edge_list(const GraphSpec& g);
GraphSpec preferential_attachment(int vertices, int out_degree, std::uint64_t seed);

struct PageRankPipeline {
  Mat google;            // column-stochastic G
  Mat h0, h1;            // (1-G_c)^T(1-G_c) and (1-G)^T(1-G)
  HamiltonianPath path;  // matrix-backed interpolation of h0, h1
  Vec pagerank;          // power-method vector, 1-norm normalized
  int iterations = 0;
  // n-qubit single-excitation embedding, built when n <= kDenseQubitLimit
  HamiltonianPath embedded;
  bool has_embedded = false;
};

PageRankPipeline pagerank_pipeline(const GraphSpec& graph, double alpha = 0.85,
                                   const Vec& personalization = Vec());

// reduced n x n matrix of the embedded Hamiltonian restricted to the
// single-excitation sector at interpolation point s
Mat single_excitation_block(const HamiltonianPath& embedded, double s);

}  // namespace aqc

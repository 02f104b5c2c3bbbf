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

#include "aqc/problems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "aqc/rng.hpp"

namespace aqc {

double IsingCost::value(const std::vector<std::uint8_t>& bits) const {
  auto spin = [&bits](int i) { return bits[i] ? -1.0 : 1.0; };
  double e = constant;
  for (std::size_t i = 0; i < field.size(); ++i)
    if (field[i] != 0.0) e += field[i] * spin(int(i));
  for (const auto& [i, j, J] : pairs) e += J * spin(i) * spin(j);
  for (const auto& [i, j, k, K] : triples) e += K * spin(i) * spin(j) * spin(k);
  return e;
}

double IsingCost::flip_delta(const std::vector<std::uint8_t>& bits, int site) const {
  auto spin = [&bits](int i) { return bits[i] ? -1.0 : 1.0; };
  double local = 0.0;
  if (site < int(field.size())) local += field[site] * spin(site);
  for (const auto& [i, j, J] : pairs)
    if (i == site || j == site) local += J * spin(i) * spin(j);
  for (const auto& [i, j, k, K] : triples)
    if (i == site || j == site || k == site) local += K * spin(i) * spin(j) * spin(k);
  return -2.0 * local;
}

double ProblemInstance::cost(const std::vector<std::uint8_t>& bits) const {
  if (int(bits.size()) < n) throw DimensionError("cost: configuration too short");
  if (ising) return ising->value(bits);
  if (weight_cost) {
    int w = 0;
    for (int i = 0; i < n; ++i) w += bits[i] ? 1 : 0;
    return weight_cost->f(w);
  }
  throw Error("family '" + family + "' has no classical cost function");
}

namespace {

OperatorSum transverse_field_half(int n) {
  OperatorSum h(n);
  h.add_identity(0.5 * n);
  for (int i = 0; i < n; ++i) h.add_pauli(-0.5, {{i, Axis::X}});
  return h;
}

OperatorSum minus_sum_x(int n) {
  OperatorSum h(n);
  for (int i = 0; i < n; ++i) h.add_pauli(-1.0, {{i, Axis::X}});
  return h;
}

OperatorSum hamming_weight_op(int n) {
  OperatorSum h(n);
  h.add_identity(0.5 * n);
  for (int i = 0; i < n; ++i) h.add_pauli(-0.5, {{i, Axis::Z}});
  return h;
}

std::string bits_of(std::uint64_t x, int n) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q)
    if ((x >> q) & 1) s[q] = '1';
  return s;
}

std::vector<std::uint8_t> config_of(std::uint64_t x, int n) {
  std::vector<std::uint8_t> bits(n, 0);
  for (int q = 0; q < n; ++q) bits[q] = std::uint8_t((x >> q) & 1);
  return bits;
}

std::vector<std::uint8_t> weight_config(int n, int w) {
  std::vector<std::uint8_t> bits(n, 0);
  for (int i = 0; i < w; ++i) bits[i] = 1;
  return bits;
}

// adds sum over the weight-w shell of |x><x| to `op`
void add_weight_shell(OperatorSum& op, int n, int w, double coefficient) {
  std::vector<int> positions(w);
  std::iota(positions.begin(), positions.end(), 0);
  for (;;) {
    std::string bits(n, '0');
    for (int p : positions) bits[p] = '1';
    op.add_projector(coefficient, bits);
    // next combination
    int i = w - 1;
    while (i >= 0 && positions[i] == n - w + i) --i;
    if (i < 0) break;
    ++positions[i];
    for (int j = i + 1; j < w; ++j) positions[j] = positions[j - 1] + 1;
  }
}

double elementary_symmetric_pm1(int k, double m, int n) {
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (int kk = 1; kk <= k; ++kk) {
    double acc = 0.0;
    for (int i = 1; i <= kk; ++i) {
      double p = (i % 2 == 1) ? m : double(n);
      acc += ((i % 2 == 1) ? 1.0 : -1.0) * e[kk - i] * p;
    }
    e[kk] = acc / double(kk);
  }
  return e[k];
}

// Writes a degree-`deg` polynomial weight function f(W) as
// sum_k c_k ( sum_{|S|=k} Z_S ) and appends the Pauli orbits.
void add_weight_polynomial(OperatorSum& op, int n, const std::function<double(int)>& f,
                           int deg) {
  if (deg > 4 || deg >= n) throw Error("weight polynomial degree out of supported range");
  // solve for c_k on deg+1 sample weights
  Mat a(deg + 1, deg + 1);
  Vec rhs(deg + 1);
  for (int row = 0; row <= deg; ++row) {
    int w = row;
    double m = double(n - 2 * w);
    for (int k = 0; k <= deg; ++k) a(row, k) = elementary_symmetric_pm1(k, m, n);
    rhs[row] = f(w);
  }
  Vec c = a.fullPivLu().solve(rhs);
  // exactness check across all weights
  for (int w = 0; w <= n; ++w) {
    double m = double(n - 2 * w);
    double v = 0.0;
    for (int k = 0; k <= deg; ++k) v += c[k] * elementary_symmetric_pm1(k, m, n);
    if (std::abs(v - f(w)) > 1e-8 * (1.0 + std::abs(f(w))))
      throw Error("weight function is not a degree-" + std::to_string(deg) + " polynomial");
  }
  if (c[0] != 0.0) op.add_identity(c[0]);
  for (int k = 1; k <= deg; ++k) {
    if (c[k] == 0.0) continue;
    std::vector<int> positions(k);
    std::iota(positions.begin(), positions.end(), 0);
    for (;;) {
      std::vector<PauliFactor> factors;
      for (int p : positions) factors.push_back({p, Axis::Z});
      op.add_pauli(c[k], factors);
      int i = k - 1;
      while (i >= 0 && positions[i] == n - k + i) --i;
      if (i < 0) break;
      ++positions[i];
      for (int j = i + 1; j < k; ++j) positions[j] = positions[j - 1] + 1;
    }
  }
}

SymmetricPath weight_symmetric_path(int n, const std::function<double(int)>& f) {
  SymmetricPath sym;
  sym.n = n;
  CMat h0 = 0.5 * (double(n) * CMat::Identity(n + 1, n + 1) - reduced_sum_x(n));
  sym.reduced.add(Coeff::linear_down(), std::move(h0));
  sym.reduced.add(Coeff::linear_up(), reduced_weight_diagonal(n, f));
  return sym;
}

ProblemInstance weight_instance(const std::string& family, int n,
                                const std::function<double(int)>& f, int argmin_w) {
  ProblemInstance inst;
  inst.family = family;
  inst.n = n;
  inst.diagonal_final = true;
  inst.weight_cost = WeightCost{f};
  inst.symmetric = weight_symmetric_path(n, f);
  inst.has_symmetric = true;
  inst.known_solution = KnownSolution{{weight_config(n, argmin_w)}, f(argmin_w)};
  if (n <= kFullPathLimit) {
    OperatorSum h1(n);
    // split f into the linear Hamming-weight part plus shell corrections so
    // the term count stays manageable
    h1 += hamming_weight_op(n);
    for (int w = 0; w <= n; ++w) {
      double corr = f(w) - double(w);
      if (corr != 0.0) add_weight_shell(h1, n, w, corr);
    }
    inst.path = HamiltonianPath::interpolation(transverse_field_half(n), std::move(h1));
    inst.has_full_path = true;
    inst.coherent_path = inst.path;
    inst.has_coherent_path = true;
  }
  return inst;
}

}  // namespace

ProblemInstance make_grover(int n, std::uint64_t marked) {
  if (n < 1 || n > kApplyQubitLimit) throw DimensionError("grover size out of range");
  if (marked >= (std::uint64_t(1) << n)) throw Error("marked index out of range");
  ProblemInstance inst;
  inst.family = "grover";
  inst.params = "m=" + std::to_string(marked);
  inst.n = n;
  OperatorSum h0(n), h1(n);
  h0.add_identity(1.0).add_uniform_projector(-1.0);
  h1.add_identity(1.0).add_projector(-1.0, bits_of(marked, n));
  inst.path = HamiltonianPath::interpolation(h0, h1);
  inst.has_full_path = true;
  inst.diagonal_final = true;
  inst.analytic_gap_available = true;
  inst.known_solution = KnownSolution{{config_of(marked, n)}, 0.0};
  // the marked state can be gauged to the all-zeros string by a product of
  // bit flips that leaves H_0 invariant
  OperatorSum g1(n);
  g1.add_identity(1.0).add_projector(-1.0, std::string(n, '0'));
  inst.coherent_path = HamiltonianPath::interpolation(h0, g1);
  inst.has_coherent_path = true;
  if (marked == 0) {
    inst.symmetric = reduce_symmetric(inst.path);
    inst.has_symmetric = true;
  }
  return inst;
}

ProblemInstance make_multi_marked(int n, std::vector<std::uint64_t> marked) {
  if (marked.empty()) throw Error("need at least one marked state");
  std::sort(marked.begin(), marked.end());
  if (std::adjacent_find(marked.begin(), marked.end()) != marked.end())
    throw Error("duplicate marked state");
  ProblemInstance inst;
  inst.family = "multi_marked";
  inst.params = "M=" + std::to_string(marked.size());
  inst.n = n;
  OperatorSum h0(n), h1(n);
  h0.add_identity(1.0).add_uniform_projector(-1.0);
  h1.add_identity(1.0);
  KnownSolution sol;
  sol.energy = 0.0;
  for (std::uint64_t m : marked) {
    if (m >= (std::uint64_t(1) << n)) throw Error("marked index out of range");
    h1.add_projector(-1.0, bits_of(m, n));
    sol.configurations.push_back(config_of(m, n));
  }
  inst.path = HamiltonianPath::interpolation(std::move(h0), std::move(h1));
  inst.has_full_path = true;
  inst.diagonal_final = true;
  inst.analytic_gap_available = true;
  inst.known_solution = std::move(sol);
  inst.params += " n=" + std::to_string(n);
  return inst;
}

ProblemInstance make_deutsch_jozsa(int n, bool balanced) {
  if (n < 1) throw DimensionError("deutsch_jozsa needs n >= 1");
  ProblemInstance inst;
  inst.family = "deutsch_jozsa";
  inst.params = balanced ? "balanced" : "constant";
  inst.n = n;
  OperatorSum h0(n), h1(n);
  h0.add_identity(1.0).add_uniform_projector(-1.0);
  // uniform superposition over even (constant) or odd (balanced) index states
  std::string symbols(n, '+');
  symbols[0] = balanced ? '1' : '0';
  h1.add_identity(1.0).add_projector(-1.0, symbols);
  inst.path = HamiltonianPath::interpolation(std::move(h0), std::move(h1));
  inst.has_full_path = true;
  return inst;
}

ProblemInstance make_bernstein_vazirani(int n, std::uint64_t a) {
  if (n < 1 || a >= (std::uint64_t(1) << n)) throw Error("bad bernstein_vazirani parameters");
  ProblemInstance inst;
  inst.family = "bernstein_vazirani";
  inst.params = "a=" + std::to_string(a);
  inst.n = n + 1;  // A register plus the single B qubit (index n)
  OperatorSum h0(n + 1), h1(n + 1);
  h0.add_identity(0.5).add_pauli(-0.5, {{n, Axis::X}});
  h1.add_identity(-0.5);
  std::vector<PauliFactor> za;
  for (int q = 0; q < n; ++q)
    if ((a >> q) & 1) za.push_back({q, Axis::Z});
  za.push_back({n, Axis::Z});
  h1.add_pauli(-0.5, za);
  inst.path = HamiltonianPath::interpolation(std::move(h0), std::move(h1));
  inst.has_full_path = true;
  inst.diagonal_final = true;
  inst.known_solution = KnownSolution{{config_of(0, n + 1)}, -1.0};
  return inst;
}

ProblemInstance make_glued_trees(int n, double alpha) {
  if (n < 1) throw DimensionError("glued_trees needs n >= 1");
  if (!(alpha > 0.0)) throw Error("glued_trees needs alpha > 0");
  int d = 2 * n + 2;
  CMat h0 = CMat::Zero(d, d), h1 = CMat::Zero(d, d), adj = CMat::Zero(d, d);
  h0(0, 0) = -1.0;
  h1(d - 1, d - 1) = -1.0;
  for (int j = 0; j + 1 < d; ++j) {
    double v = (j == n) ? std::sqrt(2.0) : 1.0;
    adj(j, j + 1) = v;
    adj(j + 1, j) = v;
  }
  ProblemInstance inst;
  inst.family = "glued_trees";
  inst.params = "n=" + std::to_string(n) + " alpha=" + std::to_string(alpha);
  inst.n = n;
  inst.path.add(Coeff::scaled(Coeff::linear_down(), alpha), h0);
  inst.path.add(Coeff::bump(), CMat(-adj));
  inst.path.add(Coeff::scaled(Coeff::linear_up(), alpha), h1);
  inst.has_full_path = true;  // matrix-backed, column basis
  return inst;
}

ProblemInstance make_plain_hw(int n) {
  ProblemInstance inst = weight_instance("plain_hw", n, [](int w) { return double(w); }, 0);
  inst.analytic_gap_available = true;
  return inst;
}

ProblemInstance make_spike(int n) {
  if (n % 4 != 0) throw Error("spike needs n divisible by 4");
  int spike_at = n / 4;
  auto f = [n, spike_at](int w) { return w == spike_at ? double(n) : double(w); };
  return weight_instance("spike", n, f, 0);
}

ProblemInstance make_barrier_hw(int n, double alpha, double beta) {
  if (!(alpha + beta >= 0.5 && alpha < 0.5 && 2 * alpha + beta <= 1.0))
    throw Error("barrier exponents outside the supported region");
  double center = n / 4.0;
  double height = std::pow(double(n), alpha);
  double half_width = 0.5 * std::pow(double(n), beta);
  auto f = [center, height, half_width](int w) {
    if (std::abs(w - center) < half_width) return double(w) + height;
    return double(w);
  };
  return weight_instance("barrier_hw", n, f, 0);
}

ProblemInstance make_plateau(int n, int l, int u) {
  if (!(0 <= l && l < u && u <= n)) throw Error("bad plateau bounds");
  auto f = [l, u](int w) { return (w > l && w < u) ? double(u - 1) : double(w); };
  return weight_instance("plateau", n, f, 0);
}

ProblemInstance make_vandam_phw(int n) {
  auto f = [n](int w) { return w == n ? -1.0 : double(w); };
  ProblemInstance inst = weight_instance("vandam_phw", n, f, n);
  return inst;
}

ProblemInstance make_twosat_ring(int n, const std::vector<int>& disagree_positions) {
  if (n < 3) throw Error("twosat_ring needs n >= 3");
  if (disagree_positions.size() % 2 != 0)
    throw Error("a satisfiable ring needs an even number of disagree clauses");
  std::vector<int> x(n, 0);
  for (int p : disagree_positions) {
    if (p < 0 || p >= n) throw Error("disagree position out of range");
    if (x[p]) throw Error("duplicate disagree position");
    x[p] = 1;
  }
  ProblemInstance inst;
  inst.family = "twosat_ring";
  inst.params = "n=" + std::to_string(n) +
                " disagree=" + std::to_string(disagree_positions.size());
  inst.n = n;
  OperatorSum h0(n), h1(n);
  // initial Hamiltonian sum_i (1 - sigma_i^x), no 1/2 here
  h0.add_identity(double(n));
  for (int i = 0; i < n; ++i) h0.add_pauli(-1.0, {{i, Axis::X}});
  h1.add_identity(0.5 * n);
  IsingCost cost;
  cost.constant = 0.5 * n;
  cost.field.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    double sign = x[i] ? 1.0 : -1.0;  // -(-1)^{x_i}/2 coefficient
    h1.add_pauli(0.5 * sign, {{i, Axis::Z}, {j, Axis::Z}});
    cost.pairs.push_back({i, j, 0.5 * sign});
  }
  inst.path = HamiltonianPath::interpolation(std::move(h0), std::move(h1));
  inst.has_full_path = true;
  inst.diagonal_final = true;
  inst.ising = std::move(cost);
  inst.analytic_gap_available = true;
  // satisfying assignment by walking the ring
  std::vector<std::uint8_t> w(n, 0);
  for (int i = 1; i < n; ++i) w[i] = std::uint8_t(w[i - 1] ^ x[i - 1]);
  std::vector<std::uint8_t> wbar(n);
  for (int i = 0; i < n; ++i) wbar[i] = std::uint8_t(1 - w[i]);
  inst.known_solution = KnownSolution{{w, wbar}, 0.0};
  return inst;
}

ProblemInstance make_weighted_chain(int period, int b_sectors, double w) {
  if (period < 1 || b_sectors < 0 || w <= 1.0) throw Error("bad weighted chain parameters");
  int sectors = 2 * b_sectors + 1;
  int n = period * sectors + 1;
  ProblemInstance inst;
  inst.family = "weighted_chain";
  inst.params = "period=" + std::to_string(period) + " b=" + std::to_string(b_sectors) +
                " w=" + std::to_string(w);
  inst.n = n;
  OperatorSum h1(n);
  IsingCost cost;
  cost.field.assign(n, 0.0);
  double total_j = 0.0;
  for (int i = 1; i <= n - 1; ++i) {  // couplings J_i between sites i-1, i (1-based bonds)
    int sector = (i + period - 1) / period;  // ceil(i/period)
    double j_i = (sector % 2 == 1) ? w : 1.0;
    h1.add_pauli(-j_i, {{i - 1, Axis::Z}, {i, Axis::Z}});
    cost.pairs.push_back({i - 1, i, -j_i});
    total_j += j_i;
  }
  inst.path = HamiltonianPath::interpolation(minus_sum_x(n), std::move(h1));
  inst.has_full_path = n <= kFullPathLimit;
  if (!inst.has_full_path) inst.path = HamiltonianPath();
  inst.diagonal_final = true;
  inst.ising = std::move(cost);
  inst.known_solution = KnownSolution{
      {std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 1)}, -total_j};
  return inst;
}

ProblemInstance make_dimer_ladder(int rungs, double K, double U) {
  if (rungs < 2 || rungs % 2 != 0) throw Error("dimer ladder needs an even number of rungs");
  int n = 2 * rungs;  // upper_i = 2i, lower_i = 2i+1
  ProblemInstance inst;
  inst.family = "dimer_ladder";
  inst.params = "L=" + std::to_string(rungs) + " K=" + std::to_string(K) +
                " U=" + std::to_string(U);
  inst.n = n;
  OperatorSum h1(n);
  IsingCost cost;
  cost.field.assign(n, 0.0);
  auto add_pair = [&](int i, int j, double coeff) {
    h1.add_pauli(coeff, {{i, Axis::Z}, {j, Axis::Z}});
    cost.pairs.push_back({i, j, coeff});
  };
  for (int i = 0; i < rungs; ++i) {
    int up = 2 * i, lo = 2 * i + 1;
    int up_next = 2 * ((i + 1) % rungs), lo_next = 2 * ((i + 1) % rungs) + 1;
    add_pair(up, up_next, K);    // upper-leg J = -K, term -J ZZ = +K ZZ
    add_pair(lo, lo_next, -K);   // lower-leg J = +K
    add_pair(up, lo, -K);        // rung J = +K
    h1.add_pauli(-K, {{up, Axis::Z}});
    cost.field[up] += -K;
    h1.add_pauli(0.5 * U, {{lo, Axis::Z}});
    cost.field[lo] += 0.5 * U;
  }
  inst.path = HamiltonianPath::interpolation(minus_sum_x(n), std::move(h1));
  inst.has_full_path = n <= kFullPathLimit;
  if (!inst.has_full_path) inst.path = HamiltonianPath();
  inst.diagonal_final = true;
  inst.ising = std::move(cost);
  return inst;
}

ProblemInstance make_pspin(int n, int p) {
  if (p < 2 || p > 4) throw Error("pspin supports 2 <= p <= 4");
  auto f = [n, p](int w) {
    double m = double(n - 2 * w) / double(n);
    return -double(n) * std::pow(m, p);
  };
  ProblemInstance inst;
  inst.family = "pspin";
  inst.params = "n=" + std::to_string(n) + " p=" + std::to_string(p);
  inst.n = n;
  inst.diagonal_final = true;
  inst.weight_cost = WeightCost{f};
  inst.symmetric = weight_symmetric_path(n, f);
  inst.has_symmetric = true;
  int argmin = 0;  // m=+1 minimizes -n m^p for any p; even p also at w=n
  inst.known_solution = KnownSolution{{weight_config(n, 0)}, f(argmin)};
  if (p % 2 == 0) inst.known_solution->configurations.push_back(weight_config(n, n));
  if (n <= kFullPathLimit) {
    OperatorSum h1(n);
    add_weight_polynomial(h1, n, f, p);
    inst.path = HamiltonianPath::interpolation(transverse_field_half(n), std::move(h1));
    inst.has_full_path = true;
    inst.coherent_path = inst.path;
    inst.has_coherent_path = true;
  }
  return inst;
}

ProblemInstance make_sk(int n, std::uint64_t seed, bool gaussian) {
  if (n < 2) throw Error("sk needs n >= 2");
  Rng rng(derive_seed(seed, "sk/" + std::to_string(n)));
  ProblemInstance inst;
  inst.family = "sk";
  inst.params = "n=" + std::to_string(n) + (gaussian ? " gaussian" : " bimodal");
  inst.n = n;
  inst.seed = seed;
  OperatorSum h1(n);
  IsingCost cost;
  cost.field.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double J = gaussian ? rng.gaussian() / std::sqrt(double(n)) : (rng.coin() ? 1.0 : -1.0);
      h1.add_pauli(J, {{i, Axis::Z}, {j, Axis::Z}});
      cost.pairs.push_back({i, j, J});
    }
  inst.path = HamiltonianPath::interpolation(transverse_field_half(n), std::move(h1));
  inst.has_full_path = n <= kFullPathLimit;
  if (!inst.has_full_path) inst.path = HamiltonianPath();
  inst.diagonal_final = true;
  inst.ising = std::move(cost);
  return inst;
}

ProblemInstance make_hopfield(int n, int p, int r, std::uint64_t seed) {
  if (p != 2) throw Error("hopfield is implemented for p = 2");
  if (n < 2 || r < 1) throw Error("bad hopfield parameters");
  Rng rng(derive_seed(seed, "hopfield/" + std::to_string(n) + "/" + std::to_string(r)));
  Mat xi(r, n);
  for (int mu = 0; mu < r; ++mu)
    for (int i = 0; i < n; ++i) xi(mu, i) = rng.gaussian();
  ProblemInstance inst;
  inst.family = "hopfield";
  inst.params = "n=" + std::to_string(n) + " p=2 r=" + std::to_string(r);
  inst.n = n;
  inst.seed = seed;
  OperatorSum h1(n);
  IsingCost cost;
  cost.field.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double J = 0.0;
      for (int mu = 0; mu < r; ++mu) J += xi(mu, i) * xi(mu, j);
      J /= double(n);
      h1.add_pauli(-J, {{i, Axis::Z}, {j, Axis::Z}});  // Hebb rule, ferromagnetic sign
      cost.pairs.push_back({i, j, -J});
    }
  inst.path = HamiltonianPath::interpolation(transverse_field_half(n), std::move(h1));
  inst.has_full_path = n <= kFullPathLimit;
  if (!inst.has_full_path) inst.path = HamiltonianPath();
  inst.diagonal_final = true;
  inst.ising = std::move(cost);
  // stash the patterns for the angle-sorting solver
  std::ostringstream patterns;
  for (int mu = 0; mu < r; ++mu)
    for (int i = 0; i < n; ++i) patterns << " " << xi(mu, i);
  inst.params += " |xi" + patterns.str();
  return inst;
}

ProblemInstance make_exact_cover_clauses(int n, std::vector<std::array<int, 3>> clause_list,
                                         ExactCoverEncoding encoding) {
  ProblemInstance inst;
  inst.family = "exact_cover";
  inst.params = "n=" + std::to_string(n) + " m=" + std::to_string(clause_list.size()) +
                (encoding == ExactCoverEncoding::ThreeLocal ? " enc=3local" : " enc=2local");
  inst.n = n;
  OperatorSum h1(n);
  IsingCost cost;
  cost.field.assign(n, 0.0);
  for (auto& c : clause_list) {
    std::sort(c.begin(), c.end());
    if (c[0] < 0 || c[2] >= n || c[0] == c[1] || c[1] == c[2])
      throw Error("bad exact-cover clause");
    if (encoding == ExactCoverEncoding::ThreeLocal) {
      // projector onto the five violating assignments:
      // 5/8 - (1/8) sum Z + (1/8) sum ZZ + (3/8) ZZZ
      h1.add_identity(5.0 / 8.0);
      cost.constant += 5.0 / 8.0;
      for (int a = 0; a < 3; ++a) {
        h1.add_pauli(-1.0 / 8.0, {{c[a], Axis::Z}});
        cost.field[c[a]] += -1.0 / 8.0;
      }
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          h1.add_pauli(1.0 / 8.0, {{c[a], Axis::Z}, {c[b], Axis::Z}});
          cost.pairs.push_back({c[a], c[b], 1.0 / 8.0});
        }
      h1.add_pauli(3.0 / 8.0, {{c[0], Axis::Z}, {c[1], Axis::Z}, {c[2], Axis::Z}});
      cost.triples.push_back({c[0], c[1], c[2], 3.0 / 8.0});
    } else {
      // (Z1 + Z2 + Z3 - 1)^2 / 4 = 1 + (sum ZZ)/2 - (sum Z)/2
      h1.add_identity(1.0);
      cost.constant += 1.0;
      for (int a = 0; a < 3; ++a) {
        h1.add_pauli(-0.5, {{c[a], Axis::Z}});
        cost.field[c[a]] += -0.5;
      }
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          h1.add_pauli(0.5, {{c[a], Axis::Z}, {c[b], Axis::Z}});
          cost.pairs.push_back({c[a], c[b], 0.5});
        }
    }
  }
  inst.path = HamiltonianPath::interpolation(transverse_field_half(n), std::move(h1));
  inst.has_full_path = n <= kFullPathLimit;
  if (!inst.has_full_path) inst.path = HamiltonianPath();
  inst.diagonal_final = true;
  inst.ising = std::move(cost);
  return inst;
}

ProblemInstance make_exact_cover(int n, int clauses, ExactCoverEncoding encoding,
                                 std::uint64_t seed) {
  if (n < 3 || clauses < 1) throw Error("bad exact-cover parameters");
  Rng rng(derive_seed(seed, "ec/" + std::to_string(n) + "/" + std::to_string(clauses)));
  std::vector<std::array<int, 3>> list;
  int guard = 0;
  while (int(list.size()) < clauses) {
    if (++guard > 100000) throw Error("could not draw distinct exact-cover clauses");
    std::array<int, 3> c{};
    c[0] = int(rng.below(n));
    do c[1] = int(rng.below(n)); while (c[1] == c[0]);
    do c[2] = int(rng.below(n)); while (c[2] == c[0] || c[2] == c[1]);
    std::sort(c.begin(), c.end());
    if (std::find(list.begin(), list.end(), c) == list.end()) list.push_back(c);
  }
  ProblemInstance inst = make_exact_cover_clauses(n, std::move(list), encoding);
  inst.seed = seed;
  return inst;
}

namespace {

struct XorsatSystem {
  std::vector<std::array<int, 3>> clauses;
  std::vector<int> rhs;  // parity target per clause
};

XorsatSystem draw_3reg_xorsat(int n, std::uint64_t seed) {
  if (n < 4) throw Error("xorsat_3reg needs n >= 4");
  for (int attempt = 0; attempt < 4096; ++attempt) {
    Rng rng(derive_seed(seed, "xorsat/" + std::to_string(n) + "/" + std::to_string(attempt)));
    std::vector<int> stubs;
    stubs.reserve(3 * n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < 3; ++k) stubs.push_back(i);
    for (int i = int(stubs.size()) - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below(std::uint64_t(i + 1))]);
    XorsatSystem sys;
    bool ok = true;
    for (int c = 0; c < n && ok; ++c) {
      std::array<int, 3> clause = {stubs[3 * c], stubs[3 * c + 1], stubs[3 * c + 2]};
      std::sort(clause.begin(), clause.end());
      if (clause[0] == clause[1] || clause[1] == clause[2]) ok = false;
      sys.clauses.push_back(clause);
    }
    if (!ok) continue;
    // plant a satisfying assignment so Gaussian elimination always succeeds
    Rng prng(derive_seed(seed, "xorsat-plant/" + std::to_string(n)));
    std::vector<int> planted(n);
    for (int i = 0; i < n; ++i) planted[i] = int(prng.below(2));
    sys.rhs.resize(n);
    for (int c = 0; c < n; ++c) {
      int parity = 0;
      for (int v : sys.clauses[c]) parity ^= planted[v];
      sys.rhs[c] = parity;
    }
    return sys;
  }
  throw Error("failed to draw a simple 3-regular hypergraph");
}

// GF(2) Gaussian elimination; returns any solution (free variables = 0).
std::vector<std::uint8_t> gf2_solve(const XorsatSystem& sys, int n) {
  int m = int(sys.clauses.size());
  std::vector<std::vector<std::uint8_t>> a(m, std::vector<std::uint8_t>(n + 1, 0));
  for (int c = 0; c < m; ++c) {
    for (int v : sys.clauses[c]) a[c][v] ^= 1;
    a[c][n] = std::uint8_t(sys.rhs[c]);
  }
  int row = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < n && row < m; ++col) {
    int sel = -1;
    for (int r = row; r < m; ++r)
      if (a[r][col]) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[row], a[sel]);
    for (int r = 0; r < m; ++r)
      if (r != row && a[r][col])
        for (int k = col; k <= n; ++k) a[r][k] ^= a[row][k];
    pivot_col.push_back(col);
    ++row;
  }
  for (int r = row; r < m; ++r)
    if (a[r][n]) throw Error("xorsat system is inconsistent");
  std::vector<std::uint8_t> x(n, 0);
  for (int r = 0; r < row; ++r) x[pivot_col[r]] = a[r][n];
  return x;
}

}  // namespace

ProblemInstance make_xorsat_3reg(int n, std::uint64_t seed) {
  XorsatSystem sys = draw_3reg_xorsat(n, seed);
  ProblemInstance inst;
  inst.family = "xorsat_3reg";
  inst.params = "n=" + std::to_string(n);
  inst.n = n;
  inst.seed = seed;
  OperatorSum h1(n);
  IsingCost cost;
  cost.field.assign(n, 0.0);
  std::ostringstream clause_text;
  for (int c = 0; c < n; ++c) {
    double J = sys.rhs[c] ? -1.0 : 1.0;  // J_c = +1 when even parity satisfies
    h1.add_identity(0.5);
    cost.constant += 0.5;
    const auto& cl = sys.clauses[c];
    h1.add_pauli(-0.5 * J, {{cl[0], Axis::Z}, {cl[1], Axis::Z}, {cl[2], Axis::Z}});
    cost.triples.push_back({cl[0], cl[1], cl[2], -0.5 * J});
    clause_text << " " << cl[0] << "," << cl[1] << "," << cl[2] << ":" << sys.rhs[c];
  }
  inst.params += " |clauses" + clause_text.str();
  inst.path = HamiltonianPath::interpolation(transverse_field_half(n), std::move(h1));
  inst.has_full_path = n <= kFullPathLimit;
  if (!inst.has_full_path) inst.path = HamiltonianPath();
  inst.diagonal_final = true;
  inst.ising = std::move(cost);
  inst.known_solution = KnownSolution{{gf2_solve(sys, n)}, 0.0};
  return inst;
}

ProblemInstance make_number_partition(const std::vector<double>& numbers) {
  int n = int(numbers.size());
  if (n < 2) throw Error("number_partition needs at least two numbers");
  for (double a : numbers)
    if (!(a > 0)) throw Error("number_partition needs positive numbers");
  ProblemInstance inst;
  inst.family = "number_partition";
  inst.params = "n=" + std::to_string(n);
  inst.n = n;
  OperatorSum h1(n);
  IsingCost cost;
  cost.field.assign(n, 0.0);
  double diag = 0.0;
  for (double a : numbers) diag += a * a;
  h1.add_identity(diag);
  cost.constant = diag;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      h1.add_pauli(2.0 * numbers[i] * numbers[j], {{i, Axis::Z}, {j, Axis::Z}});
      cost.pairs.push_back({i, j, 2.0 * numbers[i] * numbers[j]});
    }
  inst.path = HamiltonianPath::interpolation(transverse_field_half(n), std::move(h1));
  inst.has_full_path = n <= kFullPathLimit;
  if (!inst.has_full_path) inst.path = HamiltonianPath();
  inst.diagonal_final = true;
  inst.ising = std::move(cost);
  return inst;
}

ProblemInstance make_catalyst_3local(int n) {
  if (n < 3) throw Error("catalyst_3local needs n >= 3");
  auto h = [n](int w) {
    double W = double(w), N = double(n);
    return 1.5 * W * (N - W) * (N - W - 1.0) + 0.5 * W * (W - 1.0) * (N - W) +
           W * (W - 1.0) * (W - 2.0) / 6.0;
  };
  ProblemInstance inst;
  inst.family = "catalyst_3local";
  inst.params = "n=" + std::to_string(n);
  inst.n = n;
  inst.diagonal_final = true;
  inst.weight_cost = WeightCost{h};
  inst.known_solution = KnownSolution{{weight_config(n, 0)}, 0.0};

  double c = 0.5 * (n - 1.0) * (n - 2.0);
  // symmetric-sector path
  {
    CMat h0 = c * (0.5 * n * CMat::Identity(n + 1, n + 1) - 0.5 * reduced_sum_x(n));
    CMat ax = reduced_sum_x(n), az = reduced_sum_z(n), ay = reduced_sum_y(n);
    CMat hc = -0.5 * double(n) * (ax * az + Complex(0, 1) * ay);  // -2n(SxSz+SzSx)
    CMat h1 = reduced_weight_diagonal(n, h);
    inst.symmetric.n = n;
    inst.symmetric.reduced.add(Coeff::linear_down(), std::move(h0));
    inst.symmetric.reduced.add(Coeff::bump(), std::move(hc));
    inst.symmetric.reduced.add(Coeff::linear_up(), std::move(h1));
    inst.has_symmetric = true;
  }
  if (n <= kFullPathLimit) {
    OperatorSum h0(n);
    h0.add_identity(c * 0.5 * n);
    for (int i = 0; i < n; ++i) h0.add_pauli(-0.5 * c, {{i, Axis::X}});
    OperatorSum hc(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) hc.add_pauli(-0.5 * n, {{i, Axis::X}, {j, Axis::Z}});
    OperatorSum h1(n);
    add_weight_polynomial(h1, n, h, 3);
    inst.path.add(Coeff::linear_down(), std::move(h0));
    inst.path.add(Coeff::bump(), std::move(hc));
    inst.path.add(Coeff::linear_up(), std::move(h1));
    inst.has_full_path = true;
    inst.coherent_path = inst.path;
    inst.has_coherent_path = true;
  }
  return inst;
}

ProblemInstance with_random_init(ProblemInstance base, std::uint64_t seed) {
  if (!base.has_full_path || base.path.components().size() != 2)
    throw Error("random_init needs a full two-component path");
  int n = 0;
  const auto& first = base.path.components()[0].op;
  if (!std::holds_alternative<OperatorSum>(first)) throw Error("random_init needs a qubit path");
  n = std::get<OperatorSum>(first).n_qubits();
  Rng rng(derive_seed(seed, "random_init"));
  OperatorSum h0(n);
  double total = 0.0;
  std::vector<double> cs(n);
  for (int i = 0; i < n; ++i) {
    cs[i] = rng.coin() ? 0.5 : 1.5;
    total += cs[i];
  }
  h0.add_identity(0.5 * total);
  for (int i = 0; i < n; ++i) h0.add_pauli(-0.5 * cs[i], {{i, Axis::X}});
  HamiltonianPath path;
  path.add(Coeff::linear_down(), std::move(h0));
  const auto& final_comp = base.path.components()[1];
  path.add(final_comp.coeff, std::get<OperatorSum>(final_comp.op));
  base.path = std::move(path);
  base.family = base.family + "+random_init";
  base.has_symmetric = false;
  base.has_coherent_path = false;
  base.seed = seed;
  return base;
}

// --- analytic gaps -------------------------------------------------------------

double analytic_gap(const ProblemInstance& instance, double s) {
  if (instance.family == "grover" || instance.family == "multi_marked") {
    double N = double(std::uint64_t(1) << instance.n);
    double M = 1.0;
    if (instance.family == "multi_marked")
      M = double(instance.known_solution->configurations.size());
    return std::sqrt((1 - 2 * s) * (1 - 2 * s) + 4.0 * M / N * s * (1 - s));
  }
  if (instance.family == "plain_hw")
    return std::sqrt(1.0 - 2.0 * s + 2.0 * s * s);
  if (instance.family == "twosat_ring") {
    int n = instance.n;
    if (n % 2 != 0) throw Error("ring closed form needs even n");
    return twosat_ring_ep(n, 1, s, true) - twosat_ring_ep(n, 1, s, false);
  }
  throw Error("no analytic gap for family '" + instance.family + "'");
}

double twosat_ring_ep(int n, int p, double s, bool plus) {
  double c = std::cos(kPi * double(p) / double(n));
  double root = std::sqrt((2 - 3 * s) * (2 - 3 * s) + 4 * s * (1 - s) * (1 - c));
  return 2.0 - s + (plus ? root : -root);
}

std::vector<double> twosat_ring_sector_spectrum(int n, double s) {
  if (n % 2 != 0 || n < 4) throw Error("sector spectrum needs even n >= 4");
  // mode pairs p = 1, 3, ..., n-1; each contributes one of
  // {E_p^-, E_p^+, single-occupancy 2-s (twice)}, with an even number of
  // singly-occupied pairs (fermion parity G = +1)
  int pairs = n / 2;
  std::vector<double> spectrum;
  std::vector<int> choice(pairs, 0);  // 0: E-, 1: E+, 2,3: single occupancy
  for (;;) {
    int singles = 0;
    for (int c : choice) singles += (c >= 2) ? 1 : 0;
    if (singles % 2 == 0) {
      double e = 0.0;
      for (int k = 0; k < pairs; ++k) {
        int p = 2 * k + 1;
        if (choice[k] == 0)
          e += twosat_ring_ep(n, p, s, false);
        else if (choice[k] == 1)
          e += twosat_ring_ep(n, p, s, true);
        else
          e += 2.0 - s;
      }
      spectrum.push_back(e);
    }
    int k = 0;
    while (k < pairs && choice[k] == 3) choice[k++] = 0;
    if (k == pairs) break;
    ++choice[k];
  }
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

double twosat_ring_s_star(int n) {
  double c = std::cos(kPi / double(n));
  return 2.0 * (2.0 + c) / (5.0 + 4.0 * c);
}

double twosat_ring_min_gap(int n) {
  double c = std::cos(kPi / double(n));
  return 4.0 * std::abs(std::sin(kPi / double(n))) / std::sqrt(5.0 + 4.0 * c);
}

// --- classical solvers ------------------------------------------------------------

namespace {

KnownSolution brute_force_ising(const IsingCost& cost, int n) {
  if (n > 24) throw Error("brute force limited to 24 bits");
  std::vector<std::uint8_t> bits(n, 0);
  double e = cost.value(bits);
  double best = e;
  std::vector<std::uint8_t> best_bits = bits;
  std::uint64_t total = std::uint64_t(1) << n;
  // Gray-code walk with incremental updates
  for (std::uint64_t i = 1; i < total; ++i) {
    int flip = std::countr_zero(i);
    e += cost.flip_delta(bits, flip);
    bits[flip] ^= 1;
    if (e < best - 1e-12) {
      best = e;
      best_bits = bits;
    }
  }
  return {{best_bits}, best};
}

KnownSolution hopfield_angle_sort(const ProblemInstance& inst) {
  // patterns serialized in params after "|xi"
  auto pos = inst.params.find("|xi");
  if (pos == std::string::npos) throw Error("hopfield patterns missing");
  std::istringstream in(inst.params.substr(pos + 3));
  int n = inst.n;
  Mat xi(2, n);
  for (int mu = 0; mu < 2; ++mu)
    for (int i = 0; i < n; ++i)
      if (!(in >> xi(mu, i))) throw Error("hopfield patterns truncated");
  // maximize || sum_i s_i v_i || with v_i = (xi1_i, xi2_i): the optimal
  // assignment is s_i = sign(v_i . u) for some direction u, so only the 2n
  // sector-consistent assignments generated by sorting the perpendicular
  // angles need to be checked
  std::vector<double> boundaries;
  for (int i = 0; i < n; ++i) {
    double phi = std::atan2(xi(1, i), xi(0, i));
    boundaries.push_back(std::fmod(phi + kPi / 2, 2 * kPi));
    boundaries.push_back(std::fmod(phi + 3 * kPi / 2, 2 * kPi));
  }
  std::sort(boundaries.begin(), boundaries.end());
  double best_obj = -1.0;
  std::vector<std::uint8_t> best_bits(n, 0);
  for (std::size_t b = 0; b < boundaries.size(); ++b) {
    double next = (b + 1 < boundaries.size()) ? boundaries[b + 1] : boundaries[0] + 2 * kPi;
    double mid = 0.5 * (boundaries[b] + next);
    double ux = std::cos(mid), uy = std::sin(mid);
    std::vector<std::uint8_t> bits(n);
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double dot = xi(0, i) * ux + xi(1, i) * uy;
      double s = dot >= 0 ? 1.0 : -1.0;
      bits[i] = std::uint8_t(s < 0);
      m1 += s * xi(0, i);
      m2 += s * xi(1, i);
    }
    double obj = m1 * m1 + m2 * m2;
    if (obj > best_obj) {
      best_obj = obj;
      best_bits = bits;
    }
  }
  double energy = inst.ising->value(best_bits);
  return {{best_bits}, energy};
}

}  // namespace

KnownSolution classical_solve(const ProblemInstance& instance) {
  const std::string& fam = instance.family;
  if (fam == "twosat_ring" || fam == "weighted_chain" || fam == "grover" ||
      fam == "multi_marked" || fam == "xorsat_3reg" || fam == "bernstein_vazirani")
    return *instance.known_solution;  // produced by the family algorithm in make()
  if (instance.weight_cost) {
    int best_w = 0;
    double best = instance.weight_cost->f(0);
    for (int w = 1; w <= instance.n; ++w) {
      double v = instance.weight_cost->f(w);
      if (v < best - 1e-12) {
        best = v;
        best_w = w;
      }
    }
    return {{weight_config(instance.n, best_w)}, best};
  }
  if (fam == "hopfield") return hopfield_angle_sort(instance);
  if (instance.ising) return brute_force_ising(*instance.ising, instance.n);
  throw Error("no classical solver for family '" + fam + "'");
}

// --- degeneracy lifting --------------------------------------------------------------

OperatorSum lift_degeneracy(const OperatorSum& ising, int ancillas_per_term, double b) {
  int n = ising.n_qubits();
  if (ancillas_per_term < 0) throw Error("ancilla count must be >= 0");
  struct FieldTerm {
    int qubit;
    double h;
  };
  struct PairTerm {
    int i, j;
    double j_coupling;
  };
  std::vector<FieldTerm> fields;
  std::vector<PairTerm> pairs;
  double constant = 0.0;
  for (const auto& t : ising.terms()) {
    if (t.kind != TermKind::Pauli) throw Error("lift_degeneracy expects an Ising Pauli sum");
    const auto& p = t.pauli;
    for (const auto& f : p.factors)
      if (f.axis != Axis::Z) throw Error("lift_degeneracy expects Z-only terms");
    if (p.factors.empty()) {
      constant += p.coefficient;
      continue;
    }
    double c = p.coefficient;
    if (std::abs(std::abs(c) - 1.0) > 1e-12)
      throw Error("lift_degeneracy needs coefficients in {0, +-1}");
    if (p.factors.size() == 1)
      fields.push_back({p.factors[0].qubit, c});
    else if (p.factors.size() == 2)
      pairs.push_back({p.factors[0].qubit, p.factors[1].qubit, c});
    else
      throw Error("lift_degeneracy supports 1- and 2-local terms");
  }
  int m = int(fields.size() + pairs.size());
  int a = ancillas_per_term;
  OperatorSum out(std::max(1, n + m * a));
  if (constant != 0.0) out.add_identity(constant);
  for (const auto& f : fields) out.add_pauli(f.h, {{f.qubit, Axis::Z}});
  for (const auto& p : pairs) out.add_pauli(p.j_coupling, {{p.i, Axis::Z}, {p.j, Axis::Z}});
  // ancillas: term t gets qubits n + t*a .. n + t*a + a - 1. Each unsatisfied
  // term costs one unit (b units for fields) per ancilla pointing up;
  // all-ancillas-down reproduces the original spectrum exactly.
  int term_index = 0;
  auto ancilla = [&](int t, int k) { return n + t * a + k; };
  for (const auto& f : fields) {
    for (int k = 0; k < a; ++k) {
      int q = ancilla(term_index, k);
      // (b/4)(h Z_i + 1)(Z_q + 1)
      out.add_identity(b / 4.0);
      out.add_pauli(b / 4.0 * f.h, {{f.qubit, Axis::Z}});
      out.add_pauli(b / 4.0, {{q, Axis::Z}});
      out.add_pauli(b / 4.0 * f.h, {{f.qubit, Axis::Z}, {q, Axis::Z}});
    }
    ++term_index;
  }
  for (const auto& p : pairs) {
    for (int k = 0; k < a; ++k) {
      int q = ancilla(term_index, k);
      // (1/4)(J Z_i Z_j + 1)(Z_q + 1)
      out.add_identity(0.25);
      out.add_pauli(0.25 * p.j_coupling, {{p.i, Axis::Z}, {p.j, Axis::Z}});
      out.add_pauli(0.25, {{q, Axis::Z}});
      out.add_pauli(0.25 * p.j_coupling, {{p.i, Axis::Z}, {p.j, Axis::Z}, {q, Axis::Z}});
    }
    ++term_index;
  }
  return out;
}

double semiclassical_potential(const ProblemInstance& instance, double s, double theta,
                               double phi) {
  const HamiltonianPath* path = nullptr;
  if (instance.has_coherent_path) {
    path = &instance.coherent_path;
  } else if (instance.has_full_path && !instance.path.matrix_backed()) {
    path = &instance.path;
  } else {
    throw Error("no qubit path available for the semiclassical potential");
  }
  if (!instance.has_coherent_path && !instance.has_symmetric)
    reduce_symmetric(*path);  // structural symmetry check; throws if violated
  double v = 0.0;
  for (const auto& comp : path->components()) {
    double f = comp.coeff.f(s);
    if (f == 0.0) continue;
    v += f * coherent_expectation(std::get<OperatorSum>(comp.op), theta, phi);
  }
  return v;
}

}  // namespace aqc

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

#include <cmath>
#include <sstream>

#include "aqc/problems.hpp"
#include "aqc/rng.hpp"

namespace aqc {

void GraphSpec::validate(bool allow_self_loops) const {
  if (vertices < 1) throw Error("graph needs at least one vertex");
  if (!weights.empty() && weights.size() != edges.size())
    throw Error("weight list length mismatch");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= vertices || v < 0 || v >= vertices)
      throw Error("edge endpoint out of range");
    if (u == v && !allow_self_loops) throw Error("self-loop present");
  }
}

GraphSpec parse_edge_list(const std::string& text) {
  GraphSpec g;
  std::istringstream in(text);
  std::string line;
  int max_vertex = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u >> v)) throw Error("bad edge-list line: " + line);
    double w;
    if (ls >> w) {
      if (g.weights.size() != g.edges.size()) throw Error("mixed weighted/unweighted edges");
      g.weights.push_back(w);
    } else if (!g.weights.empty()) {
      throw Error("mixed weighted/unweighted edges");
    }
    g.edges.push_back({u, v});
    max_vertex = std::max({max_vertex, u, v});
  }
  g.vertices = max_vertex + 1;
  g.validate();
  return g;
}

std::string graph_to_edge_list(const GraphSpec& g) {
  std::ostringstream out;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    out << g.edges[e].first << " " << g.edges[e].second;
    if (!g.weights.empty()) out << " " << g.weights[e];
    out << "\n";
  }
  return out.str();
}

GraphSpec preferential_attachment(int vertices, int out_degree, std::uint64_t seed) {
  if (vertices < 2 || out_degree < 1) throw Error("bad preferential-attachment parameters");
  Rng rng(derive_seed(seed, "pa-graph/" + std::to_string(vertices)));
  GraphSpec g;
  g.vertices = vertices;
  std::vector<int> attract;  // multiset of attachment targets, degree-weighted
  g.edges.push_back({0, 1});
  attract.push_back(0);
  attract.push_back(1);
  for (int v = 2; v < vertices; ++v) {
    int links = std::min(out_degree, v);
    std::vector<int> chosen;
    int guard = 0;
    while (int(chosen.size()) < links && guard++ < 1000) {
      int target = attract[rng.below(attract.size())];
      if (target == v) continue;
      bool dup = false;
      for (int c : chosen) dup |= (c == target);
      if (!dup) chosen.push_back(target);
    }
    for (int target : chosen) {
      g.edges.push_back({v, target});
      attract.push_back(target);
    }
    attract.push_back(v);
  }
  g.validate();
  return g;
}

namespace {

// right-stochastic row transition matrix with dangling rows replaced by e/n
Mat transition_matrix(const GraphSpec& g) {
  int n = g.vertices;
  Mat p = Mat::Zero(n, n);
  Vec out_weight = Vec::Zero(n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    double w = g.weights.empty() ? 1.0 : g.weights[e];
    if (w < 0) throw Error("negative edge weight");
    p(g.edges[e].first, g.edges[e].second) += w;
    out_weight[g.edges[e].first] += w;
  }
  for (int i = 0; i < n; ++i) {
    if (out_weight[i] > 0) {
      p.row(i) /= out_weight[i];
    } else {
      p.row(i).setConstant(1.0 / n);  // dangling node
    }
  }
  return p;
}

Mat google_from_transition(const Mat& p, double alpha, const Vec& v) {
  int n = int(p.rows());
  return alpha * p.transpose() + (1 - alpha) * v * Eigen::RowVectorXd::Ones(n);
}

// complete graph (no self-loops) transition matrix
Mat complete_transition(int n) {
  Mat p = Mat::Constant(n, n, 1.0 / (n - 1));
  p.diagonal().setZero();
  return p;
}

OperatorSum embed_single_excitation(const Mat& h) {
  int n = int(h.rows());
  OperatorSum op(n);
  for (int i = 0; i < n; ++i) {
    // h_ii * sigma_i^+ sigma_i^- = h_ii (1 - Z_i)/2
    op.add_identity(0.5 * h(i, i));
    op.add_pauli(-0.5 * h(i, i), {{i, Axis::Z}});
    for (int j = i + 1; j < n; ++j) {
      double hij = h(i, j);
      if (hij == 0.0) continue;
      // sigma_i^+ sigma_j^- + h.c. = (X_i X_j + Y_i Y_j)/2
      op.add_pauli(0.5 * hij, {{i, Axis::X}, {j, Axis::X}});
      op.add_pauli(0.5 * hij, {{i, Axis::Y}, {j, Axis::Y}});
    }
  }
  return op;
}

}  // namespace

PageRankPipeline pagerank_pipeline(const GraphSpec& graph, double alpha,
                                   const Vec& personalization) {
  graph.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must lie in (0,1)");
  int n = graph.vertices;
  if (n < 2) throw Error("pagerank needs at least two vertices");
  Vec v = personalization;
  if (v.size() == 0) v = Vec::Constant(n, 1.0 / n);
  if (v.size() != n) throw Error("personalization vector length mismatch");
  double vsum = v.sum();
  if (std::abs(vsum - 1.0) > 1e-9 || v.minCoeff() < 0)
    throw Error("personalization vector must be a probability vector");

  PageRankPipeline pipe;
  pipe.google = google_from_transition(transition_matrix(graph), alpha, v);
  Mat gc = google_from_transition(complete_transition(n), alpha, Vec::Constant(n, 1.0 / n));

  Mat one = Mat::Identity(n, n);
  pipe.h0 = (one - gc).transpose() * (one - gc);
  pipe.h1 = (one - pipe.google).transpose() * (one - pipe.google);
  pipe.path.add(Coeff::linear_down(), CMat(pipe.h0.cast<Complex>()));
  pipe.path.add(Coeff::linear_up(), CMat(pipe.h1.cast<Complex>()));

  // power method
  Vec p = Vec::Constant(n, 1.0 / n);
  int iter = 0;
  for (; iter < 100000; ++iter) {
    Vec next = pipe.google * p;
    next /= next.sum();
    double delta = (next - p).cwiseAbs().sum();
    p = next;
    if (delta < 1e-12) break;
  }
  if (iter >= 100000) throw ConvergenceError("power method did not converge");
  pipe.pagerank = p;
  pipe.iterations = iter + 1;

  if (n <= kDenseQubitLimit) {
    pipe.embedded.add(Coeff::linear_down(), embed_single_excitation(pipe.h0));
    pipe.embedded.add(Coeff::linear_up(), embed_single_excitation(pipe.h1));
    pipe.has_embedded = true;
  }
  return pipe;
}

Mat single_excitation_block(const HamiltonianPath& embedded, double s) {
  if (embedded.matrix_backed()) throw Error("expected a qubit-embedded path");
  int n = embedded.n_qubits();
  CMat full = assemble(embedded, s);
  Mat block(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      block(i, j) = full(Index(1) << i, Index(1) << j).real();
  return block;
}

}  // namespace aqc

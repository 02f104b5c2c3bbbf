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

#include "aqc/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "aqc/io.hpp"

namespace aqc {

namespace {

// one Lanczos pass; returns false when the Krylov space cannot resolve the
// requested phase at this size, in which case the caller halves theta
bool krylov_exp_once(const std::function<void(const CVec&, CVec&)>& apply_op, double theta,
                     CVec& psi, int m_max) {
  double nrm = psi.norm();
  if (nrm == 0.0) return true;
  Index dim = psi.size();
  int cap = int(std::min<Index>(m_max, dim));
  std::vector<CVec> basis;
  basis.reserve(cap + 1);
  basis.push_back(psi / nrm);
  std::vector<double> alpha, beta;
  CVec w(dim);
  bool converged = false;
  double spread = 0.0;
  for (int j = 0; j < cap; ++j) {
    w.setZero();
    apply_op(basis[j], w);
    double a = std::real(basis[j].dot(w));
    alpha.push_back(a);
    w -= a * basis[j];
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    double bnorm = w.norm();
    if (bnorm < 1e-14) {
      converged = true;  // exact invariant subspace
      break;
    }
    spread = std::max(spread, bnorm);
    beta.push_back(bnorm);
    // remaining-series estimate for the m-th Krylov correction
    if (j >= 6) {
      double x = std::abs(theta) * spread;
      double log_est = (j + 1) * std::log(std::max(x, 1e-300)) - std::lgamma(j + 2.0);
      if (log_est < std::log(1e-14)) {
        converged = true;
        break;
      }
    }
    if (j + 1 < cap) basis.push_back(w / bnorm);
  }
  if (!converged && int(alpha.size()) == cap && cap < int(dim)) return false;

  int steps = int(alpha.size());
  Mat tri = Mat::Zero(steps, steps);
  for (int i = 0; i < steps; ++i) {
    tri(i, i) = alpha[i];
    if (i + 1 < steps && i < int(beta.size())) {
      tri(i, i + 1) = beta[i];
      tri(i + 1, i) = beta[i];
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(tri);
  CVec coeff = CVec::Zero(steps);
  for (int i = 0; i < steps; ++i) {
    Complex acc(0, 0);
    for (int j = 0; j < steps; ++j)
      acc += es.eigenvectors()(i, j) * std::polar(1.0, -theta * es.eigenvalues()[j]) *
             es.eigenvectors()(0, j);
    coeff[i] = acc;
  }
  psi.setZero();
  for (int i = 0; i < int(basis.size()) && i < steps; ++i) psi += coeff[i] * basis[i];
  psi *= nrm;
  return true;
}

// |psi> <- exp(-i theta H)|psi>. The Hamiltonian is fixed here, so splitting
// theta into halves is exact and handles phases beyond one Krylov pass.
void krylov_exp_inplace(const std::function<void(const CVec&, CVec&)>& apply_op, double theta,
                        CVec& psi, int m_max, int depth = 0) {
  if (depth > 24) throw Error("Krylov exponential failed to converge");
  if (krylov_exp_once(apply_op, theta, psi, m_max)) return;
  krylov_exp_inplace(apply_op, 0.5 * theta, psi, m_max, depth + 1);
  krylov_exp_inplace(apply_op, 0.5 * theta, psi, m_max, depth + 1);
}

}  // namespace

EvolutionResult evolve(const HamiltonianPath& path, const Schedule& schedule, double t_f,
                       const CVec& psi0, const StepperOptions& options) {
  if (psi0.size() != path.dim()) throw DimensionError("evolve: state dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-9) throw Error("evolve: initial state not normalized");
  if (t_f <= 0.0) throw Error("evolve: t_f must be positive");

  double norm_bound = path.norm_bound();
  double ds_base;
  if (options.dt > 0.0)
    ds_base = options.dt;
  else {
    long steps = options.steps > 0
                     ? options.steps
                     : std::max<long>(1000, long(std::ceil(20.0 * t_f * norm_bound)));
    ds_base = 1.0 / double(steps);
  }

  EvolutionResult result;
  result.t_f = t_f;

  // tracking samples
  std::vector<double> samples;
  if (options.k_track > 0) {
    samples.resize(options.track_samples);
    for (int i = 0; i < options.track_samples; ++i)
      samples[i] = double(i) / double(options.track_samples - 1);
  }
  std::size_t next_sample = 0;

  CVec psi = psi0;
  auto record_sample = [&](double s) {
    int k = int(std::min<Index>(options.k_track, path.dim()));
    EigPairs pairs = eig_low(path, schedule.A(s), k);
    Vec overlaps(k);
    for (int j = 0; j < k; ++j) overlaps[j] = std::norm(pairs.vectors.col(j).dot(psi));
    result.overlap_trace.push_back({s, overlaps});
  };

  double s = 0.0;
  double drift = 0.0;
  long count = 0;
  while (1.0 - s > 1e-12) {
    if (options.k_track > 0 && next_sample < samples.size() && s >= samples[next_sample] - 1e-12) {
      record_sample(samples[next_sample]);
      ++next_sample;
    }
    double rate = std::max(1.0, std::abs(schedule.dA(s)));
    double ds = std::min(ds_base, options.max_dA / rate);
    ds = std::min(ds, 1.0 - s);
    if (!(ds > 1e-13) && 1.0 - s > 1e-9)
      throw Error("evolve: step underflow at s=" + std::to_string(s));
    double a_mid = schedule.A(s + 0.5 * ds);
    auto apply_op = [&path, a_mid](const CVec& x, CVec& y) {
      apply_accumulate(path, a_mid, x, y);
    };
    krylov_exp_inplace(apply_op, t_f * ds, psi, options.krylov_max);
    s += ds;
    ++count;
    double n = psi.norm();
    drift = std::max(drift, std::abs(n - 1.0));
    if (drift > 1e-6)
      throw Error("evolve: norm drift " + std::to_string(drift) + " at s=" + std::to_string(s) +
                  " after " + std::to_string(count) + " steps");
  }
  if (options.k_track > 0 && next_sample < samples.size()) record_sample(1.0);

  result.final_state = std::move(psi);
  result.step_count = count;
  result.norm_drift = drift;
  return result;
}

double ground_space_weight(const CVec& state, const HamiltonianPath& path, double s,
                           double degeneracy_tol) {
  double tol = degeneracy_tol > 0 ? degeneracy_tol : 1e-8 * std::max(1.0, path.norm_bound());
  int k = int(std::min<Index>(8, path.dim()));
  EigPairs pairs = eig_low(path, s, k);
  // grow k until the ground band is fully inside the window
  while (k < path.dim() && pairs.values[k - 1] - pairs.values[0] <= tol) {
    k = int(std::min<Index>(2 * k, path.dim()));
    pairs = eig_low(path, s, k);
  }
  double weight = 0.0;
  for (int j = 0; j < k; ++j)
    if (pairs.values[j] - pairs.values[0] <= tol) weight += std::norm(pairs.vectors.col(j).dot(state));
  return weight;
}

double adiabatic_error(const EvolutionResult& result, const HamiltonianPath& path,
                       double degeneracy_tol) {
  double w = ground_space_weight(result.final_state, path, 1.0, degeneracy_tol);
  return std::clamp(1.0 - w, 0.0, 1.0);
}

// --- Trotter -------------------------------------------------------------------

namespace {

CMat matrix_exponential_hermitian(const CMat& h, double theta) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  CVec phases(h.rows());
  for (Index i = 0; i < h.rows(); ++i) phases[i] = std::polar(1.0, -theta * es.eigenvalues()[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Trotterization trotterize(const HamiltonianPath& path, double t_f, int M, int dense_limit) {
  if (path.components().size() != 2)
    throw Error("trotterize expects an interpolation path with exactly two components");
  if (M < 1) throw Error("trotterize needs M >= 1");
  if (!path.matrix_backed() && path.n_qubits() > dense_limit)
    throw DimensionError("trotterize deviation path limited to " + std::to_string(dense_limit) +
                         " qubits");
  CMat h0, h1;
  const auto& c0 = path.components()[0];
  const auto& c1 = path.components()[1];
  h0 = std::holds_alternative<OperatorSum>(c0.op) ? materialize(std::get<OperatorSum>(c0.op))
                                                  : std::get<CMat>(c0.op);
  h1 = std::holds_alternative<OperatorSum>(c1.op) ? materialize(std::get<OperatorSum>(c1.op))
                                                  : std::get<CMat>(c1.op);
  double dt = t_f / M;
  Trotterization out;
  out.t_f = t_f;
  out.steps.reserve(M);
  for (int m = 1; m <= M; ++m) {
    // midpoint sampling keeps commuting components exact for any M
    double s_m = (double(m) - 0.5) / double(M);
    TrotterStep step;
    step.first = matrix_exponential_hermitian(h0, dt * c0.coeff.f(s_m));
    step.second = matrix_exponential_hermitian(h1, dt * c1.coeff.f(s_m));
    out.steps.push_back(std::move(step));
  }
  return out;
}

double trotter_deviation(const HamiltonianPath& path, const Trotterization& trotter) {
  Index d = path.dim();
  CMat u_split = CMat::Identity(d, d);
  for (const auto& step : trotter.steps) u_split = step.first * step.second * u_split;

  // reference propagator: midpoint exponential on a much finer grid
  long steps = std::max<long>({4000, 16L * long(trotter.steps.size()),
                               long(std::ceil(100.0 * trotter.t_f * path.norm_bound()))});
  steps = std::min<long>(steps, 400000);
  CMat u_exact = CMat::Identity(d, d);
  double ds = 1.0 / double(steps);
  for (long i = 0; i < steps; ++i) {
    double s_mid = (double(i) + 0.5) * ds;
    CMat h = assemble(path, s_mid);
    u_exact = matrix_exponential_hermitian(h, trotter.t_f * ds) * u_exact;
  }
  return (u_exact - u_split).jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
      .singularValues()(0);
}

// --- measurement helpers --------------------------------------------------------

double probability_qubit_one(const CVec& state, int qubit) {
  std::uint64_t bit = std::uint64_t(1) << qubit;
  double p = 0.0;
  for (Index i = 0; i < state.size(); ++i)
    if (std::uint64_t(i) & bit) p += std::norm(state[i]);
  return p;
}

double probability_qubit_minus(const CVec& state, int qubit) {
  std::uint64_t bit = std::uint64_t(1) << qubit;
  double p = 0.0;
  for (Index i = 0; i < state.size(); ++i) {
    if (std::uint64_t(i) & bit) continue;
    Complex a0 = state[i];
    Complex a1 = state[Index(std::uint64_t(i) | bit)];
    p += std::norm((a0 - a1) / std::sqrt(2.0));
  }
  return p;
}

CVec project_qubit_z(const CVec& state, int qubit, int outcome) {
  std::uint64_t bit = std::uint64_t(1) << qubit;
  CVec out = state;
  for (Index i = 0; i < state.size(); ++i) {
    bool one = (std::uint64_t(i) & bit) != 0;
    if (one != (outcome == 1)) out[i] = 0;
  }
  double n = out.norm();
  if (n < 1e-15) throw Error("projection onto zero-probability outcome");
  return out / n;
}

CVec project_qubit_x(const CVec& state, int qubit, int outcome_minus) {
  std::uint64_t bit = std::uint64_t(1) << qubit;
  CVec out = CVec::Zero(state.size());
  double sign = outcome_minus ? -1.0 : 1.0;
  for (Index i = 0; i < state.size(); ++i) {
    if (std::uint64_t(i) & bit) continue;
    Index i1 = Index(std::uint64_t(i) | bit);
    Complex amp = (state[i] + sign * state[i1]) / std::sqrt(2.0);
    out[i] = amp / std::sqrt(2.0);
    out[i1] = sign * amp / std::sqrt(2.0);
  }
  double n = out.norm();
  if (n < 1e-15) throw Error("projection onto zero-probability outcome");
  return out / n;
}

std::string trace_csv(const EvolutionResult& result) {
  if (result.overlap_trace.empty()) throw Error("no overlap trace recorded");
  Index k = result.overlap_trace.front().second.size();
  std::vector<std::string> header = {"s"};
  for (Index j = 0; j < k; ++j) header.push_back("p" + std::to_string(j));
  CsvWriter csv(header);
  for (const auto& [s, overlaps] : result.overlap_trace) {
    std::vector<double> row = {s};
    for (Index j = 0; j < k; ++j) row.push_back(overlaps[j]);
    csv.row_numeric(row);
  }
  return csv.payload();
}

}  // namespace aqc

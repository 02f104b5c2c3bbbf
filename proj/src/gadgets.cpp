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

#include "aqc/gadgets.hpp"

#include <algorithm>
#include <cmath>

#include "aqc/io.hpp"
#include "aqc/spectra.hpp"

namespace aqc {

TargetTerm TargetTerm::pauli(double c, const std::vector<std::pair<int, Axis>>& factors) {
  TargetTerm t;
  t.coefficient = c;
  for (const auto& [q, axis] : factors) {
    t.qubits.push_back(q);
    Eigen::Vector3d n = Eigen::Vector3d::Zero();
    if (axis == Axis::X) n.x() = 1;
    if (axis == Axis::Y) n.y() = 1;
    if (axis == Axis::Z) n.z() = 1;
    t.axes.push_back(n);
  }
  return t;
}

int GadgetSpec::k() const {
  if (terms.empty()) throw Error("gadget spec has no terms");
  return int(terms.front().qubits.size());
}

double GadgetSpec::norm_v_bound() const {
  double total = 0.0;
  for (const auto& t : terms) total += std::abs(t.coefficient) + double(k() - 1);
  return total;
}

void GadgetSpec::validate() const {
  if (n_qubits < 1) throw Error("gadget spec needs target qubits");
  int kk = k();
  if (kk < 2) throw Error("gadget locality must be at least 2");
  for (const auto& t : terms) {
    if (int(t.qubits.size()) != kk) throw Error("all gadget terms must share locality k");
    if (t.axes.size() != t.qubits.size()) throw Error("axis list length mismatch");
    for (int q : t.qubits)
      if (q < 0 || q >= n_qubits) throw DimensionError("target qubit out of range");
    for (const auto& a : t.axes)
      if (std::abs(a.norm() - 1.0) > 1e-10) throw Error("axis vectors must be unit length");
  }
  if (!(lambda > 0.0)) throw Error("lambda must be positive");
}

namespace {

// n_hat . sigma as up to three Pauli factors with weights
void add_direction_pauli(OperatorSum& op, double coefficient, int qubit,
                         const Eigen::Vector3d& axis, int extra_qubit, Axis extra_axis) {
  struct Piece {
    double w;
    Axis a;
  };
  std::vector<Piece> pieces;
  if (axis.x() != 0.0) pieces.push_back({axis.x(), Axis::X});
  if (axis.y() != 0.0) pieces.push_back({axis.y(), Axis::Y});
  if (axis.z() != 0.0) pieces.push_back({axis.z(), Axis::Z});
  for (const auto& p : pieces)
    op.add_pauli(coefficient * p.w, {{qubit, p.a}, {extra_qubit, extra_axis}});
}

// full k-local Pauli product with arbitrary directions, expanded recursively
void add_target_product(OperatorSum& op, const TargetTerm& term) {
  int kk = int(term.qubits.size());
  std::vector<PauliFactor> current;
  std::function<void(int, double)> rec = [&](int pos, double weight) {
    if (pos == kk) {
      op.add_pauli(term.coefficient * weight, current);
      return;
    }
    const Eigen::Vector3d& a = term.axes[pos];
    const Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};
    const double comps[3] = {a.x(), a.y(), a.z()};
    for (int i = 0; i < 3; ++i) {
      if (comps[i] == 0.0) continue;
      current.push_back({term.qubits[pos], axes[i]});
      rec(pos + 1, weight * comps[i]);
      current.pop_back();
    }
  };
  rec(0, 1.0);
}

}  // namespace

OperatorSum target_operator(const GadgetSpec& spec) {
  spec.validate();
  OperatorSum op(spec.n_qubits);
  for (const auto& t : spec.terms) add_target_product(op, t);
  return op;
}

GadgetBuild build_gadget(const GadgetSpec& spec) {
  spec.validate();
  int kk = spec.k();
  int total = spec.n_qubits + spec.r() * kk;
  GadgetBuild build;
  build.penalty = OperatorSum(total);
  build.coupling = OperatorSum(total);
  build.radius = spec.convergence_radius();
  build.within_radius = spec.lambda < build.radius;

  for (int s = 0; s < spec.r(); ++s) {
    const auto& term = spec.terms[s];
    auto ancilla = [&](int j) { return spec.n_qubits + s * kk + j; };
    // H^A_s = sum_{i<j} (1 - Z_i Z_j)/2 on the ancilla register
    for (int i = 0; i < kk; ++i)
      for (int j = i + 1; j < kk; ++j) {
        build.penalty.add_identity(0.5);
        build.penalty.add_pauli(-0.5, {{ancilla(i), Axis::Z}, {ancilla(j), Axis::Z}});
      }
    // V_s = sum_j c_{s,j} sigma_{s,j} (x) X_{s,j}, c_{s,1} = c_s, others 1
    for (int j = 0; j < kk; ++j) {
      double c = (j == 0) ? term.coefficient : 1.0;
      add_direction_pauli(build.coupling, c, term.qubits[j], term.axes[j], ancilla(j),
                          Axis::X);
    }
  }
  build.gadget = OperatorSum(total);
  build.gadget += build.penalty;
  OperatorSum scaled(total);
  for (const auto& t : build.coupling.terms()) {
    Term copy = t;
    copy.pauli.coefficient *= spec.lambda;
    scaled.add_term(copy);
  }
  build.gadget += scaled;
  return build;
}

namespace {

// orthonormal basis of the X_s = +1 (all registers) sector: target basis (x)
// per-register (|x> + |x_bar>)/sqrt(2) with the first ancilla bit fixed to 0
CMat sector_basis(const GadgetSpec& spec) {
  int kk = spec.k();
  int r = spec.r();
  int n = spec.n_qubits;
  int total = n + r * kk;
  Index dim = Index(1) << total;
  Index target_dim = Index(1) << n;
  Index per_register = Index(1) << (kk - 1);
  Index sector_dim = target_dim;
  for (int s = 0; s < r; ++s) sector_dim *= per_register;

  CMat basis = CMat::Zero(dim, sector_dim);
  double amp = std::pow(0.5, 0.5 * r);
  for (Index col = 0; col < sector_dim; ++col) {
    Index rest = col;
    Index x_target = rest % target_dim;
    rest /= target_dim;
    std::vector<Index> reg(r);
    for (int s = 0; s < r; ++s) {
      reg[s] = rest % per_register;
      rest /= per_register;
    }
    // superpose each register pattern with its complement
    for (Index mask = 0; mask < (Index(1) << r); ++mask) {
      Index idx = x_target;
      for (int s = 0; s < r; ++s) {
        Index pattern = reg[s] << 1;  // ancilla bit 0 of the register = 0
        if ((mask >> s) & 1) pattern = ~pattern & ((Index(1) << kk) - 1);
        idx |= pattern << (n + s * kk);
      }
      basis(idx, col) += amp;
    }
  }
  return basis;
}

}  // namespace

EffectiveSpectrum effective_hamiltonian(const GadgetSpec& spec, const GadgetBuild& build) {
  int total = build.gadget.n_qubits();
  if (total > 12) throw DimensionError("gadget verification limited to 12 qubits");
  CMat h = materialize(build.gadget);

  EffectiveSpectrum eff;
  eff.sector_commutator = 0.0;
  // [H^G, X_s] = 0 for every register
  for (int s = 0; s < spec.r(); ++s) {
    OperatorSum xs(total);
    std::vector<PauliFactor> factors;
    for (int j = 0; j < spec.k(); ++j)
      factors.push_back({spec.n_qubits + s * spec.k() + j, Axis::X});
    xs.add_pauli(1.0, factors);
    CMat x = materialize(xs);
    eff.sector_commutator =
        std::max(eff.sector_commutator, (h * x - x * h).cwiseAbs().maxCoeff());
  }

  CMat basis = sector_basis(spec);
  CMat h_sector = basis.adjoint() * h * basis;
  Eigen::SelfAdjointEigenSolver<CMat> es(h_sector, Eigen::EigenvaluesOnly);
  Index keep = Index(1) << spec.n_qubits;
  eff.levels = es.eigenvalues().head(keep);

  int kk = spec.k();
  eff.rescale = -double(kk) * std::pow(-spec.lambda, kk) / std::tgamma(double(kk));
  // f(lambda) is only identified up to the mean; gap structure is what counts
  OperatorSum target = target_operator(spec);
  Eigen::SelfAdjointEigenSolver<CMat> ts(materialize(target), Eigen::EigenvaluesOnly);
  eff.shift = eff.levels.mean() - eff.rescale * ts.eigenvalues().mean();
  return eff;
}

GadgetFitReport verify_gadget(GadgetSpec spec, const std::vector<double>& lambda_sweep) {
  GadgetFitReport report;
  OperatorSum target = target_operator(spec);
  Eigen::SelfAdjointEigenSolver<CMat> ts(materialize(target), Eigen::EigenvaluesOnly);
  Vec target_levels = ts.eigenvalues();
  Vec target_centered = target_levels.array() - target_levels.mean();

  for (double lambda : lambda_sweep) {
    spec.lambda = lambda;
    if (lambda >= spec.convergence_radius()) {
      report.excluded.push_back(lambda);
      continue;
    }
    GadgetBuild build = build_gadget(spec);
    EffectiveSpectrum eff = effective_hamiltonian(spec, build);
    Vec eff_centered = eff.levels.array() - eff.levels.mean();
    Vec rescaled = eff.rescale * target_centered;
    std::sort(rescaled.begin(), rescaled.end());
    Vec eff_sorted = eff_centered;
    std::sort(eff_sorted.begin(), eff_sorted.end());
    double err = (eff_sorted - rescaled).cwiseAbs().maxCoeff();
    report.lambdas.push_back(lambda);
    report.errors.push_back(err);
  }
  if (report.lambdas.size() < 2) {
    if (report.lambdas.size() == 1 && report.errors[0] < 1e-13)
      throw Error("gadget fit degenerate: errors at the numeric floor");
    throw Error("need at least two lambda values inside the convergence radius");
  }
  double floor_count = 0;
  for (double e : report.errors)
    if (e < 1e-13) ++floor_count;
  if (floor_count == double(report.errors.size()))
    throw Error("gadget fit degenerate: errors at the numeric floor");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = double(report.lambdas.size());
  for (std::size_t i = 0; i < report.lambdas.size(); ++i) {
    double x = std::log(report.lambdas[i]), y = std::log(std::max(report.errors[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return report;
}

std::string fit_report_csv(const GadgetFitReport& report) {
  CsvWriter csv({"lambda", "err", "slope_running"});
  for (std::size_t i = 0; i < report.lambdas.size(); ++i) {
    double running = 0.0;
    if (i >= 1) {
      running = (std::log(report.errors[i]) - std::log(report.errors[0])) /
                (std::log(report.lambdas[i]) - std::log(report.lambdas[0]));
    }
    csv.row_numeric({report.lambdas[i], report.errors[i], running});
  }
  return csv.payload();
}

SeriesResult series_A_dense(const CMat& h0_in, const CMat& v, double lambda, int order) {
  if (h0_in.rows() > 256) throw DimensionError("series_A limited to 8 qubits");
  if (order < 1) throw Error("series order must be >= 1");
  Eigen::SelfAdjointEigenSolver<CMat> es(h0_in);
  double e0 = es.eigenvalues()[0];
  CMat h0 = h0_in - e0 * CMat::Identity(h0_in.rows(), h0_in.cols());

  double gap = 0.0;
  Index d0 = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()[i] - e0 < 1e-10)
      ++d0;
    else {
      gap = es.eigenvalues()[i] - e0;
      break;
    }
  }
  if (d0 == es.eigenvalues().size()) throw Error("H0 has no excited space");
  double v_norm = spectral_norm(v);
  if (!(lambda * v_norm < gap / 4.0))
    throw Error("series_A outside the convergence radius lambda ||V|| < gamma/4");

  CMat p0 = CMat::Zero(h0.rows(), h0.cols());
  for (Index i = 0; i < d0; ++i)
    p0 += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();

  // S_l = (-H0)^{-l} (1 - P0) on the excited space, S_0 = -P0
  auto s_op = [&](int l) -> CMat {
    if (l == 0) return CMat(-p0);
    CMat out = CMat::Zero(h0.rows(), h0.cols());
    for (Index i = d0; i < es.eigenvalues().size(); ++i) {
      double e = es.eigenvalues()[i] - e0;
      out += std::pow(-e, -l) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
    return out;
  };

  // U = P0 + sum_{m>=1} U_m with the constrained compositions of m
  CMat u = p0;
  std::vector<CMat> s_cache(order + 1);
  for (int l = 0; l <= order; ++l) s_cache[l] = s_op(l);
  CMat lam_v = lambda * v;
  for (int m = 1; m <= order - 1; ++m) {
    std::vector<int> ells(m, 0);
    std::function<void(int, int)> enumerate = [&](int pos, int used) {
      if (pos == m) {
        if (used != m) return;
        CMat term = CMat::Identity(h0.rows(), h0.cols());
        for (int i = 0; i < m; ++i) term = term * s_cache[ells[i]] * lam_v;
        u += term * p0;
        return;
      }
      int lo = (pos == 0) ? 1 : 0;
      for (int l = lo; l <= m - used; ++l) {
        // partial sums l_1 + ... + l_p >= p for p <= m-1
        if (pos < m - 1 && used + l < pos + 1) continue;
        ells[pos] = l;
        enumerate(pos + 1, used + l);
      }
    };
    enumerate(0, 0);
  }
  CMat a_full = lambda * p0 * v * u;

  SeriesResult result;
  CMat b0 = es.eigenvectors().leftCols(d0);
  result.a_matrix = b0.adjoint() * a_full * b0;
  result.ground_dim = double(d0);
  Eigen::ComplexEigenSolver<CMat> ces(result.a_matrix);
  std::vector<double> reals(d0);
  for (Index i = 0; i < d0; ++i) reals[i] = ces.eigenvalues()[i].real() + e0;
  std::sort(reals.begin(), reals.end());
  result.eigenvalues = Eigen::Map<Vec>(reals.data(), d0);
  return result;
}

SeriesResult series_A(const OperatorSum& h0, const OperatorSum& v, double lambda, int order) {
  return series_A_dense(materialize(h0, 8), materialize(v, 8), lambda, order);
}

}  // namespace aqc

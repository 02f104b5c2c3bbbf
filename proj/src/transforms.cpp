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

#include "aqc/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "aqc/io.hpp"

namespace aqc {

void FrustrationFreeSpec::validate() const {
  if (n_qubits < 1 || n_qubits > 4) throw DimensionError("toy spec supports 1..4 target qubits");
  if (projectors.empty() || projectors.size() != weights.size())
    throw Error("projector/weight lists must be non-empty and aligned");
  Index d = Index(1) << n_qubits;
  for (const auto& p : projectors) {
    if (p.rows() != d || p.cols() != d) throw DimensionError("projector shape mismatch");
    if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10) throw Error("term is not a projector");
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw Error("non-Hermitian projector");
  }
  for (double a : weights)
    if (!(a >= 0.0)) throw Error("weights must be non-negative");
  Eigen::SelfAdjointEigenSolver<CMat> es(hamiltonian(), Eigen::EigenvaluesOnly);
  if (std::abs(es.eigenvalues()[0]) > 1e-9)
    throw Error("no common zero eigenvector: ground energy " +
                std::to_string(es.eigenvalues()[0]));
}

CMat FrustrationFreeSpec::hamiltonian() const {
  Index d = Index(1) << n_qubits;
  CMat h = CMat::Zero(d, d);
  for (std::size_t k = 0; k < projectors.size(); ++k) h += weights[k] * projectors[k];
  return h;
}

Vec FrustrationFreeSpec::spectrum() const {
  Eigen::SelfAdjointEigenSolver<CMat> es(hamiltonian(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::vector<std::uint64_t> AmplifiedGap::ancilla_masks() const {
  std::vector<std::uint64_t> masks;
  for (int k = 0; k <= L; ++k) masks.push_back(std::uint64_t(1) << (n + k));
  return masks;
}

AmplifiedGap amplify_gap(const FrustrationFreeSpec& spec, AmplifyVariant variant,
                         double d_exponent) {
  spec.validate();
  int n = spec.n_qubits;
  int L = int(spec.projectors.size());
  if (n + L + 1 > 12) throw DimensionError("amplified operator beyond the verification size");
  if (n > kMaxDenseBlockQubits - 2)
    throw DimensionError("projector blocks need n + 2 <= " +
                         std::to_string(kMaxDenseBlockQubits) + " qubits");

  AmplifiedGap amp;
  amp.n = n;
  amp.L = L;
  Vec lambdas = spec.spectrum();
  amp.delta = 0.0;
  for (Index i = 0; i < lambdas.size(); ++i)
    if (lambdas[i] > 1e-9) {
      amp.delta = lambdas[i];
      break;
    }

  int total = n + L + 1;
  amp.op = OperatorSum(total);
  double prefactor =
      variant == AmplifyVariant::Primed ? std::pow(double(L), -1.0 / d_exponent) : 1.0;

  std::vector<int> system_qubits(n);
  for (int i = 0; i < n; ++i) system_qubits[i] = i;
  int anc0 = n;
  Index pd = Index(1) << n;

  // hop(0,k) matrix on two ancilla bits: |01> <-> |10>, i.e. (XX + YY)/2
  CMat hop = CMat::Zero(4, 4);
  hop(1, 2) = 1.0;
  hop(2, 1) = 1.0;

  for (int k = 1; k <= L; ++k) {
    double a = spec.weights[k - 1];
    if (a == 0.0) continue;
    const CMat& proj = spec.projectors[k - 1];
    // block on (system qubits..., ancilla 0, ancilla k)
    Index bd = pd * 4;
    CMat block = CMat::Zero(bd, bd);
    for (Index ar = 0; ar < 4; ++ar)
      for (Index ac = 0; ac < 4; ++ac) {
        if (hop(ar, ac) == 0.0) continue;
        for (Index r = 0; r < pd; ++r)
          for (Index c = 0; c < pd; ++c)
            block(ar * pd + r, ac * pd + c) = hop(ar, ac) * proj(r, c);
      }
    std::vector<int> qubits = system_qubits;
    qubits.push_back(anc0);
    qubits.push_back(n + k);
    amp.op.add_dense(prefactor * std::sqrt(a), qubits, block);
  }

  if (variant == AmplifyVariant::Primed) {
    // penalty on ancilla 0 in |0>, scaled by the same prefactor
    double pen = prefactor * std::sqrt(amp.delta) / 4.0;
    amp.op.add_identity(pen);
    amp.op.add_pauli(pen, {{anc0, Axis::Z}});
    // Hamming-weight penalty vanishing on the single-particle subspace
    amp.op.add_identity(double(L) - 1.0);
    for (int k = 0; k <= L; ++k) amp.op.add_pauli(-1.0, {{n + k, Axis::Z}});
  }
  return amp;
}

Vec single_particle_spectrum(const AmplifiedGap& amplified) {
  CMat h = materialize(amplified.op);
  Index pd = Index(1) << amplified.n;
  auto masks = amplified.ancilla_masks();
  Index sector = pd * Index(masks.size());
  CMat block(sector, sector);
  for (Index a = 0; a < Index(masks.size()); ++a)
    for (Index b = 0; b < Index(masks.size()); ++b)
      for (Index r = 0; r < pd; ++r)
        for (Index c = 0; c < pd; ++c)
          block(a * pd + r, b * pd + c) =
              h(Index(masks[a]) + r, Index(masks[b]) + c);
  Eigen::SelfAdjointEigenSolver<CMat> es(block, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

StoquasticReport check_stoquastic(const CMat& h, double tol) {
  StoquasticReport report;
  double worst = 0.0;
  for (Index r = 0; r < h.rows(); ++r)
    for (Index c = 0; c < h.cols(); ++c) {
      if (r == c) continue;
      double bad = std::max(h(r, c).real(), 0.0);
      bad = std::max(bad, std::abs(h(r, c).imag()));
      worst = std::max(worst, bad);
    }
  report.max_positive_offdiagonal = worst;
  report.stoquastic = worst <= tol;
  return report;
}

StoquasticReport check_stoquastic(const OperatorSum& h, double tol) {
  return check_stoquastic(materialize(h), tol);
}

OperatorSum destoquasticize(const OperatorSum& h) {
  int n = h.n_qubits();
  OperatorSum out(n + 1);
  int ancilla = n;
  for (const auto& t : h.terms()) {
    if (t.kind != TermKind::Pauli)
      throw Error("destoquasticize expects an XXZZ Pauli sum");
    const auto& p = t.pauli;
    std::vector<int> xs, zs;
    for (const auto& f : p.factors) {
      if (f.axis == Axis::X)
        xs.push_back(f.qubit);
      else if (f.axis == Axis::Z)
        zs.push_back(f.qubit);
      else
        throw Error("destoquasticize supports X/Z terms only");
    }
    if (int(xs.size()) + int(zs.size()) > 2 || (xs.size() == 1 && zs.size() == 1))
      throw Error("destoquasticize supports terms from {I, X, Z, XX, ZZ}");
    double w = p.coefficient;
    if (w == 0.0) continue;
    double alpha = std::abs(w);
    double c = -(w / alpha);  // H = -sum alpha_k T_k with T_k = c * X_S Z_R
    // T~ = (X_S + c X_S Z_R)/2 (x) I + (X_S - c X_S Z_R)/2 (x) X_a;
    // the embedded Hamiltonian is -alpha T~
    std::vector<PauliFactor> x_part, xz_part;
    for (int q : xs) {
      x_part.push_back({q, Axis::X});
      xz_part.push_back({q, Axis::X});
    }
    for (int q : zs) xz_part.push_back({q, Axis::Z});
    auto with_ancilla = [&](std::vector<PauliFactor> f) {
      f.push_back({ancilla, Axis::X});
      return f;
    };
    out.add_pauli(-alpha * 0.5, x_part);
    out.add_pauli(-alpha * 0.5 * c, xz_part);
    out.add_pauli(-alpha * 0.5, with_ancilla(x_part));
    out.add_pauli(alpha * 0.5 * c, with_ancilla(xz_part));
  }
  return out;
}

Vec ancilla_sector_spectrum(const OperatorSum& embedded, bool minus_sector) {
  int total = embedded.n_qubits();
  int n = total - 1;
  CMat h = materialize(embedded);
  Index pd = Index(1) << n;
  // sector states |x> (x) |+-> on the last qubit
  double sign = minus_sector ? -1.0 : 1.0;
  CMat block(pd, pd);
  Index bit = Index(1) << n;
  for (Index r = 0; r < pd; ++r)
    for (Index c = 0; c < pd; ++c) {
      Complex v = 0.5 * (h(r, c) + sign * h(r + bit, c) + sign * h(r, c + bit) +
                         h(r + bit, c + bit));
      block(r, c) = v;
    }
  Eigen::SelfAdjointEigenSolver<CMat> es(block, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::string transform_report_json(const Vec& before, const Vec& after) {
  std::string out = "{\n  \"spectrum_before\": [";
  for (Index i = 0; i < before.size(); ++i)
    out += (i ? ", " : "") + format_double(before[i]);
  out += "],\n  \"spectrum_after\": [";
  for (Index i = 0; i < after.size(); ++i) out += (i ? ", " : "") + format_double(after[i]);
  out += "]\n}\n";
  return out;
}

}  // namespace aqc

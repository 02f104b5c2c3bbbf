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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aqc/operators.hpp"
#include "aqc/path.hpp"
#include "aqc/rng.hpp"

using namespace aqc;

namespace {

OperatorSum transverse_field_half(int n) {
  // sum_i (1 - sigma_i^x) / 2
  OperatorSum h(n);
  h.add_identity(0.5 * n);
  for (int i = 0; i < n; ++i) h.add_pauli(-0.5, {{i, Axis::X}});
  return h;
}

OperatorSum hamming_weight(int n) {
  // sum_x |x| |x><x| = sum_i (1 - Z_i)/2
  OperatorSum h(n);
  h.add_identity(0.5 * n);
  for (int i = 0; i < n; ++i) h.add_pauli(-0.5, {{i, Axis::Z}});
  return h;
}

HamiltonianPath grover_path(int n, std::uint64_t m) {
  OperatorSum h0(n), h1(n);
  h0.add_identity(1.0).add_uniform_projector(-1.0);
  std::string bits(n, '0');
  for (int q = 0; q < n; ++q)
    if ((m >> q) & 1) bits[q] = '1';
  h1.add_identity(1.0).add_projector(-1.0, bits);
  return HamiltonianPath::interpolation(std::move(h0), std::move(h1));
}

OperatorSum random_operator(int n, Rng& rng) {
  OperatorSum op(n);
  int terms = 1 + int(rng.below(5));
  for (int t = 0; t < terms; ++t) {
    switch (rng.below(4)) {
      case 0: {
        int k = 1 + int(rng.below(std::min(n, 3)));
        std::vector<PauliFactor> factors;
        std::vector<int> used;
        while (int(factors.size()) < k) {
          int q = int(rng.below(n));
          bool dup = false;
          for (int u : used) dup |= (u == q);
          if (dup) continue;
          used.push_back(q);
          Axis a = rng.below(3) == 0 ? Axis::X : (rng.below(2) ? Axis::Y : Axis::Z);
          factors.push_back({q, a});
        }
        op.add_pauli(rng.uniform(-1, 1), factors);
        break;
      }
      case 1: {
        std::string bits;
        const char alphabet[] = {'0', '1', '+', '-'};
        for (int q = 0; q < n; ++q) bits += alphabet[rng.below(4)];
        op.add_projector(rng.uniform(-1, 1), bits);
        break;
      }
      case 2:
        op.add_uniform_projector(rng.uniform(-1, 1));
        break;
      default: {
        int k = 1 + int(rng.below(2));
        std::vector<int> qubits;
        while (int(qubits.size()) < k) {
          int q = int(rng.below(n));
          bool dup = false;
          for (int u : qubits) dup |= (u == q);
          if (!dup) qubits.push_back(q);
        }
        Index bd = Index(1) << k;
        CMat a(bd, bd);
        for (Index r = 0; r < bd; ++r)
          for (Index c = 0; c < bd; ++c) a(r, c) = Complex(rng.gaussian(), rng.gaussian());
        CMat herm = 0.5 * (a + a.adjoint());
        op.add_dense(rng.uniform(-1, 1), qubits, herm);
        break;
      }
    }
  }
  return op;
}

CVec random_state(Index dim, Rng& rng) {
  CVec v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = Complex(rng.gaussian(), rng.gaussian());
  v.normalize();
  return v;
}

}  // namespace

TEST_CASE("assemble: single X on one qubit") {
  OperatorSum op(1);
  op.add_pauli(1.0, {{0, Axis::X}});
  CMat m = materialize(op);
  CHECK(std::abs(m(0, 0)) < 1e-15);
  CHECK(std::abs(m(0, 1) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(m(1, 0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(m(1, 1)) < 1e-15);
}

TEST_CASE("assemble: plain Hamming weight path at s=1, n=1") {
  auto path = HamiltonianPath::interpolation(transverse_field_half(1), hamming_weight(1));
  CMat h = assemble(path, 1.0);
  CHECK(std::abs(h(0, 0)) < 1e-14);
  CHECK(std::abs(h(1, 1) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(h(0, 1)) < 1e-14);
}

TEST_CASE("assemble: Grover n=2 at s=1/2 has eigenvalues {1/4, 3/4, 1, 1}") {
  auto path = grover_path(2, 3);
  CMat h = assemble(path, 0.5);
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  // Delta(1/2) = 1/sqrt(N) = 1/2
  CHECK(es.eigenvalues()[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(es.eigenvalues()[1] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(es.eigenvalues()[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(es.eigenvalues()[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply: X flips, projectors annihilate, Hamming weight counts") {
  OperatorSum x0(1);
  x0.add_pauli(1.0, {{0, Axis::X}});
  CVec zero = basis_state(1, 0);
  CVec one = aqc::apply(x0, zero);
  CHECK(std::abs(one[1] - Complex(1, 0)) < 1e-15);

  // H_1 = 1 - |m><m| annihilates |m>
  OperatorSum h1(3);
  h1.add_identity(1.0).add_projector(-1.0, "101");  // m = qubit0=1,qubit2=1 -> index 5
  CVec m_state = basis_state(3, 5);
  CHECK(aqc::apply(h1, m_state).norm() < 1e-14);

  auto path = HamiltonianPath::interpolation(transverse_field_half(2), hamming_weight(2));
  CVec s11 = basis_state(2, 3);
  CVec out = aqc::apply(path, 1.0, s11);
  CHECK((out - 2.0 * s11).norm() < 1e-13);
}

TEST_CASE("hermiticity of random assembled operators") {
  Rng rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + int(rng.below(4));
    OperatorSum op = random_operator(n, rng);
    CMat m = materialize(op);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("matrix-free apply agrees with dense assemble") {
  Rng rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + int(rng.below(6));  // up to 7 qubits here; n=10 covered below
    HamiltonianPath path;
    path.add(Coeff::linear_down(), random_operator(n, rng));
    path.add(Coeff::linear_up(), random_operator(n, rng));
    double s = rng.uniform();
    CVec psi = random_state(path.dim(), rng);
    CVec via_apply = aqc::apply(path, s, psi);
    CVec via_dense = assemble(path, s) * psi;
    CHECK((via_apply - via_dense).norm() < 1e-10);
  }
  // one larger instance at the n=10 contract size
  Rng rng10(778);
  HamiltonianPath path;
  path.add(Coeff::constant(1.0), random_operator(10, rng10));
  CVec psi = random_state(path.dim(), rng10);
  CHECK((aqc::apply(path, 0.3, psi) - assemble(path, 0.3) * psi).norm() < 1e-10);
}

TEST_CASE("reduce_symmetric: sum of sigma_x on two qubits") {
  OperatorSum op(2);
  for (int i = 0; i < 2; ++i) op.add_pauli(1.0, {{i, Axis::X}});
  HamiltonianPath path;
  path.add(Coeff::constant(1.0), op);
  SymmetricPath sym = reduce_symmetric(path);
  CMat r = assemble(sym.reduced, 0.0);
  CHECK(r.rows() == 3);
  CHECK(std::abs(r(0, 1) - Complex(std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(r(1, 2) - Complex(std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(r(0, 2)) < 1e-14);
}

TEST_CASE("reduce_symmetric: Hamming-weight diagonal labels the sector basis") {
  HamiltonianPath path;
  path.add(Coeff::constant(1.0), hamming_weight(3));
  SymmetricPath sym = reduce_symmetric(path);
  CMat r = assemble(sym.reduced, 0.0);
  for (int w = 0; w <= 3; ++w) CHECK(std::abs(r(w, w) - Complex(w, 0)) < 1e-12);
}

TEST_CASE("reduce_symmetric: Grover uniform projector has binomial amplitudes") {
  OperatorSum h0(4);
  h0.add_identity(1.0).add_uniform_projector(-1.0);
  HamiltonianPath path;
  path.add(Coeff::constant(1.0), h0);
  SymmetricPath sym = reduce_symmetric(path);
  CMat r = assemble(sym.reduced, 0.0);
  // 1 - |phi><phi| with <W|phi> = sqrt(C(4,W)/16)
  for (int w = 0; w <= 4; ++w) {
    double amp_w = dicke_uniform_amplitude(4, w);
    for (int v = 0; v <= 4; ++v) {
      double expected = (v == w ? 1.0 : 0.0) - amp_w * dicke_uniform_amplitude(4, v);
      CHECK(std::abs(r(w, v) - Complex(expected, 0)) < 1e-12);
    }
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(r);
  CHECK(std::abs(es.eigenvalues()[0]) < 1e-12);
}

TEST_CASE("symmetric sector spectrum is included in the full spectrum") {
  for (int n : {3, 5, 8}) {
    HamiltonianPath path;
    path.add(Coeff::linear_down(), transverse_field_half(n));
    OperatorSum h1 = hamming_weight(n);
    // add a symmetric two-body piece
    OperatorSum zz(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) zz.add_pauli(0.3, {{i, Axis::Z}, {j, Axis::Z}});
    h1 += zz;
    path.add(Coeff::linear_up(), h1);

    SymmetricPath sym = reduce_symmetric(path);
    for (double s : {0.0, 0.3, 0.7, 1.0}) {
      Eigen::SelfAdjointEigenSolver<CMat> full(assemble(path, s));
      Eigen::SelfAdjointEigenSolver<CMat> red(assemble(sym.reduced, s));
      // every reduced eigenvalue appears in the full spectrum
      for (Index i = 0; i < red.eigenvalues().size(); ++i) {
        double best = 1e100;
        for (Index j = 0; j < full.eigenvalues().size(); ++j)
          best = std::min(best, std::abs(red.eigenvalues()[i] - full.eigenvalues()[j]));
        CHECK(best < 1e-9);
      }
    }
  }
}

TEST_CASE("non-symmetric component is rejected") {
  OperatorSum op(3);
  op.add_pauli(1.0, {{0, Axis::X}});  // only one qubit of the orbit
  HamiltonianPath path;
  path.add(Coeff::constant(1.0), op);
  CHECK_THROWS_AS(reduce_symmetric(path), Error);
}

TEST_CASE("coefficient derivative consistency on 101-point grid") {
  HamiltonianPath path;
  path.add(Coeff::linear_down(), transverse_field_half(2));
  path.add(Coeff::bump(), hamming_weight(2));
  path.add(Coeff::linear_up(), hamming_weight(2));
  CHECK_NOTHROW(check_coefficient_derivatives(path));
}

TEST_CASE("serialization round-trips bit-faithfully") {
  Rng rng(2026);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + int(rng.below(3));
    OperatorSum op = random_operator(n, rng);
    std::string text = serialize(op);
    OperatorSum back = deserialize_operator(text);
    REQUIRE(back.n_qubits() == op.n_qubits());
    std::string again = serialize(back);
    CHECK(text == again);
    CMat a = materialize(op), b = materialize(back);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("construction errors") {
  OperatorSum op(2);
  CHECK_THROWS_AS(op.add_pauli(1.0, {{0, Axis::X}, {0, Axis::Z}}), Error);
  CHECK_THROWS_AS(op.add_pauli(1.0, {{5, Axis::X}}), DimensionError);
  CHECK_THROWS_AS(op.add_projector(1.0, "0"), DimensionError);
  CMat bad(2, 2);
  bad << 0, Complex(1, 0.5), Complex(1, 0.5), 0;  // not Hermitian
  CHECK_THROWS_AS(op.add_dense(1.0, {0}, bad), Error);
  OperatorSum big(20);
  big.add_identity(1.0);
  CHECK_THROWS_AS(materialize(big), DimensionError);
}

TEST_CASE("coherent-state expectation matches dense contraction") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + int(rng.below(3));
    OperatorSum op = random_operator(n, rng);
    double theta = rng.uniform(0, kPi), phi = rng.uniform(0, 2 * kPi);
    CVec omega(Index(1) << n);
    Complex a0(std::cos(theta / 2), 0);
    Complex a1 = std::polar(std::sin(theta / 2), phi);
    for (Index i = 0; i < omega.size(); ++i) {
      Complex amp(1, 0);
      for (int q = 0; q < n; ++q) amp *= ((i >> q) & 1) ? a1 : a0;
      omega[i] = amp;
    }
    double direct = std::real(omega.dot(materialize(op) * omega));
    CHECK(coherent_expectation(op, theta, phi) == doctest::Approx(direct).epsilon(1e-10));
  }
}

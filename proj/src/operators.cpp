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

#include "aqc/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "aqc/io.hpp"

namespace aqc {

namespace {

void check_coefficient(double c) {
  if (!std::isfinite(c)) throw Error("non-finite term coefficient");
}

int popcount64(std::uint64_t x) { return std::popcount(x); }

// i^k for k mod 4
Complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

struct PauliMasks {
  std::uint64_t flip = 0;  // X and Y qubits
  std::uint64_t sign = 0;  // Z and Y qubits
  int y_count = 0;
};

PauliMasks masks_of(const PauliString& p) {
  PauliMasks m;
  for (const auto& f : p.factors) {
    std::uint64_t bit = std::uint64_t(1) << f.qubit;
    switch (f.axis) {
      case Axis::X: m.flip |= bit; break;
      case Axis::Y: m.flip |= bit; m.sign |= bit; ++m.y_count; break;
      case Axis::Z: m.sign |= bit; break;
    }
  }
  return m;
}

}  // namespace

Term Term::make_pauli(double c, std::vector<PauliFactor> factors) {
  Term t;
  t.kind = TermKind::Pauli;
  t.pauli = {c, std::move(factors)};
  return t;
}

Term Term::make_projector(double c, std::string symbols) {
  Term t;
  t.kind = TermKind::Projector;
  t.projector = {c, std::move(symbols)};
  return t;
}

Term Term::make_uniform(double c) {
  Term t;
  t.kind = TermKind::Uniform;
  t.uniform = {c};
  return t;
}

Term Term::make_dense(double c, std::vector<int> qubits, CMat m) {
  Term t;
  t.kind = TermKind::Dense;
  t.dense = {c, std::move(qubits), std::move(m)};
  return t;
}

OperatorSum& OperatorSum::add_pauli(double c, std::vector<PauliFactor> factors) {
  check_coefficient(c);
  std::sort(factors.begin(), factors.end(),
            [](const PauliFactor& a, const PauliFactor& b) { return a.qubit < b.qubit; });
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].qubit < 0 || factors[i].qubit >= n_)
      throw DimensionError("Pauli factor qubit out of range");
    if (i > 0 && factors[i].qubit == factors[i - 1].qubit)
      throw Error("duplicate qubit in Pauli string");
  }
  terms_.push_back(Term::make_pauli(c, std::move(factors)));
  return *this;
}

OperatorSum& OperatorSum::add_projector(double c, std::string symbols) {
  check_coefficient(c);
  if (int(symbols.size()) != n_) throw DimensionError("projector symbol string length != n");
  for (char s : symbols)
    if (s != '0' && s != '1' && s != '+' && s != '-')
      throw Error("projector symbols must be one of 0,1,+,-");
  terms_.push_back(Term::make_projector(c, std::move(symbols)));
  return *this;
}

OperatorSum& OperatorSum::add_uniform_projector(double c) {
  check_coefficient(c);
  terms_.push_back(Term::make_uniform(c));
  return *this;
}

OperatorSum& OperatorSum::add_dense(double c, std::vector<int> qubits, CMat m) {
  check_coefficient(c);
  if (qubits.empty() || int(qubits.size()) > kMaxDenseBlockQubits)
    throw DimensionError("dense block supports 1.." + std::to_string(kMaxDenseBlockQubits) +
                         " qubits");
  std::vector<int> sorted = qubits;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= n_) throw DimensionError("dense block qubit out of range");
    if (i > 0 && sorted[i] == sorted[i - 1]) throw Error("duplicate qubit in dense block");
  }
  Index d = dim_for_qubits(int(qubits.size()));
  if (m.rows() != d || m.cols() != d) throw DimensionError("dense block matrix shape mismatch");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error("non-Hermitian dense block");
  terms_.push_back(Term::make_dense(c, std::move(qubits), std::move(m)));
  return *this;
}

OperatorSum& OperatorSum::add_term(const Term& t) {
  switch (t.kind) {
    case TermKind::Pauli: return add_pauli(t.pauli.coefficient, t.pauli.factors);
    case TermKind::Projector: return add_projector(t.projector.coefficient, t.projector.symbols);
    case TermKind::Uniform: return add_uniform_projector(t.uniform.coefficient);
    case TermKind::Dense: return add_dense(t.dense.coefficient, t.dense.qubits, t.dense.matrix);
  }
  throw Error("unknown term kind");
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& other) {
  if (other.n_ != n_) throw DimensionError("operator sum qubit count mismatch");
  for (const auto& t : other.terms_) add_term(t);
  return *this;
}

double OperatorSum::norm_bound() const {
  double total = 0.0;
  for (const auto& t : terms_) {
    switch (t.kind) {
      case TermKind::Pauli: total += std::abs(t.pauli.coefficient); break;
      case TermKind::Projector: total += std::abs(t.projector.coefficient); break;
      case TermKind::Uniform: total += std::abs(t.uniform.coefficient); break;
      case TermKind::Dense: {
        Eigen::SelfAdjointEigenSolver<CMat> es(t.dense.matrix, Eigen::EigenvaluesOnly);
        total += std::abs(t.dense.coefficient) * es.eigenvalues().cwiseAbs().maxCoeff();
        break;
      }
    }
  }
  return total;
}

bool OperatorSum::is_diagonal() const {
  for (const auto& t : terms_) {
    switch (t.kind) {
      case TermKind::Pauli:
        for (const auto& f : t.pauli.factors)
          if (f.axis != Axis::Z) return false;
        break;
      case TermKind::Projector:
        for (char s : t.projector.symbols)
          if (s == '+' || s == '-') return false;
        break;
      case TermKind::Uniform:
        if (t.uniform.coefficient != 0.0) return false;
        break;
      case TermKind::Dense:
        if (!t.dense.matrix.isDiagonal(1e-14)) return false;
        break;
    }
  }
  return true;
}

namespace {

// Enumerates the support of a product projector: fixed bits from {0,1}
// symbols, free bits from {+,-}. amp(i) = 2^{-n_pm/2} * parity sign.
struct ProjectorSupport {
  std::uint64_t fixed_bits = 0;
  std::vector<int> free_qubits;
  std::uint64_t minus_mask = 0;
  double amp_scale = 1.0;
};

ProjectorSupport support_of(const ProductProjector& p) {
  ProjectorSupport s;
  for (int q = 0; q < int(p.symbols.size()); ++q) {
    char c = p.symbols[q];
    if (c == '1') s.fixed_bits |= std::uint64_t(1) << q;
    if (c == '+' || c == '-') {
      s.free_qubits.push_back(q);
      if (c == '-') s.minus_mask |= std::uint64_t(1) << q;
    }
  }
  s.amp_scale = std::pow(0.5, 0.5 * double(s.free_qubits.size()));
  return s;
}

// <chi|x> for every x in the support, as index/amplitude pairs via callback.
template <typename F>
void for_support(const ProjectorSupport& s, F&& f) {
  std::uint64_t count = std::uint64_t(1) << s.free_qubits.size();
  for (std::uint64_t m = 0; m < count; ++m) {
    std::uint64_t idx = s.fixed_bits;
    for (std::size_t b = 0; b < s.free_qubits.size(); ++b)
      if ((m >> b) & 1) idx |= std::uint64_t(1) << s.free_qubits[b];
    double sign = (popcount64(idx & s.minus_mask) & 1) ? -1.0 : 1.0;
    f(idx, sign * s.amp_scale);
  }
}

void apply_pauli(const PauliString& p, const CVec& x, CVec& y) {
  PauliMasks m = masks_of(p);
  Complex base = p.coefficient * i_power(m.y_count);
  Index d = x.size();
  for (Index i = 0; i < d; ++i) {
    Complex v = x[i];
    if (v == Complex(0, 0)) continue;
    double sign = (popcount64(std::uint64_t(i) & m.sign) & 1) ? -1.0 : 1.0;
    y[Index(std::uint64_t(i) ^ m.flip)] += base * sign * v;
  }
}

void apply_projector(const ProductProjector& p, const CVec& x, CVec& y) {
  ProjectorSupport s = support_of(p);
  Complex overlap(0, 0);
  for_support(s, [&](std::uint64_t idx, double amp) { overlap += amp * x[Index(idx)]; });
  overlap *= p.coefficient;
  if (overlap == Complex(0, 0)) return;
  for_support(s, [&](std::uint64_t idx, double amp) { y[Index(idx)] += overlap * amp; });
}

void apply_uniform(const UniformProjector& u, const CVec& x, CVec& y) {
  Index d = x.size();
  Complex overlap = x.sum() / std::sqrt(double(d));
  overlap *= u.coefficient;
  double amp = 1.0 / std::sqrt(double(d));
  for (Index i = 0; i < d; ++i) y[i] += overlap * amp;
}

void apply_dense(const DenseBlock& b, const CVec& x, CVec& y) {
  int k = int(b.qubits.size());
  Index bd = Index(1) << k;
  Index d = x.size();
  std::vector<std::uint64_t> bits(k);
  for (int j = 0; j < k; ++j) bits[j] = std::uint64_t(1) << b.qubits[j];
  std::uint64_t block_mask = 0;
  for (auto bit : bits) block_mask |= bit;

  CVec local(bd);
  // iterate over base indices with all block qubits cleared
  for (std::uint64_t base = 0; base < std::uint64_t(d); ++base) {
    if (base & block_mask) continue;
    for (Index a = 0; a < bd; ++a) {
      std::uint64_t idx = base;
      for (int j = 0; j < k; ++j)
        if ((a >> j) & 1) idx |= bits[j];
      local[a] = x[Index(idx)];
    }
    CVec out = b.coefficient * (b.matrix * local);
    for (Index a = 0; a < bd; ++a) {
      std::uint64_t idx = base;
      for (int j = 0; j < k; ++j)
        if ((a >> j) & 1) idx |= bits[j];
      y[Index(idx)] += out[a];
    }
  }
}

}  // namespace

void apply_accumulate(const OperatorSum& op, const CVec& x, CVec& y) {
  if (x.size() != op.dim()) throw DimensionError("apply: state dimension mismatch");
  if (y.size() != op.dim()) throw DimensionError("apply: output dimension mismatch");
  for (const auto& t : op.terms()) {
    switch (t.kind) {
      case TermKind::Pauli: apply_pauli(t.pauli, x, y); break;
      case TermKind::Projector: apply_projector(t.projector, x, y); break;
      case TermKind::Uniform: apply_uniform(t.uniform, x, y); break;
      case TermKind::Dense: apply_dense(t.dense, x, y); break;
    }
  }
}

CVec apply(const OperatorSum& op, const CVec& x) {
  CVec y = CVec::Zero(x.size());
  apply_accumulate(op, x, y);
  return y;
}

CMat materialize(const OperatorSum& op, int dense_limit) {
  if (op.n_qubits() > dense_limit)
    throw DimensionError("dense limit exceeded: " + std::to_string(op.n_qubits()) + " qubits");
  Index d = op.dim();
  CMat m = CMat::Zero(d, d);
  for (const auto& t : op.terms()) {
    switch (t.kind) {
      case TermKind::Pauli: {
        PauliMasks pm = masks_of(t.pauli);
        Complex base = t.pauli.coefficient * i_power(pm.y_count);
        for (Index i = 0; i < d; ++i) {
          double sign = (popcount64(std::uint64_t(i) & pm.sign) & 1) ? -1.0 : 1.0;
          m(Index(std::uint64_t(i) ^ pm.flip), i) += base * sign;
        }
        break;
      }
      case TermKind::Projector: {
        ProjectorSupport s = support_of(t.projector);
        CVec chi = CVec::Zero(d);
        for_support(s, [&](std::uint64_t idx, double amp) { chi[Index(idx)] = amp; });
        m += t.projector.coefficient * (chi * chi.adjoint());
        break;
      }
      case TermKind::Uniform: {
        m.array() += t.uniform.coefficient / double(d);
        break;
      }
      case TermKind::Dense: {
        int k = int(t.dense.qubits.size());
        Index bd = Index(1) << k;
        std::vector<std::uint64_t> bits(k);
        for (int j = 0; j < k; ++j) bits[j] = std::uint64_t(1) << t.dense.qubits[j];
        std::uint64_t block_mask = 0;
        for (auto bit : bits) block_mask |= bit;
        for (std::uint64_t base = 0; base < std::uint64_t(d); ++base) {
          if (base & block_mask) continue;
          for (Index a = 0; a < bd; ++a) {
            std::uint64_t row = base;
            for (int j = 0; j < k; ++j)
              if ((a >> j) & 1) row |= bits[j];
            for (Index b = 0; b < bd; ++b) {
              std::uint64_t col = base;
              for (int j = 0; j < k; ++j)
                if ((b >> j) & 1) col |= bits[j];
              m(Index(row), Index(col)) += t.dense.coefficient * t.dense.matrix(a, b);
            }
          }
        }
        break;
      }
    }
  }
  return m;
}

Vec diagonal(const OperatorSum& op) {
  if (!op.is_diagonal()) throw Error("operator is not diagonal in the computational basis");
  Index d = op.dim();
  Vec diag = Vec::Zero(d);
  for (const auto& t : op.terms()) {
    switch (t.kind) {
      case TermKind::Pauli: {
        PauliMasks m = masks_of(t.pauli);
        for (Index i = 0; i < d; ++i) {
          double sign = (popcount64(std::uint64_t(i) & m.sign) & 1) ? -1.0 : 1.0;
          diag[i] += t.pauli.coefficient * sign;
        }
        break;
      }
      case TermKind::Projector: {
        std::uint64_t idx = 0;
        for (int q = 0; q < int(t.projector.symbols.size()); ++q)
          if (t.projector.symbols[q] == '1') idx |= std::uint64_t(1) << q;
        diag[Index(idx)] += t.projector.coefficient;
        break;
      }
      case TermKind::Uniform:
        break;  // zero coefficient by is_diagonal
      case TermKind::Dense: {
        int k = int(t.dense.qubits.size());
        Index bd = Index(1) << k;
        std::vector<std::uint64_t> bits(k);
        for (int j = 0; j < k; ++j) bits[j] = std::uint64_t(1) << t.dense.qubits[j];
        std::uint64_t block_mask = 0;
        for (auto bit : bits) block_mask |= bit;
        for (std::uint64_t base = 0; base < std::uint64_t(d); ++base) {
          if (base & block_mask) continue;
          for (Index a = 0; a < bd; ++a) {
            std::uint64_t idx = base;
            for (int j = 0; j < k; ++j)
              if ((a >> j) & 1) idx |= bits[j];
            diag[Index(idx)] += t.dense.coefficient * t.dense.matrix(a, a).real();
          }
        }
        break;
      }
    }
  }
  return diag;
}

Complex expectation(const OperatorSum& op, const CVec& bra, const CVec& ket) {
  return bra.dot(apply(op, ket));
}

namespace {

struct QubitExpectations {
  double x, y, z;        // <omega|sigma|omega>
  double p0, p1, pp, pm;  // |<0|omega>|^2 etc
  Complex a0, a1;         // amplitudes of |omega>
};

QubitExpectations coherent_single(double theta, double phi) {
  QubitExpectations e;
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  e.a0 = Complex(c, 0);
  e.a1 = std::polar(s, phi);
  e.x = std::sin(theta) * std::cos(phi);
  e.y = std::sin(theta) * std::sin(phi);
  e.z = std::cos(theta);
  e.p0 = c * c;
  e.p1 = s * s;
  e.pp = 0.5 * (1 + e.x);
  e.pm = 0.5 * (1 - e.x);
  return e;
}

}  // namespace

double coherent_expectation(const OperatorSum& op, double theta, double phi) {
  QubitExpectations e = coherent_single(theta, phi);
  double total = 0.0;
  for (const auto& t : op.terms()) {
    switch (t.kind) {
      case TermKind::Pauli: {
        double v = t.pauli.coefficient;
        for (const auto& f : t.pauli.factors) {
          switch (f.axis) {
            case Axis::X: v *= e.x; break;
            case Axis::Y: v *= e.y; break;
            case Axis::Z: v *= e.z; break;
          }
        }
        total += v;
        break;
      }
      case TermKind::Projector: {
        double v = t.projector.coefficient;
        for (char sym : t.projector.symbols) {
          switch (sym) {
            case '0': v *= e.p0; break;
            case '1': v *= e.p1; break;
            case '+': v *= e.pp; break;
            case '-': v *= e.pm; break;
          }
        }
        total += v;
        break;
      }
      case TermKind::Uniform: {
        // |<phi|omega>|^2 = prod |(a0+a1)/sqrt2|^2 = pp^n
        total += t.uniform.coefficient * std::pow(e.pp, op.n_qubits());
        break;
      }
      case TermKind::Dense: {
        int k = int(t.dense.qubits.size());
        Index bd = Index(1) << k;
        CVec v(bd);
        for (Index a = 0; a < bd; ++a) {
          Complex amp(1, 0);
          for (int j = 0; j < k; ++j) amp *= ((a >> j) & 1) ? e.a1 : e.a0;
          v[a] = amp;
        }
        total += t.dense.coefficient * v.dot(t.dense.matrix * v).real();
        break;
      }
    }
  }
  return total;
}

CVec basis_state(int n_qubits, std::uint64_t index) {
  Index d = dim_for_qubits(n_qubits);
  if (index >= std::uint64_t(d)) throw DimensionError("basis state index out of range");
  CVec v = CVec::Zero(d);
  v[Index(index)] = 1.0;
  return v;
}

CVec uniform_state(int n_qubits) {
  Index d = dim_for_qubits(n_qubits);
  return CVec::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0));
}

CVec product_state(const std::string& symbols) {
  int n = int(symbols.size());
  Index d = dim_for_qubits(n);
  CVec v = CVec::Zero(d);
  ProductProjector p{1.0, symbols};
  ProjectorSupport s = support_of(p);
  for_support(s, [&](std::uint64_t idx, double amp) { v[Index(idx)] = amp; });
  return v;
}

std::string serialize(const OperatorSum& op) {
  std::ostringstream out;
  out << "opsum v1\n";
  out << "nqubits " << op.n_qubits() << "\n";
  for (const auto& t : op.terms()) {
    switch (t.kind) {
      case TermKind::Pauli: {
        out << "term pauli c=" << format_double(t.pauli.coefficient) << " factors";
        for (const auto& f : t.pauli.factors) out << " " << f.qubit << ":" << char(f.axis);
        out << "\n";
        break;
      }
      case TermKind::Projector:
        out << "term proj c=" << format_double(t.projector.coefficient) << " bits "
            << t.projector.symbols << "\n";
        break;
      case TermKind::Uniform:
        out << "term uproj c=" << format_double(t.uniform.coefficient) << "\n";
        break;
      case TermKind::Dense: {
        out << "term dense c=" << format_double(t.dense.coefficient) << " qubits";
        for (std::size_t i = 0; i < t.dense.qubits.size(); ++i)
          out << (i ? "," : " ") << t.dense.qubits[i];
        out << " matrix";
        Index bd = t.dense.matrix.rows();
        for (Index r = 0; r < bd; ++r)
          for (Index c = 0; c < bd; ++c)
            out << " " << format_double(t.dense.matrix(r, c).real()) << " "
                << format_double(t.dense.matrix(r, c).imag());
        out << "\n";
        break;
      }
    }
  }
  out << "end\n";
  return out.str();
}

namespace {

double parse_coeff(const std::string& token) {
  if (token.rfind("c=", 0) != 0) throw Error("expected c= token in operator document");
  return std::stod(token.substr(2));
}

}  // namespace

OperatorSum deserialize_operator(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "opsum v1") throw Error("bad operator document header");
  if (!std::getline(in, line)) throw Error("missing nqubits line");
  std::istringstream hdr(line);
  std::string word;
  int n = 0;
  hdr >> word >> n;
  if (word != "nqubits" || n <= 0) throw Error("bad nqubits line");
  OperatorSum op(n);
  while (std::getline(in, line)) {
    if (line == "end") return op;
    std::istringstream ls(line);
    std::string tag, kind, ctok;
    ls >> tag >> kind >> ctok;
    if (tag != "term") throw Error("expected term line");
    double c = parse_coeff(ctok);
    if (kind == "pauli") {
      std::string factors_word;
      ls >> factors_word;
      if (factors_word != "factors") throw Error("bad pauli line");
      std::vector<PauliFactor> factors;
      std::string item;
      while (ls >> item) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw Error("bad pauli factor");
        int q = std::stoi(item.substr(0, colon));
        char a = item[colon + 1];
        if (a != 'X' && a != 'Y' && a != 'Z') throw Error("bad pauli axis");
        factors.push_back({q, Axis(a)});
      }
      op.add_pauli(c, std::move(factors));
    } else if (kind == "proj") {
      std::string bits_word, bits;
      ls >> bits_word >> bits;
      if (bits_word != "bits") throw Error("bad proj line");
      op.add_projector(c, bits);
    } else if (kind == "uproj") {
      op.add_uniform_projector(c);
    } else if (kind == "dense") {
      std::string qubits_word, qubits_csv, matrix_word;
      ls >> qubits_word >> qubits_csv >> matrix_word;
      if (qubits_word != "qubits" || matrix_word != "matrix") throw Error("bad dense line");
      std::vector<int> qubits;
      std::istringstream qs(qubits_csv);
      std::string q;
      while (std::getline(qs, q, ',')) qubits.push_back(std::stoi(q));
      Index bd = Index(1) << qubits.size();
      CMat m(bd, bd);
      for (Index r = 0; r < bd; ++r)
        for (Index cc = 0; cc < bd; ++cc) {
          double re, im;
          if (!(ls >> re >> im)) throw Error("short dense matrix payload");
          m(r, cc) = Complex(re, im);
        }
      op.add_dense(c, std::move(qubits), std::move(m));
    } else {
      throw Error("unknown term kind: " + kind);
    }
  }
  throw Error("operator document missing end marker");
}

}  // namespace aqc

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

#include "aqc/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "aqc/io.hpp"
#include "aqc/parallel.hpp"
#include "aqc/rng.hpp"

namespace aqc {

namespace {

CVec deterministic_start(Index dim, std::uint64_t seed) {
  Rng rng(seed ^ 0x5eed5eed5eed5eedull);
  CVec v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = Complex(rng.gaussian(), rng.gaussian());
  v.normalize();
  return v;
}

void orthogonalize(CVec& v, const std::vector<CVec>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v -= b.dot(v) * b;
}

struct LanczosRun {
  Vec ritz_values;
  CMat ritz_vectors;  // in the full space
  Vec residuals;
};

// Lanczos with full reorthogonalization in the orthogonal complement of
// `locked`. Returns Ritz data for the lowest few values.
LanczosRun lanczos_lowest(const std::function<void(const CVec&, CVec&)>& apply_op, Index dim,
                          const std::vector<CVec>& locked, int max_iter, std::uint64_t seed,
                          int want) {
  std::vector<CVec> basis;
  std::vector<double> alpha, beta;
  CVec v = deterministic_start(dim, seed);
  orthogonalize(v, locked);
  double nrm = v.norm();
  if (nrm < 1e-12) {
    v = deterministic_start(dim, seed + 17);
    orthogonalize(v, locked);
    nrm = v.norm();
  }
  v /= nrm;
  basis.push_back(v);

  CVec w(dim);
  int m = 0;
  for (; m < max_iter; ++m) {
    w.setZero();
    apply_op(basis[m], w);
    double a = std::real(basis[m].dot(w));
    alpha.push_back(a);
    w -= a * basis[m];
    if (m > 0) w -= beta[m - 1] * basis[m - 1];
    orthogonalize(w, locked);
    orthogonalize(w, basis);
    double b = w.norm();
    if (b < 1e-13) break;  // invariant subspace exhausted
    beta.push_back(b);
    basis.push_back(w / b);
  }
  int steps = int(alpha.size());

  Mat tri = Mat::Zero(steps, steps);
  for (int i = 0; i < steps; ++i) {
    tri(i, i) = alpha[i];
    if (i + 1 < steps) {
      tri(i, i + 1) = beta[i];
      tri(i + 1, i) = beta[i];
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(tri);

  LanczosRun run;
  int take = std::min(want, steps);
  run.ritz_values = es.eigenvalues().head(take);
  run.ritz_vectors = CMat::Zero(dim, take);
  run.residuals = Vec::Zero(take);
  for (int j = 0; j < take; ++j) {
    CVec y = CVec::Zero(dim);
    for (int i = 0; i < steps; ++i) y += es.eigenvectors()(i, j) * basis[i];
    y.normalize();
    run.ritz_vectors.col(j) = y;
    // residual estimate from the Lanczos recurrence
    double rb = (steps < int(beta.size()) + 1 && steps - 1 < int(beta.size()))
                    ? beta[steps - 1] * std::abs(es.eigenvectors()(steps - 1, j))
                    : 0.0;
    run.residuals[j] = rb;
  }
  return run;
}

}  // namespace

EigPairs eig_low_operator(const std::function<void(const CVec&, CVec&)>& apply_op, Index dim,
                          int k, double norm_scale, std::uint64_t seed) {
  if (k < 1 || k > dim) throw DimensionError("eig_low: k out of range");
  double tol = 1e-10 * std::max(1.0, norm_scale);

  std::vector<CVec> locked;
  std::vector<double> values;
  int stagnation = 0;
  while (int(locked.size()) < k) {
    int remaining = int(dim) - int(locked.size());
    int max_iter = std::min<Index>(remaining, 500);
    LanczosRun run = lanczos_lowest(apply_op, dim, locked, max_iter,
                                    seed + 1013 * locked.size() + stagnation, 4);
    if (run.ritz_values.size() == 0) throw ConvergenceError("Lanczos produced no Ritz pairs");
    // verify the lowest Ritz pair with an explicit residual
    CVec y = run.ritz_vectors.col(0);
    CVec hy = CVec::Zero(dim);
    apply_op(y, hy);
    double lambda = std::real(y.dot(hy));
    double resid = (hy - lambda * y).norm();
    if (resid > 1e-8 * std::max(1.0, norm_scale)) {
      if (++stagnation > 3)
        throw ConvergenceError("iterative eigensolver did not converge, residual " +
                               std::to_string(resid));
      continue;
    }
    stagnation = 0;
    orthogonalize(y, locked);
    y.normalize();
    locked.push_back(y);
    values.push_back(lambda);
    (void)tol;
  }

  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });

  EigPairs out;
  out.values = Vec(k);
  out.vectors = CMat(dim, k);
  for (int i = 0; i < k; ++i) {
    out.values[i] = values[order[i]];
    out.vectors.col(i) = locked[order[i]];
  }
  return out;
}

EigPairs eig_low(const HamiltonianPath& path, double s, int k, EigMethod method,
                 std::uint64_t seed) {
  Index dim = path.dim();
  if (k < 1 || k > dim) throw DimensionError("eig_low: k out of range");
  bool dense = method == EigMethod::Dense ||
               (method == EigMethod::Auto && (dim <= 512 || k > dim / 4));
  if (dense) {
    if (!path.matrix_backed() && path.n_qubits() > kDenseQubitLimit)
      throw DimensionError("dense eig beyond the dense qubit limit");
    CMat h = assemble(path, s);
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    EigPairs out;
    out.values = es.eigenvalues().head(k);
    out.vectors = es.eigenvectors().leftCols(k);
    return out;
  }
  auto apply_op = [&path, s](const CVec& x, CVec& y) { apply_accumulate(path, s, x, y); };
  return eig_low_operator(apply_op, dim, k, path.norm_bound(), seed);
}

double spectral_norm(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

double spectral_norm_operator(const std::function<void(const CVec&, CVec&)>& apply_op, Index dim,
                              double scale, std::uint64_t seed) {
  // lowest of H and of -H
  auto neg = [&apply_op](const CVec& x, CVec& y) {
    CVec t = CVec::Zero(x.size());
    apply_op(x, t);
    y -= t;
  };
  double lo = eig_low_operator(apply_op, dim, 1, scale, seed).values[0];
  double hi = -eig_low_operator(neg, dim, 1, scale, seed + 1).values[0];
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace

double spectral_norm(const HamiltonianPath& path, double s, EigMethod method,
                     std::uint64_t seed) {
  Index dim = path.dim();
  bool dense = method == EigMethod::Dense || (method == EigMethod::Auto && dim <= 512);
  if (dense) return spectral_norm(assemble(path, s));
  auto apply_op = [&path, s](const CVec& x, CVec& y) { apply_accumulate(path, s, x, y); };
  return spectral_norm_operator(apply_op, dim, path.norm_bound(), seed);
}

double spectral_norm_derivative(const HamiltonianPath& path, double s, int order,
                                EigMethod method) {
  Index dim = path.dim();
  bool dense = method == EigMethod::Dense || (method == EigMethod::Auto && dim <= 512);
  if (dense) return spectral_norm(assemble_derivative(path, s, order));
  auto apply_op = [&path, s, order](const CVec& x, CVec& y) {
    for (const auto& comp : path.components()) {
      double f = order == 1 ? comp.coeff.df(s) : comp.coeff.ddf(s);
      if (f == 0.0) continue;
      if (std::holds_alternative<OperatorSum>(comp.op)) {
        CVec part = CVec::Zero(x.size());
        apply_accumulate(std::get<OperatorSum>(comp.op), x, part);
        y += f * part;
      } else {
        y.noalias() += f * (std::get<CMat>(comp.op) * x);
      }
    }
  };
  return spectral_norm_operator(apply_op, dim, path.norm_bound() * 10 + 1, 7);
}

namespace {

struct GapSample {
  Vec energies;
  double gap;
};

int levels_needed(const LevelSpec& spec) {
  switch (spec.mode) {
    case LevelSpec::Mode::ToLevel: return spec.j + 1;
    case LevelSpec::Mode::AboveDegeneracy: return std::max(4, spec.j + 1);
    case LevelSpec::Mode::SymmetricSector: return 2;
  }
  return 2;
}

double select_gap(const Vec& energies, const LevelSpec& spec, double norm_scale) {
  switch (spec.mode) {
    case LevelSpec::Mode::ToLevel:
    case LevelSpec::Mode::SymmetricSector: {
      int j = spec.mode == LevelSpec::Mode::ToLevel ? spec.j : 1;
      if (j >= energies.size()) throw Error("gap level beyond computed spectrum");
      return energies[j] - energies[0];
    }
    case LevelSpec::Mode::AboveDegeneracy: {
      double tau = spec.tau > 0 ? spec.tau : 1e-8 * std::max(1.0, norm_scale);
      for (Index i = 1; i < energies.size(); ++i)
        if (energies[i] - energies[0] > tau) return energies[i] - energies[0];
      return 0.0;  // everything degenerate within the computed window
    }
  }
  throw Error("bad level spec");
}

}  // namespace

GapProfile gap_profile(const HamiltonianPath& path, int grid_size, const LevelSpec& spec,
                       bool refine, const GapProfileOptions& options) {
  if (grid_size < 3) throw Error("gap_profile needs grid_size >= 3");
  int k = options.k > 0 ? options.k : levels_needed(spec);
  k = int(std::min<Index>(k, path.dim()));
  double norm_scale = path.norm_bound();

  GapProfile profile;
  profile.level_spec = spec;
  profile.grid = Vec::LinSpaced(grid_size, 0.0, 1.0);
  profile.energies = Mat(grid_size, k);
  profile.gap = Vec(grid_size);

  std::vector<std::string> failures(grid_size);
  parallel_for(std::size_t(grid_size), [&](std::size_t i) {
    double s = profile.grid[Index(i)];
    try {
      EigPairs pairs = eig_low(path, s, k, options.method, options.seed);
      profile.energies.row(Index(i)) = pairs.values.transpose();
      profile.gap[Index(i)] = select_gap(pairs.values, spec, norm_scale);
    } catch (const std::exception& e) {
      failures[i] = "s=" + std::to_string(s) + ": " + e.what();
    }
  });
  for (const auto& f : failures)
    if (!f.empty()) throw Error("gap_profile failed at " + f);

  Index imin;
  profile.gap.minCoeff(&imin);
  profile.min_gap = profile.gap[imin];
  profile.s_min = profile.grid[imin];

  if (refine) {
    auto gap_at = [&](double s) {
      EigPairs pairs = eig_low(path, s, k, options.method, options.seed);
      return select_gap(pairs.values, spec, norm_scale);
    };
    Index lo_i = std::max<Index>(0, imin - 1);
    Index hi_i = std::min<Index>(grid_size - 1, imin + 1);
    double a = profile.grid[lo_i], b = profile.grid[hi_i];
    double fa = profile.gap[lo_i], fb = profile.gap[hi_i], fm = profile.min_gap;
    bool unimodal_bracket = (imin > 0 && imin < grid_size - 1) ? (fm <= fa && fm <= fb)
                                                               : true;
    if (!unimodal_bracket) {
      profile.non_unimodal = true;
    } else {
      const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
      double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
      double f1 = gap_at(x1), f2 = gap_at(x2);
      while (b - a > options.refine_tol) {
        if (f1 <= f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - phi * (b - a);
          f1 = gap_at(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + phi * (b - a);
          f2 = gap_at(x2);
        }
      }
      double sm = 0.5 * (a + b);
      double gm = gap_at(sm);
      if (gm <= profile.min_gap) {
        profile.min_gap = gm;
        profile.s_min = sm;
      } else {
        profile.non_unimodal = true;  // refinement failed to improve
      }
      profile.refined = true;
    }
  }
  return profile;
}

std::string profile_csv(const GapProfile& profile) {
  std::vector<std::string> header = {"s"};
  for (Index j = 0; j < profile.energies.cols(); ++j)
    header.push_back("e" + std::to_string(j));
  header.push_back("gap");
  CsvWriter csv(header);
  for (Index i = 0; i < profile.grid.size(); ++i) {
    std::vector<double> row = {profile.grid[i]};
    for (Index j = 0; j < profile.energies.cols(); ++j) row.push_back(profile.energies(i, j));
    row.push_back(profile.gap[i]);
    csv.row_numeric(row);
  }
  return csv.payload();
}

std::string profile_summary_json(const GapProfile& profile) {
  std::string out = "{\n";
  out += "  \"min_gap\": " + format_double(profile.min_gap) + ",\n";
  out += "  \"s_min\": " + format_double(profile.s_min) + ",\n";
  out += "  \"refined\": " + std::string(profile.refined ? "true" : "false") + ",\n";
  out += "  \"non_unimodal\": " + std::string(profile.non_unimodal ? "true" : "false") + "\n";
  out += "}\n";
  return out;
}

}  // namespace aqc

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

#include <functional>
#include <string>

#include "aqc/path.hpp"

namespace aqc {

enum class EigMethod { Auto, Dense, Iterative };

struct EigPairs {
  Vec values;    // ascending
  CMat vectors;  // orthonormal columns
};

// Lowest-k eigenpairs of a Hermitian operator given matrix-free.
// Residuals ||Hv - lambda v|| <= 1e-8 * max(1, ||H||); Lanczos with full
// reorthogonalization and locking, deterministic start from `seed`.
EigPairs eig_low_operator(const std::function<void(const CVec&, CVec&)>& apply_op, Index dim,
                          int k, double norm_scale, std::uint64_t seed = 0);

EigPairs eig_low(const HamiltonianPath& path, double s, int k,
                 EigMethod method = EigMethod::Auto, std::uint64_t seed = 0);

// Largest singular value (= spectral norm for Hermitian input).
double spectral_norm(const CMat& m);
double spectral_norm(const HamiltonianPath& path, double s, EigMethod method = EigMethod::Auto,
                     std::uint64_t seed = 0);
double spectral_norm_derivative(const HamiltonianPath& path, double s, int order,
                                EigMethod method = EigMethod::Auto);

struct LevelSpec {
  enum class Mode { ToLevel, AboveDegeneracy, SymmetricSector };
  Mode mode = Mode::ToLevel;
  int j = 1;          // gap target level for ToLevel
  double tau = -1.0;  // degeneracy tolerance; <0 selects 1e-8*max(1,||H||)

  static LevelSpec to_level(int level) { return {Mode::ToLevel, level, -1.0}; }
  static LevelSpec above_degeneracy(double tolerance = -1.0) {
    return {Mode::AboveDegeneracy, 1, tolerance};
  }
};

struct GapProfile {
  Vec grid;
  Mat energies;  // grid.size() x k, ascending rows
  Vec gap;
  double min_gap = 0.0;
  double s_min = 0.0;
  LevelSpec level_spec;
  bool refined = false;
  bool non_unimodal = false;  // refinement fell back to the grid minimum
};

struct GapProfileOptions {
  int k = 0;  // 0: derived from level_spec
  EigMethod method = EigMethod::Auto;
  std::uint64_t seed = 0;
  double refine_tol = 1e-6;
};

// Uniform grid scan; when `refine`, golden-section refinement of the selected
// gap around the grid minimum down to |ds| <= refine_tol.
GapProfile gap_profile(const HamiltonianPath& path, int grid_size, const LevelSpec& spec,
                       bool refine, const GapProfileOptions& options = {});

// CSV payload `s,e0,...,e{k-1},gap`
std::string profile_csv(const GapProfile& profile);
// JSON sidecar with the minimum summary
std::string profile_summary_json(const GapProfile& profile);

}  // namespace aqc

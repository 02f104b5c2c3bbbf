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

#include "aqc/annealer.hpp"

#include <algorithm>
#include <cmath>

#include "aqc/io.hpp"
#include "aqc/parallel.hpp"
#include "aqc/rng.hpp"

namespace aqc {

void SAConfig::validate() const {
  if (schedule == TemperatureSchedule::LinearInT && (t_init <= 0 || t_final <= 0))
    throw Error("temperatures must be positive");
  if (sweeps < 1) throw Error("sweeps must be >= 1");
  if (repetitions < 1) throw Error("repetitions must be >= 1");
}

namespace {

// per-site incidence index so single-flip deltas stay local
struct CostIndex {
  const IsingCost* ising = nullptr;
  const WeightCost* weight = nullptr;
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> pair_of;          // site -> (other, J)
  std::vector<std::vector<std::tuple<int, int, double>>> triple_of;  // site -> (j,k,K)

  explicit CostIndex(const ProblemInstance& inst) : n(inst.n) {
    if (inst.weight_cost) {
      weight = &*inst.weight_cost;
      return;
    }
    if (!inst.ising) throw Error("simulated annealing needs a diagonal final Hamiltonian");
    ising = &*inst.ising;
    pair_of.resize(n);
    triple_of.resize(n);
    for (const auto& [i, j, J] : ising->pairs) {
      pair_of[i].push_back({j, J});
      pair_of[j].push_back({i, J});
    }
    for (const auto& [i, j, k, K] : ising->triples) {
      triple_of[i].push_back({j, k, K});
      triple_of[j].push_back({i, k, K});
      triple_of[k].push_back({i, j, K});
    }
  }

  double value(const std::vector<std::uint8_t>& bits, int weight_now) const {
    if (weight) return weight->f(weight_now);
    return ising->value(bits);
  }

  double flip_delta(const std::vector<std::uint8_t>& bits, int site, int weight_now) const {
    if (weight) {
      int next = weight_now + (bits[site] ? -1 : 1);
      return weight->f(next) - weight->f(weight_now);
    }
    auto spin = [&bits](int i) { return bits[i] ? -1.0 : 1.0; };
    double local = 0.0;
    if (site < int(ising->field.size())) local += ising->field[site] * spin(site);
    for (const auto& [j, J] : pair_of[site]) local += J * spin(site) * spin(j);
    for (const auto& [j, k, K] : triple_of[site]) local += K * spin(site) * spin(j) * spin(k);
    return -2.0 * local;
  }

  double max_term_magnitude() const {
    if (weight) {
      double m = 0.0;
      for (int w = 0; w < n; ++w) m = std::max(m, std::abs(weight->f(w + 1) - weight->f(w)));
      return std::max(m, 1e-12);
    }
    double m = 0.0;
    for (double h : ising->field) m = std::max(m, std::abs(h));
    for (const auto& [i, j, J] : ising->pairs) m = std::max(m, std::abs(J));
    for (const auto& [i, j, k, K] : ising->triples) m = std::max(m, std::abs(K));
    return std::max(m, 1e-12);
  }
};

}  // namespace

SAResult simulated_annealing(const ProblemInstance& instance, const SAConfig& config) {
  config.validate();
  if (!instance.diagonal_final && !instance.weight_cost && !instance.ising)
    throw Error("simulated annealing needs a diagonal final Hamiltonian");
  CostIndex index(instance);
  int n = instance.n;

  double target = instance.known_solution ? instance.known_solution->energy : -1e300;
  bool have_target = instance.known_solution.has_value();

  double geman_p = config.geman_p > 0 ? config.geman_p : index.max_term_magnitude();
  double geman_alpha = config.geman_alpha > 0 ? config.geman_alpha : std::exp(-double(n));

  SAResult result;
  result.repetitions = config.repetitions;
  result.best_energy = 1e300;
  std::vector<double> best_per_rep(config.repetitions, 1e300);
  std::vector<int> success_per_rep(config.repetitions, 0);
  std::vector<std::vector<double>> traces(config.repetitions);

  parallel_for(std::size_t(config.repetitions), [&](std::size_t rep) {
    Rng rng(derive_seed(config.seed, "sa/" + instance.family + "/" + std::to_string(rep)));
    std::vector<std::uint8_t> bits(n);
    int weight_now = 0;
    for (int i = 0; i < n; ++i) {
      bits[i] = std::uint8_t(rng.below(2));
      weight_now += bits[i];
    }
    double energy = index.value(bits, weight_now);
    double best = energy;
    bool record = config.record_trace && rep == 0;
    if (record) traces[rep].reserve(config.sweeps);
    for (long sweep = 0; sweep < config.sweeps; ++sweep) {
      double temperature;
      if (config.schedule == SAConfig::TemperatureSchedule::LinearInT) {
        double frac = config.sweeps > 1 ? double(sweep) / double(config.sweeps - 1) : 1.0;
        temperature = config.t_init + (config.t_final - config.t_init) * frac;
      } else {
        temperature = geman_p * n / std::log(geman_alpha * double(sweep + 1) + 1.0);
      }
      for (int move = 0; move < n; ++move) {
        int site = config.selection == SAConfig::SpinSelection::Random
                       ? int(rng.below(std::uint64_t(n)))
                       : move;
        double delta = index.flip_delta(bits, site, weight_now);
        if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature)) {
          weight_now += bits[site] ? -1 : 1;
          bits[site] ^= 1;
          energy += delta;
          if (energy < best) best = energy;
        }
      }
      if (record) traces[rep].push_back(best);
    }
    best_per_rep[rep] = best;
    if (have_target && best <= target + 1e-9) success_per_rep[rep] = 1;
  });

  for (int rep = 0; rep < config.repetitions; ++rep) {
    result.best_energy = std::min(result.best_energy, best_per_rep[rep]);
    result.success_count += success_per_rep[rep];
  }
  if (config.record_trace) result.energy_trace = std::move(traces[0]);
  return result;
}

double tts(double t_f, double p_s, double p_d) {
  if (!(p_d > 0.0 && p_d < 1.0)) throw Error("p_d must lie in (0,1)");
  if (p_s <= 0.0) return std::numeric_limits<double>::infinity();
  if (p_s >= 1.0) return t_f;
  return t_f * std::log(1.0 - p_d) / std::log(1.0 - p_s);
}

double quantum_success_probability(const ProblemInstance& instance, const Schedule& schedule,
                                   double t_f, bool use_symmetric_sector,
                                   const StepperOptions& stepper) {
  if (use_symmetric_sector) {
    if (!instance.has_symmetric) throw Error("instance has no symmetric-sector path");
    const HamiltonianPath& path = instance.symmetric.reduced;
    // start in the sector image of the uniform superposition
    int n = instance.symmetric.n;
    CVec psi0(n + 1);
    for (int w = 0; w <= n; ++w) psi0[w] = dicke_uniform_amplitude(n, w);
    psi0.normalize();
    EvolutionResult run = evolve(path, schedule, t_f, psi0, stepper);
    return ground_space_weight(run.final_state, path, 1.0);
  }
  if (!instance.has_full_path) throw Error("instance has no full path");
  EigPairs start = eig_low(instance.path, 0.0, 1);
  EvolutionResult run = evolve(instance.path, schedule, t_f, start.vectors.col(0), stepper);
  if (instance.diagonal_final && instance.known_solution) {
    double p = 0.0;
    for (const auto& config : instance.known_solution->configurations) {
      std::uint64_t idx = 0;
      for (int q = 0; q < instance.n; ++q)
        if (config[q]) idx |= std::uint64_t(1) << q;
      p += std::norm(run.final_state[Index(idx)]);
    }
    return p;
  }
  return ground_space_weight(run.final_state, instance.path, 1.0);
}

PowerFit power_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw Error("fit needs >= 2 points");
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double n = double(lx.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  PowerFit fit;
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.prefactor_log = (sy - fit.exponent * sx) / n;
  double ss_res = 0, ss_tot = 0, mean = sy / n;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double pred = fit.prefactor_log + fit.exponent * lx[i];
    ss_res += (ly[i] - pred) * (ly[i] - pred);
    ss_tot += (ly[i] - mean) * (ly[i] - mean);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

PowerFit exp_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw Error("fit needs >= 2 points");
  std::vector<double> ly(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) ly[i] = std::log(ys[i]);
  double n = double(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ly[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ly[i];
  }
  PowerFit fit;
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);  // rate per unit x
  fit.prefactor_log = (sy - fit.exponent * sx) / n;
  double ss_res = 0, ss_tot = 0, mean = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double pred = fit.prefactor_log + fit.exponent * xs[i];
    ss_res += (ly[i] - pred) * (ly[i] - pred);
    ss_tot += (ly[i] - mean) * (ly[i] - mean);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

std::string BenchmarkReport::csv() const {
  CsvWriter out({"family", "n", "solver", "knob", "success", "tts"});
  for (const auto& row : rows)
    out.row({row.family, std::to_string(row.n), row.solver, format_double(row.knob),
             format_double(row.success), format_double(row.tts_value)});
  return out.payload();
}

BenchmarkReport benchmark(const std::function<ProblemInstance(int)>& factory,
                          const std::vector<int>& sizes,
                          const std::vector<QuantumSolverSpec>& quantum_solvers,
                          const std::vector<SASolverSpec>& sa_solvers, double p_d) {
  BenchmarkReport report;
  for (int n : sizes) {
    ProblemInstance inst = factory(n);
    for (const auto& solver : quantum_solvers) {
      BenchmarkRow best;
      best.tts_value = std::numeric_limits<double>::infinity();
      for (double t_f : solver.t_f_grid) {
        double p = quantum_success_probability(inst, solver.schedule(inst), t_f,
                                               solver.use_symmetric_sector, solver.stepper);
        BenchmarkRow row{inst.family, n, solver.name, t_f, p, tts(t_f, p, p_d)};
        report.rows.push_back(row);
        if (row.tts_value < best.tts_value) best = row;
      }
      report.optima.push_back(best);
    }
    for (const auto& solver : sa_solvers) {
      BenchmarkRow best;
      best.tts_value = std::numeric_limits<double>::infinity();
      for (long sweeps : solver.sweep_grid) {
        SAConfig config = solver.base;
        config.sweeps = sweeps;
        config.seed = derive_seed(config.seed, "bench/" + std::to_string(n) + "/" +
                                                   std::to_string(sweeps));
        SAResult sa = simulated_annealing(inst, config);
        double p = double(sa.success_count) / double(sa.repetitions);
        // sweeps * n single-spin updates per repetition is the cost model
        BenchmarkRow row{inst.family, n, solver.name, double(sweeps), p,
                         tts(double(sweeps) * n, p, p_d)};
        report.rows.push_back(row);
        if (row.tts_value < best.tts_value) best = row;
      }
      report.optima.push_back(best);
    }
  }
  return report;
}

}  // namespace aqc

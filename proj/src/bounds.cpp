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

#include "aqc/bounds.hpp"

#include <cmath>

#include "aqc/io.hpp"
#include "aqc/parallel.hpp"

namespace aqc {

namespace {

struct Integrand {
  const HamiltonianPath* path;
  std::function<int(double)> m;

  double gap(double s) const {
    int mult = m(s);
    EigPairs pairs = eig_low(*path, s, mult + 1);
    double g = pairs.values[mult] - pairs.values[mult - 1];
    if (g <= 1e-12) throw Error("vanishing gap at s=" + std::to_string(s));
    return g;
  }

  double h1(double s) const { return spectral_norm_derivative(*path, s, 1); }
  double h2(double s) const { return spectral_norm_derivative(*path, s, 2); }

  double operator()(double s) const {
    double mult = double(m(s));
    double d = gap(s);
    return mult * h2(s) / (d * d) + 7.0 * mult * std::sqrt(mult) * h1(s) * h1(s) / (d * d * d);
  }
};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

BoundReport jrs(const HamiltonianPath& path, int grid_size, const JrsOptions& options) {
  if (grid_size < 3) throw Error("jrs needs grid_size >= 3");
  Integrand integrand;
  integrand.path = &path;
  integrand.m = options.multiplicity ? options.multiplicity : [](double) { return 1; };

  BoundReport report;
  report.grid = Vec::LinSpaced(grid_size, 0.0, 1.0);
  report.gap = Vec(grid_size);
  report.h1_norm = Vec(grid_size);
  report.h2_norm = Vec(grid_size);
  Vec values(grid_size);

  std::vector<std::string> failures(grid_size);
  parallel_for(std::size_t(grid_size), [&](std::size_t i) {
    try {
      double s = report.grid[Index(i)];
      report.gap[Index(i)] = integrand.gap(s);
      report.h1_norm[Index(i)] = integrand.h1(s);
      report.h2_norm[Index(i)] = integrand.h2(s);
      double mult = double(integrand.m(s));
      double d = report.gap[Index(i)];
      values[Index(i)] = mult * report.h2_norm[Index(i)] / (d * d) +
                         7.0 * mult * std::sqrt(mult) * report.h1_norm[Index(i)] *
                             report.h1_norm[Index(i)] / (d * d * d);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  for (const auto& f : failures)
    if (!f.empty()) throw Error("jrs: " + f);

  double m0 = double(integrand.m(0.0)), m1 = double(integrand.m(1.0));
  report.boundary_term_0 = m0 * report.h1_norm[0] / (report.gap[0] * report.gap[0]);
  report.boundary_term_1 =
      m1 * report.h1_norm[grid_size - 1] /
      (report.gap[grid_size - 1] * report.gap[grid_size - 1]);

  // composite Simpson over the grid cells, with adaptive refinement in the
  // cells around the gap minimum where the integrand peaks
  Index imin;
  report.gap.minCoeff(&imin);
  double integral = 0.0;
  auto f = [&integrand](double s) { return integrand(s); };
  for (Index i = 0; i + 1 < grid_size; ++i) {
    double a = report.grid[i], b = report.grid[i + 1];
    double fa = values[i], fb = values[i + 1];
    double mid = 0.5 * (a + b);
    double fm = f(mid);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    bool near_min = std::abs(double(i) - double(imin)) <= 1.5;
    if (near_min) {
      double tol = options.refine_tol * std::abs(whole) + 1e-12;
      integral += adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 12);
    } else {
      integral += whole;
    }
  }
  report.integral_term = integral;
  return report;
}

SufficiencyResult sufficiency_check(const HamiltonianPath& path, const Schedule& schedule,
                                    double target_error, double safety_factor,
                                    const StepperOptions& stepper) {
  if (!(target_error > 0.0 && target_error < 1.0))
    throw Error("target_error must lie in (0,1)");
  HamiltonianPath scheduled = reparametrize(path, schedule);
  SufficiencyResult out;
  out.report = jrs(scheduled, 101);
  out.t_f_sufficient = out.report.t_f_sufficient(target_error);

  double t_f = safety_factor * out.t_f_sufficient;
  EigPairs start = eig_low(scheduled, 0.0, 1);
  EvolutionResult run = evolve(scheduled, linear(), t_f, start.vectors.col(0), stepper);
  out.measured_error = adiabatic_error(run, scheduled);
  return out;
}

std::string bound_report_json(const BoundReport& report) {
  std::string out = "{\n";
  out += "  \"boundary_term_0\": " + format_double(report.boundary_term_0) + ",\n";
  out += "  \"boundary_term_1\": " + format_double(report.boundary_term_1) + ",\n";
  out += "  \"integral_term\": " + format_double(report.integral_term) + ",\n";
  out += "  \"t_f_sufficient\": {\n";
  out += "    \"0.1\": " + format_double(report.t_f_sufficient(0.1)) + ",\n";
  out += "    \"0.01\": " + format_double(report.t_f_sufficient(0.01)) + "\n";
  out += "  }\n}\n";
  return out;
}

}  // namespace aqc

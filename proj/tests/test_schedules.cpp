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

#include <cmath>

#include "aqc/schedules.hpp"

using namespace aqc;

namespace {

double grover_gap_of_u(double N, double u) {
  return std::sqrt((1 - 2 * u) * (1 - 2 * u) + 4.0 / N * u * (1 - u));
}

}  // namespace

TEST_CASE("linear schedule") {
  Schedule s = linear();
  CHECK(s.A(0.0) == 0.0);
  CHECK(s.A(0.5) == 0.5);
  CHECK(s.A(1.0) == 1.0);
  CHECK(s.dA(0.3) == 1.0);
  CHECK_NOTHROW(check_schedule(s));
}

TEST_CASE("local_power with constant gap is the identity schedule") {
  Schedule s = local_power([](double) { return 1.0; }, 2.0);
  for (double x : {0.0, 0.1, 0.25, 0.5, 0.77, 1.0})
    CHECK(s.A(x) == doctest::Approx(x).epsilon(1e-10));
  CHECK_NOTHROW(check_schedule(s));
}

TEST_CASE("local_power p=2 on the Grover gap evaluates the closed form") {
  double N = 4.0;
  Schedule s = local_power([N](double u) { return grover_gap_of_u(N, u); }, 2.0);
  // closed form gives A(0.75) = 2/3 for N=4
  CHECK(s.A(0.75) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK_NOTHROW(check_schedule(s));
}

TEST_CASE("roland_cerf boundary identities and midpoint symmetry") {
  for (double N : {2.0, 4.0, 64.0, 1024.0}) {
    Schedule s = roland_cerf(N);
    CHECK(s.A(0.0) == 0.0);
    CHECK(s.A(1.0) == 1.0);
    CHECK(s.A(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_NOTHROW(check_schedule(s));
  }
  Schedule s4 = roland_cerf(4.0);
  CHECK(s4.A(0.75) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("local_power p=2 cross-checks roland_cerf to 1e-6") {
  for (double N : {4.0, 16.0, 64.0}) {
    Schedule lp = local_power([N](double u) { return grover_gap_of_u(N, u); }, 2.0);
    Schedule rc = roland_cerf(N);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      double s = double(i) / 1000.0;
      worst = std::max(worst, std::abs(lp.A(s) - rc.A(s)));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("reg_beta values and symmetry") {
  Schedule v0 = reg_beta(0);
  CHECK(v0.A(0.3) == doctest::Approx(0.3));
  Schedule v1 = reg_beta(1);
  CHECK(v1.A(0.25) == doctest::Approx(5.0 / 32.0).epsilon(1e-12));
  for (int V : {1, 2, 5, 20, 50}) {
    Schedule s = reg_beta(V);
    CHECK(s.A(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.A(0.0) == 0.0);
    CHECK(s.A(1.0) == 1.0);
    CHECK_NOTHROW(check_schedule(s));
    // symmetry of the integrand: A(1-s) = 1 - A(s)
    for (double x : {0.1, 0.3, 0.45})
      CHECK(s.A(1.0 - x) == doctest::Approx(1.0 - s.A(x)).epsilon(1e-12));
  }
}

TEST_CASE("reg_beta boundary derivatives vanish through order V") {
  for (int V : {1, 3, 7}) {
    for (int v = 1; v <= V; ++v) {
      CHECK(std::abs(reg_beta_boundary_derivative(V, v, false)) <= 1e-8);
      CHECK(std::abs(reg_beta_boundary_derivative(V, v, true)) <= 1e-8);
    }
    CHECK(std::abs(reg_beta_boundary_derivative(V, V + 1, false)) > 1e-8);
  }
  // numerically: A'(0) and A'(1) are tiny for V>=2
  Schedule s = reg_beta(4);
  CHECK(std::abs(s.dA(0.0)) < 1e-12);
  CHECK(std::abs(s.dA(1.0)) < 1e-12);
}

TEST_CASE("qab with one control and p=4 reproduces the Grover schedule") {
  int n = 6;
  double N = double(Index(1) << n);
  ControlFamily fam = grover_control_family(n, false);
  QabOptions options;
  options.p = 4.0;
  QabResult result = qab(fam, options);
  REQUIRE(result.is_schedule);
  Schedule rc = roland_cerf(N);
  double worst = 0.0;
  for (int i = 0; i <= 500; ++i) {
    double s = double(i) / 500.0;
    worst = std::max(worst, std::abs(result.schedule.A(s) - rc.A(s)));
  }
  CHECK(worst < 1e-5);
  CHECK(result.residual < 1e-6);
}

TEST_CASE("qab with a constant metric is a straight line") {
  // gap independent of x: Christoffel symbols vanish
  ControlFamily fam;
  CMat g1 = CMat::Zero(2, 2), g2 = CMat::Zero(2, 2);
  g1(0, 0) = 1.0;
  g2(1, 1) = 1.0;
  fam.generators = {g1, g2};
  fam.gap = [](const Vec&) { return 1.0; };
  fam.x_start = Vec::Zero(2);
  fam.x_end = Vec::Ones(2);
  QabResult result = qab(fam);
  REQUIRE(!result.is_schedule);
  for (Index i = 0; i < result.s_grid.size(); i += 100) {
    double s = result.s_grid[i];
    CHECK(result.trajectory(i, 0) == doctest::Approx(s).epsilon(1e-8));
    CHECK(result.trajectory(i, 1) == doctest::Approx(s).epsilon(1e-8));
  }
  CHECK(result.residual < 1e-6);
}

TEST_CASE("two-control Grover geodesic leaves the x2 = 1 - x1 line") {
  ControlFamily fam = grover_control_family(4, true);
  QabOptions options;
  options.p = 4.0;
  QabResult result = qab(fam, options);
  REQUIRE(!result.is_schedule);
  CHECK(result.residual < 1e-6);
  double max_offline = 0.0;
  for (Index i = 0; i < result.s_grid.size(); ++i)
    max_offline = std::max(max_offline,
                           std::abs(result.trajectory(i, 0) + result.trajectory(i, 1) - 1.0));
  CHECK(max_offline > 0.01);
}

TEST_CASE("schedule csv export") {
  std::string csv = schedule_csv(linear(), 11);
  CHECK(csv.rfind("s,A,Aprime\n", 0) == 0);
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 12);
}

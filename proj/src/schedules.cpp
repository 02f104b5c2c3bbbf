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

#include "aqc/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "aqc/io.hpp"
#include "aqc/operators.hpp"

namespace aqc {

void check_schedule(const Schedule& s) {
  if (s.A(0.0) != 0.0 || s.A(1.0) != 1.0) throw Error("schedule boundaries not exact");
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    double x = double(i) / 1000.0;
    double v = s.A(x);
    if (v < prev - 1e-12) throw Error("schedule is not monotone at s=" + std::to_string(x));
    prev = std::max(prev, v);
    double h = 1e-6;
    double lo = std::max(0.0, x - h), hi = std::min(1.0, x + h);
    double fd = (s.A(hi) - s.A(lo)) / (hi - lo);
    if (std::abs(fd - s.dA(x)) > 1e-5 * (1.0 + std::abs(s.dA(x))) * 50.0)
      throw Error("schedule derivative inconsistent at s=" + std::to_string(x));
  }
}

Schedule linear() {
  return {[](double s) { return s; }, [](double) { return 1.0; }, "linear"};
}

namespace {

// 64-point Gauss-Legendre nodes/weights on [-1,1], computed once by Newton on
// the Legendre recurrence. Exact for polynomials of degree <= 127.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        double step = p1 / dp;
        t -= step;
        if (std::abs(step) < 1e-15) break;
      }
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }

  double integrate(const std::function<double(double)>& f, double a, double b) const {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(mid + half * x[i]);
    return acc * half;
  }
};

const GaussLegendre& gl64() {
  static GaussLegendre g(64);
  return g;
}

// Shared machinery for schedules defined through s(A) = (1/c) int_0^A rho(u) du
// with rho > 0. Stores the cumulative on a uniform grid and inverts with
// bracketed Newton, which keeps the sup error well below 1e-6.
class QuadratureSchedule {
 public:
  QuadratureSchedule(std::function<double(double)> rho, int cells) : rho_(std::move(rho)) {
    cum_.resize(cells + 1);
    cum_[0] = 0.0;
    const auto& g = gl64();
    for (int i = 0; i < cells; ++i) {
      double a = double(i) / cells, b = double(i + 1) / cells;
      double v = g.integrate(rho_, a, b);
      if (!(v > 0.0) || !std::isfinite(v))
        throw Error("schedule integrand vanished or diverged on [0,1]");
      cum_[i + 1] = cum_[i] + v;
    }
    total_ = cum_.back();
  }

  double total() const { return total_; }

  // invert s = S(A) for A
  double invert(double s) const {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double target = s * total_;
    auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    int hi = int(std::min<std::ptrdiff_t>(it - cum_.begin(), cum_.size() - 1));
    int lo = hi - 1;
    int cells = int(cum_.size()) - 1;
    const double base = double(lo) / cells;  // cumulative reference stays here
    double bra = base, ket = double(hi) / cells;
    const auto& g = gl64();
    double u = bra + (ket - bra) * (target - cum_[lo]) / (cum_[hi] - cum_[lo]);
    for (int iter = 0; iter < 80; ++iter) {
      double f = cum_[lo] + g.integrate(rho_, base, u) - target;
      if (f > 0)
        ket = u;
      else
        bra = u;
      double next = u - f / rho_(u);
      if (!(next > bra && next < ket)) next = 0.5 * (bra + ket);
      if (std::abs(next - u) < 1e-15 || ket - bra < 1e-15) return next;
      u = next;
    }
    return u;
  }

  double density(double u) const { return rho_(u); }

 private:
  std::function<double(double)> rho_;
  std::vector<double> cum_;
  double total_ = 0.0;
};

}  // namespace

Schedule local_power(const std::function<double(double)>& gap, double p, int quadrature_cells) {
  auto rho = [gap, p](double u) {
    double d = gap(u);
    if (!(d > 1e-14)) throw Error("gap vanished inside local_power schedule");
    return std::pow(d, -p);
  };
  auto table = std::make_shared<QuadratureSchedule>(rho, quadrature_cells);
  double c = table->total();
  auto A = [table](double s) { return table->invert(s); };
  auto dA = [table, gap, p, c](double s) {
    double u = table->invert(s);
    return c * std::pow(gap(u), p);
  };
  return {A, dA, "local_power(p=" + std::to_string(p) + ")"};
}

Schedule roland_cerf(double N) {
  if (N < 2.0) throw Error("roland_cerf needs N >= 2");
  double root = std::sqrt(N - 1.0);
  double a = std::atan(root);
  auto A = [root, a](double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return 0.5 + 0.5 / root * std::tan((2.0 * s - 1.0) * a);
  };
  auto dA = [root, a](double s) {
    double t = std::cos((2.0 * s - 1.0) * a);
    return a / root / (t * t);
  };
  return {A, dA, "roland_cerf(N=" + std::to_string(N) + ")"};
}

Schedule reg_beta(int V) {
  if (V < 0 || V > 50) throw Error("reg_beta supports 0 <= V <= 50");
  if (V == 0) return {[](double s) { return s; }, [](double) { return 1.0; }, "reg_beta(0)"};
  // positive integrand; 64-point Gauss-Legendre is exact for degree 2V <= 100
  double log_denominator = 2.0 * std::lgamma(V + 1.0) - std::lgamma(2.0 * V + 2.0);
  double denom = std::exp(log_denominator);
  auto integrand = [V](double x) { return std::pow(x * (1.0 - x), double(V)); };
  auto A = [integrand, denom](double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    if (s > 0.5) {  // symmetry keeps the quadrature interval short
      double tail = gl64().integrate(integrand, s, 1.0);
      return 1.0 - tail / denom;
    }
    return gl64().integrate(integrand, 0.0, s) / denom;
  };
  auto dA = [integrand, denom](double s) { return integrand(s) / denom; };
  return {A, dA, "reg_beta(" + std::to_string(V) + ")"};
}

double reg_beta_boundary_derivative(int V, int order, bool at_one) {
  // A'(s) = s^V (1-s)^V / B(V+1,V+1); expansion at the boundary has leading
  // power V, so orders 1..V vanish identically.
  if (order < 1) throw Error("derivative order must be >= 1");
  if (order <= V) return 0.0;
  // first nonvanishing derivative: order V+1; value (+-) V! / B(V+1,V+1)
  if (order == V + 1) {
    double v = std::exp(std::lgamma(V + 1.0) - (2.0 * std::lgamma(V + 1.0) -
                                                std::lgamma(2.0 * V + 2.0)));
    return at_one ? ((V % 2) ? v : -v) * ((V + 1) % 2 ? 1.0 : -1.0) : v;
  }
  throw Error("boundary derivative implemented through order V+1 only");
}

// --- QAB ---------------------------------------------------------------------

ControlFamily grover_control_family(int n_qubits, bool two_controls) {
  Index d = dim_for_qubits(n_qubits);
  double N = double(d);
  CVec a = uniform_state(n_qubits);
  CVec b = basis_state(n_qubits, 0);
  CMat pa = CMat::Identity(d, d) - a * a.adjoint();
  CMat pb = CMat::Identity(d, d) - b * b.adjoint();
  ControlFamily fam;
  double alpha2 = 1.0 / N;  // |<a|b>|^2
  if (two_controls) {
    fam.generators = {pa, pb};
    fam.x_start = Vec(2);
    fam.x_start << 1.0, 0.0;
    fam.x_end = Vec(2);
    fam.x_end << 0.0, 1.0;
    fam.gap = [alpha2](const Vec& x) {
      double sum = x[0] + x[1];
      double v = sum * sum - 4.0 * x[0] * x[1] * (1.0 - alpha2);
      return std::sqrt(std::max(v, 0.0));
    };
  } else {
    // single control x: H = (1-x) Pa + x Pb
    fam.generators = {pb - pa};
    fam.x_start = Vec::Zero(1);
    fam.x_end = Vec::Ones(1);
    fam.gap = [alpha2](const Vec& x) {
      double u = x[0];
      return std::sqrt(std::max((1.0 - 2.0 * u) * (1.0 - 2.0 * u) +
                                    4.0 * u * (1.0 - u) * alpha2,
                                0.0));
    };
  }
  return fam;
}

namespace {

struct Metric {
  const ControlFamily* fam;
  double p;
  Mat trace;  // Tr(dHi dHj), constant for linear families

  Mat g(const Vec& x) const { return trace / std::pow(fam->gap(x), p); }

  Vec grad_gap(const Vec& x) const {
    const double h = 1e-7;
    Vec grad(x.size());
    for (Index i = 0; i < x.size(); ++i) {
      Vec xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      grad[i] = (fam->gap(xp) - fam->gap(xm)) / (2 * h);
    }
    return grad;
  }

  // geodesic acceleration: x'' = -Gamma(x) x' x'
  // For g = T / Delta^p: Gamma^k_ij = -(p/2Delta)(d_i Delta delta^k_j +
  //   d_j Delta delta^k_i - (T^{-1} T)_ij ... ) reduces to
  //   Gamma^k_ij v^i v^j = -(p/Delta) (v . dDelta) v^k
  //                        + (p/2Delta) (v^T T v) (T^{-1} dDelta)^k
  Vec acceleration(const Vec& x, const Vec& v) const {
    double delta = fam->gap(x);
    if (!(delta > 1e-12)) throw Error("singular metric: gap vanished along the geodesic");
    Vec dd = grad_gap(x);
    double vd = v.dot(dd);
    double vtv = v.dot(trace * v);
    Vec tinv_dd = trace.ldlt().solve(dd);
    Vec gamma = -(p / delta) * vd * v + (p / (2.0 * delta)) * vtv * tinv_dd;
    return -gamma;
  }
};

struct ShootResult {
  Mat traj;   // (grid+1) x m
  Mat vel;    // (grid+1) x m
};

ShootResult integrate_geodesic(const Metric& metric, const Vec& x0, const Vec& v0, int grid) {
  int m = int(x0.size());
  ShootResult r;
  r.traj = Mat::Zero(grid + 1, m);
  r.vel = Mat::Zero(grid + 1, m);
  Vec x = x0, v = v0;
  double h = 1.0 / grid;
  r.traj.row(0) = x.transpose();
  r.vel.row(0) = v.transpose();
  for (int i = 0; i < grid; ++i) {
    auto f = [&](const Vec& xx, const Vec& vv, Vec& dx, Vec& dv) {
      dx = vv;
      dv = metric.acceleration(xx, vv);
    };
    Vec k1x(m), k1v(m), k2x(m), k2v(m), k3x(m), k3v(m), k4x(m), k4v(m);
    f(x, v, k1x, k1v);
    f(x + 0.5 * h * k1x, v + 0.5 * h * k1v, k2x, k2v);
    f(x + 0.5 * h * k2x, v + 0.5 * h * k2v, k3x, k3v);
    f(x + h * k3x, v + h * k3v, k4x, k4v);
    x += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    r.traj.row(i + 1) = x.transpose();
    r.vel.row(i + 1) = v.transpose();
  }
  return r;
}

double el_residual(const Metric& metric, const Mat& traj, int grid) {
  // normalized sup-norm of x'' + Gamma x'x' using 5-point stencils
  double h = 1.0 / grid;
  double worst = 0.0;
  for (int i = 2; i + 2 <= grid; i += std::max(1, grid / 400)) {
    Vec x = traj.row(i).transpose();
    Vec v = (traj.row(i - 2) - 8.0 * traj.row(i - 1) + 8.0 * traj.row(i + 1) -
             traj.row(i + 2)).transpose() / (12.0 * h);
    Vec acc_fd = (-traj.row(i - 2) + 16.0 * traj.row(i - 1) - 30.0 * traj.row(i) +
                  16.0 * traj.row(i + 1) - traj.row(i + 2)).transpose() / (12.0 * h * h);
    Vec acc_geo = metric.acceleration(x, v);
    double scale = 1.0 + acc_geo.norm();
    worst = std::max(worst, (acc_fd - acc_geo).norm() / scale);
  }
  return worst;
}

}  // namespace

QabResult qab(const ControlFamily& family, const QabOptions& options) {
  int m = int(family.generators.size());
  if (m < 1 || m > 2) throw Error("qab supports 1 or 2 controls");
  Metric metric;
  metric.fam = &family;
  metric.p = options.p;
  metric.trace = Mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      metric.trace(i, j) = (family.generators[i].adjoint() * family.generators[j]).trace().real();

  QabResult result;
  result.s_grid = Vec::LinSpaced(options.grid + 1, 0.0, 1.0);

  if (m == 1) {
    // one-dimensional geodesics are arc-length reparametrizations:
    // s(x) proportional to int sqrt(g11(x)) dx
    double t11 = metric.trace(0, 0);
    double p = options.p;
    auto gapfn = family.gap;
    double x0 = family.x_start[0], x1 = family.x_end[0];
    auto rho = [gapfn, t11, p, x0, x1](double u) {
      Vec x(1);
      x[0] = x0 + (x1 - x0) * u;
      return std::sqrt(t11 / std::pow(gapfn(x), p));
    };
    auto table = std::make_shared<QuadratureSchedule>(rho, 4096);
    auto A = [table, x0, x1](double s) {
      double u = table->invert(s);
      return x0 + (x1 - x0) * u;  // x0=0, x1=1 for interpolations
    };
    double total = table->total();
    auto dA = [table, rho, total, x0, x1](double s) {
      double u = table->invert(s);
      return (x1 - x0) * total / rho(u);
    };
    result.schedule = {A, dA, "qab(p=" + std::to_string(options.p) + ")"};
    result.is_schedule = true;
    result.trajectory = Mat(options.grid + 1, 1);
    for (int i = 0; i <= options.grid; ++i) result.trajectory(i, 0) = A(result.s_grid[i]);
    Mat traj = result.trajectory;
    result.residual = el_residual(metric, traj, options.grid);
    return result;
  }

  // two controls: shooting with damped Newton on the final position
  Vec v0 = family.x_end - family.x_start;
  ShootResult shot;
  double err = 1e100;
  for (int iter = 0; iter < options.max_newton; ++iter) {
    shot = integrate_geodesic(metric, family.x_start, v0, options.grid);
    Vec end_err = shot.traj.row(options.grid).transpose() - family.x_end;
    err = end_err.norm();
    if (err < 1e-10) break;
    // finite-difference Jacobian d(end)/d(v0)
    Mat jac(m, m);
    double h = 1e-6 * std::max(1.0, v0.norm());
    for (int j = 0; j < m; ++j) {
      Vec vp = v0;
      vp[j] += h;
      ShootResult sp = integrate_geodesic(metric, family.x_start, vp, options.grid);
      jac.col(j) = (sp.traj.row(options.grid).transpose() - family.x_end - end_err) / h;
    }
    Vec step = jac.colPivHouseholderQr().solve(end_err);
    double damping = 1.0;
    for (int ls = 0; ls < 30; ++ls) {
      Vec trial = v0 - damping * step;
      ShootResult st = integrate_geodesic(metric, family.x_start, trial, options.grid);
      double e = (st.traj.row(options.grid).transpose() - family.x_end).norm();
      if (e < err) {
        v0 = trial;
        break;
      }
      damping *= 0.5;
      if (ls == 29) throw ConvergenceError("qab shooting stalled, |end error|=" +
                                           std::to_string(err));
    }
  }
  if (err > 1e-8) throw ConvergenceError("qab boundary-value problem did not converge");
  result.trajectory = shot.traj;
  result.residual = el_residual(metric, shot.traj, options.grid);
  if (result.residual > options.residual_tol)
    throw ConvergenceError("qab geodesic residual " + std::to_string(result.residual) +
                           " above tolerance");
  return result;
}

std::string schedule_csv(const Schedule& s, int grid) {
  CsvWriter csv({"s", "A", "Aprime"});
  for (int i = 0; i < grid; ++i) {
    double x = double(i) / double(grid - 1);
    csv.row_numeric({x, s.A(x), s.dA(x)});
  }
  return csv.payload();
}

}  // namespace aqc

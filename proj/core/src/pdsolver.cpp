// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fhstep/pdsolver.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include <Eigen/Dense>

namespace fhstep {

namespace {

// deterministic Box-Muller over mt19937_64 uniforms; std::normal_distribution
// is implementation-defined and would break cross-toolchain reproducibility
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next(double mean, double stddev) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + stddev * spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return mean + stddev * r * std::cos(theta);
  }

 private:
  double uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;  // [0, 1)
  }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

double vec_norm(const Vector& x, const Vector& y) {
  return std::sqrt(x.squaredNorm() + y.squaredNorm());
}

}  // namespace

IterateState gaussian_init(Index n, Index m, std::uint64_t seed) {
  GaussianSource g(seed);
  IterateState z;
  z.x.resize(n);
  z.y.resize(m);
  for (Index i = 0; i < n; ++i) z.x[i] = g.next(5.0, 1.0);
  for (Index i = 0; i < m; ++i) z.y[i] = g.next(5.0, 1.0);
  z.t = 0;
  return z;
}

StepResult step(const StandardLp& lp, const IterateState& state, double eta, double beta,
                bool project) {
  const Index n = lp.cols();
  const Index m = lp.rows();
  if (state.x.size() != n || state.y.size() != m)
    throw std::invalid_argument("step: iterate dimension mismatch");
  if (!(eta > 0.0)) throw std::invalid_argument("step: eta must be positive");

  // r = Ax - b; gradient g = c + A'(y + beta r); both matvecs reuse the CSR structure
  Vector r = lp.a.multiply(state.x);
  r -= lp.b;
  Vector w = state.y + beta * r;
  Vector g = lp.a.multiply_transpose(w);
  g += lp.c;

  StepResult out;
  out.state.x = state.x - eta * g;
  Index clipped = 0;
  if (project) {
    for (Index i = 0; i < n; ++i) {
      if (out.state.x[i] < 0.0) {
        out.state.x[i] = 0.0;
        ++clipped;
      }
    }
  }
  out.proj_ratio = n > 0 ? static_cast<double>(clipped) / static_cast<double>(n) : 0.0;
  out.state.y = state.y + eta * r;  // dual update from the pre-update x
  out.state.t = state.t + 1;

  if (!out.state.x.allFinite() || !out.state.y.allFinite())
    throw DivergenceError("step: non-finite iterate", out.state.t);
  return out;
}

KktResidue kkt_residue(const StandardLp& lp, const Vector& x, const Vector& y_alg) {
  const Vector y_lp = -y_alg;  // algorithm fixed point has A'y = -c
  Vector x_plus = x.cwiseMax(0.0);

  KktResidue res;
  Vector ax = lp.a.multiply(x_plus);
  res.primal = (ax - lp.b).norm() / (1.0 + lp.b.norm());

  Vector slack = lp.c - lp.a.multiply_transpose(y_lp);
  res.dual = slack.cwiseMin(0.0).norm() / (1.0 + lp.c.norm());

  const double cx = lp.c.dot(x_plus);
  const double by = lp.b.dot(y_lp);
  res.gap = std::abs(cx - by) / (1.0 + std::abs(cx) + std::abs(by));

  res.kkt = res.primal + res.dual + res.gap;
  return res;
}

namespace {

TraceRow make_row(Index iter, double eta, const KktResidue& res, double proj_ratio) {
  return {iter, eta, res.kkt, res.primal, res.dual, res.gap, proj_ratio};
}

void check_divergence(const IterateState& z, double z0_norm, Index iter) {
  if (vec_norm(z.x, z.y) > 1e12 * (1.0 + z0_norm))
    throw DivergenceError("solve: iterate norm exceeded divergence guard", iter);
}

}  // namespace

std::vector<TraceRow> solve(const StandardLp& lp, const SpectralBounds& bounds,
                            const SolveOptions& options) {
  if (options.schedule.etas.empty()) throw std::invalid_argument("solve: empty schedule");
  if (!(options.tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");

  IterateState z = options.init ? *options.init : gaussian_init(lp.cols(), lp.rows(), options.seed);
  z.t = 0;
  const double z0_norm = vec_norm(z.x, z.y);
  const Index T = static_cast<Index>(options.schedule.etas.size());
  const Index cap = options.cyclic ? options.max_iters : std::min(options.max_iters, T);

  std::vector<TraceRow> trace;
  trace.reserve(static_cast<std::size_t>(cap) + 1);
  KktResidue res = kkt_residue(lp, z.x, z.y);
  trace.push_back(make_row(0, 0.0, res, 0.0));

  for (Index iter = 1; iter <= cap && res.kkt > options.tol; ++iter) {
    const double eta = options.schedule.etas[static_cast<std::size_t>((iter - 1) % T)];
    StepResult sr = step(lp, z, eta, bounds.beta, options.projection);
    z = std::move(sr.state);
    check_divergence(z, z0_norm, iter);
    res = kkt_residue(lp, z.x, z.y);
    trace.push_back(make_row(iter, eta, res, options.record_proj_ratio ? sr.proj_ratio : 0.0));
  }
  return trace;
}

EqualityTrace solve_equality(const StandardLp& lp, const SpectralBounds& bounds,
                             const SolveOptions& options) {
  if (options.schedule.etas.empty()) throw std::invalid_argument("solve_equality: empty schedule");
  const Index n = lp.cols();
  const Index m = lp.rows();

  const Eigen::MatrixXd ad = lp.a.to_dense();
  // boundedness: c in range(A'), b in range(A), checked by least squares
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_at(ad.transpose());
  const Vector y_for_c = qr_at.solve(-lp.c);
  if ((ad.transpose() * y_for_c + lp.c).norm() > 1e-8 * (1.0 + lp.c.norm()))
    throw std::invalid_argument("solve_equality: c not in range(A'), problem unbounded");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_a(ad);
  const Vector x_for_b = qr_a.solve(lp.b);
  if ((ad * x_for_b - lp.b).norm() > 1e-8 * (1.0 + lp.b.norm()))
    throw std::invalid_argument("solve_equality: b not in range(A), problem infeasible");

  IterateState z = options.init ? *options.init : gaussian_init(n, m, options.seed);
  z.t = 0;

  // z* = projection of z0 onto the solution set {Ax = b} x {A'y = -c}:
  // x* = x0 + A'(AA')^{-1}(b - A x0), y* unique since A has full row rank
  const Eigen::MatrixXd aat = ad * ad.transpose();
  Eigen::LDLT<Eigen::MatrixXd> aat_fact(aat);
  EqualityTrace out;
  out.x_star = z.x + ad.transpose() * aat_fact.solve(lp.b - ad * z.x);
  out.y_star = -aat_fact.solve(ad * lp.c);

  const double z0_norm = vec_norm(z.x, z.y);
  const Index T = static_cast<Index>(options.schedule.etas.size());
  const Index cap = options.cyclic ? options.max_iters : std::min(options.max_iters, T);

  auto dist = [&](const IterateState& s) {
    return std::sqrt((s.x - out.x_star).squaredNorm() + (s.y - out.y_star).squaredNorm());
  };

  out.rows.push_back({0, 0.0, dist(z)});
  for (Index iter = 1; iter <= cap; ++iter) {
    const double eta = options.schedule.etas[static_cast<std::size_t>((iter - 1) % T)];
    StepResult sr = step(lp, z, eta, bounds.beta, /*project=*/false);
    z = std::move(sr.state);
    check_divergence(z, z0_norm, iter);
    out.rows.push_back({iter, eta, dist(z)});
    if (out.rows.back().dist <= options.tol) break;
  }
  return out;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
  out << "iter,eta,kkt,primal_res,dual_res,gap_res,proj_ratio\n";
  out.precision(17);
  for (const TraceRow& row : trace) {
    out << row.iter << ',' << row.eta << ',' << row.kkt << ',' << row.primal_res << ','
        << row.dual_res << ',' << row.gap_res << ',' << row.proj_ratio << '\n';
  }
}

}  // namespace fhstep

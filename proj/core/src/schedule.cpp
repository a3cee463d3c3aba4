// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fhstep/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fhstep/log.hpp"

namespace fhstep {

const char* schedule_kind_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::finite_horizon: return "finite_horizon";
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::constant_T: return "constant_T";
    case ScheduleKind::young: return "young";
  }
  return "?";
}

ScheduleKind schedule_kind_from_name(const std::string& name) {
  if (name == "finite_horizon") return ScheduleKind::finite_horizon;
  if (name == "constant") return ScheduleKind::constant;
  if (name == "constant_T") return ScheduleKind::constant_T;
  if (name == "young") return ScheduleKind::young;
  throw std::invalid_argument("unknown schedule kind '" + name + "'");
}

ComplexStepsizeError::ComplexStepsizeError(std::string message, std::vector<Complex> roots)
    : std::runtime_error(std::move(message)), roots_(std::move(roots)) {}

namespace {

void validate_spec(const DesignSpec& spec) {
  if (!(spec.mu > 0.0) || !(spec.L >= spec.mu)) throw std::invalid_argument("design: need 0 < mu <= L");
  if (spec.beta < 2.0 / spec.mu) throw std::invalid_argument("design: beta below realness threshold 2/mu");
  if (spec.T < 1) throw std::invalid_argument("design: T must be >= 1");
  if (spec.n_sample < 1) throw std::invalid_argument("design: n_sample must be >= 1");
}

// evenly spaced samples over [mu, L], both endpoints included, exact duplicates removed
std::vector<double> sigma_samples(double mu, double L, Index n_sample) {
  std::vector<double> sigmas;
  if (n_sample == 1 || mu == L) {
    sigmas.push_back(mu);
    if (mu != L) sigmas.push_back(L);
    return sigmas;
  }
  sigmas.reserve(static_cast<std::size_t>(n_sample));
  for (Index i = 0; i < n_sample; ++i) {
    double s = mu + (L - mu) * static_cast<double>(i) / static_cast<double>(n_sample - 1);
    if (i == n_sample - 1) s = L;
    if (sigmas.empty() || s != sigmas.back()) sigmas.push_back(s);
  }
  return sigmas;
}

}  // namespace

BlockLmi build_design_sdp(const DesignSpec& spec, double* rescale_factor) {
  validate_spec(spec);
  const double scale = spec.rescale ? lambda_plus(spec.L, spec.beta) : 1.0;
  if (rescale_factor != nullptr) *rescale_factor = scale;

  const auto sigmas = sigma_samples(spec.mu, spec.L, spec.n_sample);
  const Index T = spec.T;

  BlockLmi lmi;
  lmi.num_vars = T + 1;  // (a_1 .. a_T, s)
  lmi.objective = Vector::Zero(T + 1);
  lmi.objective[T] = 1.0;

  DenseMatrix c0 = DenseMatrix::Zero(4, 4);
  c0.topRightCorner(2, 2) = DenseMatrix::Identity(2, 2);
  c0.bottomLeftCorner(2, 2) = DenseMatrix::Identity(2, 2);

  for (double sigma : sigmas) {
    BlockLmi::Block blk;
    blk.g0 = c0;
    blk.g.resize(static_cast<std::size_t>(T + 1));
    DenseMatrix bpow = build_B(sigma, spec.beta) / scale;
    DenseMatrix cur = DenseMatrix::Identity(2, 2);
    for (Index t = 1; t <= T; ++t) {
      cur = DenseMatrix(cur * bpow);
      DenseMatrix g = DenseMatrix::Zero(4, 4);
      g.topRightCorner(2, 2) = cur.transpose();
      g.bottomLeftCorner(2, 2) = cur;
      blk.g[static_cast<std::size_t>(t - 1)] = std::move(g);
    }
    blk.g[static_cast<std::size_t>(T)] = DenseMatrix::Identity(4, 4);
    lmi.blocks.push_back(std::move(blk));
  }
  return lmi;
}

StepsizeSchedule design_finite_horizon(const DesignSpec& spec) {
  validate_spec(spec);
  double scale = 1.0;
  const BlockLmi lmi = build_design_sdp(spec, &scale);
  const SdpSolution sol = solve_block_sdp(lmi, spec.tol_feas, spec.tol_opt, spec.sdp_max_iter);
  if (!sol.converged)
    FHSTEP_LOG_WARN("design_finite_horizon: SDP unconverged after %lld Newton iterations "
                    "(worst block min eig %.3e); returning best-effort schedule",
                    static_cast<long long>(sol.iterations), sol.worst_block_min_eig);

  const Index T = spec.T;
  // coefficients of 1 + a_1 x + ... + a_T x^T in original (unscaled) coordinates
  std::vector<double> a(static_cast<std::size_t>(T));
  std::vector<double> a_hat(static_cast<std::size_t>(T + 1));
  a_hat[0] = 1.0;
  double pow_scale = 1.0;
  for (Index t = 1; t <= T; ++t) {
    pow_scale *= scale;
    a_hat[static_cast<std::size_t>(t)] = sol.x[t - 1];
    a[static_cast<std::size_t>(t - 1)] = sol.x[t - 1] / pow_scale;
  }

  // degree deficiency: a vanishing leading coefficient means the optimum uses a
  // lower effective budget; re-solve there instead of inverting a spurious root
  double max_abs = 0.0;
  for (double v : a) max_abs = std::max(max_abs, std::abs(v));
  if (T > 1 && std::abs(a.back()) < 1e-10 * max_abs) {
    FHSTEP_LOG_WARN("design_finite_horizon: leading coefficient a_%lld ~ 0, re-solving at T=%lld",
                    static_cast<long long>(T), static_cast<long long>(T - 1));
    DesignSpec reduced = spec;
    reduced.T = T - 1;
    StepsizeSchedule sched = design_finite_horizon(reduced);
    sched.sdp_converged = sched.sdp_converged && sol.converged;
    return sched;
  }

  // roots in rescaled coordinates are better conditioned; map back by the scale
  std::vector<Complex> roots = poly_roots(a_hat);
  for (Complex& r : roots) r *= scale;

  std::vector<double> etas;
  etas.reserve(roots.size());
  for (const Complex& r : roots) {
    if (std::abs(r.imag()) > 1e-8 * std::abs(r))
      throw ComplexStepsizeError("design_finite_horizon: complex stepsize (root too far from real axis)",
                                 roots);
    const double eta = 1.0 / r.real();
    if (!(eta > 0.0) || !std::isfinite(eta))
      throw ComplexStepsizeError("design_finite_horizon: non-positive stepsize from root", roots);
    etas.push_back(eta);
  }
  std::sort(etas.begin(), etas.end());

  StepsizeSchedule sched;
  sched.kind = ScheduleKind::finite_horizon;
  sched.T = static_cast<Index>(etas.size());
  sched.etas = std::move(etas);
  sched.a = std::move(a);
  sched.s = sol.objective_value;
  sched.mu = spec.mu;
  sched.L = spec.L;
  sched.beta = spec.beta;
  sched.n_sample = spec.n_sample;
  sched.sdp_converged = sol.converged;
  return sched;
}

StepsizeSchedule constant_optimal(const SpectralBounds& bounds) {
  const double eta = 2.0 / (bounds.lambda_max + bounds.lambda_min_nz);
  StepsizeSchedule sched;
  sched.kind = ScheduleKind::constant;
  sched.T = 1;
  sched.etas = {eta};
  sched.a = {-eta};
  sched.mu = bounds.mu;
  sched.L = bounds.L;
  sched.beta = bounds.beta;
  return sched;
}

namespace {

// golden-section descent on [lo, hi]; returns the interior minimizer
double golden_section(double lo, double hi, double rel_tol, const auto& f) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > rel_tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace

StepsizeSchedule constant_T_optimal(const SpectralBounds& bounds, Index T, Index n_sample) {
  if (T < 1) throw std::invalid_argument("constant_T_optimal: T must be >= 1");
  const auto sigmas = sigma_samples(bounds.mu, bounds.L, n_sample);

  const auto objective = [&](double eta) {
    double worst = 0.0;
    for (double sigma : sigmas) {
      DenseMatrix f = DenseMatrix::Identity(2, 2) - eta * build_B(sigma, bounds.beta);
      DenseMatrix p = DenseMatrix::Identity(2, 2);
      for (Index t = 0; t < T; ++t) p = DenseMatrix(p * f);
      worst = std::max(worst, op_norm_2x2(p));
    }
    return worst;
  };

  // multi-start: coarse grid over (0, 2/lambda_2m], golden section around each
  // local basin, pitch refined to 1e-6 relative
  const double hi = 2.0 / bounds.lambda_min_nz;
  const Index grid = 1000;
  std::vector<double> vals(static_cast<std::size_t>(grid));
  double best_eta = hi / grid;
  double best_val = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < grid; ++i) {
    const double eta = hi * static_cast<double>(i + 1) / static_cast<double>(grid);
    vals[static_cast<std::size_t>(i)] = objective(eta);
    if (vals[static_cast<std::size_t>(i)] < best_val) {
      best_val = vals[static_cast<std::size_t>(i)];
      best_eta = eta;
    }
  }
  const double pitch = hi / grid;
  for (Index i = 0; i < grid; ++i) {
    const bool local_min =
        (i == 0 || vals[static_cast<std::size_t>(i)] <= vals[static_cast<std::size_t>(i - 1)]) &&
        (i == grid - 1 || vals[static_cast<std::size_t>(i)] <= vals[static_cast<std::size_t>(i + 1)]);
    if (!local_min) continue;
    const double center = hi * static_cast<double>(i + 1) / static_cast<double>(grid);
    const double lo = std::max(pitch * 1e-3, center - pitch);
    const double eta = golden_section(lo, std::min(hi, center + pitch), 1e-9, objective);
    const double val = objective(eta);
    if (val < best_val) {
      best_val = val;
      best_eta = eta;
    }
  }

  StepsizeSchedule sched;
  sched.kind = ScheduleKind::constant_T;
  sched.T = T;
  sched.etas.assign(static_cast<std::size_t>(T), best_eta);
  sched.a = expand_factored_poly(sched.etas);
  sched.a.erase(sched.a.begin());  // drop the leading 1
  sched.mu = bounds.mu;
  sched.L = bounds.L;
  sched.beta = bounds.beta;
  sched.n_sample = static_cast<Index>(sigmas.size());
  return sched;
}

StepsizeSchedule young_schedule(double mu, double L, Index T) {
  if (!(mu > 0.0) || !(L >= mu)) throw std::invalid_argument("young_schedule: need 0 < mu <= L");
  if (T < 1) throw std::invalid_argument("young_schedule: T must be >= 1");
  StepsizeSchedule sched;
  sched.kind = ScheduleKind::young;
  sched.T = T;
  sched.etas.reserve(static_cast<std::size_t>(T));
  for (Index k = 1; k <= T; ++k) {
    const double angle = (static_cast<double>(k) - 0.5) * std::numbers::pi / static_cast<double>(T);
    sched.etas.push_back(2.0 / ((L + mu) + (L - mu) * std::cos(angle)));
  }
  std::sort(sched.etas.begin(), sched.etas.end());
  sched.a = expand_factored_poly(sched.etas);
  sched.a.erase(sched.a.begin());
  sched.mu = mu;
  sched.L = L;
  return sched;
}

double schedule_poly_value(const StepsizeSchedule& schedule, double lambda) {
  double v = 1.0;
  for (double eta : schedule.etas) v *= 1.0 - eta * lambda;
  return v;
}

}  // namespace fhstep

// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_SCHEDULE_HPP
#define FHSTEP_SCHEDULE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhstep/linalg.hpp"
#include "fhstep/sdp.hpp"
#include "fhstep/spectrum.hpp"

namespace fhstep {

enum class ScheduleKind { finite_horizon, constant, constant_T, young };

const char* schedule_kind_name(ScheduleKind kind);
ScheduleKind schedule_kind_from_name(const std::string& name);

// Stepsizes in ascending order (largest step lands at the end of the budget),
// plus the polynomial 1 + a_1 x + ... + a_T x^T they factor.
struct StepsizeSchedule {
  ScheduleKind kind = ScheduleKind::constant;
  Index T = 0;
  std::vector<double> etas;
  std::vector<double> a;
  std::optional<double> s;  // SDP objective; absent for non-SDP schedules
  double mu = 0.0;
  double L = 0.0;
  double beta = std::numeric_limits<double>::quiet_NaN();
  Index n_sample = 0;
  bool sdp_converged = true;
};

struct DesignSpec {
  double mu = 0.0;
  double L = 0.0;
  double beta = 0.0;
  Index T = 1;
  Index n_sample = 200;
  Index sdp_max_iter = 100;
  bool rescale = true;
  double tol_feas = 1e-6;
  double tol_opt = 1e-6;
};

// Raised when the designed polynomial has roots too far from the real axis
// to be used as stepsizes.
class ComplexStepsizeError : public std::runtime_error {
 public:
  ComplexStepsizeError(std::string message, std::vector<Complex> roots);
  const std::vector<Complex>& roots() const { return roots_; }

 private:
  std::vector<Complex> roots_;
};

// Finite Horizon stepsize rule: sample sigma evenly over [mu, L], solve the
// 4x4 block SDP for the optimal polynomial coefficients, recover stepsizes as
// inverse roots. The SDP is solved in rescaled coordinates (B/lambda_max) by
// default to keep high powers bounded.
StepsizeSchedule design_finite_horizon(const DesignSpec& spec);

// Build the SDP of the design, exposed for debugging dumps.
BlockLmi build_design_sdp(const DesignSpec& spec, double* rescale_factor = nullptr);

// Asymptotic optimal constant stepsize 2 / (lambda_1 + lambda_2m).
StepsizeSchedule constant_optimal(const SpectralBounds& bounds);

// Constant stepsize minimizing the T-step operator norm over sampled sigma,
// by multi-start golden-section search over (0, 2 / lambda_2m].
StepsizeSchedule constant_T_optimal(const SpectralBounds& bounds, Index T, Index n_sample = 200);

// Chebyshev-root stepsizes for gradient descent on quadratics (reference rule).
StepsizeSchedule young_schedule(double mu, double L, Index T);

// prod_t (1 - eta_t * lambda)
double schedule_poly_value(const StepsizeSchedule& schedule, double lambda);

}  // namespace fhstep

#endif  // FHSTEP_SCHEDULE_HPP

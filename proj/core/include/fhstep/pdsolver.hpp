// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_PDSOLVER_HPP
#define FHSTEP_PDSOLVER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fhstep/mps.hpp"
#include "fhstep/schedule.hpp"
#include "fhstep/spectrum.hpp"

namespace fhstep {

struct IterateState {
  Vector x;
  Vector y;
  Index t = 0;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::string message, Index iteration)
      : std::runtime_error(std::move(message)), iteration_(iteration) {}
  Index iteration() const { return iteration_; }

 private:
  Index iteration_;
};

struct StepResult {
  IterateState state;
  double proj_ratio = 0.0;  // fraction of x entries clipped to 0
};

// One primal-dual update. The dual step uses the pre-update x (Jacobi order):
//   x' = clamp+(x - eta (c + A'y + beta A'(Ax - b)))
//   y' = y + eta (Ax - b)
StepResult step(const StandardLp& lp, const IterateState& state, double eta, double beta,
                bool project = true);

struct KktResidue {
  double kkt = 0.0;
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
};

// Relative KKT residue in the LP-dual sign convention (y_lp = -y_alg):
//   ||Ax+ - b|| / (1 + ||b||)  +  ||(c - A'y_lp)-|| / (1 + ||c||)
//   + |c'x+ - b'y_lp| / (1 + |c'x+| + |b'y_lp|)
KktResidue kkt_residue(const StandardLp& lp, const Vector& x, const Vector& y_alg);

struct TraceRow {
  Index iter = 0;
  double eta = 0.0;
  double kkt = 0.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  double gap_res = 0.0;
  double proj_ratio = 0.0;
};

struct SolveOptions {
  StepsizeSchedule schedule;
  bool cyclic = true;
  Index max_iters = 1000;
  double tol = 1e-6;
  bool projection = true;
  bool record_proj_ratio = true;
  std::uint64_t seed = 0;
  // overrides the Gaussian N(5,1) initialization when set
  std::optional<IterateState> init;
};

// Runs the projected iteration with the schedule applied cyclically (ascending
// stored order), stopping at kkt <= tol or the iteration cap. The trace has
// one row per iteration plus the initial state.
std::vector<TraceRow> solve(const StandardLp& lp, const SpectralBounds& bounds,
                            const SolveOptions& options);

struct EqualityTraceRow {
  Index iter = 0;
  double eta = 0.0;
  double dist = 0.0;  // ||z_t - z*||
};

struct EqualityTrace {
  Vector x_star;
  Vector y_star;  // algorithm sign convention (A'y* = -c)
  std::vector<EqualityTraceRow> rows;
};

// Equality-constrained variant (no nonnegativity): clamp disabled, distance
// measured to z*, the projection of z0 onto the solution set (least squares).
// Requires c in range(A') and b in range(A).
EqualityTrace solve_equality(const StandardLp& lp, const SpectralBounds& bounds,
                             const SolveOptions& options);

// Seeded Gaussian N(5,1) start point (deterministic Box-Muller).
IterateState gaussian_init(Index n, Index m, std::uint64_t seed);

// CSV with header: iter,eta,kkt,primal_res,dual_res,gap_res,proj_ratio
void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

}  // namespace fhstep

#endif  // FHSTEP_PDSOLVER_HPP

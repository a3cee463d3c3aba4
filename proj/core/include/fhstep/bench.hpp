// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_BENCH_HPP
#define FHSTEP_BENCH_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "fhstep/mps.hpp"
#include "fhstep/pdsolver.hpp"

namespace fhstep {

struct BenchOptions {
  Index T = 10;
  double tol_easy = 1e-4;
  double tol_hard = 1e-1;
  Index iter_cap = 100000;
  Index n_sample = 200;
  Index sdp_max_iter = 100;
  std::uint64_t seed = 0;
};

// One instance of the paper's protocol: constant baseline at the easy
// tolerance first; when it hits the iteration cap, the finite-horizon run
// targets the baseline's final precision instead ("hard" path).
struct BenchRow {
  std::string instance;
  Index m = 0;
  Index n = 0;
  Index nnz = 0;
  double mu = 0.0;
  double L = 0.0;
  double kappa = 0.0;
  Index iters_constant = 0;
  Index iters_fh = 0;
  double final_kkt_constant = 0.0;
  double final_kkt_fh = 0.0;
  double time_spectral = 0.0;  // seconds
  double time_design = 0.0;
  double time_iterate = 0.0;
  double speedup = 0.0;  // constant iterations / finite-horizon iterations
  std::string path;      // "easy" or "hard"
  double mean_proj_ratio_constant = 0.0;  // over the first 100 iterations
  double mean_proj_ratio_fh = 0.0;
};

BenchRow bench_instance(const std::string& name, const StandardLp& lp, const BenchOptions& options);

double geometric_mean_speedup(std::span<const BenchRow> rows);

// RFC-4180 CSV, one row per instance plus a trailing aggregate row.
void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

}  // namespace fhstep

#endif  // FHSTEP_BENCH_HPP

// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_SDP_HPP
#define FHSTEP_SDP_HPP

#include <vector>

#include "fhstep/linalg.hpp"

namespace fhstep {

// minimize  objective' x
// s.t.      G_{j,0} + sum_k x_k G_{j,k}  is PSD for every block j
struct BlockLmi {
  struct Block {
    DenseMatrix g0;
    std::vector<DenseMatrix> g;  // one matrix per variable
  };
  Index num_vars = 0;
  Vector objective;
  std::vector<Block> blocks;
};

struct SdpSolution {
  Vector x;
  double objective_value = 0.0;
  double worst_block_min_eig = 0.0;
  Index iterations = 0;
  bool converged = false;
};

// Log-det barrier path-following interior point method. max_iter caps the
// total Newton step count; on exhaustion the best iterate is returned with
// converged = false. Requires a strictly feasible problem; the start point
// uses an identity-direction variable when one exists (G_{j,k} = I for all j).
SdpSolution solve_block_sdp(const BlockLmi& problem, double tol_feas = 1e-6,
                            double tol_opt = 1e-6, Index max_iter = 100);

}  // namespace fhstep

#endif  // FHSTEP_SDP_HPP

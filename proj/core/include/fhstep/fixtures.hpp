// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_FIXTURES_HPP
#define FHSTEP_FIXTURES_HPP

#include <cstdint>
#include <vector>

#include "fhstep/mps.hpp"

namespace fhstep {

// Synthetic LP with a prescribed singular spectrum: A = U diag(sigma) V' from
// seeded random orthogonal factors, b = A xbar with xbar > 0, c = A' ybar.
struct SyntheticSpec {
  Index m = 0;
  Index n = 0;
  std::vector<double> singular_values;
  std::uint64_t seed = 0;
};

struct SyntheticInstance {
  StandardLp lp;
  DenseMatrix u;       // m x m, left singular vectors
  DenseMatrix v;       // n x m, right singular vectors for the nonzero spectrum
  Vector sigmas;       // descending
  Vector x_feasible;   // the xbar used to build b
  Vector y_dual;       // the ybar used to build c
  bool repeated_spectrum = false;
};

SyntheticInstance make_synthetic(const SyntheticSpec& spec);

}  // namespace fhstep

#endif  // FHSTEP_FIXTURES_HPP

// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_ANALYSIS_HPP
#define FHSTEP_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "fhstep/linalg.hpp"
#include "fhstep/schedule.hpp"
#include "fhstep/spectrum.hpp"

namespace fhstep {

// Bernoulli model of the nonnegativity projection: each of the first n
// diagonal entries is zeroed independently with probability p_proj; the last
// m (dual) entries are never projected.
struct ProjectionModel {
  double p_proj = 0.0;
  Index n = 0;
  Index m = 0;
};

struct NormTableRow {
  Index t = 0;
  double eta = 0.0;
  double sampled_min = 0.0;     // family (i): random projections, over draws
  double sampled_median = 0.0;
  double sampled_max = 0.0;
  double expected_norm = 0.0;   // family (ii): expected projection matrix
  double unprojected_norm = 0.0;  // family (iii)
};

// Operator norms of the three error-matrix families for every prefix
// t = 1..T, restricted to the orthogonal complement of null(M).
std::vector<NormTableRow> error_matrix_norms(const DenseMatrix& m_matrix,
                                             const StepsizeSchedule& schedule,
                                             const ProjectionModel& model, Index num_samples,
                                             std::uint64_t seed);

struct GammaSpectrumReport {
  struct BlockPrediction {
    double sigma = 0.0;
    double delta_1 = 0.0;  // prod_t (1 - eta_t lambda_{i,1})
    double delta_2 = 0.0;
    double epsilon = 0.0;
    double lambda_1 = 0.0;  // predicted eigenvalues of B_i^2
    double lambda_2 = 0.0;
  };
  std::vector<BlockPrediction> blocks;
  std::vector<double> computed;  // eigenvalues of Gamma' Gamma, ascending
  double max_abs_deviation = 0.0;
  bool matching_performed = true;  // false when repeated singular values force a downgrade
  double tolerance = 0.0;
};

// Lemma-2 check: predicted block eigenvalues of Gamma' Gamma against the
// brute-force spectrum. Verification scale only.
GammaSpectrumReport verify_gamma_spectrum(const SparseMatrix& a, double beta,
                                          const StepsizeSchedule& schedule);

// sqrt(2 + 4 gamma) (1 - 2 / (sqrt(kappa) + 1))^T
double theorem1_bound(const SpectralBounds& bounds, Index T);

// C_T(sigma(lambda)) / C_T(sigma(0)) with the affine map sigma taking
// [lambda_min, lambda_max] onto [-1, 1]; recurrence inside, cosh form outside.
double chebyshev_ratio(double lambda_min, double lambda_max, Index T, double lambda);

// Chebyshev polynomial C_T(x) itself, stable for all real x.
double chebyshev_value(Index T, double x);

}  // namespace fhstep

#endif  // FHSTEP_ANALYSIS_HPP

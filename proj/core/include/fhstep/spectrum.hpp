// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_SPECTRUM_HPP
#define FHSTEP_SPECTRUM_HPP

#include <optional>
#include <utility>
#include <vector>

#include "fhstep/linalg.hpp"

namespace fhstep {

// Spectral quantities of the primal-dual update matrix M = [[bAA', A'],[-A, 0]].
// lambda_max and lambda_min_nz are the extreme nonzero eigenvalues; both come
// from the sigma = L block since the small branch lambda-(sigma) decreases in
// sigma. kappa = lambda_max / lambda_min_nz, gamma = 4 / (b^2 mu^2 - 4).
struct SpectralBounds {
  double mu = 0.0;
  double L = 0.0;
  double beta = 0.0;
  double lambda_max = 0.0;
  double lambda_min_nz = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
};

// beta defaults to 4/mu; an explicit beta below 2/mu is rejected.
SpectralBounds compute_bounds(const SparseMatrix& a, std::optional<double> beta = std::nullopt,
                              double rank_tol = 1e-10);
SpectralBounds bounds_from_extremes(double mu, double L, std::optional<double> beta = std::nullopt);

// eigenvalues of the 2x2 block B(sigma) = [[b s^2, s],[-s, 0]]
double lambda_plus(double sigma, double beta);
double lambda_minus(double sigma, double beta);

DenseMatrix build_B(double sigma, double beta);

struct MEigenPair {
  double sigma;
  double lambda;
  Vector vector;  // [v; -(1/lambda) A v], not normalized
};

// The 2m nonzero eigenpairs of M from the SVD of A. v_cols holds the right
// singular vectors (n x m), u_cols the left (m x m), column i for sigma_i.
std::vector<MEigenPair> m_eigenpairs(std::span<const double> sigmas, double beta,
                                     const DenseMatrix& v_cols, const DenseMatrix& u_cols);

// Dense assembly of M, verification scale only (n + m <= 4000).
DenseMatrix assemble_M(const SparseMatrix& a, double beta);

// Orthonormal Q and block-diagonal Lambda with M = Q Lambda Q'; verification helper.
std::pair<DenseMatrix, DenseMatrix> block_diagonalization(const SparseMatrix& a, double beta);

}  // namespace fhstep

#endif  // FHSTEP_SPECTRUM_HPP

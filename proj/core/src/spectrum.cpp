// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fhstep/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "fhstep/log.hpp"

namespace fhstep {

double lambda_plus(double sigma, double beta) {
  const double s2 = sigma * sigma;
  const double disc = beta * beta * s2 * s2 - 4.0 * s2;
  if (disc < 0.0) throw std::domain_error("lambda_plus: beta below realness threshold 2/sigma");
  return (beta * s2 + std::sqrt(disc)) / 2.0;
}

double lambda_minus(double sigma, double beta) {
  // computed as sigma^2 / lambda_plus to avoid cancellation
  return sigma * sigma / lambda_plus(sigma, beta);
}

SpectralBounds bounds_from_extremes(double mu, double L, std::optional<double> beta_opt) {
  if (!(mu > 0.0) || !(L >= mu) || !std::isfinite(L))
    throw std::invalid_argument("bounds_from_extremes: need 0 < mu <= L");
  const double beta = beta_opt.value_or(4.0 / mu);
  if (beta < 2.0 / mu)
    throw std::invalid_argument("bounds_from_extremes: beta below realness threshold 2/mu");

  SpectralBounds b;
  b.mu = mu;
  b.L = L;
  b.beta = beta;
  b.lambda_max = lambda_plus(L, beta);
  b.lambda_min_nz = lambda_minus(L, beta);
  b.kappa = b.lambda_max / b.lambda_min_nz;
  const double denom = beta * beta * mu * mu - 4.0;
  b.gamma = denom > 0.0 ? 4.0 / denom : std::numeric_limits<double>::infinity();
  return b;
}

SpectralBounds compute_bounds(const SparseMatrix& a, std::optional<double> beta, double rank_tol) {
  const SvdExtremes sv = svd_extremes(a, rank_tol);
  if (sv.numeric_rank < std::min(a.rows(), a.cols()))
    FHSTEP_LOG_WARN("compute_bounds: rank-deficient A (numeric rank %lld of %lld); "
                    "mu taken as smallest singular value above threshold",
                    static_cast<long long>(sv.numeric_rank),
                    static_cast<long long>(std::min(a.rows(), a.cols())));
  return bounds_from_extremes(sv.sigma_min_nz, sv.sigma_max, beta);
}

DenseMatrix build_B(double sigma, double beta) {
  if (!(sigma > 0.0)) throw std::invalid_argument("build_B: sigma must be positive");
  DenseMatrix b(2, 2);
  b << beta * sigma * sigma, sigma, -sigma, 0.0;
  return b;
}

std::vector<MEigenPair> m_eigenpairs(std::span<const double> sigmas, double beta,
                                     const DenseMatrix& v_cols, const DenseMatrix& u_cols) {
  const Index m = static_cast<Index>(sigmas.size());
  if (v_cols.cols() != m || u_cols.cols() != m)
    throw std::invalid_argument("m_eigenpairs: factor column count mismatch");
  double sigma_min = std::numeric_limits<double>::infinity();
  for (double s : sigmas) sigma_min = std::min(sigma_min, s);
  if (beta < 2.0 / sigma_min)
    throw std::domain_error("m_eigenpairs: beta below 2/min(sigma), eigenvalues complex");

  const Index n = v_cols.rows();
  std::vector<MEigenPair> out;
  out.reserve(static_cast<std::size_t>(2 * m));
  for (Index i = 0; i < m; ++i) {
    const double sigma = sigmas[static_cast<std::size_t>(i)];
    for (double lambda : {lambda_plus(sigma, beta), lambda_minus(sigma, beta)}) {
      Vector x(n + u_cols.rows());
      x.head(n) = v_cols.col(i);
      x.tail(u_cols.rows()) = -(sigma / lambda) * u_cols.col(i);  // A v = sigma u
      out.push_back({sigma, lambda, std::move(x)});
    }
  }
  return out;
}

DenseMatrix assemble_M(const SparseMatrix& a, double beta) {
  const Index n = a.cols();
  const Index m = a.rows();
  if (n + m > 4000) throw std::invalid_argument("assemble_M: size guard exceeded (n + m > 4000)");

  const DenseMatrix ad = a.to_dense();
  DenseMatrix out = DenseMatrix::Zero(n + m, n + m);
  out.topLeftCorner(n, n) = beta * ad.transpose() * ad;
  out.topRightCorner(n, m) = ad.transpose();
  out.bottomLeftCorner(m, n) = -ad;
  return out;
}

std::pair<DenseMatrix, DenseMatrix> block_diagonalization(const SparseMatrix& a, double beta) {
  const Index n = a.cols();
  const Index m = a.rows();
  if (n + m > 4000) throw std::invalid_argument("block_diagonalization: size guard exceeded");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.to_dense(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();

  DenseMatrix q = DenseMatrix::Zero(n + m, n + m);
  DenseMatrix lam = DenseMatrix::Zero(n + m, n + m);
  for (Index i = 0; i < m; ++i) {
    q.block(0, 2 * i, n, 1) = svd.matrixV().col(i);
    q.block(n, 2 * i + 1, m, 1) = svd.matrixU().col(i);
    lam.block(2 * i, 2 * i, 2, 2) = build_B(sv(i), beta);
  }
  // remaining right singular vectors span null(A); they complete Q
  for (Index i = m; i < n; ++i) q.block(0, m + i, n, 1) = svd.matrixV().col(i);
  return {q, lam};
}

}  // namespace fhstep

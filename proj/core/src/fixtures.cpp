// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fhstep/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/QR>

namespace fhstep {

namespace {

// seeded Gaussian matrix via Box-Muller (see pdsolver for the rationale)
Eigen::MatrixXd gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  Eigen::MatrixXd g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      double u1 = 0.0;
      do {
        u1 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      } while (u1 <= 0.0);
      const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      g(i, j) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
  }
  return g;
}

// orthogonal factor from QR of a Gaussian matrix, sign-fixed for determinism
Eigen::MatrixXd random_orthogonal(Index dim, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian_matrix(dim, dim, rng));
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

}  // namespace

SyntheticInstance make_synthetic(const SyntheticSpec& spec) {
  if (spec.m < 1 || spec.n < spec.m)
    throw std::invalid_argument("make_synthetic: need 1 <= m <= n");
  if (static_cast<Index>(spec.singular_values.size()) != spec.m)
    throw std::invalid_argument("make_synthetic: need exactly m singular values");
  for (double s : spec.singular_values)
    if (!(s > 0.0)) throw std::invalid_argument("make_synthetic: singular values must be positive");

  std::mt19937_64 rng(spec.seed);
  SyntheticInstance inst;

  std::vector<double> sig = spec.singular_values;
  std::sort(sig.begin(), sig.end(), std::greater<>());
  inst.sigmas = Eigen::Map<const Vector>(sig.data(), static_cast<Index>(sig.size()));
  for (std::size_t i = 0; i + 1 < sig.size(); ++i)
    if (sig[i] == sig[i + 1]) inst.repeated_spectrum = true;

  const Eigen::MatrixXd u_full = random_orthogonal(spec.m, rng);
  const Eigen::MatrixXd v_full = random_orthogonal(spec.n, rng);
  inst.u = u_full;
  inst.v = v_full.leftCols(spec.m);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(spec.m, spec.n);
  for (Index i = 0; i < spec.m; ++i)
    a += inst.sigmas[i] * Eigen::MatrixXd(u_full.col(i) * v_full.col(i).transpose());

  // feasible and bounded by construction: xbar > 0, c in the row space
  inst.x_feasible.resize(spec.n);
  for (Index i = 0; i < spec.n; ++i)
    inst.x_feasible[i] = 0.5 + 4.5 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  inst.y_dual.resize(spec.m);
  for (Index i = 0; i < spec.m; ++i)
    inst.y_dual[i] = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;

  inst.lp.a = SparseMatrix::from_dense(DenseMatrix(a));
  inst.lp.b = a * inst.x_feasible;
  inst.lp.c = a.transpose() * inst.y_dual;
  return inst;
}

}  // namespace fhstep

// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fhstep/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace fhstep {

namespace {

double restricted_op_norm(const Eigen::MatrixXd& g, const Eigen::MatrixXd& complement_basis) {
  if (complement_basis.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g * complement_basis);
  return svd.singularValues()(0);
}

}  // namespace

std::vector<NormTableRow> error_matrix_norms(const DenseMatrix& m_matrix,
                                             const StepsizeSchedule& schedule,
                                             const ProjectionModel& model, Index num_samples,
                                             std::uint64_t seed) {
  const Index dim = m_matrix.rows();
  if (m_matrix.cols() != dim) throw std::invalid_argument("error_matrix_norms: M must be square");
  if (dim > 4000) throw std::invalid_argument("error_matrix_norms: size guard exceeded (dim > 4000)");
  if (model.n + model.m != dim) throw std::invalid_argument("error_matrix_norms: model dims mismatch");
  if (model.p_proj < 0.0 || model.p_proj > 1.0)
    throw std::invalid_argument("error_matrix_norms: p_proj outside [0,1]");
  if (num_samples < 1) throw std::invalid_argument("error_matrix_norms: need num_samples >= 1");

  const Index T = static_cast<Index>(schedule.etas.size());
  const Eigen::MatrixXd m_eigen = m_matrix;

  // factors I - eta_t M and the expected projection P
  std::vector<Eigen::MatrixXd> factors;
  factors.reserve(static_cast<std::size_t>(T));
  for (double eta : schedule.etas)
    factors.push_back(Eigen::MatrixXd::Identity(dim, dim) - eta * m_eigen);

  Eigen::VectorXd p_diag = Eigen::VectorXd::Ones(dim);
  p_diag.head(model.n).setConstant(1.0 - model.p_proj);

  // norms restricted to range(M') (the z not in Z* convention)
  const Eigen::MatrixXd complement = row_space_basis(m_matrix);

  // family (ii) and (iii) prefixes
  std::vector<Eigen::MatrixXd> expected_prefix(static_cast<std::size_t>(T));
  std::vector<Eigen::MatrixXd> plain_prefix(static_cast<std::size_t>(T));
  Eigen::MatrixXd acc_expected = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd acc_plain = Eigen::MatrixXd::Identity(dim, dim);
  for (Index t = 0; t < T; ++t) {
    acc_expected = p_diag.asDiagonal() * (factors[static_cast<std::size_t>(t)] * acc_expected);
    acc_plain = factors[static_cast<std::size_t>(t)] * acc_plain;
    expected_prefix[static_cast<std::size_t>(t)] = acc_expected;
    plain_prefix[static_cast<std::size_t>(t)] = acc_plain;
  }

  // family (i): independent Bernoulli draws of the diagonal projections
  std::vector<std::vector<double>> sampled(static_cast<std::size_t>(T));
  std::mt19937_64 rng(seed);
  for (Index s = 0; s < num_samples; ++s) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(dim, dim);
    for (Index t = 0; t < T; ++t) {
      acc = factors[static_cast<std::size_t>(t)] * acc;
      for (Index i = 0; i < model.n; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < model.p_proj) acc.row(i).setZero();
      }
      sampled[static_cast<std::size_t>(t)].push_back(restricted_op_norm(acc, complement));
    }
  }

  std::vector<NormTableRow> table;
  table.reserve(static_cast<std::size_t>(T));
  for (Index t = 0; t < T; ++t) {
    auto& draws = sampled[static_cast<std::size_t>(t)];
    std::sort(draws.begin(), draws.end());
    NormTableRow row;
    row.t = t + 1;
    row.eta = schedule.etas[static_cast<std::size_t>(t)];
    row.sampled_min = draws.front();
    row.sampled_median = draws[draws.size() / 2];
    row.sampled_max = draws.back();
    row.expected_norm = restricted_op_norm(expected_prefix[static_cast<std::size_t>(t)], complement);
    row.unprojected_norm = restricted_op_norm(plain_prefix[static_cast<std::size_t>(t)], complement);
    table.push_back(row);
  }
  return table;
}

GammaSpectrumReport verify_gamma_spectrum(const SparseMatrix& a, double beta,
                                          const StepsizeSchedule& schedule) {
  const Index n = a.cols();
  const Index m = a.rows();
  if (n + m > 4000) throw std::invalid_argument("verify_gamma_spectrum: size guard exceeded");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.to_dense());
  const auto& sv = svd.singularValues();

  GammaSpectrumReport report;
  report.tolerance = 1e-8;

  bool distinct = true;
  for (Eigen::Index i = 0; i + 1 < sv.size(); ++i)
    if (std::abs(sv(i) - sv(i + 1)) <= 1e-10 * sv(0)) distinct = false;

  std::vector<double> predicted;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double sigma = sv(i);
    GammaSpectrumReport::BlockPrediction bp;
    bp.sigma = sigma;
    const double l1 = lambda_plus(sigma, beta);
    const double l2 = lambda_minus(sigma, beta);
    bp.delta_1 = 1.0;
    bp.delta_2 = 1.0;
    for (double eta : schedule.etas) {
      bp.delta_1 *= 1.0 - eta * l1;
      bp.delta_2 *= 1.0 - eta * l2;
    }
    const double diff = bp.delta_1 - bp.delta_2;
    bp.epsilon = 4.0 / (beta * beta * sigma * sigma - 4.0) * diff * diff;
    const double sum_sq = bp.delta_1 * bp.delta_1 + bp.delta_2 * bp.delta_2;
    const double diff_sq = bp.delta_1 * bp.delta_1 - bp.delta_2 * bp.delta_2;
    const double rad =
        std::sqrt(std::max(0.0, diff_sq * diff_sq + 2.0 * bp.epsilon * sum_sq + bp.epsilon * bp.epsilon));
    bp.lambda_1 = 0.5 * (sum_sq + bp.epsilon - rad);
    bp.lambda_2 = 0.5 * (sum_sq + bp.epsilon + rad);
    report.blocks.push_back(bp);
    predicted.push_back(bp.lambda_1);
    predicted.push_back(bp.lambda_2);
  }
  // the null-space part of Gamma' Gamma contributes eigenvalue 1 with multiplicity n - m
  for (Index i = 0; i < n - m; ++i) predicted.push_back(1.0);

  // brute-force spectrum of Gamma' Gamma
  Eigen::MatrixXd m_dense = assemble_M(a, beta);
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Identity(n + m, n + m);
  for (double eta : schedule.etas)
    gamma = (Eigen::MatrixXd::Identity(n + m, n + m) - eta * m_dense) * gamma;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma.transpose() * gamma, Eigen::EigenvaluesOnly);

  report.computed.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(predicted.begin(), predicted.end());

  if (!distinct) {
    report.matching_performed = false;  // formula evaluated, matching skipped
    return report;
  }

  double scale = 1.0;
  for (double v : report.computed) scale = std::max(scale, std::abs(v));
  double dev = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    dev = std::max(dev, std::abs(predicted[i] - report.computed[i]));
  report.max_abs_deviation = dev / scale;
  return report;
}

double theorem1_bound(const SpectralBounds& bounds, Index T) {
  const double rate = 1.0 - 2.0 / (std::sqrt(bounds.kappa) + 1.0);
  return std::sqrt(2.0 + 4.0 * bounds.gamma) * std::pow(rate, static_cast<double>(T));
}

double chebyshev_value(Index T, double x) {
  if (T < 0) throw std::invalid_argument("chebyshev_value: negative order");
  if (std::abs(x) <= 1.0) {
    // three-term recurrence is stable on [-1, 1]
    double prev = 1.0;
    double cur = x;
    if (T == 0) return prev;
    for (Index k = 2; k <= T; ++k) {
      const double next = 2.0 * x * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  const double sign = (x < 0.0 && T % 2 == 1) ? -1.0 : 1.0;
  return sign * std::cosh(static_cast<double>(T) * std::acosh(std::abs(x)));
}

double chebyshev_ratio(double lambda_min, double lambda_max, Index T, double lambda) {
  if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min))
    throw std::invalid_argument("chebyshev_ratio: need 0 < lambda_min <= lambda_max");
  if (lambda_min == lambda_max)
    throw std::invalid_argument("chebyshev_ratio: degenerate interval (lambda_min = lambda_max)");
  const double width = lambda_max - lambda_min;
  const double map = (lambda_max + lambda_min) / width - 2.0 * lambda / width;
  const double map0 = (lambda_max + lambda_min) / width;
  return chebyshev_value(T, map) / chebyshev_value(T, map0);
}

}  // namespace fhstep

// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fhstep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace fhstep {

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::span<const Triplet> entries) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMatrix: negative dimension");
  std::vector<Triplet> sorted(entries.begin(), entries.end());
  for (const Triplet& t : sorted) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("SparseMatrix: triplet index out of range");
    if (!std::isfinite(t.value)) throw std::invalid_argument("SparseMatrix: non-finite entry");
  }
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix out;
  out.rows_ = rows;
  out.cols_ = cols;
  out.row_offsets_.assign(static_cast<std::size_t>(rows) + 1, 0);
  out.col_indices_.reserve(sorted.size());
  out.values_.reserve(sorted.size());

  std::size_t i = 0;
  for (Index r = 0; r < rows; ++r) {
    while (i < sorted.size() && sorted[i].row == r) {
      Index c = sorted[i].col;
      double v = 0.0;
      while (i < sorted.size() && sorted[i].row == r && sorted[i].col == c) {
        v += sorted[i].value;
        ++i;
      }
      if (v != 0.0) {
        out.col_indices_.push_back(c);
        out.values_.push_back(v);
      }
    }
    out.row_offsets_[static_cast<std::size_t>(r) + 1] = static_cast<Index>(out.values_.size());
  }
  return out;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense, double drop_tol) {
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(dense.size()));
  for (Index r = 0; r < dense.rows(); ++r)
    for (Index c = 0; c < dense.cols(); ++c)
      if (std::abs(dense(r, c)) > drop_tol) trips.push_back({r, c, dense(r, c)});
  return from_triplets(dense.rows(), dense.cols(), trips);
}

void SparseMatrix::multiply(const Vector& x, Vector& y) const {
  if (x.size() != cols_) throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
  y.setZero(rows_);
  for (Index r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (Index k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      acc += values_[static_cast<std::size_t>(k)] * x[col_indices_[static_cast<std::size_t>(k)]];
    y[r] = acc;
  }
}

void SparseMatrix::multiply_transpose(const Vector& x, Vector& y) const {
  if (x.size() != rows_) throw std::invalid_argument("SparseMatrix::multiply_transpose: size mismatch");
  y.setZero(cols_);
  for (Index r = 0; r < rows_; ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    for (Index k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      y[col_indices_[static_cast<std::size_t>(k)]] += values_[static_cast<std::size_t>(k)] * xr;
  }
}

Vector SparseMatrix::multiply(const Vector& x) const {
  Vector y;
  multiply(x, y);
  return y;
}

Vector SparseMatrix::multiply_transpose(const Vector& x) const {
  Vector y;
  multiply_transpose(x, y);
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> trips;
  trips.reserve(values_.size());
  for (Index r = 0; r < rows_; ++r)
    for (Index k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      trips.push_back({col_indices_[static_cast<std::size_t>(k)], r, values_[static_cast<std::size_t>(k)]});
  return from_triplets(cols_, rows_, trips);
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix out = DenseMatrix::Zero(rows_, cols_);
  for (Index r = 0; r < rows_; ++r)
    for (Index k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      out(r, col_indices_[static_cast<std::size_t>(k)]) = values_[static_cast<std::size_t>(k)];
  return out;
}

bool SparseMatrix::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

// Dense Gram path: eigendecomposition of A'A or AA', whichever is smaller.
SvdExtremes svd_extremes_dense(const SparseMatrix& a, double rank_tol) {
  const bool use_left = a.rows() <= a.cols();  // AA' if m <= n
  const Index d = use_left ? a.rows() : a.cols();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);

  const auto offs = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  if (use_left) {
    // (AA')_{ij} = <row_i, row_j>; rows are sorted by column index
    for (Index i = 0; i < a.rows(); ++i) {
      for (Index j = i; j < a.rows(); ++j) {
        double acc = 0.0;
        Index ki = offs[i], kj = offs[j];
        while (ki < offs[i + 1] && kj < offs[j + 1]) {
          const Index ci = cols[static_cast<std::size_t>(ki)];
          const Index cj = cols[static_cast<std::size_t>(kj)];
          if (ci == cj) {
            acc += vals[static_cast<std::size_t>(ki)] * vals[static_cast<std::size_t>(kj)];
            ++ki; ++kj;
          } else if (ci < cj) {
            ++ki;
          } else {
            ++kj;
          }
        }
        gram(i, j) = acc;
        gram(j, i) = acc;
      }
    }
  } else {
    // (A'A) accumulated row by row
    for (Index r = 0; r < a.rows(); ++r) {
      for (Index k1 = offs[r]; k1 < offs[r + 1]; ++k1) {
        const Index c1 = cols[static_cast<std::size_t>(k1)];
        const double v1 = vals[static_cast<std::size_t>(k1)];
        for (Index k2 = k1; k2 < offs[r + 1]; ++k2) {
          const Index c2 = cols[static_cast<std::size_t>(k2)];
          const double v = v1 * vals[static_cast<std::size_t>(k2)];
          gram(c1, c2) += v;
          if (c1 != c2) gram(c2, c1) += v;
        }
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("svd_extremes: Gram eigendecomposition failed");

  std::vector<double> sigmas(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) sigmas[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  std::sort(sigmas.begin(), sigmas.end(), std::greater<>());

  SvdExtremes out;
  out.sigma_max = sigmas.front();
  const double thresh = rank_tol * out.sigma_max;
  for (double s : sigmas) {
    if (s > thresh) {
      ++out.numeric_rank;
      out.sigma_min_nz = s;
    }
  }
  return out;
}

// Golub-Kahan bidiagonalization with full reorthogonalization. Stops when both
// extreme Ritz values are stable to tol_rel, or at the iteration cap.
SvdExtremes svd_extremes_lanczos(const SparseMatrix& a, double rank_tol) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index max_steps = std::min<Index>(10 * std::min(m, n), std::min(m, n));
  const double tol_rel = 1e-10;

  std::vector<Vector> us, vs;
  std::vector<double> alphas, betas;  // bidiagonal entries

  Vector v = Vector::Ones(n).normalized();
  Vector u = a.multiply(v);
  double alpha = u.norm();
  if (alpha == 0.0) throw std::runtime_error("svd_extremes: breakdown on start vector");
  u /= alpha;
  us.push_back(u);
  vs.push_back(v);
  alphas.push_back(alpha);

  double prev_max = -1.0, prev_min = -1.0;
  int stable = 0;
  SvdExtremes out;
  for (Index step = 1; step <= max_steps; ++step) {
    Vector r = a.multiply_transpose(u) - alpha * v;
    for (const Vector& vi : vs) r -= vi.dot(r) * vi;
    for (const Vector& vi : vs) r -= vi.dot(r) * vi;  // second pass
    double beta = r.norm();

    const Index k = static_cast<Index>(alphas.size());
    Eigen::MatrixXd bd = Eigen::MatrixXd::Zero(k, k);
    for (Index i = 0; i < k; ++i) {
      bd(i, i) = alphas[static_cast<std::size_t>(i)];
      if (i + 1 < k) bd(i, i + 1) = betas[static_cast<std::size_t>(i)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(bd);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (prev_max >= 0.0 && std::abs(smax - prev_max) <= tol_rel * smax &&
        std::abs(smin - prev_min) <= tol_rel * std::max(smin, rank_tol * smax)) {
      if (++stable >= 3) {
        out.sigma_max = smax;
        const double thresh = rank_tol * smax;
        out.numeric_rank = 0;
        out.sigma_min_nz = smax;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
          if (sv(i) > thresh) {
            ++out.numeric_rank;
            out.sigma_min_nz = sv(i);
          }
        }
        return out;
      }
    } else {
      stable = 0;
    }
    prev_max = smax;
    prev_min = smin;

    if (beta <= 1e-14 * smax || step == max_steps || k == std::min(m, n)) {
      out.sigma_max = smax;
      const double thresh = rank_tol * smax;
      out.numeric_rank = 0;
      out.sigma_min_nz = smax;
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > thresh) {
          ++out.numeric_rank;
          out.sigma_min_nz = sv(i);
        }
      }
      return out;
    }

    v = r / beta;
    betas.push_back(beta);
    Vector s = a.multiply(v) - beta * u;
    for (const Vector& ui : us) s -= ui.dot(s) * ui;
    for (const Vector& ui : us) s -= ui.dot(s) * ui;
    alpha = s.norm();
    if (alpha <= 1e-14 * smax) {
      // invariant subspace found; Ritz values of the current bidiagonal are exact
      out.sigma_max = smax;
      const double thresh = rank_tol * smax;
      out.numeric_rank = 0;
      out.sigma_min_nz = smax;
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > thresh) {
          ++out.numeric_rank;
          out.sigma_min_nz = sv(i);
        }
      }
      return out;
    }
    u = s / alpha;
    us.push_back(u);
    vs.push_back(v);
    alphas.push_back(alpha);
  }
  return out;
}

}  // namespace

namespace detail {

SvdExtremes svd_extremes_impl(const SparseMatrix& a, double rank_tol, Index dense_cutoff) {
  if (rank_tol <= 0.0) throw std::invalid_argument("svd_extremes: rank_tol must be positive");
  if (!a.all_finite()) throw std::invalid_argument("svd_extremes: non-finite entries");
  if (a.nnz() == 0) throw std::invalid_argument("svd_extremes: zero matrix");
  if (std::max(a.rows(), a.cols()) <= dense_cutoff) return svd_extremes_dense(a, rank_tol);
  return svd_extremes_lanczos(a, rank_tol);
}

}  // namespace detail

SvdExtremes svd_extremes(const SparseMatrix& a, double rank_tol) {
  return detail::svd_extremes_impl(a, rank_tol, 5000);
}

std::vector<EigenPair> eig_general(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_general: matrix must be square");
  Eigen::EigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(m), true);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_general: QR iteration failed");
  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i)
    out.push_back({es.eigenvalues()[i], es.eigenvectors().col(i)});
  return out;
}

std::vector<Complex> poly_roots(std::span<const double> coeffs) {
  double max_abs = 0.0;
  for (double c : coeffs) max_abs = std::max(max_abs, std::abs(c));
  if (max_abs == 0.0) throw std::invalid_argument("poly_roots: constant polynomial");

  Index deg = static_cast<Index>(coeffs.size()) - 1;
  while (deg > 0 && std::abs(coeffs[static_cast<std::size_t>(deg)]) < 1e-12 * max_abs) --deg;
  if (deg == 0) throw std::invalid_argument("poly_roots: constant polynomial");

  const double lead = coeffs[static_cast<std::size_t>(deg)];
  if (deg == 1) return {Complex(-coeffs[0] / lead, 0.0)};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (Index i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;

  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("poly_roots: companion QR failed");
  std::vector<Complex> roots(static_cast<std::size_t>(deg));
  for (Index i = 0; i < deg; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
  return roots;
}

double op_norm_2x2(const DenseMatrix& b) {
  if (b.rows() != 2 || b.cols() != 2) throw std::invalid_argument("op_norm_2x2: matrix must be 2x2");
  // eigenvalues of B'B: (f +- sqrt(f^2 - 4 det^2)) / 2 with f = ||B||_F^2
  const double f = b.squaredNorm();
  const double det = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  const double disc = std::sqrt(std::max(0.0, f * f - 4.0 * det * det));
  return std::sqrt(std::max(0.0, (f + disc) / 2.0));
}

double op_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(m)};
  return svd.singularValues()(0);
}

DenseMatrix row_space_basis(const DenseMatrix& m, double tol_rel) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = sv.size() > 0 ? tol_rel * sv(0) : 0.0;
  Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rank;
  DenseMatrix basis(m.cols(), rank);
  basis = svd.matrixV().leftCols(rank);
  return basis;
}

Complex poly_eval(std::span<const double> coeffs, Complex x) {
  Complex acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> expand_factored_poly(std::span<const double> etas) {
  std::vector<double> coeffs{1.0};
  for (double eta : etas) {
    std::vector<double> next(coeffs.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i] += coeffs[i];
      next[i + 1] -= eta * coeffs[i];
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

}  // namespace fhstep

// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_LINALG_HPP
#define FHSTEP_LINALG_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace fhstep {

using Index = std::int64_t;
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;

struct Triplet {
  Index row;
  Index col;
  double value;
};

// Real sparse matrix in compressed-row form. Column indices are strictly
// increasing within each row and explicit zeros are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  // Duplicate (row, col) entries are summed; entries that sum to zero are dropped.
  static SparseMatrix from_triplets(Index rows, Index cols, std::span<const Triplet> entries);
  static SparseMatrix from_dense(const DenseMatrix& dense, double drop_tol = 0.0);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index nnz() const { return static_cast<Index>(values_.size()); }

  std::span<const Index> row_offsets() const { return row_offsets_; }
  std::span<const Index> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  // y = A x, cost O(nnz)
  void multiply(const Vector& x, Vector& y) const;
  // y = A' x, cost O(nnz)
  void multiply_transpose(const Vector& x, Vector& y) const;
  Vector multiply(const Vector& x) const;
  Vector multiply_transpose(const Vector& x) const;

  SparseMatrix transpose() const;
  DenseMatrix to_dense() const;

  bool all_finite() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> row_offsets_ = {0};
  std::vector<Index> col_indices_;
  std::vector<double> values_;
};

struct SvdExtremes {
  double sigma_max = 0.0;
  double sigma_min_nz = 0.0;   // smallest singular value above rank_tol * sigma_max
  Index numeric_rank = 0;
};

// Extreme singular values of A. Dense Gram eigenpath for max(m,n) <= dense_cutoff,
// Golub-Kahan bidiagonalization with full reorthogonalization above it.
SvdExtremes svd_extremes(const SparseMatrix& a, double rank_tol = 1e-10);

namespace detail {
SvdExtremes svd_extremes_impl(const SparseMatrix& a, double rank_tol, Index dense_cutoff);
}

struct EigenPair {
  Complex value;
  Eigen::VectorXcd vector;
};

// All eigenpairs of a real square matrix (Hessenberg + shifted QR under the hood).
// Residual contract: ||M v - lambda v|| <= 1e-8 ||M|| per pair.
std::vector<EigenPair> eig_general(const DenseMatrix& m);

// Roots of p(x) = coeffs[0] + coeffs[1] x + ... + coeffs[T] x^T via the
// companion matrix. Trailing coefficients below 1e-12 * max|c_k| are treated
// as degree deficiency and stripped.
std::vector<Complex> poly_roots(std::span<const double> coeffs);

// Largest singular value of a 2x2 matrix, in closed form from the Gram eigenvalues.
double op_norm_2x2(const DenseMatrix& b);

// Largest singular value of a general dense matrix.
double op_norm(const DenseMatrix& m);

// Orthonormal basis of range(M'), i.e. the orthogonal complement of null(M).
// Threshold: singular values > tol_rel * sigma_max count as nonzero.
DenseMatrix row_space_basis(const DenseMatrix& m, double tol_rel = 1e-10);

// Evaluate p at a complex point (constant term first), Horner form.
Complex poly_eval(std::span<const double> coeffs, Complex x);

// Expand prod_t (1 - eta_t x) into [1, a_1, ..., a_T] (constant term first).
std::vector<double> expand_factored_poly(std::span<const double> etas);

}  // namespace fhstep

#endif  // FHSTEP_LINALG_HPP

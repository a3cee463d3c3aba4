// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

// Test-only oracles, kept independent of the implementation paths they check:
// grid/golden-section searches and brute-force matrix products.

#ifndef FHSTEP_TESTS_ORACLES_HPP
#define FHSTEP_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "fhstep/linalg.hpp"

namespace fhstep::test {

// minimize f over [lo, hi]: coarse grid then golden-section refinement
inline double minimize_1d(double lo, double hi, const std::function<double(double)>& f,
                          int grid = 2000, double tol = 1e-10) {
  double best_x = lo;
  double best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const double x = lo + (hi - lo) * i / grid;
    const double v = f(x);
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
  }
  const double pitch = (hi - lo) / grid;
  double a = std::max(lo, best_x - pitch);
  double b = std::min(hi, best_x + pitch);
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

// ||prod_t (I - eta_t B)||op by direct multiplication (any order; factors commute)
inline double product_norm_2x2(const DenseMatrix& b, const std::vector<double>& etas) {
  DenseMatrix p = DenseMatrix::Identity(2, 2);
  for (double eta : etas) p = DenseMatrix((DenseMatrix::Identity(2, 2) - eta * b) * p);
  return op_norm_2x2(p);
}

// ||I + sum_k a_k B^k||op
inline double poly_norm_2x2(const DenseMatrix& b, const std::vector<double>& a) {
  DenseMatrix acc = DenseMatrix::Identity(2, 2);
  DenseMatrix pw = DenseMatrix::Identity(2, 2);
  for (double ak : a) {
    pw = DenseMatrix(pw * b);
    acc += ak * pw;
  }
  return op_norm_2x2(acc);
}

}  // namespace fhstep::test

#endif  // FHSTEP_TESTS_ORACLES_HPP

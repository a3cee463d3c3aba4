// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "fhstep/linalg.hpp"

using namespace fhstep;

namespace {

SparseMatrix sparse_2x2_identity() {
  const Triplet t[] = {{0, 0, 1.0}, {1, 1, 1.0}};
  return SparseMatrix::from_triplets(2, 2, t);
}

}  // namespace

TEST_CASE("sparse matrix CSR invariants") {
  // duplicates summed, zeros dropped, columns sorted
  const Triplet t[] = {{0, 1, 2.0}, {0, 0, 1.0}, {0, 1, 3.0}, {1, 0, 4.0}, {1, 1, -4.0}, {1, 1, 4.0}};
  const SparseMatrix a = SparseMatrix::from_triplets(2, 2, t);
  CHECK(a.nnz() == 3);
  CHECK(a.row_offsets()[0] == 0);
  CHECK(a.row_offsets()[1] == 2);
  CHECK(a.row_offsets()[2] == 3);
  CHECK(a.col_indices()[0] == 0);
  CHECK(a.col_indices()[1] == 1);
  CHECK(a.values()[1] == doctest::Approx(5.0));

  Vector x(2);
  x << 1.0, 2.0;
  const Vector y = a.multiply(x);
  CHECK(y[0] == doctest::Approx(11.0));
  CHECK(y[1] == doctest::Approx(4.0));
  const Vector z = a.multiply_transpose(y);
  CHECK(z[0] == doctest::Approx(11.0 + 16.0));
  CHECK(z[1] == doctest::Approx(55.0));

  CHECK_THROWS(SparseMatrix::from_triplets(2, 2, std::vector<Triplet>{{0, 5, 1.0}}));
  CHECK_THROWS(SparseMatrix::from_triplets(2, 2, std::vector<Triplet>{{0, 0, std::nan("")}}));
}

TEST_CASE("svd_extremes identity and diagonal") {
  CHECK(svd_extremes(sparse_2x2_identity()).sigma_max == doctest::Approx(1.0));
  CHECK(svd_extremes(sparse_2x2_identity()).sigma_min_nz == doctest::Approx(1.0));
  CHECK(svd_extremes(sparse_2x2_identity()).numeric_rank == 2);

  const Triplet t[] = {{0, 0, 3.0}, {1, 1, 1.0}};
  const auto r = svd_extremes(SparseMatrix::from_triplets(2, 2, t));
  CHECK(r.sigma_max == doctest::Approx(3.0));
  CHECK(r.sigma_min_nz == doctest::Approx(1.0));
  CHECK(r.numeric_rank == 2);
}

TEST_CASE("svd_extremes row vector equals its norm") {
  // sigma of a 1x2 row [1, 1] is its Euclidean norm sqrt(2)
  const Triplet t[] = {{0, 0, 1.0}, {0, 1, 1.0}};
  const SparseMatrix a = SparseMatrix::from_triplets(1, 2, t);
  const double oracle = std::sqrt(1.0 * 1.0 + 1.0 * 1.0);
  const auto r = svd_extremes(a);
  CHECK(r.sigma_max == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(r.sigma_min_nz == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(r.numeric_rank == 1);
}

TEST_CASE("svd_extremes errors") {
  CHECK_THROWS(svd_extremes(SparseMatrix::from_triplets(2, 2, std::vector<Triplet>{})));
}

TEST_CASE("svd_extremes matches transpose") {
  std::mt19937_64 rng(11);
  std::vector<Triplet> t;
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 9; ++j)
      if (rng() % 3 == 0) t.push_back({i, j, static_cast<double>(rng() % 17) - 8.0});
  t.push_back({0, 0, 1.5});  // ensure nonzero
  const SparseMatrix a = SparseMatrix::from_triplets(6, 9, t);
  const auto ra = svd_extremes(a);
  const auto rat = svd_extremes(a.transpose());
  CHECK(ra.sigma_max == doctest::Approx(rat.sigma_max).epsilon(1e-12));
  CHECK(ra.sigma_min_nz == doctest::Approx(rat.sigma_min_nz).epsilon(1e-10));
}

TEST_CASE("svd_extremes Lanczos path agrees with the dense path") {
  std::mt19937_64 rng(5);
  std::vector<Triplet> t;
  for (Index i = 0; i < 30; ++i)
    for (Index j = 0; j < 40; ++j)
      if (rng() % 4 == 0) t.push_back({i, j, static_cast<double>(rng() % 21) / 4.0 - 2.5});
  for (Index i = 0; i < 30; ++i) t.push_back({i, i, 3.0});  // keep it full rank
  const SparseMatrix a = SparseMatrix::from_triplets(30, 40, t);
  const auto dense = detail::svd_extremes_impl(a, 1e-10, 5000);
  const auto lanczos = detail::svd_extremes_impl(a, 1e-10, 0);
  CHECK(lanczos.sigma_max == doctest::Approx(dense.sigma_max).epsilon(1e-9));
  CHECK(lanczos.sigma_min_nz == doctest::Approx(dense.sigma_min_nz).epsilon(1e-8));
}

TEST_CASE("eig_general quadratic-formula oracle") {
  DenseMatrix m(2, 2);
  m << 4.0, 1.0, -1.0, 0.0;
  // characteristic polynomial x^2 - 4x + 1 has roots 2 +- sqrt(3)
  auto pairs = eig_general(m);
  REQUIRE(pairs.size() == 2);
  std::vector<double> eigs{pairs[0].value.real(), pairs[1].value.real()};
  std::sort(eigs.begin(), eigs.end());
  CHECK(pairs[0].value.imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eigs[0] == doctest::Approx(2.0 - std::sqrt(3.0)));
  CHECK(eigs[1] == doctest::Approx(2.0 + std::sqrt(3.0)));
}

TEST_CASE("eig_general rotation and identity") {
  DenseMatrix rot(2, 2);
  rot << 0.0, 1.0, -1.0, 0.0;
  auto pairs = eig_general(rot);
  std::vector<double> imags{pairs[0].value.imag(), pairs[1].value.imag()};
  std::sort(imags.begin(), imags.end());
  CHECK(imags[0] == doctest::Approx(-1.0));
  CHECK(imags[1] == doctest::Approx(1.0));
  CHECK(pairs[0].value.real() == doctest::Approx(0.0).epsilon(1e-12));

  auto id_pairs = eig_general(DenseMatrix::Identity(2, 2));
  CHECK(id_pairs[0].value.real() == doctest::Approx(1.0));
  CHECK(id_pairs[1].value.real() == doctest::Approx(1.0));

  CHECK_THROWS(eig_general(DenseMatrix::Zero(2, 3)));
}

TEST_CASE("eig_general residual contract and conjugate closure") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const Index n = 6;
    DenseMatrix m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(rng() % 2001) / 100.0 - 10.0;
    const double scale = op_norm(m);
    auto pairs = eig_general(m);
    REQUIRE(pairs.size() == static_cast<std::size_t>(n));
    for (const auto& p : pairs) {
      const Eigen::VectorXcd residual = m.cast<Complex>() * p.vector - p.value * p.vector;
      CHECK(residual.norm() <= 1e-8 * scale);
      // conjugate closure: the conjugate eigenvalue appears too
      bool found = false;
      for (const auto& q : pairs)
        if (std::abs(q.value - std::conj(p.value)) <= 1e-8 * scale + 1e-12) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("poly_roots factored fixtures") {
  {
    // p = (1 - x)(1 - 2x) = 1 - 3x + 2x^2
    const double c[] = {1.0, -3.0, 2.0};
    auto roots = poly_roots(c);
    std::vector<double> re{roots[0].real(), roots[1].real()};
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(0.5));
    CHECK(re[1] == doctest::Approx(1.0));
  }
  {
    const double c[] = {1.0, 1.0};
    auto roots = poly_roots(c);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].real() == doctest::Approx(-1.0));
  }
  {
    const double c[] = {1.0, 0.0, 1.0};
    auto roots = poly_roots(c);
    std::vector<double> im{roots[0].imag(), roots[1].imag()};
    std::sort(im.begin(), im.end());
    CHECK(im[0] == doctest::Approx(-1.0));
    CHECK(im[1] == doctest::Approx(1.0));
  }
  CHECK_THROWS(poly_roots(std::vector<double>{3.0}));
  CHECK_THROWS(poly_roots(std::vector<double>{0.0, 0.0}));
  // trailing near-zero coefficients are stripped, not inverted into huge roots
  {
    const double c[] = {1.0, -3.0, 2.0, 1e-280};
    CHECK(poly_roots(c).size() == 2);
  }
}

TEST_CASE("poly_roots residual and re-expansion property") {
  std::mt19937_64 rng(7);
  for (int deg = 2; deg <= 12; ++deg) {
    std::vector<double> etas;
    for (int i = 0; i < deg; ++i) etas.push_back(0.05 + static_cast<double>(rng() % 1000) / 250.0);
    const std::vector<double> coeffs = expand_factored_poly(etas);
    auto roots = poly_roots(coeffs);
    REQUIRE(roots.size() == static_cast<std::size_t>(deg));
    double max_c = 0.0;
    for (double c : coeffs) max_c = std::max(max_c, std::abs(c));
    // residual contract
    for (const Complex& r : roots) {
      const double bound = 1e-8 * max_c * std::pow(std::max(1.0, std::abs(r)), deg);
      CHECK(std::abs(poly_eval(coeffs, r)) <= bound);
    }
    // re-expanding prod (x - r) reproduces the monic coefficients to 1e-6 relative
    std::vector<Complex> monic{1.0};
    for (const Complex& r : roots) {
      std::vector<Complex> next(monic.size() + 1, Complex(0.0, 0.0));
      for (std::size_t i = 0; i < monic.size(); ++i) {
        next[i + 1] += monic[i];
        next[i] -= r * monic[i];
      }
      monic = std::move(next);
    }
    // monic[i] holds the coefficient of x^i of prod (x - r_t); compare against
    // coeffs normalized by the leading coefficient
    const double lead = coeffs.back();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      CHECK(monic[i].imag() == doctest::Approx(0.0).epsilon(1e-8));
      CHECK(monic[i].real() == doctest::Approx(coeffs[i] / lead).epsilon(1e-6));
    }
  }
}

TEST_CASE("op_norm_2x2 closed form") {
  CHECK(op_norm_2x2(DenseMatrix::Identity(2, 2)) == doctest::Approx(1.0));

  // nilpotent block: the norm is |alpha| even though both eigenvalues vanish
  for (double alpha : {0.5, -3.0, 100.0}) {
    DenseMatrix b = DenseMatrix::Zero(2, 2);
    b(0, 1) = alpha;
    CHECK(op_norm_2x2(b) == doctest::Approx(std::abs(alpha)));
  }

  DenseMatrix b(2, 2);
  b << 4.0, 1.0, -1.0, 0.0;
  // brute-force Gram eigenvalues via the quadratic formula
  const DenseMatrix g = b.transpose() * b;
  const double tr = g(0, 0) + g(1, 1);
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  const double oracle = std::sqrt((tr + std::sqrt(tr * tr - 4.0 * det)) / 2.0);
  CHECK(op_norm_2x2(b) == doctest::Approx(oracle).epsilon(1e-14));

  CHECK(op_norm_2x2(DenseMatrix::Zero(2, 2)) == doctest::Approx(0.0));
}

TEST_CASE("op_norm_2x2 transpose and scaling invariants") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix b(2, 2);
    for (int i = 0; i < 4; ++i) b(i / 2, i % 2) = static_cast<double>(rng() % 2001) / 100.0 - 10.0;
    const double c = static_cast<double>(rng() % 100) / 10.0 - 5.0;
    CHECK(op_norm_2x2(b) == doctest::Approx(op_norm_2x2(DenseMatrix(b.transpose()))).epsilon(1e-12));
    CHECK(op_norm_2x2(DenseMatrix(c * b)) == doctest::Approx(std::abs(c) * op_norm_2x2(b)).epsilon(1e-12));
  }
}
